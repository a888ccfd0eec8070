"""Distance phase functions for disjoint curve pairs in model planes.

phi(s, t) is the geodesic distance between curve1(s) and curve2(t) in the
Euclidean or hyperbolic plane.  First and second partials come from
central finite differences on the closed-form distance; the module checks
the first-derivative identity (inner product with the connecting geodesic
tangent), the mixed-derivative bound |d2 phi/ds dt| <= 2/phi, and the pure
second-derivative formula cos(theta)(+-kappa + cos(theta) kappa_circle).

Only the K = 0 and K = -1 planes are supported: those are the models on
which circle curvature (1/r and coth r) is closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curves import ParamCurve
from .profiles import SurfaceModel

# quasi-random sweep directions (Roberts R2 low-discrepancy sequence)
_R2_ALPHA = (0.7548776662466927, 0.5698402909980532)


def model_distance(surface: SurfaceModel, p: complex, q: complex) -> float:
    """Closed-form geodesic distance between two model-plane points."""
    if surface.tag == "euclidean-plane":
        return abs(p - q)
    if surface.tag == "hyperbolic-plane":
        if p.imag <= 0 or q.imag <= 0:
            raise ValueError("hyperbolic points need positive imaginary part")
        d2 = abs(p - q) ** 2
        return math.acosh(1.0 + d2 / (2.0 * p.imag * q.imag))
    raise ValueError(f"no distance model for surface {surface.tag!r}")


def connecting_unit_tangent(surface: SurfaceModel, p: complex, q: complex) -> complex:
    """Metric-unit tangent at p of the geodesic from p to q."""
    if surface.tag == "euclidean-plane":
        d = q - p
        return d / abs(d)
    if surface.tag != "hyperbolic-plane":
        raise ValueError(f"no geodesic model for surface {surface.tag!r}")
    if abs(p.real - q.real) < 1e-13 * max(1.0, abs(p), abs(q)):
        sign = 1.0 if q.imag > p.imag else -1.0
        return complex(0.0, sign * p.imag)
    c = (abs(q) ** 2 - abs(p) ** 2) / (2.0 * (q.real - p.real))
    w = p - c
    th_p = math.atan2(p.imag, p.real - c)
    th_q = math.atan2(q.imag, q.real - c)
    sign = 1.0 if th_q > th_p else -1.0
    eu = sign * 1j * w / abs(w)
    return eu * p.imag  # hyperbolic-unit vectors have euclidean length Im(p)


def metric_inner(surface: SurfaceModel, v: complex, w: complex, at: complex) -> float:
    base = v.real * w.real + v.imag * w.imag
    if surface.tag == "hyperbolic-plane":
        return base / (at.imag * at.imag)
    return base


def covariant_accel(surface: SurfaceModel, curve: ParamCurve, s: float, step: float = 1e-4) -> complex:
    """Covariant acceleration D/ds gamma' via a finite difference of the
    analytic velocity plus the half-plane Christoffel terms."""
    v0 = curve.velocity(s)
    vp = curve.velocity(s + step)
    vm = curve.velocity(s - step)
    a = (vp - vm) / (2.0 * step)
    if surface.tag == "euclidean-plane":
        return a
    z = curve.position(s)
    y = z.imag
    ax = a.real - 2.0 * v0.real * v0.imag / y
    ay = a.imag + (v0.real * v0.real - v0.imag * v0.imag) / y
    return complex(ax, ay)


@dataclass(frozen=True)
class PhaseEvaluation:
    s: float
    t: float
    phi: float
    ds_phi: float
    dt_phi: float
    dss_phi: float
    dst_phi: float
    dtt_phi: float
    theta: float
    circle_kappa: float


@dataclass(frozen=True)
class ModelCurvePair:
    """Two disjoint curves with a validated positive distance margin."""

    surface: SurfaceModel
    curve1: ParamCurve
    curve2: ParamCurve
    margin: float
    s_range: tuple[float, float] = (-1.0, 1.0)
    t_range: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if self.surface.tag not in ("euclidean-plane", "hyperbolic-plane"):
            raise ValueError("phase geometry supports euclidean/hyperbolic planes only")
        if not self.margin > 0:
            raise ValueError("disjointness margin must be positive")
        ss = np.linspace(*self.s_range, 25)
        tt = np.linspace(*self.t_range, 25)
        worst = min(
            model_distance(self.surface, self.curve1.position(a), self.curve2.position(b))
            for a in ss
            for b in tt
        )
        if worst < self.margin:
            raise ValueError(
                f"sampled curve distance {worst!r} below required margin {self.margin!r}"
            )

    def phi(self, s: float, t: float) -> float:
        return model_distance(
            self.surface, self.curve1.position(s), self.curve2.position(t)
        )

    def swapped(self) -> "ModelCurvePair":
        return ModelCurvePair(
            surface=self.surface,
            curve1=self.curve2,
            curve2=self.curve1,
            margin=self.margin,
            s_range=self.t_range,
            t_range=self.s_range,
        )


def _richardson_first(f, x: float, h: float) -> float:
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h
    return (4.0 * d2 - d1) / 3.0


def _second_fd(f, x: float, h: float) -> float:
    # 5-point 4th-order second derivative
    return (
        -f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)
    ) / (12.0 * h * h)


def circle_curvature_closed_form(surface: SurfaceModel, radius: float) -> float:
    if surface.tag == "hyperbolic-plane":
        return math.cosh(radius) / math.sinh(radius)
    return 1.0 / radius


def phase_eval(pair: ModelCurvePair, s: float, t: float, fd_step: float = 1e-4) -> PhaseEvaluation:
    """Distance and partials at (s, t); theta from the first-derivative identity."""
    phi0 = pair.phi(s, t)
    if phi0 < pair.margin:
        raise ValueError(f"phi({s}, {t}) = {phi0!r} below disjointness margin")
    h1s = fd_step * max(1.0, abs(s))
    h1t = fd_step * max(1.0, abs(t))
    h2 = 1e-3
    fs = lambda a: pair.phi(a, t)
    ft = lambda b: pair.phi(s, b)
    ds = _richardson_first(fs, s, h1s)
    dt = _richardson_first(ft, t, h1t)
    dss = _second_fd(fs, s, h2)
    dtt = _second_fd(ft, t, h2)
    ds_of_t = lambda b: _richardson_first(lambda a: pair.phi(a, b), s, h1s)
    dst = (ds_of_t(t + h2) - ds_of_t(t - h2)) / (2.0 * h2)
    theta = math.asin(min(1.0, abs(ds)))
    return PhaseEvaluation(
        s=s,
        t=t,
        phi=phi0,
        ds_phi=ds,
        dt_phi=dt,
        dss_phi=dss,
        dst_phi=dst,
        dtt_phi=dtt,
        theta=theta,
        circle_kappa=circle_curvature_closed_form(pair.surface, phi0),
    )


def quasi_random_points(pair: ModelCurvePair, n: int):
    """Deterministic low-discrepancy (s, t) sweep of the pair's ranges."""
    i = np.arange(1, n + 1)
    u = np.mod(0.5 + i * _R2_ALPHA[0], 1.0)
    v = np.mod(0.5 + i * _R2_ALPHA[1], 1.0)
    slo, shi = pair.s_range
    tlo, thi = pair.t_range
    return slo + u * (shi - slo), tlo + v * (thi - tlo)


@dataclass(frozen=True)
class MixedBoundReport:
    n_samples: int
    max_ratio: float  # max |dst| * phi / 2
    witness: tuple[float, float]
    violations: tuple
    rows: tuple
    passed: bool


def check_mixed_bound(pair: ModelCurvePair, n_samples: int, tol: float = 1e-4) -> MixedBoundReport:
    """Assert |d2 phi/ds dt| <= 2/phi + tol at quasi-random points."""
    if pair.margin < 0.1:
        raise ValueError("mixed-bound check requires disjointness margin >= 0.1")
    ss, tt = quasi_random_points(pair, n_samples)
    rows = []
    violations = []
    max_ratio = -math.inf
    witness = (math.nan, math.nan)
    for s, t in zip(ss, tt):
        ev = phase_eval(pair, float(s), float(t))
        ratio = abs(ev.dst_phi) * ev.phi / 2.0
        rows.append(
            (ev.s, ev.t, ev.phi, ev.ds_phi, ev.dt_phi, ev.dst_phi, ev.dss_phi, ev.theta, ratio)
        )
        if ratio > max_ratio:
            max_ratio, witness = ratio, (ev.s, ev.t)
        if abs(ev.dst_phi) > 2.0 / ev.phi + tol:
            violations.append((ev.s, ev.t, ev.dst_phi, 2.0 / ev.phi))
    violations.sort()
    return MixedBoundReport(
        n_samples=n_samples,
        max_ratio=max_ratio,
        witness=witness,
        violations=tuple(violations),
        rows=tuple(rows),
        passed=not violations,
    )


@dataclass(frozen=True)
class PureSecondReport:
    n_samples: int
    max_abs_err: float
    witness: tuple[float, float]
    ambiguous: int
    rows: tuple
    passed: bool


def check_pure_second(pair: ModelCurvePair, n_samples: int, tol: float = 1e-5) -> PureSecondReport:
    """Compare finite-difference d2 phi/ds2 with
    cos(theta) (sign * kappa_gamma + cos(theta) * kappa_circle).

    The sign is resolved from the inner product of the curve's covariant
    acceleration with the outward tangent of the connecting geodesic; when
    that product is numerically ambiguous both signs are tried and the
    better one accepted.
    """
    if pair.curve1.geodesic_curvature is None:
        raise ValueError("curve1 carries no geodesic curvature")
    ss, tt = quasi_random_points(pair, n_samples)
    rows = []
    max_err = -math.inf
    witness = (math.nan, math.nan)
    ambiguous = 0
    for s, t in zip(ss, tt):
        s, t = float(s), float(t)
        ev = phase_eval(pair, s, t)
        p1 = pair.curve1.position(s)
        p2 = pair.curve2.position(t)
        away = -connecting_unit_tangent(pair.surface, p1, p2)
        accel = covariant_accel(pair.surface, pair.curve1, s)
        orient = metric_inner(pair.surface, accel, away, p1)
        kg = float(pair.curve1.geodesic_curvature(s))
        cth = math.cos(ev.theta)
        rhs_plus = cth * (kg + cth * ev.circle_kappa)
        rhs_minus = cth * (-kg + cth * ev.circle_kappa)
        if abs(orient) < 1e-7 * max(1.0, kg):
            ambiguous += 1
            err = min(abs(ev.dss_phi - rhs_plus), abs(ev.dss_phi - rhs_minus))
            sign = 0
        else:
            sign = 1 if orient > 0 else -1
            err = abs(ev.dss_phi - (rhs_plus if sign > 0 else rhs_minus))
        rows.append((s, t, ev.dss_phi, rhs_plus if sign >= 0 else rhs_minus, sign, err))
        if err > max_err:
            max_err, witness = err, (s, t)
    return PureSecondReport(
        n_samples=n_samples,
        max_abs_err=max_err,
        witness=witness,
        ambiguous=ambiguous,
        rows=tuple(rows),
        passed=max_err <= tol,
    )
