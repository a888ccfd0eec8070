"""Parametrized curves on the model surfaces.

Points are complex numbers: x + iy in the Euclidean plane / flat torus
(coordinates in the universal cover R^2), and upper half-plane coordinates
(Im z > 0) on the hyperbolic plane.  All factory curves are unit speed in
the surface metric and carry their geodesic curvature in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .profiles import EUCLIDEAN, FLAT_TORUS, HYPERBOLIC, SurfaceModel

UNIT_SPEED_TOL = 1e-8


@dataclass(frozen=True)
class ParamCurve:
    surface: SurfaceModel
    position: Callable[[float], complex] = field(repr=False)
    velocity: Callable[[float], complex] = field(repr=False)
    geodesic_curvature: Callable[[float], float] | None = field(repr=False, default=None)
    domain: tuple[float, float] = (-math.inf, math.inf)
    unit_speed: bool = True
    kind: str = "custom"
    params: dict = field(default_factory=dict)
    closed: bool = False
    period: float | None = None
    # optional vectorized position (ndarray of s -> complex ndarray)
    position_many: Callable | None = field(repr=False, default=None)

    def positions(self, s_values) -> "np.ndarray":
        if self.position_many is not None:
            return np.asarray(self.position_many(np.asarray(s_values, dtype=float)))
        return np.array([self.position(float(s)) for s in np.atleast_1d(s_values)])

    def speed(self, s: float) -> float:
        """Metric speed |gamma'(s)|."""
        v = self.velocity(s)
        if self.surface.tag == "hyperbolic-plane":
            return abs(v) / self.position(s).imag
        return abs(v)

    def check_unit_speed(self, samples) -> float:
        """Max deviation of |gamma'| from 1 over the samples."""
        return max(abs(self.speed(s) - 1.0) for s in samples)

    def curve_id(self) -> str:
        inner = ",".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.kind}({inner})"

    def to_spec(self) -> dict:
        if self.kind == "custom":
            raise ValueError("custom curves have no JSON form")
        return {"kind": self.kind, **self.params}


# ---------------------------------------------------------------------------
# Hyperbolic half-plane isometries (real Mobius transformations)


def mobius_apply(M, z):
    a, b, c, d = M
    return (a * z + b) / (c * z + d)


def mobius_deriv(M, z):
    a, b, c, d = M
    q = c * z + d
    return (a * d - b * c) / (q * q)


def mobius_compose(M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def translate_to(z0: complex):
    """Isometry z -> y0*z + x0 taking i to z0 = x0 + i*y0."""
    x0, y0 = z0.real, z0.imag
    if y0 <= 0:
        raise ValueError("hyperbolic point needs Im z > 0")
    s = math.sqrt(y0)
    return (s, x0 / s, 0.0, 1.0 / s)


def rotate_about_i(theta: float):
    """Elliptic isometry fixing i, rotating tangent vectors by +theta."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return (c, s, -s, c)


def translate_along_vertical(t: float):
    """Hyperbolic translation by distance t along the imaginary-axis geodesic."""
    e = math.exp(t / 2.0)
    return (e, 0.0, 0.0, 1.0 / e)


def _rotation_point_deriv(theta, w):
    # d/dtheta of rotate_about_i(theta) applied to w
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    q = -w * s + c
    return (w * w + 1.0) / (2.0 * q * q)


# ---------------------------------------------------------------------------
# Curve factories


def euclidean_segment(point, angle, surface=EUCLIDEAN, domain=(-math.inf, math.inf)):
    z0 = complex(point[0], point[1]) if not isinstance(point, complex) else point
    e = complex(math.cos(angle), math.sin(angle))
    return ParamCurve(
        surface=surface,
        position=lambda s: z0 + s * e,
        velocity=lambda s: e,
        geodesic_curvature=lambda s: 0.0,
        domain=domain,
        kind="euclidean-segment" if surface is EUCLIDEAN else "torus-segment",
        params={"point": (z0.real, z0.imag), "angle": float(angle)},
        position_many=lambda s: z0 + s * e,
    )


def torus_segment(point, angle):
    return euclidean_segment(point, angle, surface=FLAT_TORUS)


def euclidean_circle(center, radius, surface=EUCLIDEAN):
    if radius <= 0:
        raise ValueError("radius must be positive")
    z0 = complex(center[0], center[1]) if not isinstance(center, complex) else center
    rho = float(radius)
    return ParamCurve(
        surface=surface,
        position=lambda s: z0 + rho * complex(math.cos(s / rho), math.sin(s / rho)),
        velocity=lambda s: complex(-math.sin(s / rho), math.cos(s / rho)),
        geodesic_curvature=lambda s: 1.0 / rho,
        domain=(0.0, 2.0 * math.pi * rho),
        kind="euclidean-circle" if surface is EUCLIDEAN else "torus-circle",
        params={"center": (z0.real, z0.imag), "radius": rho},
        closed=True,
        period=2.0 * math.pi * rho,
        position_many=lambda s: z0 + rho * np.exp(1j * s / rho),
    )


def torus_circle(center, radius):
    return euclidean_circle(center, radius, surface=FLAT_TORUS)


def euclidean_point(point):
    z0 = complex(point[0], point[1]) if not isinstance(point, complex) else point
    return ParamCurve(
        surface=EUCLIDEAN,
        position=lambda s: z0,
        velocity=lambda s: 0j,
        geodesic_curvature=None,
        unit_speed=False,
        kind="point",
        params={"point": (z0.real, z0.imag)},
    )


def hyperbolic_geodesic(through=1j, direction_angle=0.0, domain=(-math.inf, math.inf)):
    """Unit-speed geodesic through a point.

    direction_angle is measured from the upward vertical at the point; the
    curve is the isometric image of s -> i e^s.
    """
    z0 = complex(through)
    M = mobius_compose(translate_to(z0), rotate_about_i(direction_angle))

    def position(s):
        return mobius_apply(M, 1j * math.exp(s))

    def velocity(s):
        w = 1j * math.exp(s)
        return mobius_deriv(M, w) * w  # d/ds (i e^s) = i e^s

    return ParamCurve(
        surface=HYPERBOLIC,
        position=position,
        velocity=velocity,
        geodesic_curvature=lambda s: 0.0,
        domain=domain,
        kind="hyperbolic-geodesic",
        params={"through": (z0.real, z0.imag), "direction_angle": float(direction_angle)},
    )


def hyperbolic_circle(center, radius, phase=0.0):
    """Unit-speed hyperbolic circle; geodesic curvature coth(radius).

    The circle of radius rho about a point has circumference 2*pi*sinh(rho),
    so arc length is sinh(rho) times the polar angle.
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    z0 = complex(center)
    rho = float(radius)
    A = translate_to(z0)
    w = 1j * math.exp(rho)
    sinh_rho = math.sinh(rho)
    kappa = math.cosh(rho) / sinh_rho

    def position(s):
        theta = phase + s / sinh_rho
        return mobius_apply(mobius_compose(A, rotate_about_i(theta)), 1j * math.exp(rho))

    def velocity(s):
        theta = phase + s / sinh_rho
        inner = _rotation_point_deriv(theta, w) / sinh_rho
        return mobius_deriv(A, mobius_apply(rotate_about_i(theta), w)) * inner

    return ParamCurve(
        surface=HYPERBOLIC,
        position=position,
        velocity=velocity,
        geodesic_curvature=lambda s: kappa,
        domain=(0.0, 2.0 * math.pi * sinh_rho),
        kind="hyperbolic-circle",
        params={"center": (z0.real, z0.imag), "radius": rho, "phase": float(phase)},
        closed=True,
        period=2.0 * math.pi * sinh_rho,
    )


def hyperbolic_horocycle(through=1j, direction_angle=0.0):
    """Unit-speed horocycle through a point; geodesic curvature 1.

    direction_angle = 0 gives the image of the horizontal horocycle s + i.
    """
    z0 = complex(through)
    M = mobius_compose(translate_to(z0), rotate_about_i(direction_angle))

    def position(s):
        return mobius_apply(M, s + 1j)

    def velocity(s):
        return mobius_deriv(M, s + 1j)

    return ParamCurve(
        surface=HYPERBOLIC,
        position=position,
        velocity=velocity,
        geodesic_curvature=lambda s: 1.0,
        kind="hyperbolic-horocycle",
        params={"through": (z0.real, z0.imag), "direction_angle": float(direction_angle)},
    )


def hyperbolic_point(point):
    z0 = complex(point)
    if z0.imag <= 0:
        raise ValueError("hyperbolic point needs Im z > 0")
    return ParamCurve(
        surface=HYPERBOLIC,
        position=lambda s: z0,
        velocity=lambda s: 0j,
        geodesic_curvature=None,
        unit_speed=False,
        kind="point",
        params={"point": (z0.real, z0.imag)},
    )


def transformed_curve(curve: ParamCurve, M) -> ParamCurve:
    """Image of a hyperbolic curve under a Mobius isometry (unit speed preserved)."""
    if curve.surface is not HYPERBOLIC:
        raise ValueError("Mobius transforms apply to hyperbolic curves only")
    return ParamCurve(
        surface=HYPERBOLIC,
        position=lambda s: mobius_apply(M, curve.position(s)),
        velocity=lambda s: mobius_deriv(M, curve.position(s)) * curve.velocity(s),
        geodesic_curvature=curve.geodesic_curvature,
        domain=curve.domain,
        unit_speed=curve.unit_speed,
        kind="custom",
        params={"base": curve.kind},
        closed=curve.closed,
        period=curve.period,
    )


def curve_from_curvature(surface, kappa_fn, z0, psi0, s_span, tol=1e-12):
    """Unit-speed curve with prescribed signed geodesic curvature.

    Integrates the frame equations: dz/ds = y e^{i psi}, dpsi/ds = kappa - cos psi
    on the half-plane (dz/ds = e^{i psi}, dpsi/ds = kappa on the plane), then
    exposes the dense solution.  The sign convention makes the horizontal
    horocycle (psi = 0) have curvature +1.
    """
    from .rk45 import integrate_generic

    hyper = surface.tag == "hyperbolic-plane"
    s0, s1 = float(s_span[0]), float(s_span[1])

    def rhs(s, y):
        x, yy, psi = y
        if hyper:
            return (yy * math.cos(psi), yy * math.sin(psi), kappa_fn(s) - math.cos(psi))
        return (math.cos(psi), math.sin(psi), kappa_fn(s))

    z0 = complex(z0)
    y0 = (z0.real, z0.imag, float(psi0))
    # force dense nodes so Hermite sampling stays at ~1e-13, well below the
    # finite-difference budgets of downstream phase checks
    step = 2e-3
    if s0 < 0:
        out = np.arange(0.0, s0, -step)
        left = integrate_generic(rhs, 0.0, s0, y0, tol=tol, output_r=out)
    else:
        left = None
    if s1 > 0:
        out = np.arange(0.0, s1, step)
        right = integrate_generic(rhs, 0.0, s1, y0, tol=tol, output_r=out)
    else:
        right = None

    def state(s):
        sol = left if (s < 0 and left is not None) else right
        if sol is None:
            raise ValueError(f"s = {s} outside integrated span")
        return sol.sample_scalar(s)

    def position(s):
        x, yy, _ = state(s)
        return complex(x, yy)

    def velocity(s):
        x, yy, psi = state(s)
        if hyper:
            return yy * complex(math.cos(psi), math.sin(psi))
        return complex(math.cos(psi), math.sin(psi))

    return ParamCurve(
        surface=surface,
        position=position,
        velocity=velocity,
        geodesic_curvature=lambda s: abs(kappa_fn(s)),
        domain=(s0, s1),
        kind="custom",
        params={"kind": "prescribed-curvature"},
    )


# ---------------------------------------------------------------------------
# JSON specs (CLI configuration)

_CURVE_BUILDERS = {
    "euclidean-segment": lambda p: euclidean_segment(tuple(p["point"]), p["angle"]),
    "torus-segment": lambda p: torus_segment(tuple(p["point"]), p["angle"]),
    "euclidean-circle": lambda p: euclidean_circle(tuple(p["center"]), p["radius"]),
    "torus-circle": lambda p: torus_circle(tuple(p["center"]), p["radius"]),
    "hyperbolic-geodesic": lambda p: hyperbolic_geodesic(
        complex(*p.get("through", (0.0, 1.0))), p.get("direction_angle", 0.0)
    ),
    "hyperbolic-circle": lambda p: hyperbolic_circle(
        complex(*p["center"]), p["radius"], p.get("phase", 0.0)
    ),
    "hyperbolic-horocycle": lambda p: hyperbolic_horocycle(
        complex(*p.get("through", (0.0, 1.0))), p.get("direction_angle", 0.0)
    ),
}


def curve_from_spec(spec: dict) -> ParamCurve:
    kind = spec.get("kind")
    if kind not in _CURVE_BUILDERS:
        raise ValueError(f"unknown curve kind {kind!r}")
    params = {k: v for k, v in spec.items() if k != "kind"}
    return _CURVE_BUILDERS[kind](params)
