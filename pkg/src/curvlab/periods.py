"""Eigenfunction period integrals on the flat torus and round sphere.

Torus eigenfunctions of eigenvalue sqrt(n) are spanned by exponentials
exp(i m.x) over the lattice circle |m|^2 = n; period integrals against a
weighted curve reduce to oscillatory integrals of exp(i m.gamma(s)).
Sphere non-decay is witnessed by zonal harmonics on the equator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import ParamCurve, torus_segment
from .lattice import lattice_circle
from .nufft import nufft2d_type1
from .profiles import WeightWindow
from .special import legendre_p

TWO_PI = 2.0 * math.pi
LAMBDA_CAP = 1000.0
_PANEL_ORDER = 12
_NODES_PER_OSC = 10.0
_DEFAULT_TARGET = 1e-12
_DEFAULT_BUDGET = 1 << 21


@dataclass(frozen=True)
class PeriodIntegralRecord:
    n: int
    curve_id: str
    value: complex
    quadrature_error: float
    nodes_used: int


@dataclass(frozen=True)
class DecayFit:
    """OLS fit of log(extremal norm) against log(lambda)."""

    log_lambda: np.ndarray
    log_value: np.ndarray
    slope: float
    intercept: float
    residual_rms: float

    @property
    def n_points(self) -> int:
        return len(self.log_lambda)


@dataclass(frozen=True)
class SaturationRow:
    index: int
    m: tuple[int, int]
    value: complex
    magnitude: float
    normal_defect: float  # |m . gamma'|


@dataclass(frozen=True)
class TorusEigenfunction:
    """Eigenfunction sum a_m exp(i m.x) with sum |a_m|^2 = (2pi)^-2."""

    n: int
    vectors: tuple[tuple[int, int], ...]
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        total = math.fsum(abs(a) ** 2 for a in self.coeffs)
        if abs(total - 1.0 / (TWO_PI**2)) > 1e-12:
            raise ValueError(
                f"coefficient normalization sum |a_m|^2 = {total!r} "
                f"!= (2pi)^-2 = {1.0 / (TWO_PI ** 2)!r}"
            )
        if len(self.coeffs) != len(self.vectors):
            raise ValueError("one coefficient per lattice vector required")

    @staticmethod
    def random(n: int, rng: np.random.Generator) -> "TorusEigenfunction":
        circle = lattice_circle(n)
        if not circle.vectors:
            raise ValueError(f"empty lattice circle for n = {n}")
        raw = rng.normal(size=circle.count) + 1j * rng.normal(size=circle.count)
        raw /= np.linalg.norm(raw) * TWO_PI
        return TorusEigenfunction(
            n=n, vectors=circle.vectors, coeffs=tuple(map(complex, raw))
        )

    def period_integral(self, curve: ParamCurve, window: WeightWindow) -> complex:
        vals = [
            a * oscillatory_integral(curve, window, m)
            for a, m in zip(self.coeffs, self.vectors)
        ]
        return complex(
            math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals)
        )


# ---------------------------------------------------------------------------
# Oscillatory quadrature

_node_cache: dict = {}


def _support_interval(curve: ParamCurve, window: WeightWindow):
    lo, hi = window.support
    clo, chi = curve.domain
    if lo < clo - 1e-12 or hi > chi + 1e-12:
        raise ValueError(
            f"window support [{lo}, {hi}] exceeds curve domain [{clo}, {chi}]"
        )
    return lo, hi


def _nodes_for(curve: ParamCurve, window: WeightWindow, panels: int):
    key = (id(curve), id(window), panels)
    hit = _node_cache.get(key)
    if hit is not None:
        return hit
    a, b = _support_interval(curve, window)
    x, w = np.polynomial.legendre.leggauss(_PANEL_ORDER)
    edges = np.linspace(a, b, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    s = (mids[:, None] + halfs[:, None] * x[None, :]).ravel()
    ws = (halfs[:, None] * w[None, :]).ravel()
    pos = curve.positions(s)
    entry = (s, ws * window(s), pos.real.copy(), pos.imag.copy(), curve, window)
    if len(_node_cache) > 48:
        _node_cache.clear()
    _node_cache[key] = entry
    return entry


def _eval_on_nodes(entry, m) -> complex:
    _, wb, gx, gy, _, _ = entry
    phase = m[0] * gx + m[1] * gy
    z = np.exp(1j * phase)
    return complex(np.dot(wb, z.real), np.dot(wb, z.imag))


def _initial_panels(curve, window, m) -> int:
    a, b = _support_interval(curve, window)
    mnorm = math.hypot(m[0], m[1])
    # |m . gamma'| <= |m| for unit-speed plane/torus curves
    nodes = max(48.0, _NODES_PER_OSC * mnorm * (b - a) / TWO_PI)
    needed = max(4, int(math.ceil(nodes / _PANEL_ORDER)))
    # round up to a power of two so nearby frequencies share node grids
    return 1 << (needed - 1).bit_length()


def oscillatory_integral_record(
    curve: ParamCurve,
    window: WeightWindow,
    m,
    target: float = _DEFAULT_TARGET,
    node_budget: int = _DEFAULT_BUDGET,
) -> PeriodIntegralRecord:
    """Adaptive evaluation of integral b(s) exp(i m.gamma(s)) ds.

    Panel count doubles until two refinements agree to ``target``; if the
    node budget is exhausted the best value is returned with the last
    observed gap as an inflated error estimate.
    """
    m = (int(m[0]), int(m[1]))
    panels = _initial_panels(curve, window, m)
    prev = _eval_on_nodes(_nodes_for(curve, window, panels), m)
    nodes = panels * _PANEL_ORDER
    while True:
        panels *= 2
        cur = _eval_on_nodes(_nodes_for(curve, window, panels), m)
        nodes += panels * _PANEL_ORDER
        err = abs(cur - prev)
        if err <= target:
            return PeriodIntegralRecord(
                n=m[0] * m[0] + m[1] * m[1],
                curve_id=curve.curve_id(),
                value=cur,
                quadrature_error=err,
                nodes_used=nodes,
            )
        if panels * _PANEL_ORDER * 2 > node_budget:
            return PeriodIntegralRecord(
                n=m[0] * m[0] + m[1] * m[1],
                curve_id=curve.curve_id(),
                value=cur,
                quadrature_error=max(err, 10.0 * target),
                nodes_used=nodes,
            )
        prev = cur


def oscillatory_integral(curve, window, m, **kw) -> complex:
    return oscillatory_integral_record(curve, window, m, **kw).value


# ---------------------------------------------------------------------------
# Extremal norms and decay


def extremal_period_norm(
    curve: ParamCurve, window: WeightWindow, n: int, with_records: bool = False
):
    """Largest period integral over L2-normalized eigenfunctions of
    eigenvalue sqrt(n): the root of the summed squared integrals.

    Returns None when the lattice circle is empty (structured empty result).
    """
    circle = lattice_circle(n)
    if not circle.vectors:
        return None
    records = [oscillatory_integral_record(curve, window, m) for m in circle.vectors]
    norm = math.sqrt(math.fsum(abs(r.value) ** 2 for r in records)) / TWO_PI
    if with_records:
        return norm, records
    return norm


def decay_scan(curve: ParamCurve, window: WeightWindow, n_list) -> DecayFit:
    """OLS fit of log extremal norm against log lambda = log sqrt(n)."""
    pts = []
    for n in n_list:
        norm = extremal_period_norm(curve, window, int(n))
        if norm is None or norm <= 0.0:
            continue
        pts.append((0.5 * math.log(n), math.log(norm)))
    if len(pts) < 4:
        raise ValueError(f"only {len(pts)} usable points; need at least 4")
    lx = np.array([p[0] for p in pts])
    ly = np.array([p[1] for p in pts])
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, ly, rcond=None)
    resid = ly - (slope * lx + intercept)
    return DecayFit(
        log_lambda=lx,
        log_value=ly,
        slope=float(slope),
        intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
    )


# ---------------------------------------------------------------------------
# Segment saturation


def _continued_fraction_convergents(t: float, max_terms: int, q_cap: int = 10**6):
    """Convergents p/q of t by the standard continued-fraction recurrence."""
    convergents = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = int(math.floor(t)), 1
    convergents.append((p_cur, q_cur))
    frac = t - math.floor(t)
    for _ in range(max_terms - 1):
        if frac < 1e-15:
            break
        t = 1.0 / frac
        a = int(math.floor(t))
        frac = t - a
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        if q_cur > q_cap:
            break
        convergents.append((p_cur, q_cur))
    return convergents


def segment_saturation(
    direction, window: WeightWindow, k_max: int, mode: str = "auto"
) -> list[SaturationRow]:
    """Sequences of lattice frequencies nearly normal to a segment.

    For an exactly rational direction (integer components) the perpendicular
    multiples k*(-p, q) kill the phase identically and the integrals equal
    the window integral in magnitude.  Otherwise continued-fraction
    convergents of the slope give |m . gamma'| -> 0.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    dx, dy = direction
    norm = math.hypot(dx, dy)
    if norm == 0:
        raise ValueError("direction must be nonzero")
    ux, uy = dx / norm, dy / norm
    curve = torus_segment((0.0, 0.0), math.atan2(uy, ux))
    exact_rational = (
        isinstance(dx, int) and isinstance(dy, int) and mode in ("auto", "perpendicular")
    )
    if mode == "perpendicular" and not (isinstance(dx, int) and isinstance(dy, int)):
        raise ValueError("perpendicular mode needs integer direction components")

    ms: list[tuple[int, int]] = []
    if exact_rational:
        g = math.gcd(abs(int(dx)), abs(int(dy)))
        q, p = int(dx) // g, int(dy) // g
        ms = [(-k * p, k * q) for k in range(1, k_max + 1)]
    else:
        if abs(ux) < 1e-15:
            ms = [(k, 0) for k in range(1, k_max + 1)]  # vertical direction
        else:
            slope = uy / ux
            ms = [(-p, q) for p, q in _continued_fraction_convergents(slope, k_max)]
    rows = []
    for i, m in enumerate(ms, start=1):
        val = oscillatory_integral(curve, window, m)
        rows.append(
            SaturationRow(
                index=i,
                m=m,
                value=val,
                magnitude=abs(val),
                normal_defect=abs(m[0] * ux + m[1] * uy),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Sphere: zonal harmonics on the equator


def zonal_great_circle(k: int) -> float:
    """Equator integral of the L2-normalized degree-k zonal harmonic:
    2 pi sqrt((2k+1)/(4 pi)) P_k(0)."""
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return TWO_PI * math.sqrt((2 * k + 1) / (4.0 * math.pi)) * legendre_p(k, 0.0)


# ---------------------------------------------------------------------------
# Spectral sums


def _check_torus(curve: ParamCurve):
    if curve.surface.tag != "flat-torus":
        raise ValueError("spectral sums require a flat-torus curve")


def kuznecov_sum(
    curve: ParamCurve,
    window: WeightWindow,
    Lambda: float,
    force_direct: bool = False,
    allow_large: bool = False,
) -> float:
    """Exact spectral sum sum_{|m| <= Lambda} (2pi)^-2 |int b e^{i m.gamma}|^2.

    Small Lambda runs per-frequency adaptive quadrature; large Lambda uses
    the batch NUFFT sweep over all frequencies at once (cross-validated in
    the tests against the direct path).
    """
    _check_torus(curve)
    if Lambda > LAMBDA_CAP and not allow_large:
        raise ValueError(f"Lambda = {Lambda} beyond cap {LAMBDA_CAP}; pass allow_large")
    kmax = int(math.floor(Lambda + 1e-9))
    if force_direct or kmax <= 40:
        terms = []
        for n in range(0, kmax * kmax + 1):
            circle = lattice_circle(n)
            for m in circle.vectors:
                if m[0] * m[0] + m[1] * m[1] <= Lambda * Lambda + 1e-9:
                    v = oscillatory_integral(curve, window, m)
                    terms.append(abs(v) ** 2)
        total = math.fsum(terms)
        return total / TWO_PI**2
    F = _all_frequencies(curve, window, kmax)
    ks = np.arange(-kmax, kmax + 1)
    k1, k2 = np.meshgrid(ks, ks, indexing="ij")
    mask = (k1 * k1 + k2 * k2) <= Lambda * Lambda + 1e-9
    vals = np.abs(F[mask]) ** 2
    return float(np.sum(vals)) / TWO_PI**2


def _all_frequencies(curve: ParamCurve, window: WeightWindow, kmax: int) -> np.ndarray:
    """Every integral for |m1|, |m2| <= kmax on one shared fine grid."""
    a, b = _support_interval(curve, window)
    nodes = max(96.0, 2.0 * _NODES_PER_OSC * kmax * (b - a) / TWO_PI)
    panels = int(math.ceil(nodes / _PANEL_ORDER))
    s, wb, gx, gy, _, _ = _nodes_for(curve, window, panels)
    return nufft2d_type1(gx, gy, wb.astype(complex), kmax)


def windowed_sum(
    curve: ParamCurve,
    window: WeightWindow,
    lam: float,
    T: float,
    mode: str = "sharp",
    allow_large: bool = False,
) -> float:
    """Spectral sum over a shrinking window of eigenvalues above lam.

    sharp: eigenvalues sqrt(n) in [lam, lam + 1/T].  smooth: weights
    chi(T (sqrt(n) - lam)) with chi a fixed Schwartz surrogate of
    compactly supported Fourier transform; chi is not sharp-window
    equivalent and is documented as a surrogate.
    """
    _check_torus(curve)
    if lam > LAMBDA_CAP and not allow_large:
        raise ValueError(f"lambda = {lam} beyond cap {LAMBDA_CAP}; pass allow_large")
    if T <= 0:
        raise ValueError("T must be positive")
    if mode == "sharp":
        lo = lam
        hi = lam + 1.0 / T
        n_lo = int(math.ceil(lo * lo - 1e-9))
        n_hi = int(math.floor(hi * hi + 1e-9))
        terms = []
        for n in range(max(n_lo, 0), n_hi + 1):
            for m in lattice_circle(n).vectors:
                terms.append(abs(oscillatory_integral(curve, window, m)) ** 2)
        return math.fsum(terms) / TWO_PI**2
    if mode == "smooth":
        chi = _smooth_chi()
        x_cut = chi.cutoff(1e-12)
        lo = max(0.0, lam - x_cut / T)
        hi = lam + x_cut / T
        n_lo = int(math.ceil(lo * lo - 1e-9))
        n_hi = int(math.floor(hi * hi + 1e-9))
        terms = []
        for n in range(max(n_lo, 0), n_hi + 1):
            w = chi(T * (math.sqrt(n) - lam)) if n > 0 else chi(T * (0.0 - lam))
            if w == 0.0:
                continue
            for m in lattice_circle(n).vectors:
                terms.append(w * abs(oscillatory_integral(curve, window, m)) ** 2)
        return math.fsum(terms) / TWO_PI**2
    raise ValueError(f"unknown mode {mode!r}")


class _SmoothChi:
    """chi = psi^2 with psi the cosine transform of a normalized bump on
    [-1/2, 1/2]; then chi >= 0, chi(0) = 1, and supp(chi hat) is in [-1, 1]."""

    def __init__(self):
        self._rules: dict[int, tuple] = {}
        self._norm = 1.0
        self._norm = 1.0 / self.psi(0.0)
        self._scan_x = np.arange(0.0, 2001.0, 1.0)
        self._scan_chi = np.array([self(v) for v in self._scan_x])

    def _rule(self, panels: int):
        # composite 24-point Gauss-Legendre on [-1/2, 1/2]
        if panels not in self._rules:
            x, w = np.polynomial.legendre.leggauss(24)
            edges = np.linspace(-0.5, 0.5, panels + 1)
            mids = 0.5 * (edges[:-1] + edges[1:])
            halfs = 0.5 * (edges[1:] - edges[:-1])
            tau = (mids[:, None] + halfs[:, None] * x[None, :]).ravel()
            ww = (halfs[:, None] * w[None, :]).ravel()
            g = np.exp(-1.0 / (1.0 - np.minimum(0.999999999, (2.0 * tau) ** 2)))
            self._rules[panels] = (tau, ww * g)
        return self._rules[panels]

    def psi(self, xval: float) -> float:
        # enough panels to resolve cos(x tau) over the unit support
        osc = abs(xval) / TWO_PI
        panels = 1 << max(2, int(math.ceil(math.log2(max(1.0, osc)))))
        tau, weights = self._rule(min(panels, 1 << 10))
        return self._norm * float(np.dot(weights, np.cos(xval * tau)))

    def __call__(self, xval: float) -> float:
        p = self.psi(xval)
        return p * p

    def cutoff(self, eps: float) -> float:
        """X beyond which the scanned chi stays below eps."""
        above = np.where(self._scan_chi > eps)[0]
        return float(self._scan_x[above[-1]] + 1.0) if len(above) else 1.0


_chi_singleton = None


def _smooth_chi() -> _SmoothChi:
    global _chi_singleton
    if _chi_singleton is None:
        _chi_singleton = _SmoothChi()
    return _chi_singleton


def smooth_window_weight(xval: float) -> float:
    """Public surrogate chi for inspection and tests."""
    return _smooth_chi()(xval)
