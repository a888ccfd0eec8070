"""Critical geodesic curvature of a ray by two independent methods.

The critical curvature of a backward ray is the unique initial slope
h'(0)/h(0) whose Jacobi solution stays bounded for r <= 0.  Two routes:

* shooting family: h_s with h_s(-s) = 0, h_s(0) = 1 for a geometric ladder
  of depths; kappa_s(0) = h_s'(0) decreases to the critical value with the
  rigorous envelope 0 < kappa_s(0) - value <= 1/s.
* bounded-backward bisection: classify Riccati trials u(0) = u0 by whether
  the backward solution blows up before -s_max; survivors ending above the
  circle-curvature envelope at radius s_max count as supercritical.

For constant curvature K = -a^2 both converge to a (exponentially fast).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CrossValidationError, NoSignChangeError, ProfileDomainError
from .ode import jacobi_endpoint, riccati_backward_endpoint
from .profiles import CurvatureProfile

_ABOVE = "above"
_BELOW = "below"


@dataclass(frozen=True)
class CriticalCurvatureEstimate:
    value: float
    error_radius: float  # rigorous bound
    method: str  # "shooting-family" | "bounded-backward"
    s_used: float
    ladder: tuple = ()  # ((s, kappa_s), ...) for the shooting family
    cauchy_gap: float | None = None  # advisory: last two ladder rungs
    advisory_radius: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "kcrit": self.value,
            "error": self.error_radius,
            "method": self.method,
            "ladder": [[s, k] for s, k in self.ladder],
        }


@dataclass(frozen=True)
class CrossValidationReport:
    shooting: CriticalCurvatureEstimate
    bounded_backward: CriticalCurvatureEstimate
    gap: float
    combined_radius: float

    @property
    def consistent(self) -> bool:
        return self.gap <= self.combined_radius + 1e-12


def _ladder_depths(s_max: float) -> list[float]:
    depths = []
    s = 1.0
    while s < s_max:
        depths.append(s)
        s *= 2.0
    depths.append(float(s_max))
    return depths


def _check_ray_domain(profile: CurvatureProfile, s_max: float):
    lo, hi = profile.domain
    if lo > -s_max - 1e-12 or hi < -1e-12:
        raise ProfileDomainError(
            f"profile domain [{lo}, {hi}] does not cover the ray [-{s_max}, 0]"
        )


def kcrit_shooting(
    profile: CurvatureProfile, s_max: float, tol: float = 1e-10
) -> CriticalCurvatureEstimate:
    """Shooting-family estimate with rigorous error radius 1/s_max."""
    if not s_max >= 1:
        raise ValueError("s_max must be at least 1")
    _check_ray_domain(profile, s_max)
    if s_max * math.sqrt(max(1.0, -profile.k1)) > 600:
        raise ValueError("ray too deep: Jacobi solutions would overflow float64")
    ladder = []
    for s in _ladder_depths(s_max):
        # h(-s) = 0 with arbitrary positive slope; kappa_s(0) = h'(0)/h(0)
        h_end, hp_end = jacobi_endpoint(profile, -s, 0.0, 0.0, 1.0, tol)
        ladder.append((s, hp_end / h_end))
    value = ladder[-1][1]
    gap = abs(ladder[-1][1] - ladder[-2][1]) if len(ladder) > 1 else math.nan
    return CriticalCurvatureEstimate(
        value=value,
        error_radius=1.0 / s_max,
        method="shooting-family",
        s_used=float(s_max),
        ladder=tuple(ladder),
        cauchy_gap=gap,
        advisory_radius=gap,
    )


def _kappa_envelope(k0: float, s_max: float) -> float:
    # circle-curvature lower envelope at radius s_max
    if k0 < 0:
        a = math.sqrt(-k0)
        return a / math.tanh(a * s_max)
    return 1.0 / s_max


def _classify(profile, u0, s_max, tol, envelope):
    """Returns (side, certain). Blow-up to +inf is a certain 'above';
    survivors are judged by the endpoint against the envelope."""
    blow, u_end = riccati_backward_endpoint(profile, u0, s_max, tol)
    if blow is not None:
        return (_ABOVE, True) if blow.sign > 0 else (_BELOW, True)
    if u_end > envelope:
        return _ABOVE, False
    return _BELOW, False


def kcrit_bounded_backward(
    profile: CurvatureProfile,
    s_max: float,
    bracket_tol: float = 1e-8,
    tol: float = 1e-10,
) -> CriticalCurvatureEstimate:
    """Bisection on u(0) in [sqrt(-K0), sqrt(-K1)] by backward blow-up class.

    error_radius is the final bracket width; the advisory radius widens by
    1/(2 s_max) whenever an endpoint was classified by the envelope rather
    than by an actual blow-up.
    """
    if not s_max >= 1:
        raise ValueError("s_max must be at least 1")
    _check_ray_domain(profile, s_max)
    lo = math.sqrt(abs(profile.k0)) + 0.0
    hi = math.sqrt(abs(profile.k1)) + 0.0
    if hi - lo <= bracket_tol:
        # constant (or numerically constant) curvature: the sandwich pins the value
        return CriticalCurvatureEstimate(
            value=0.5 * (lo + hi),
            error_radius=hi - lo,
            method="bounded-backward",
            s_used=float(s_max),
            advisory_radius=hi - lo,
        )
    envelope = _kappa_envelope(profile.k0, s_max)
    lo_side, lo_certain = _classify(profile, lo, s_max, tol, envelope)
    hi_side, hi_certain = _classify(profile, hi, s_max, tol, envelope)
    if lo_side != _BELOW or hi_side != _ABOVE:
        raise NoSignChangeError(lo, lo_side, hi, hi_side)
    any_envelope = not (lo_certain and hi_certain)
    for _ in range(200):
        if hi - lo <= bracket_tol:
            break
        mid = 0.5 * (lo + hi)
        side, certain = _classify(profile, mid, s_max, tol, envelope)
        any_envelope = any_envelope or not certain
        if side == _ABOVE:
            hi = mid
        else:
            lo = mid
    width = hi - lo
    return CriticalCurvatureEstimate(
        value=0.5 * (lo + hi),
        error_radius=width,
        method="bounded-backward",
        s_used=float(s_max),
        advisory_radius=width + (0.5 / s_max if any_envelope else 0.0),
    )


def kcrit_cross_validate(
    profile: CurvatureProfile,
    s_max: float,
    tol: float = 1e-10,
    bracket_tol: float = 1e-8,
) -> CrossValidationReport:
    """Run both methods and require agreement within combined radii."""
    a = kcrit_shooting(profile, s_max, tol=tol)
    b = kcrit_bounded_backward(profile, s_max, bracket_tol=bracket_tol, tol=tol)
    gap = abs(a.value - b.value)
    combined = a.error_radius + b.error_radius
    report = CrossValidationReport(
        shooting=a, bounded_backward=b, gap=gap, combined_radius=combined
    )
    if not report.consistent:
        raise CrossValidationError(
            f"methods disagree: gap {gap!r} exceeds combined radius {combined!r}"
        )
    return report
