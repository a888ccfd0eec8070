"""Curvature-hypothesis checks and explicit admissibility thresholds.

A weighted curve satisfies the hypotheses when its geodesic curvature
avoids, at every parameter in the window support, the critical curvature
of both backward normal rays.  Numerically the comparison carries the
kcrit error radii, so a verdict can be indeterminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curves import ParamCurve
from .kcrit import kcrit_shooting
from .profiles import CurvatureProfile, WeightWindow, make_constant_profile

ADMISSIBLE = "admissible"
VIOLATED = "violated at samples"
INDETERMINATE = "indeterminate"

BAND_ADMISSIBLE = "admissible-by-band"
BAND_INCONCLUSIVE = "inconclusive"

# |kappa_gamma - kcrit| below this counts as equality (hypothesis violated)
EQUALITY_TOL = 1e-6


@dataclass(frozen=True)
class AdmissibilityRow:
    s: float
    kappa_gamma: float
    kplus: float
    kminus: float
    margin: float


@dataclass(frozen=True)
class AdmissibilityReport:
    rows: tuple[AdmissibilityRow, ...]
    verdict: str
    min_margin: float
    max_radius: float  # largest combined kcrit error radius over samples

    def csv_rows(self):
        return [
            (r.s, r.kappa_gamma, r.kplus, r.kminus, r.margin) for r in self.rows
        ]


def chebyshev_samples(lo: float, hi: float, n: int) -> np.ndarray:
    """Chebyshev nodes on [lo, hi] plus the endpoints, sorted."""
    k = np.arange(1, n + 1)
    x = np.cos((2 * k - 1) * np.pi / (2 * n))
    pts = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x
    return np.unique(np.concatenate([[lo], np.sort(pts), [hi]]))


def constant_ray_profiles(K: float) -> Callable:
    """Ray-profile map for a constant-curvature surface: both normals see K."""
    profile = make_constant_profile(K)
    return lambda s: (profile, profile)


def check_curve(
    curve: ParamCurve,
    window: WeightWindow,
    ray_profiles: Callable[[float], tuple[CurvatureProfile, CurvatureProfile]],
    s_max: float,
    n_samples: int = 24,
    tol: float = 1e-10,
    equality_tol: float = EQUALITY_TOL,
) -> AdmissibilityReport:
    """Compare kappa_gamma(s) with the critical curvature of both normal rays.

    Verdict is admissible only when every sampled margin exceeds the sum of
    the kcrit error radii; margins below ``equality_tol`` are treated as an
    outright violation of the strict-inequality hypothesis.
    """
    if n_samples < 16:
        raise ValueError("need n_samples >= 16")
    if curve.geodesic_curvature is None:
        raise ValueError("curve carries no geodesic curvature")
    lo, hi = window.support
    rows = []
    worst_margin = math.inf
    max_radius = 0.0
    violated = False
    indeterminate = False
    cache: dict = {}  # shared ray profiles (constant-curvature surfaces) solve once

    def _kcrit(profile):
        key = id(profile)
        if key not in cache:
            cache[key] = (kcrit_shooting(profile, s_max, tol=tol), profile)
        return cache[key][0]

    for s in chebyshev_samples(lo, hi, n_samples):
        prof_plus, prof_minus = ray_profiles(s)
        est_plus = _kcrit(prof_plus)
        est_minus = _kcrit(prof_minus)
        kg = float(curve.geodesic_curvature(s))
        margin = min(abs(kg - est_plus.value), abs(kg - est_minus.value))
        radius = est_plus.error_radius + est_minus.error_radius
        scale = max(1.0, abs(kg), est_plus.value, est_minus.value)
        if margin <= equality_tol * scale:
            violated = True
        elif margin <= radius:
            indeterminate = True
        rows.append(
            AdmissibilityRow(
                s=float(s),
                kappa_gamma=kg,
                kplus=est_plus.value,
                kminus=est_minus.value,
                margin=margin,
            )
        )
        worst_margin = min(worst_margin, margin)
        max_radius = max(max_radius, radius)
    verdict = VIOLATED if violated else (INDETERMINATE if indeterminate else ADMISSIBLE)
    return AdmissibilityReport(
        rows=tuple(rows), verdict=verdict, min_margin=worst_margin, max_radius=max_radius
    )


def criterion_band(kappa_range, K0: float, K1: float) -> str:
    """Band criterion: admissible when the curvature range clears the band
    [sqrt(-K0), sqrt(-K1)] entirely below or entirely above."""
    kmin, kmax = float(kappa_range[0]), float(kappa_range[1])
    if kmax < kmin:
        raise ValueError("malformed curvature range")
    if not (0 >= K0 >= K1):
        raise ValueError("need 0 >= K0 >= K1")
    if kmax < math.sqrt(-K0) or kmin > math.sqrt(-K1):
        return BAND_ADMISSIBLE
    return BAND_INCONCLUSIVE


def circle_radius_threshold(K0: float, K1: float) -> float:
    """Radius below which every geodesic circle is admissible.

    Three regimes: a log formula for 0 > K0 > K1, 1/sqrt(-K1) for
    0 = K0 > K1, and +inf for constant curvature.  K1 = 0 (flat) has no
    circle constraint regime and is unsupported.
    """
    if not (0 >= K0 >= K1):
        raise ValueError("need 0 >= K0 >= K1")
    if K1 == 0:
        raise ValueError("K1 = 0: no circle-radius constraint regime")
    if K0 == K1:
        return math.inf
    a0 = math.sqrt(-K0)
    a1 = math.sqrt(-K1)
    if K0 == 0:
        return 1.0 / a1
    return math.log((a1 + a0) / (a1 - a0)) / (2.0 * a0)
