"""Sectional-curvature profiles along geodesic rays, weight windows, surfaces.

A profile is a deterministic map r -> K(r) <= 0 along a single unit-speed
geodesic ray together with certified bounds K1 <= K(r) <= K0 <= 0.  All
objects here are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import PositiveCurvatureError, ProfileDomainError

# Dense scan resolution used to certify K0/K1 over a profile's domain.
SCAN_POINTS = 10_000

# Interpolants through nonpositive samples may overshoot zero by roundoff;
# anything beyond this is treated as a genuine positivity violation.
_POSITIVITY_GRACE = 1e-12


@dataclass(frozen=True)
class CurvatureProfile:
    """Curvature along a geodesic ray with certified bounds.

    kind is one of "constant", "sampled", "closed_form".  Evaluation is
    vectorized and clamps interpolation roundoff into [k1, k0]; querying
    outside ``domain`` raises instead of extrapolating.
    """

    kind: str
    k0: float  # sup bound, <= 0
    k1: float  # inf bound
    domain: tuple[float, float]
    _fn: Callable = field(repr=False)
    name: str = ""
    samples: tuple | None = None
    interp: str | None = None

    def __call__(self, r):
        scalar = np.isscalar(r)
        rr = np.asarray(r, dtype=float)
        lo, hi = self.domain
        if np.any(rr < lo - 1e-12) or np.any(rr > hi + 1e-12):
            bad = rr[(rr < lo - 1e-12) | (rr > hi + 1e-12)]
            raise ProfileDomainError(
                f"r = {float(np.atleast_1d(bad)[0])!r} outside profile domain [{lo}, {hi}]"
            )
        k = np.asarray(self._fn(rr), dtype=float)
        if np.any(k > 1e-9):
            bad = float(np.max(k))
            raise PositiveCurvatureError(f"profile produced K = {bad!r} > 0")
        # interpolation wiggle above zero (bounded by the construction check)
        # is flattened; values may exceed the scanned extrema by O(scan step^2)
        k = np.minimum(k, 0.0)
        return float(k) if scalar else k

    def eval_many(self, rr: np.ndarray) -> np.ndarray:
        """Vectorized evaluation on a monotone array (integrator hot path).

        Domain is checked on the endpoints only; positivity was certified at
        construction.  Values are the raw interpolant (no clamping: a clamp
        would put derivative kinks in the middle of integration intervals).
        """
        lo, hi = self.domain
        first, last = float(rr[0]), float(rr[-1])
        if min(first, last) < lo - 1e-9 or max(first, last) > hi + 1e-9:
            raise ProfileDomainError(
                f"r range [{min(first, last)}, {max(first, last)}] outside "
                f"profile domain [{lo}, {hi}]"
            )
        return np.asarray(self._fn(rr), dtype=float)

    def to_json(self) -> str:
        if self.kind == "constant":
            return json.dumps({"kind": "constant", "K": self.k0})
        if self.kind == "sampled":
            return json.dumps(
                {
                    "kind": "sampled",
                    "samples": [[r, k] for r, k in self.samples],
                    "interp": self.interp,
                }
            )
        raise ValueError(f"profile kind {self.kind!r} has no JSON form; resample it")

    @staticmethod
    def from_json(doc: str | dict) -> "CurvatureProfile":
        obj = json.loads(doc) if isinstance(doc, str) else doc
        kind = obj.get("kind")
        if kind == "constant":
            return make_constant_profile(obj["K"])
        if kind == "sampled":
            return make_sampled_profile(
                [tuple(p) for p in obj["samples"]], obj.get("interp", "cubic")
            )
        raise ValueError(f"unknown profile kind {kind!r}")


def make_constant_profile(K: float) -> CurvatureProfile:
    """Profile with K(r) = K everywhere; rejects K > 0."""
    K = float(K)
    if K > 0:
        raise PositiveCurvatureError(f"constant curvature {K!r} is positive")
    return CurvatureProfile(
        kind="constant",
        k0=K,
        k1=K,
        domain=(-math.inf, math.inf),
        _fn=lambda rr: np.full_like(np.asarray(rr, dtype=float), K),
        name=f"K={K:g}",
    )


def make_sampled_profile(samples, interpolation: str = "cubic") -> CurvatureProfile:
    """Interpolating profile through (r, K) samples.

    Samples must be sorted by r with all K <= 0; evaluation outside the
    sample range is an error, not clamping.  Cubic interpolation uses
    natural boundary conditions; K0/K1 come from a dense scan of the
    interpolant.
    """
    pts = [(float(r), float(k)) for r, k in samples]
    if len(pts) < 2:
        raise ValueError("need at least 2 samples")
    rs = np.array([p[0] for p in pts])
    ks = np.array([p[1] for p in pts])
    if np.any(np.diff(rs) <= 0):
        raise ValueError("samples must be strictly sorted by r")
    if np.any(ks > 0):
        raise PositiveCurvatureError(f"sample K = {float(ks.max())!r} is positive")
    if interpolation == "linear":
        fn = lambda rr: np.interp(rr, rs, ks)
    elif interpolation == "cubic":
        spline = CubicSpline(rs, ks, bc_type="natural")
        fn = spline
    else:
        raise ValueError(f"unknown interpolation {interpolation!r}")

    grid = np.linspace(rs[0], rs[-1], SCAN_POINTS)
    scan = np.asarray(fn(grid), dtype=float)
    kmax = max(float(scan.max()), float(ks.max()))
    kmin = min(float(scan.min()), float(ks.min()))
    if kmax > _POSITIVITY_GRACE:
        raise PositiveCurvatureError(
            f"interpolant reaches K = {kmax!r} > 0 between samples"
        )
    return CurvatureProfile(
        kind="sampled",
        k0=min(kmax, 0.0),
        k1=kmin,
        domain=(float(rs[0]), float(rs[-1])),
        _fn=fn,
        name=f"sampled[{len(pts)}]",
        samples=tuple(pts),
        interp=interpolation,
    )


def make_closed_form_profile(name, fn, domain, k0=None, k1=None) -> CurvatureProfile:
    """Registry-style profile around an arbitrary callable.

    Bounds are certified by a dense scan of ``domain`` unless supplied.
    No JSON form; sample it if persistence is needed.
    """
    lo, hi = float(domain[0]), float(domain[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) and (k0 is None or k1 is None):
        raise ValueError("infinite domain requires explicit k0/k1 bounds")
    if k0 is None or k1 is None:
        grid = np.linspace(lo, hi, SCAN_POINTS)
        scan = np.asarray(fn(grid), dtype=float)
        k0 = float(scan.max()) if k0 is None else k0
        k1 = float(scan.min()) if k1 is None else k1
    if k0 > _POSITIVITY_GRACE:
        raise PositiveCurvatureError(f"closed-form profile reaches K = {k0!r} > 0")
    return CurvatureProfile(
        kind="closed_form",
        k0=min(float(k0), 0.0),
        k1=float(k1),
        domain=(lo, hi),
        _fn=fn,
        name=name,
    )


def make_piecewise_constant_profile(breaks, values, domain) -> CurvatureProfile:
    """Piecewise-constant K with jumps at ``breaks`` (values[i] left of breaks[i])."""
    br = np.asarray(breaks, dtype=float)
    vals = np.asarray(values, dtype=float)
    if len(vals) != len(br) + 1:
        raise ValueError("need len(values) == len(breaks) + 1")
    if np.any(vals > 0):
        raise PositiveCurvatureError("piecewise value is positive")
    fn = lambda rr: vals[np.searchsorted(br, np.asarray(rr, dtype=float), side="right")]
    return make_closed_form_profile(
        f"piecewise[{len(vals)}]", fn, domain, k0=float(vals.max()), k1=float(vals.min())
    )


def scale_profile(profile: CurvatureProfile, c: float) -> CurvatureProfile:
    """Rescaled profile K_c(r) = c^-2 K(r/c); critical curvature scales by 1/c."""
    c = float(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    lo, hi = profile.domain

    def fn(rr):
        arr = np.asarray(rr, dtype=float)
        vals = profile.eval_many(np.atleast_1d(arr) / c) / (c * c)
        return vals.reshape(arr.shape)

    return make_closed_form_profile(
        f"scale({profile.name},{c:g})",
        fn,
        (lo * c, hi * c),
        k0=profile.k0 / (c * c),
        k1=profile.k1 / (c * c),
    )


# ---------------------------------------------------------------------------
# Weight windows


@dataclass(frozen=True)
class WeightWindow:
    """Weight b(s), vanishing identically outside ``support``."""

    kind: str  # "bump" | "uniform"
    support: tuple[float, float]
    center: float = 0.0
    half_width: float = 1.0

    def __call__(self, s):
        scalar = np.isscalar(s)
        ss = np.asarray(s, dtype=float)
        if self.kind == "uniform":
            out = np.where((ss >= self.support[0]) & (ss <= self.support[1]), 1.0, 0.0)
        else:
            x = (ss - self.center) / self.half_width
            out = np.zeros_like(ss)
            inside = np.abs(x) < 1.0
            # exp(-1/(1-x^2)) with the argument guarded against overflow at |x|->1
            xi = x[inside]
            out[inside] = np.exp(-1.0 / (1.0 - xi * xi))
        return float(out) if scalar else out

    def integral(self) -> float:
        """integral of b over its support (256-node Gauss-Legendre; exact for uniform)."""
        lo, hi = self.support
        if self.kind == "uniform":
            return hi - lo
        x, w = np.polynomial.legendre.leggauss(256)
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        return float(np.dot(w, self(mid + half * x)) * half)

    def to_json(self) -> str:
        if self.kind == "uniform":
            return json.dumps({"kind": "uniform", "lo": self.support[0], "hi": self.support[1]})
        return json.dumps({"kind": "bump", "center": self.center, "half_width": self.half_width})

    @staticmethod
    def from_json(doc: str | dict) -> "WeightWindow":
        obj = json.loads(doc) if isinstance(doc, str) else doc
        if obj.get("kind") == "uniform":
            return make_uniform_window(obj["lo"], obj["hi"])
        if obj.get("kind") == "bump":
            return make_bump_window(obj["center"], obj["half_width"])
        raise ValueError(f"unknown window kind {obj.get('kind')!r}")


def make_bump_window(center: float, half_width: float) -> WeightWindow:
    """Smooth compactly supported bump b(s) = exp(-1/(1-x^2)), x = (s-center)/half_width."""
    if not half_width > 0:
        raise ValueError(f"half_width must be positive, got {half_width!r}")
    center, half_width = float(center), float(half_width)
    return WeightWindow(
        kind="bump",
        support=(center - half_width, center + half_width),
        center=center,
        half_width=half_width,
    )


def make_uniform_window(lo: float, hi: float) -> WeightWindow:
    """b = 1 on [lo, hi], 0 outside.

    Not smooth at the boundary; intended for closed curves where the
    integrand is periodic (full-circle period integrals).
    """
    if not hi > lo:
        raise ValueError("need hi > lo")
    return WeightWindow(kind="uniform", support=(float(lo), float(hi)))


# ---------------------------------------------------------------------------
# Surface models


TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SurfaceModel:
    """Model surface tag; curvature is constant on each model."""

    tag: str  # "euclidean-plane" | "flat-torus" | "hyperbolic-plane" | "round-sphere"

    @property
    def curvature(self) -> float:
        return {
            "euclidean-plane": 0.0,
            "flat-torus": 0.0,
            "hyperbolic-plane": -1.0,
            "round-sphere": 1.0,
        }[self.tag]

    @staticmethod
    def wrap_torus(x):
        """Reduce coordinates to the fundamental domain [0, 2pi)^2."""
        return np.mod(x, TWO_PI)


EUCLIDEAN = SurfaceModel("euclidean-plane")
FLAT_TORUS = SurfaceModel("flat-torus")
HYPERBOLIC = SurfaceModel("hyperbolic-plane")
ROUND_SPHERE = SurfaceModel("round-sphere")

_SURFACES = {s.tag: s for s in (EUCLIDEAN, FLAT_TORUS, HYPERBOLIC, ROUND_SPHERE)}


def surface_from_tag(tag: str) -> SurfaceModel:
    if tag not in _SURFACES:
        raise ValueError(f"unknown surface tag {tag!r}")
    return _SURFACES[tag]
