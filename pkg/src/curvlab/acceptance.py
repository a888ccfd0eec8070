"""Acceptance criteria: one runnable check per headline property.

Each criterion returns a CriterionResult with a measured detail string;
``verify_suite`` prints one pass/fail line per criterion.  The criteria
are deliberately self-contained so the CLI can gate CI on them and the
pytest suite can parametrize over them.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass

import numpy as np

from .admissibility import circle_radius_threshold
from .curves import (
    curve_from_curvature,
    hyperbolic_circle,
    hyperbolic_geodesic,
    hyperbolic_horocycle,
    hyperbolic_point,
    mobius_compose,
    rotate_about_i,
    torus_circle,
    transformed_curve,
    translate_along_vertical,
)
from .errors import CrossValidationError
from .kcrit import kcrit_bounded_backward, kcrit_cross_validate, kcrit_shooting
from .ode import circle_curvature
from .periods import (
    decay_scan,
    kuznecov_sum,
    oscillatory_integral,
    segment_saturation,
    zonal_great_circle,
)
from .phase import ModelCurvePair, check_mixed_bound, check_pure_second
from .profiles import HYPERBOLIC, make_bump_window, make_constant_profile, make_sampled_profile, make_uniform_window
from .special import bessel_j0


@dataclass(frozen=True)
class CriterionResult:
    cid: str
    title: str
    passed: bool
    detail: str
    seconds: float


@dataclass(frozen=True)
class Criterion:
    cid: str
    title: str
    fn: object

    def run(self) -> CriterionResult:
        t0 = time.perf_counter()
        passed, detail = self.fn()
        dt = time.perf_counter() - t0
        return CriterionResult(self.cid, self.title, passed, detail, dt)


# ---------------------------------------------------------------------------
# shared generators


def random_profiles(count: int, seed: int = 20240517, s_max: float = 20.0):
    """Nonconstant sampled profiles with K in [-4, -0.25] covering the ray."""
    rng = np.random.default_rng(seed)
    knots = np.arange(-s_max - 2.0, 1.5, 1.0)
    out = []
    while len(out) < count:
        if len(out) % 2 == 0:
            vals = rng.uniform(-3.9, -0.3, size=len(knots))
            prof = make_sampled_profile(list(zip(knots, vals)), "linear")
        else:
            # cubic interpolants overshoot; keep sample values off the band edges
            vals = rng.uniform(-3.55, -0.4, size=len(knots))
            prof = make_sampled_profile(list(zip(knots, vals)), "cubic")
        if -4.0 <= prof.k1 and prof.k0 <= -0.25:
            out.append(prof)
    return out


def _base_curve(kind: str, rng: np.random.Generator):
    if kind == "geodesic":
        return hyperbolic_geodesic(1j, rng.uniform(0.0, math.pi))
    if kind == "circle":
        return hyperbolic_circle(1j, rng.uniform(0.4, 1.4), phase=rng.uniform(0.0, 6.28))
    if kind == "horocycle":
        return hyperbolic_horocycle(1j, rng.uniform(0.0, 2.0 * math.pi))
    if kind == "point":
        return hyperbolic_point(1j)
    if kind == "perturbed":
        k0 = rng.uniform(0.2, 1.4)
        amp = k0 * rng.uniform(0.2, 0.8)
        om = rng.uniform(0.5, 2.5)
        ph = rng.uniform(0.0, 6.28)
        return curve_from_curvature(
            HYPERBOLIC,
            lambda s: k0 + amp * math.sin(om * s + ph),
            1j,
            rng.uniform(0.0, 6.28),
            (-1.3, 1.3),
        )
    raise ValueError(kind)


def random_hyperbolic_pair(
    rng: np.random.Generator,
    kind1: str | None = None,
    kind2: str | None = None,
    margin: float = 0.1,
) -> ModelCurvePair:
    kinds = ("geodesic", "circle", "horocycle", "perturbed")
    k1 = kind1 or kinds[rng.integers(len(kinds))]
    k2 = kind2 or kinds[rng.integers(len(kinds))]
    base1 = _base_curve(k1, rng)
    base2 = _base_curve(k2, rng)
    d0 = rng.uniform(3.0, 3.6)
    ang = rng.uniform(0.0, 2.0 * math.pi)
    for bump in (0.0, 0.8, 1.6, 2.4, 4.0):
        iso = mobius_compose(
            rotate_about_i(ang),
            mobius_compose(translate_along_vertical(d0 + bump), rotate_about_i(-ang)),
        )
        moved = transformed_curve(base1, iso)
        try:
            return ModelCurvePair(HYPERBOLIC, moved, base2, margin=margin)
        except ValueError:
            continue
    raise RuntimeError("could not build a disjoint pair")


# ---------------------------------------------------------------------------
# criteria

_SWEEP_CACHE: dict = {}


def _sweep_estimates(count=50, s_max=20.0):
    key = (count, s_max)
    if key not in _SWEEP_CACHE:
        profiles = random_profiles(count, s_max=s_max)
        ests = []
        for prof in profiles:
            shoot = kcrit_shooting(prof, s_max, tol=1e-10)
            bb = kcrit_bounded_backward(prof, s_max, bracket_tol=1e-4, tol=1e-9)
            ests.append((prof, shoot, bb))
        _SWEEP_CACHE[key] = ests
    return _SWEEP_CACHE[key]


def _c01_horocycle():
    t0 = time.perf_counter()
    prof = make_constant_profile(-1.0)
    a = kcrit_shooting(prof, 20.0)
    b = kcrit_bounded_backward(prof, 20.0)
    dt = time.perf_counter() - t0
    err = max(abs(a.value - 1.0), abs(b.value - 1.0))
    ok = err <= 1e-6 and dt < 1.0
    return ok, f"max |kcrit - 1| = {err:.2e}, runtime {dt:.3f}s"


def _c02_flat():
    worst = 0.0
    values = []
    for s_max in (10.0, 100.0, 1000.0):
        prof = make_constant_profile(0.0)
        est = kcrit_shooting(prof, s_max)
        values.append(est.value)
        if est.error_radius != 1.0 / s_max:
            return False, f"radius {est.error_radius} != 1/{s_max}"
        worst = max(worst, est.value - 1.0 / s_max)
    decreasing = values[0] > values[1] > values[2]
    bb = kcrit_bounded_backward(make_constant_profile(0.0), 100.0)
    ok = worst <= 1e-12 and decreasing and abs(bb.value) <= 1e-12
    return ok, f"values {values} (each <= 1/s_max + {worst:.1e}), bb = {bb.value}"


def _c03_circle_closed_form():
    details = []
    ok = True
    for a in (1.0, 2.0, 3.0):
        t0 = time.perf_counter()
        prof = make_constant_profile(-a * a)
        curve = circle_curvature(prof, 10.0, tol=1e-11)
        mask = curve.grid >= 1e-3
        exact = a / np.tanh(a * curve.grid[mask])
        rel = float(np.max(np.abs(curve.kappa[mask] - exact) / exact))
        dt = time.perf_counter() - t0
        ok = ok and rel <= 1e-8 and dt < 1.0
        details.append(f"a={a:g}: rel {rel:.1e} in {dt:.2f}s")
    return ok, "; ".join(details)


def _c04_monotone_ladder():
    bad = 0
    worst_low = math.inf
    worst_high = -math.inf
    for prof, shoot, bb in _sweep_estimates():
        k_hat = bb.value
        lower_slack = bb.error_radius + 1e-9
        upper_slack = (bb.advisory_radius or bb.error_radius) + 1e-9
        for s, kappa_s in shoot.ladder:
            excess = kappa_s - k_hat
            worst_low = min(worst_low, excess)
            worst_high = max(worst_high, excess - 1.0 / s)
            if excess <= -lower_slack or excess > 1.0 / s + upper_slack:
                bad += 1
    ok = bad == 0
    return ok, (
        f"{bad} violations over 50 profiles; min excess {worst_low:.2e}, "
        f"max excess-over-1/s {worst_high:.2e}"
    )


def _c05_sandwich():
    bad = 0
    for prof, shoot, bb in _sweep_estimates():
        lo = math.sqrt(-prof.k0) - 1e-6
        hi = math.sqrt(-prof.k1) + 1e-6
        for value in (shoot.value, bb.value):
            if not (lo <= value <= hi):
                bad += 1
    return bad == 0, f"{bad} out-of-band values over 50 profiles (both methods)"


def _c06_thresholds():
    t1 = circle_radius_threshold(-1.0, -4.0)
    t2 = circle_radius_threshold(0.0, -1.0)
    t3 = circle_radius_threshold(-1.0, -1.0)
    ok = (
        abs(t1 - 0.5 * math.log(3.0)) <= 1e-9
        and t2 == 1.0
        and math.isinf(t3)
    )
    return ok, f"(-1,-4) -> {t1!r}; (0,-1) -> {t2!r}; (-1,-1) -> {t3!r}"


def _c07_mixed_bound():
    t0 = time.perf_counter()
    rng = np.random.default_rng(91)
    max_ratio = -math.inf
    violations = 0
    for _ in range(20):
        pair = random_hyperbolic_pair(rng)
        rep = check_mixed_bound(pair, 1000, tol=1e-4)
        max_ratio = max(max_ratio, rep.max_ratio)
        violations += len(rep.violations)
    dt = time.perf_counter() - t0
    ok = violations == 0 and max_ratio <= 1.0 + 1e-4 and dt < 10.0
    return ok, f"max ratio {max_ratio:.6f}, {violations} violations, runtime {dt:.2f}s"


def _c08_pure_second():
    rng = np.random.default_rng(92)
    total = 0
    worst = -math.inf
    for kind1 in ("geodesic", "circle", "horocycle"):
        for kind2 in ("point", "geodesic"):
            pair = random_hyperbolic_pair(rng, kind1=kind1, kind2=kind2)
            rep = check_pure_second(pair, 170, tol=1e-5)
            total += rep.n_samples
            worst = max(worst, rep.max_abs_err)
            if not rep.passed:
                return False, f"failure on {kind1}/{kind2}: max err {rep.max_abs_err:.2e}"
    return worst <= 1e-5, f"max |fd - formula| = {worst:.2e} over {total} samples"


def _c09_bessel_oracle():
    circ = torus_circle((math.pi, math.pi), 1.0)
    win = make_uniform_window(0.0, 2.0 * math.pi)
    worst = 0.0
    worst_k = 0
    for lam in range(1, 501):
        m = (lam, 0)
        val = oscillatory_integral(circ, win, m)
        expected = cmath.exp(1j * lam * math.pi) * 2.0 * math.pi * bessel_j0(lam)
        rel = abs(val - expected) / abs(expected)
        if rel > worst:
            worst, worst_k = rel, lam
    return worst <= 1e-8, f"worst rel err {worst:.2e} at lambda = {worst_k}"


def _c10_torus_decay():
    t0 = time.perf_counter()
    circ = torus_circle((math.pi, math.pi), 1.0)
    win = make_uniform_window(0.0, 2.0 * math.pi)
    fit = decay_scan(circ, win, [k * k for k in range(100, 1001)])
    dt = time.perf_counter() - t0
    ok = abs(fit.slope + 0.5) <= 0.1 and dt < 120.0
    return ok, f"slope {fit.slope:.4f} (target -0.5 +- 0.1), residual {fit.residual_rms:.3f}, runtime {dt:.1f}s"


def _c11_segment_saturation():
    win = make_bump_window(0.0, 1.0)
    ib = win.integral()
    rows = segment_saturation((1, 0), win, 12)
    worst = max(abs(r.magnitude - ib) for r in rows)
    ok1 = worst <= 1e-12 * max(1.0, ib)
    rows2 = segment_saturation((2.0, 1.0), win, 6, mode="convergents")
    final = rows2[-1]
    ok2 = abs(final.magnitude - ib) <= 0.05 * ib
    ok = ok1 and ok2
    return ok, (
        f"perpendicular max |I - int b| = {worst:.2e}; "
        f"slope-1/2 deepest |I| = {final.magnitude:.6f} vs int b = {ib:.6f}"
    )


def _c12_sphere_nondecay():
    vals = [zonal_great_circle(2 * j) for j in range(1, 201)]
    min_abs = min(abs(v) for v in vals)
    last = abs(vals[-1])
    # Legendre asymptotics: P_{2j}(0) ~ (-1)^j / sqrt(pi j), so the equator
    # integral magnitude tends to 2
    ok = min_abs >= 1.0 and abs(last - 2.0) <= 0.04
    return ok, f"min |value| = {min_abs:.6f}, j=200 value {last:.6f} vs limit 2"


def _c13_kuznecov_linearity():
    t0 = time.perf_counter()
    circ = torus_circle((math.pi, math.pi), 1.0)
    win = make_uniform_window(0.0, 2.0 * math.pi)
    ratios = []
    for lam in (200, 400, 600, 800, 1000):
        ratios.append(kuznecov_sum(circ, win, lam) / lam)
    dt = time.perf_counter() - t0
    spread = max(ratios) / min(ratios)
    return spread <= 1.2, f"sum/Lambda in [{min(ratios):.4f}, {max(ratios):.4f}], spread {spread:.4f}, runtime {dt:.1f}s"


def _c14_cross_method():
    failures = 0
    worst = 0.0
    profiles = random_profiles(100, seed=777)
    for prof in profiles:
        try:
            rep = kcrit_cross_validate(prof, 20.0, tol=1e-9, bracket_tol=1e-3)
        except CrossValidationError:
            failures += 1
            continue
        worst = max(worst, rep.gap / max(rep.combined_radius, 1e-30))
    return failures == 0, f"{failures} failures over 100 profiles; worst gap/radius = {worst:.3f}"


CRITERIA = (
    Criterion("A01", "horocycle constant: kcrit(K=-1) = 1 by both methods", _c01_horocycle),
    Criterion("A02", "flat case: kcrit(K=0) <= 1/s_max with radius 1/s_max", _c02_flat),
    Criterion("A03", "circle curvature matches a*coth(a r) at rel 1e-8", _c03_circle_closed_form),
    Criterion("A04", "monotone shooting ladder obeys the 1/s envelope", _c04_monotone_ladder),
    Criterion("A05", "sandwich sqrt(-K0) <= kcrit <= sqrt(-K1)", _c05_sandwich),
    Criterion("A06", "circle-radius threshold regimes", _c06_thresholds),
    Criterion("A07", "mixed-derivative bound on random hyperbolic pairs", _c07_mixed_bound),
    Criterion("A08", "pure second-derivative formula at 1e-5", _c08_pure_second),
    Criterion("A09", "full-circle integrals match 2 pi J0 at rel 1e-8", _c09_bessel_oracle),
    Criterion("A10", "torus extremal-norm decay slope -0.5 +- 0.1", _c10_torus_decay),
    Criterion("A11", "segment saturation reaches the window integral", _c11_segment_saturation),
    Criterion("A12", "sphere zonal non-decay with limit 2", _c12_sphere_nondecay),
    Criterion("A13", "Kuznecov sum growth is linear within 20%", _c13_kuznecov_linearity),
    Criterion("A14", "cross-method agreement on 100 random profiles", _c14_cross_method),
)


def verify_suite(selected=None, stream=None) -> int:
    """Run criteria, print one pass/fail line each, return process exit code."""
    import sys

    out = stream or sys.stdout
    chosen = [c for c in CRITERIA if selected is None or c.cid in selected]
    failures = 0
    print(f"curvlab acceptance suite: {len(chosen)} criteria", file=out)
    for crit in chosen:
        res = crit.run()
        status = "PASS" if res.passed else "FAIL"
        if not res.passed:
            failures += 1
        print(
            f"[{status}] {res.cid} {crit.title} ({res.seconds:.2f}s): {res.detail}",
            file=out,
        )
    print(
        f"{len(chosen) - failures}/{len(chosen)} criteria passed", file=out
    )
    return 0 if failures == 0 else 2
