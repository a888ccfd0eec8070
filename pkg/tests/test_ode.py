import math

import numpy as np
import pytest

from curvlab.errors import NonpositivityViolation, StepUnderflowError
from curvlab.ode import (
    circle_curvature,
    solve_jacobi,
    solve_riccati,
    trajectory_csv_rows,
)
from curvlab.profiles import make_constant_profile, make_sampled_profile
from curvlab.rk45 import integrate_generic


def random_profile(seed=11, lo=-12.0, hi=12.0):
    rng = np.random.default_rng(seed)
    knots = np.linspace(lo, hi, 25)
    vals = rng.uniform(-3.5, -0.4, size=len(knots))
    return make_sampled_profile(list(zip(knots, vals)), "cubic")


# -- Jacobi ------------------------------------------------------------------


def test_jacobi_flat_parallel_field():
    prof = make_constant_profile(0.0)
    sol = solve_jacobi(prof, 0.0, -10.0, 1.0, 0.0)
    assert np.max(np.abs(sol.h - 1.0)) < 1e-12
    assert np.max(np.abs(sol.hp)) < 1e-12


def test_jacobi_sinh():
    prof = make_constant_profile(-1.0)
    sol = solve_jacobi(prof, 0.0, 5.0, 0.0, 1.0)
    idx = np.argmin(np.abs(sol.grid - 5.0))
    assert sol.h[idx] == pytest.approx(math.sinh(5.0), rel=1e-9)
    assert sol.h[idx] == pytest.approx(74.20321057778875, rel=1e-8)


def test_jacobi_bounded_backward_solution():
    # h(0)=1, h'(0)=1 on K=-1 is e^r: decays backward, witnessing boundedness
    prof = make_constant_profile(-1.0)
    sol = solve_jacobi(prof, 0.0, -20.0, 1.0, 1.0)
    idx = np.argmin(np.abs(sol.grid - (-20.0)))
    assert sol.h[idx] == pytest.approx(math.exp(-20.0), rel=1e-8)
    assert sol.h[idx] == pytest.approx(2.061153622438558e-09, rel=1e-7)


@pytest.mark.parametrize("profile_seed", [1, 2, 3])
def test_jacobi_residual_invariant(profile_seed):
    prof = random_profile(profile_seed)
    sol = solve_jacobi(prof, -10.0, 0.0, 0.5, -0.3)
    assert sol.residual_ok(1e-8)


def test_jacobi_convexity_nonnegative():
    # nonnegative endpoints with K <= 0 force h >= 0 between them
    for prof in (make_constant_profile(-1.0), random_profile(4)):
        sol = solve_jacobi(prof, -8.0, 0.0, 0.0, 1.0)
        assert sol.h[0] >= -1e-12 and sol.h[-1] >= -1e-12
        assert np.min(sol.h) >= -1e-10


def test_jacobi_rejects_empty_interval():
    with pytest.raises(ValueError):
        solve_jacobi(make_constant_profile(-1.0), 1.0, 1.0, 0.0, 1.0)


def test_jacobi_tol_convergence():
    # halving tol reduces the error against the closed form (free-stepping path)
    from curvlab.ode import jacobi_endpoint

    prof = make_constant_profile(-1.0)
    errs = []
    for tol in (1e-5, 1e-7, 1e-9, 1e-11):
        h_end, _ = jacobi_endpoint(prof, 0.0, 5.0, 0.0, 1.0, tol)
        errs.append(abs(h_end - math.sinh(5.0)))
    assert errs[0] > errs[1] > errs[2] > errs[3]


# -- circle curvature --------------------------------------------------------


def test_circle_flat():
    grid = np.array([1e-3, 0.5, 1.0, 2.0, 5.0])
    curve = circle_curvature(make_constant_profile(0.0), 5.0, grid=grid)
    assert curve.kappa[3] == pytest.approx(0.5, rel=1e-10)
    assert np.allclose(curve.kappa, 1.0 / curve.grid, rtol=1e-9)


def test_circle_coth():
    curve = circle_curvature(
        make_constant_profile(-1.0), 5.0, grid=np.array([0.5, 1.0, 2.0])
    )
    assert curve.kappa[1] == pytest.approx(1.3130352854993312, rel=1e-9)


def test_circle_scaled_coth():
    curve = circle_curvature(
        make_constant_profile(-4.0), 2.0, grid=np.array([0.5, 1.0])
    )
    assert curve.kappa[0] == pytest.approx(2.6260705709986624, rel=1e-9)


@pytest.mark.parametrize("a", [1.0, 2.0, 3.0])
def test_circle_oracle_constant_curvature(a):
    curve = circle_curvature(make_constant_profile(-a * a), 10.0, tol=1e-11)
    mask = curve.grid >= 1e-3
    exact = a / np.tanh(a * curve.grid[mask])
    rel = np.abs(curve.kappa[mask] - exact) / exact
    assert rel.max() < 1e-8


def test_circle_small_r_limit():
    # r*kappa -> 1; smallest grid point at most 1e-3
    prof = make_sampled_profile([(0.0, -2.0), (1.0, -0.5), (3.0, -1.0)], "cubic")
    curve = circle_curvature(prof, 3.0)
    assert curve.grid[0] <= 1e-3
    assert abs(curve.grid[0] * curve.kappa[0] - 1.0) <= 1e-4


def test_circle_series_cross_check():
    # kappa ~ 1/r - K(0) r / 3 near 0 (verified by substitution into the
    # Riccati equation: (1/r + c r)' + (1/r + c r)^2 + K = 3c + K + O(r))
    prof = make_constant_profile(-2.0)
    curve = circle_curvature(prof, 1.0)
    small = curve.grid[curve.grid <= 1e-3]
    kappa_small = curve.kappa[curve.grid <= 1e-3]
    series = 1.0 / small - (-2.0) * small / 3.0
    assert np.max(np.abs(kappa_small - series)) < 1e-6


def test_circle_lower_bounds_invariant():
    for prof, k0 in [
        (make_constant_profile(-1.0), -1.0),
        (random_profile(9, lo=0.0, hi=10.0), None),
    ]:
        k0 = prof.k0 if k0 is None else k0
        curve = circle_curvature(prof, 8.0)
        assert np.all(curve.kappa >= 1.0 / curve.grid - 1e-9)
        if k0 < 0:
            a0 = math.sqrt(-k0)
            envelope = a0 / np.tanh(a0 * curve.grid)
            assert np.all(curve.kappa >= envelope - 1e-7)


def test_circle_requires_positive_radius():
    with pytest.raises(ValueError):
        circle_curvature(make_constant_profile(-1.0), 0.0)


# -- Riccati -----------------------------------------------------------------


def test_riccati_equilibrium():
    traj = solve_riccati(make_constant_profile(-1.0), 0.0, 4.0, 1.0)
    assert np.max(np.abs(traj.u - 1.0)) < 1e-10
    assert traj.blowup is None


def test_riccati_flat_closed_form():
    traj = solve_riccati(make_constant_profile(0.0), 0.0, 3.0, 1.0)
    exact = 1.0 / (1.0 + traj.grid)
    assert np.max(np.abs(traj.u - exact)) < 1e-9
    assert traj.u[-1] == pytest.approx(0.25, abs=1e-9)


def test_riccati_backward_blowup():
    # u = coth(r - c) with u(0) = 1.5 diverges at finite negative r,
    # witnessing the unbounded supercritical branch
    traj = solve_riccati(make_constant_profile(-1.0), 0.0, -5.0, 1.5)
    assert traj.blew_up
    assert traj.blowup.sign == +1
    c = -0.5 * math.log(5.0)  # arccoth(1.5) = (1/2) log 5
    threshold_crossing = c + 1e-8  # arccoth(1e8) to leading order
    assert traj.blowup.r == pytest.approx(threshold_crossing, abs=1e-9)


def test_riccati_agrees_with_circle_curvature():
    # seeding the Riccati flow on the circle-curvature curve reproduces it
    rng = np.random.default_rng(31)
    for prof in (make_constant_profile(-2.0), random_profile(17, lo=0.0, hi=10.0)):
        pts = np.sort(rng.uniform(0.1, 10.0, size=8))
        curve = circle_curvature(prof, 10.0, tol=1e-11, grid=pts)
        for i in range(0, 6, 2):
            r1, r2 = float(pts[i]), float(pts[i + 2])
            traj = solve_riccati(prof, r1, r2, float(curve.kappa[i]), tol=1e-11)
            assert traj.u[-1] == pytest.approx(float(curve.kappa[i + 2]), abs=1e-7)


def test_difference_decay_constant_curvature():
    # kappa(r) - critical value is positive and strictly decreasing
    for a in (1.0, 2.0):
        curve = circle_curvature(make_constant_profile(-a * a), 6.0)
        diff = curve.kappa - a
        assert np.all(diff > 0)
        assert np.all(np.diff(diff) < 0)


def test_riccati_rejects_nonfinite_start():
    with pytest.raises(ValueError):
        solve_riccati(make_constant_profile(-1.0), 0.0, 1.0, math.inf)


def test_csv_rows():
    prof = make_constant_profile(-1.0)
    jac = solve_jacobi(prof, 0.0, 1.0, 0.0, 1.0)
    rows = trajectory_csv_rows(jac)
    assert len(rows[0]) == 3
    traj = solve_riccati(prof, 0.0, 1.0, 1.0)
    rows = trajectory_csv_rows(traj)
    assert len(rows[0]) == 2


def test_generic_integrator_underflow_reports_location():
    # force underflow with a RHS whose scale explodes
    with pytest.raises(StepUnderflowError):
        integrate_generic(
            lambda r, y: (y[0] * y[0],), 0.0, 2.0, (1.0,), tol=1e-10
        )
