import math

import numpy as np
import pytest

from curvlab.errors import NoSignChangeError, ProfileDomainError
from curvlab.kcrit import (
    kcrit_bounded_backward,
    kcrit_cross_validate,
    kcrit_shooting,
)
from curvlab.profiles import (
    make_constant_profile,
    make_piecewise_constant_profile,
    make_sampled_profile,
    scale_profile,
)

# deep-shooting closed form for the piecewise (-1 then -4) ray:
# integrate the equilibrium value 1 through the K=-4 leg,
# u(0) = 2 tanh(10 + artanh(1/2))
PIECEWISE_ORACLE = 1.9999999972517952


def random_profile(seed):
    rng = np.random.default_rng(seed)
    knots = np.arange(-22.0, 1.5, 1.0)
    vals = rng.uniform(-3.5, -0.4, size=len(knots))
    return make_sampled_profile(list(zip(knots, vals)), "cubic" if seed % 2 else "linear")


def test_horocycle_value_both_methods():
    prof = make_constant_profile(-1.0)
    a = kcrit_shooting(prof, 20.0)
    b = kcrit_bounded_backward(prof, 20.0)
    assert a.value == pytest.approx(1.0, abs=1e-6)
    assert b.value == pytest.approx(1.0, abs=1e-6)
    assert a.method == "shooting-family"
    assert b.method == "bounded-backward"


def test_flat_value_is_inverse_depth():
    prof = make_constant_profile(0.0)
    est = kcrit_shooting(prof, 100.0)
    assert est.value == pytest.approx(0.01, abs=1e-12)
    assert est.error_radius == 0.01
    # ladder is exactly 1/s
    for s, kappa in est.ladder:
        assert kappa == pytest.approx(1.0 / s, abs=1e-12)


def test_constant_equilibrium_scaled():
    prof = make_constant_profile(-4.0)
    a = kcrit_shooting(prof, 20.0)
    b = kcrit_bounded_backward(prof, 20.0)
    assert a.value == pytest.approx(2.0, abs=1e-6)
    assert b.value == pytest.approx(2.0, abs=1e-6)


def test_piecewise_profile_value():
    prof = make_piecewise_constant_profile([-5.0], [-1.0, -4.0], (-25.0, 1.0))
    a = kcrit_shooting(prof, 20.0)
    b = kcrit_bounded_backward(prof, 20.0)
    assert 1.0 <= a.value <= 2.0
    assert 1.0 <= b.value <= 2.0
    assert a.value == pytest.approx(PIECEWISE_ORACLE, abs=1e-6)
    assert b.value == pytest.approx(PIECEWISE_ORACLE, abs=1e-6)


def test_ladder_monotone_with_slack():
    prof = random_profile(3)
    est = kcrit_shooting(prof, 20.0)
    ks = [k for _, k in est.ladder]
    for a, b in zip(ks, ks[1:]):
        assert b < a + 1e-9
    # guaranteed envelope against the final value
    for s, kappa in est.ladder:
        assert -1e-9 < kappa - est.value <= 1.0 / s + 1e-9


def test_estimate_invariants():
    for seed in (1, 2):
        prof = random_profile(seed)
        for est in (
            kcrit_shooting(prof, 20.0),
            kcrit_bounded_backward(prof, 20.0, bracket_tol=1e-5),
        ):
            assert est.value >= 0.0
            assert math.sqrt(-prof.k0) - est.error_radius <= est.value
            assert est.value <= math.sqrt(-prof.k1) + est.error_radius


def test_scaling_covariance():
    # K -> c^-2 K(r/c) multiplies the critical curvature by 1/c
    base = make_constant_profile(-1.0)
    for c in (0.5, 2.0, 5.0):
        scaled = scale_profile(base, c)
        est = kcrit_shooting(scaled, 20.0 * max(1.0, c))
        assert est.value == pytest.approx(1.0 / c, abs=1e-6)

    prof = random_profile(5)
    ref = kcrit_shooting(prof, 20.0)
    for c in (0.5, 2.0):
        scaled = scale_profile(prof, c)
        est = kcrit_shooting(scaled, 20.0 * c)
        combined = est.error_radius + ref.error_radius / c + 1e-6
        assert abs(est.value - ref.value / c) <= combined


def test_cross_validate_constant():
    rep = kcrit_cross_validate(make_constant_profile(-1.0), 20.0)
    assert rep.gap <= 2e-6
    assert rep.consistent


def test_cross_validate_flat():
    rep = kcrit_cross_validate(make_constant_profile(0.0), 20.0)
    assert rep.gap <= 1.0 / 20.0 + 1e-12
    assert rep.consistent


def test_cross_validate_random():
    rep = kcrit_cross_validate(random_profile(8), 20.0, bracket_tol=1e-5)
    assert rep.consistent
    assert rep.gap <= rep.combined_radius + 1e-12


def test_shooting_reports_cauchy_gap():
    est = kcrit_shooting(random_profile(9), 20.0)
    assert est.cauchy_gap is not None and est.cauchy_gap >= 0.0


def test_domain_too_short():
    prof = make_sampled_profile([(-5.0, -1.0), (0.0, -1.0)])
    with pytest.raises(ProfileDomainError):
        kcrit_shooting(prof, 20.0)


def test_bounded_backward_reports_unresolvable_bracket():
    # a tiny dip below flat leaves the whole bracket under the envelope
    # resolution ~1/s_max, so both endpoints classify on the same side
    knots = [-25.0, -4.0, -3.0, -2.0, 1.0]
    vals = [0.0, 0.0, -0.0005, 0.0, 0.0]
    dip = make_sampled_profile(list(zip(knots, vals)), "linear")
    with pytest.raises(NoSignChangeError) as exc:
        kcrit_bounded_backward(dip, 20.0)
    assert exc.value.lo_class == exc.value.hi_class == "below"


def test_requires_minimum_depth():
    with pytest.raises(ValueError):
        kcrit_shooting(make_constant_profile(-1.0), 0.5)
