import cmath
import math

import numpy as np
import pytest

from curvlab.curves import ParamCurve, torus_circle, torus_segment
from curvlab.periods import (
    TorusEigenfunction,
    decay_scan,
    extremal_period_norm,
    kuznecov_sum,
    oscillatory_integral,
    oscillatory_integral_record,
    segment_saturation,
    smooth_window_weight,
    windowed_sum,
    zonal_great_circle,
)
from curvlab.profiles import FLAT_TORUS, make_bump_window, make_uniform_window
from curvlab.special import bessel_j0

CENTER = (math.pi, math.pi)


def unit_circle():
    return torus_circle(CENTER, 1.0)


def full_window():
    return make_uniform_window(0.0, 2.0 * math.pi)


# -- oscillatory quadrature ---------------------------------------------------


def test_zero_frequency_gives_window_integral():
    win = make_bump_window(1.0, 0.7)
    seg = torus_segment((0.0, 0.0), 0.3)
    val = oscillatory_integral(seg, win, (0, 0))
    assert val == pytest.approx(win.integral(), abs=1e-10)
    assert abs(val.imag) < 1e-15


def test_full_circle_bessel_identity():
    circ, win = unit_circle(), full_window()
    for m in [(1, 0), (0, 2), (3, 4), (5, 0), (-12, 5)]:
        lam = math.hypot(*m)
        expected = (
            cmath.exp(1j * (m[0] * CENTER[0] + m[1] * CENTER[1]))
            * 2.0
            * math.pi
            * bessel_j0(lam)
        )
        val = oscillatory_integral(circ, win, m)
        assert abs(val - expected) <= 1e-8 * abs(expected)


def test_tabulated_j0_value():
    # J0(1) = 0.7651976866 witnesses the quadrature scale
    circ, win = unit_circle(), full_window()
    val = abs(oscillatory_integral(circ, win, (1, 0)))
    assert val == pytest.approx(2.0 * math.pi * 0.7651976866, abs=1e-8)


def test_perpendicular_segment_constant_phase():
    win = make_bump_window(0.0, 1.0)
    seg = torus_segment((0.25, 0.5), 0.0)  # direction (1, 0)
    for k in (1, 4, 9):
        val = oscillatory_integral(seg, win, (0, k))
        expected = cmath.exp(1j * k * 0.5) * win.integral()
        assert abs(val - expected) < 1e-10


def test_orientation_reversal_conjugates():
    circ, win = unit_circle(), full_window()
    lo, hi = circ.domain
    reversed_curve = ParamCurve(
        surface=FLAT_TORUS,
        position=lambda s: circ.position(hi - s),
        velocity=lambda s: -circ.velocity(hi - s),
        geodesic_curvature=circ.geodesic_curvature,
        domain=(0.0, hi - lo),
        kind="custom",
        closed=True,
        period=circ.period,
    )
    for m in [(2, 1), (0, 3)]:
        a = oscillatory_integral(circ, win, m)
        b = oscillatory_integral(reversed_curve, win, m)
        assert abs(abs(a) - abs(b)) < 1e-12


def test_record_reports_nodes_and_error():
    rec = oscillatory_integral_record(unit_circle(), full_window(), (7, 0))
    assert rec.n == 49
    assert rec.nodes_used > 0
    assert rec.quadrature_error <= 1e-12


def test_window_outside_curve_domain_rejected():
    win = make_bump_window(0.0, 1.0)  # support [-1, 1] vs circle domain [0, 2pi]
    with pytest.raises(ValueError):
        oscillatory_integral(unit_circle(), win, (1, 0))


# -- extremal norms ----------------------------------------------------------


def test_extremal_norm_circle_n25():
    norm = extremal_period_norm(unit_circle(), full_window(), 25)
    assert norm == pytest.approx(math.sqrt(12.0) * abs(bessel_j0(5.0)), rel=1e-9)


def test_extremal_norm_empty_circle():
    assert extremal_period_norm(unit_circle(), full_window(), 3) is None


def test_extremal_norm_segment_n1():
    # four terms: two perpendicular contribute |int b|^2 each, two tangent
    # contribute the Fourier transform of the bump at frequency 1
    win = make_bump_window(0.0, 1.0)
    seg = torus_segment((0.0, 0.0), 0.0)
    ib = win.integral()
    xs = np.linspace(-1.0, 1.0, 40_001)
    ys = np.where(np.abs(xs) < 1, np.exp(-1.0 / np.maximum(1e-300, 1.0 - xs * xs)), 0.0)
    integrand = ys * np.exp(1j * xs)
    dx = xs[1] - xs[0]
    ft = (integrand[0] + integrand[-1]) / 2 * dx + integrand[1:-1].sum() * dx
    expected = math.sqrt(2.0 * ib * ib + 2.0 * abs(ft) ** 2) / (2.0 * math.pi)
    norm = extremal_period_norm(seg, win, 1)
    assert norm == pytest.approx(expected, rel=1e-6)
    # dominated by the perpendicular pair
    assert norm >= math.sqrt(2.0) * ib / (2.0 * math.pi)


def test_eigenfunction_normalization_enforced():
    with pytest.raises(ValueError):
        TorusEigenfunction(n=1, vectors=((1, 0), (-1, 0), (0, 1), (0, -1)), coeffs=(1.0, 0, 0, 0))


def test_extremal_norm_dominates_eigenfunctions():
    rng = np.random.default_rng(44)
    circ, win = unit_circle(), full_window()
    bound = extremal_period_norm(circ, win, 25)
    for _ in range(5):
        e = TorusEigenfunction.random(25, rng)
        val = abs(e.period_integral(circ, win))
        assert val <= bound + 1e-10


# -- decay and saturation ----------------------------------------------------


def test_decay_scan_circle_slope():
    # small-lambda smoke test; the -0.5 +- 0.1 claim over [100, 1000] is
    # exercised by the acceptance suite
    fit = decay_scan(unit_circle(), full_window(), [k * k for k in range(30, 120, 3)])
    assert -1.0 < fit.slope < -0.2
    assert fit.residual_rms > 0.0


def test_decay_scan_needs_points():
    with pytest.raises(ValueError):
        decay_scan(unit_circle(), full_window(), [25])


def test_segment_saturation_exact_perpendicular():
    win = make_bump_window(0.0, 1.0)
    rows = segment_saturation((1, 0), win, 10)
    ib = win.integral()
    for row in rows:
        assert row.m == (0, row.index)
        assert row.normal_defect == 0.0
        assert row.magnitude == pytest.approx(ib, abs=1e-12)


def test_segment_saturation_golden_ratio():
    win = make_bump_window(0.0, 1.0)
    ib = win.integral()
    rows = segment_saturation((1.0, (1 + math.sqrt(5)) / 2), win, 8)
    defects = [r.normal_defect for r in rows]
    # convergents drive the normal defect to zero and the magnitude to int b
    assert defects[-1] < 0.05
    assert min(defects) == defects[-1]
    assert abs(rows[-1].magnitude - ib) <= 0.05 * ib


def test_segment_saturation_rational_slope_convergents():
    win = make_bump_window(0.0, 1.0)
    rows = segment_saturation((2.0, 1.0), win, 6, mode="convergents")
    # the final convergent of 1/2 is exact, phase dies identically
    assert rows[-1].normal_defect < 1e-12
    assert rows[-1].magnitude == pytest.approx(win.integral(), abs=1e-10)


def test_segment_saturation_validates_input():
    win = make_bump_window(0.0, 1.0)
    with pytest.raises(ValueError):
        segment_saturation((0, 0), win, 5)
    with pytest.raises(ValueError):
        segment_saturation((1, 0), win, 0)


# -- zonal -------------------------------------------------------------------


def test_zonal_odd_degrees_vanish():
    assert zonal_great_circle(1) == 0.0
    assert zonal_great_circle(7) == 0.0


def test_zonal_explicit_values():
    assert zonal_great_circle(0) == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert zonal_great_circle(2) == pytest.approx(-1.9816636488030055, abs=1e-10)


def test_zonal_rejects_negative():
    with pytest.raises(ValueError):
        zonal_great_circle(-1)


# -- spectral sums -----------------------------------------------------------


def test_kuznecov_lambda_zero():
    win = make_bump_window(3.0, 1.0)
    circ = unit_circle()
    val = kuznecov_sum(circ, win, 0)
    ib = win.integral()
    assert val == pytest.approx(ib * ib / (2 * math.pi) ** 2, rel=1e-10)


def test_kuznecov_zero_mean_window_m0_term_vanishes():
    # duck-typed signed window with zero mean: the m = 0 term contributes
    # nothing, so including it leaves the sum unchanged
    class SignedWindow:
        support = (1.0, 3.0)

        def __call__(self, s):
            ss = np.asarray(s, dtype=float)
            # odd about s = 2, so the mean vanishes
            return np.where(
                (ss >= 1.0) & (ss <= 3.0), np.sin(math.pi * (ss - 1.0)) ** 3, 0.0
            )

        def integral(self):
            return 0.0

    win = SignedWindow()
    circ = unit_circle()
    m0 = oscillatory_integral(circ, win, (0, 0))
    assert abs(m0) < 1e-10
    with_m0 = kuznecov_sum(circ, win, 2)
    assert with_m0 == pytest.approx(with_m0 + abs(m0) ** 2, rel=1e-12)


def test_kuznecov_direct_vs_nufft():
    circ, win = unit_circle(), full_window()
    direct = kuznecov_sum(circ, win, 45, force_direct=True)
    batched = kuznecov_sum(circ, win, 45)
    assert batched == pytest.approx(direct, abs=1e-8)


def test_kuznecov_cap():
    with pytest.raises(ValueError):
        kuznecov_sum(unit_circle(), full_window(), 1001)


def test_windowed_sharp_empty():
    # no lattice norms with sqrt(n) in [5.83, 5.91]: n in (34, 35) region
    val = windowed_sum(unit_circle(), full_window(), 5.834, 12.0)
    assert val == 0.0


def test_windowed_sharp_direct_enumeration():
    circ, win = unit_circle(), full_window()
    val = windowed_sum(circ, win, 5.0, 1.0)
    expected = 0.0
    for n in range(25, 37):
        from curvlab.lattice import lattice_circle

        for m in lattice_circle(n).vectors:
            expected += abs(oscillatory_integral(circ, win, m)) ** 2
    expected /= (2 * math.pi) ** 2
    assert val == pytest.approx(expected, rel=1e-12)


def test_windowed_nesting():
    circ, win = unit_circle(), full_window()
    vals = [windowed_sum(circ, win, 5.0, T) for T in (0.5, 1.0, 2.0, 4.0)]
    for wide, narrow in zip(vals, vals[1:]):
        assert narrow <= wide + 1e-15


def test_windowed_smooth_mode():
    assert smooth_window_weight(0.0) == pytest.approx(1.0, abs=1e-12)
    assert smooth_window_weight(50.0) < 0.5
    circ, win = unit_circle(), full_window()
    val = windowed_sum(circ, win, 5.0, 2.0, mode="smooth")
    assert val >= 0.0
    sharp = windowed_sum(circ, win, 5.0, 2.0)
    # the smooth surrogate sees neighboring eigenvalues too
    assert val > 0.0
    assert abs(val) < 50.0 * max(sharp, 1.0)


def test_windowed_rejects_bad_mode():
    with pytest.raises(ValueError):
        windowed_sum(unit_circle(), full_window(), 5.0, 1.0, mode="boxcar")


def test_spectral_sums_require_torus():
    from curvlab.curves import euclidean_circle

    with pytest.raises(ValueError):
        kuznecov_sum(euclidean_circle((0, 0), 1.0), full_window(), 5)
