import math

import numpy as np
import pytest

from curvlab.curves import (
    curve_from_curvature,
    curve_from_spec,
    euclidean_circle,
    euclidean_segment,
    hyperbolic_circle,
    hyperbolic_geodesic,
    hyperbolic_horocycle,
    torus_circle,
)
from curvlab.phase import model_distance
from curvlab.profiles import EUCLIDEAN, HYPERBOLIC

SAMPLES = np.linspace(-0.9, 0.9, 21)


@pytest.mark.parametrize(
    "curve",
    [
        euclidean_segment((0.0, 0.0), 0.7),
        euclidean_circle((1.0, 2.0), 1.5),
        hyperbolic_geodesic(1j, 0.0),
        hyperbolic_geodesic(complex(0.3, 2.0), 1.1),
        hyperbolic_circle(1j, 0.8),
        hyperbolic_circle(complex(-1.0, 0.5), 1.3, phase=0.4),
        hyperbolic_horocycle(1j, 0.0),
        hyperbolic_horocycle(complex(2.0, 0.7), 2.2),
    ],
    ids=lambda c: c.kind,
)
def test_unit_speed(curve):
    assert curve.check_unit_speed(SAMPLES) < 1e-8


def test_circle_geodesic_curvature():
    assert euclidean_circle((0, 0), 2.0).geodesic_curvature(0.3) == 0.5
    rho = 0.8
    c = hyperbolic_circle(1j, rho)
    assert c.geodesic_curvature(0.0) == pytest.approx(math.cosh(rho) / math.sinh(rho))


def test_hyperbolic_circle_radius():
    rho = 0.8
    c = hyperbolic_circle(1j, rho)
    for s in SAMPLES:
        d = model_distance(HYPERBOLIC, 1j, c.position(float(s)))
        assert d == pytest.approx(rho, abs=1e-12)


def test_hyperbolic_circle_circumference():
    rho = 1.1
    c = hyperbolic_circle(1j, rho)
    assert c.period == pytest.approx(2 * math.pi * math.sinh(rho))
    # closes up
    assert abs(c.position(0.0) - c.position(c.period)) < 1e-9


def test_geodesic_through_point():
    z0 = complex(0.5, 1.5)
    g = hyperbolic_geodesic(z0, 0.9)
    assert abs(g.position(0.0) - z0) < 1e-14
    # unit-speed geodesic: distance along equals parameter gap
    d = model_distance(HYPERBOLIC, g.position(-0.4), g.position(0.7))
    assert d == pytest.approx(1.1, abs=1e-10)


def test_horocycle_is_horizontal_line_at_i():
    h = hyperbolic_horocycle(1j, 0.0)
    for s in (-1.0, 0.0, 2.0):
        z = h.position(s)
        assert z.imag == pytest.approx(1.0, abs=1e-14)
        assert z.real == pytest.approx(s, abs=1e-14)


def test_curve_from_curvature_recovers_horocycle():
    made = curve_from_curvature(HYPERBOLIC, lambda s: 1.0, 1j, 0.0, (-1.5, 1.5))
    for s in np.linspace(-1.4, 1.4, 11):
        assert abs(made.position(float(s)) - complex(s, 1.0)) < 1e-9
    assert made.check_unit_speed(np.linspace(-1.4, 1.4, 11)) < 1e-8


def test_curve_from_curvature_recovers_geodesic():
    made = curve_from_curvature(HYPERBOLIC, lambda s: 0.0, 1j, math.pi / 2, (-1.5, 1.5))
    for s in np.linspace(-1.4, 1.4, 11):
        assert abs(made.position(float(s)) - 1j * math.exp(s)) < 1e-9


def test_curve_from_curvature_euclidean_circle():
    made = curve_from_curvature(EUCLIDEAN, lambda s: 1.0, complex(1.0, 0.0), math.pi / 2, (0.0, 6.3))
    # unit curvature circle through 1 with upward start: center at 0
    for s in np.linspace(0.1, 6.2, 9):
        assert abs(abs(made.position(float(s)))) == pytest.approx(1.0, abs=1e-9)


def test_positions_vectorized_matches_scalar():
    c = torus_circle((math.pi, math.pi), 1.0)
    ss = np.linspace(0.0, 6.0, 13)
    many = c.positions(ss)
    one = np.array([c.position(float(s)) for s in ss])
    assert np.allclose(many, one, atol=1e-15)


def test_curve_spec_round_trip():
    specs = [
        {"kind": "torus-circle", "center": [3.14, 3.14], "radius": 1.0},
        {"kind": "torus-segment", "point": [0.0, 0.0], "angle": 0.5},
        {"kind": "hyperbolic-geodesic", "through": [0.0, 1.0], "direction_angle": 0.3},
        {"kind": "hyperbolic-circle", "center": [0.0, 1.0], "radius": 0.7},
        {"kind": "hyperbolic-horocycle"},
    ]
    for spec in specs:
        curve = curve_from_spec(spec)
        assert curve.kind == spec["kind"]
    with pytest.raises(ValueError):
        curve_from_spec({"kind": "klein-bottle"})
