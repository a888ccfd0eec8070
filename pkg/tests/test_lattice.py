import pytest

from curvlab.lattice import lattice_circle, r2_count


def test_n1():
    circ = lattice_circle(1)
    assert circ.count == 4
    assert set(circ.vectors) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_n25():
    circ = lattice_circle(25)
    assert circ.count == 12
    assert (3, 4) in circ.vectors
    assert (-4, 3) in circ.vectors
    assert (5, 0) in circ.vectors


def test_n3_empty():
    assert lattice_circle(3).count == 0


def test_n0():
    assert lattice_circle(0).vectors == ((0, 0),)


def test_rejects_bad_n():
    with pytest.raises(ValueError):
        lattice_circle(-1)
    with pytest.raises(ValueError):
        lattice_circle(10**8 + 1)


def test_symmetry_closure():
    for n in (2, 5, 50, 325, 1105):
        vecs = set(lattice_circle(n).vectors)
        for x, y in vecs:
            assert (-x, y) in vecs
            assert (x, -y) in vecs
            assert (y, x) in vecs


def test_norms_correct():
    for n in (8, 65, 1025):
        for x, y in lattice_circle(n).vectors:
            assert x * x + y * y == n


def test_divisor_count_small_values():
    # r2(n) = 4 (d_1(n) - d_3(n)); spot values from the classical table
    expected = {1: 4, 2: 4, 3: 0, 4: 4, 5: 8, 25: 12, 50: 12, 65: 16, 325: 24}
    for n, r2 in expected.items():
        assert r2_count(n) == r2


def test_lattice_vs_divisor_count_full_range():
    # independent-oracle agreement for every n up to 1e5
    for n in range(0, 100_001):
        assert lattice_circle(n).count == r2_count(n), n
