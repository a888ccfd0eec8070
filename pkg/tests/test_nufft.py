import numpy as np

from curvlab.nufft import nufft2d_type1


def _direct(x, y, c, kmax):
    ks = np.arange(-kmax, kmax + 1)
    out = np.zeros((len(ks), len(ks)), complex)
    for i, k1 in enumerate(ks):
        for j, k2 in enumerate(ks):
            out[i, j] = np.sum(c * np.exp(1j * (k1 * x + k2 * y)))
    return out


def test_matches_direct_sum_random():
    rng = np.random.default_rng(1)
    n = 400
    x = rng.uniform(0, 2 * np.pi, n)
    y = rng.uniform(0, 2 * np.pi, n)
    c = rng.normal(size=n) + 1j * rng.normal(size=n)
    kmax = 20
    F = nufft2d_type1(x, y, c, kmax)
    D = _direct(x, y, c, kmax)
    scale = np.abs(c).sum()
    assert np.abs(F - D).max() < 1e-11 * scale


def test_matches_direct_sum_clustered_points():
    rng = np.random.default_rng(2)
    n = 300
    x = np.mod(0.1 * rng.normal(size=n), 2 * np.pi)
    y = np.mod(5.0 + 0.05 * rng.normal(size=n), 2 * np.pi)
    c = rng.normal(size=n).astype(complex)
    kmax = 16
    F = nufft2d_type1(x, y, c, kmax)
    D = _direct(x, y, c, kmax)
    assert np.abs(F - D).max() < 1e-11 * np.abs(c).sum()


def test_kmax_zero():
    c = np.array([1.0 + 2.0j, -0.5 + 0.0j])
    F = nufft2d_type1(np.array([0.3, 1.0]), np.array([2.0, 0.1]), c, 0)
    assert F.shape == (1, 1)
    assert abs(F[0, 0] - c.sum()) < 1e-14


def test_large_kmax_spot_frequencies():
    rng = np.random.default_rng(3)
    n = 1500
    x = rng.uniform(0, 2 * np.pi, n)
    y = rng.uniform(0, 2 * np.pi, n)
    c = (rng.normal(size=n) + 1j * rng.normal(size=n)) / n
    kmax = 300
    F = nufft2d_type1(x, y, c, kmax)
    for k1, k2 in [(0, 0), (300, 0), (-299, 157), (123, -256), (7, 5)]:
        direct = np.sum(c * np.exp(1j * (k1 * x + k2 * y)))
        assert abs(F[k1 + kmax, k2 + kmax] - direct) < 1e-11 * np.abs(c).sum() + 1e-13
