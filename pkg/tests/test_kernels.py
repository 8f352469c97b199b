import numpy as np
import pytest

from negtype import _kernels_py, kernels


def _random_symmetric(rng, n):
    A = rng.standard_normal((n, n))
    return 0.5 * (A + A.T)


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 5, 8, 16):
        A = _random_symmetric(rng, n)
        w, V = kernels.jacobi_eigh(A)
        ref = np.linalg.eigvalsh(A)
        scale = max(np.abs(ref).max(), 1.0)
        assert np.abs(w - ref).max() <= 1e-12 * scale
        # V columns are orthonormal eigenvectors in eigenvalue order
        assert np.abs(V.T @ V - np.eye(n)).max() <= 1e-12
        assert np.abs(A @ V - V * w).max() <= 1e-11 * scale
        assert (np.diff(w) >= 0).all()


def test_jacobi_leaves_input_untouched():
    rng = np.random.default_rng(2)
    A = _random_symmetric(rng, 6)
    B = A.copy()
    kernels.jacobi_eigh(A)
    assert np.array_equal(A, B)


def test_minimize_cells_discrete_uniform():
    # On the discrete metric the minimizing load in any cell is uniform.
    n = 5
    M = np.ones((n, n)) - np.eye(n)
    sideA = np.zeros((1, n), dtype=np.int64)
    sideA[0, :2] = 1
    vals, etas, iters, conv = kernels.minimize_cells(M, sideA, 0.2, 1e-12, 100_000)
    assert conv[0]
    s, t = 2, 3
    expect = 1.0 - 0.5 * (1.0 - 1.0 / s) - 0.5 * (1.0 - 1.0 / t)
    assert vals[0] == pytest.approx(expect, abs=1e-10)
    assert np.abs(etas[0, :2] - 1.0 / s).max() <= 1e-8
    assert np.abs(etas[0, 2:] + 1.0 / t).max() <= 1e-8


def test_minimize_cells_respects_initial_point():
    n = 4
    M = np.ones((n, n)) - np.eye(n)
    sideA = np.array([[1, 1, 0, 0]], dtype=np.int64)
    eta0 = np.array([[0.9, 0.1, -0.5, -0.5]])
    vals, etas, _, conv = kernels.minimize_cells(M, sideA, 0.2, 1e-12, 100_000, eta0=eta0)
    assert conv[0]
    assert np.abs(etas[0, :2] - 0.5).max() <= 1e-8


def test_quad_form_gaps():
    rng = np.random.default_rng(3)
    M = _random_symmetric(rng, 6)
    E = rng.standard_normal((10, 6))
    got = kernels.quad_form_gaps(M, E)
    want = -0.5 * np.einsum("ki,ij,kj->k", E, M, E)
    assert np.abs(got - want).max() <= 1e-12 * np.abs(want).max()


@pytest.mark.skipif(kernels.BACKEND == "pure", reason="compiled backend unavailable")
def test_backends_agree():
    # Summation order differs between the backends (BLAS vs explicit loops),
    # so agreement is to tight tolerance rather than bitwise.
    rng = np.random.default_rng(4)
    for n in (4, 6):
        M = np.abs(_random_symmetric(rng, n)) + 1.0
        np.fill_diagonal(M, 0.0)
        masks = np.arange(1, 2 ** (n - 1), dtype=np.uint64)
        rows = np.zeros((masks.size, n), dtype=np.int64)
        rows[:, 0] = 1
        for i in range(1, n):
            rows[:, i] = 1 - ((masks >> np.uint64(i - 1)) & np.uint64(1)).astype(np.int64)
        args = (M, rows, 0.1, 1e-12, 50_000)
        v1, e1, _, c1 = kernels.minimize_cells(*args)
        v2, e2, _, c2 = _kernels_py.minimize_cells(*args)
        assert c1.all() and c2.all()
        assert np.abs(v1 - v2).max() <= 1e-12
        assert np.abs(e1 - e2).max() <= 1e-9
        w1, _ = kernels.jacobi_eigh(M)
        w2, _ = _kernels_py.jacobi_eigh(M)
        assert np.abs(w1 - w2).max() <= 1e-13 * max(abs(w2[0]), abs(w2[-1]))
