"""Pure-numpy fallback kernels.

Same contracts as the compiled module ``negtype._kernels``; selected at
import time by :mod:`negtype.kernels` when the extension is unavailable or
``NEGTYPE_PURE=1`` is set. Numerics are kept deliberately identical: cyclic
Jacobi rotations in the same pair order, the same sort-based simplex
projection, the same stopping rules.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_JACOBI_MAX_SWEEPS = 100
_JACOBI_REL_OFF = 1e-14


def jacobi_eigh(A):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with eigenvalues ascending and eigenvectors in the
    columns of ``V``. Raises ArithmeticError if the off-diagonal mass has not
    dropped below 1e-14 times the Frobenius norm after 100 sweeps.
    """
    A = np.array(A, dtype=float, order="C")
    n = A.shape[0]
    V = np.eye(n)
    if n == 1:
        return A.diagonal().copy(), V
    thresh = _JACOBI_REL_OFF * np.linalg.norm(A)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = np.abs(A - np.diag(A.diagonal())).max()
        if off <= thresh:
            w = A.diagonal().copy()
            order = np.argsort(w, kind="stable")
            return w[order], V[:, order]
        for i in range(n - 1):
            for j in range(i + 1, n):
                apq = A[i, j]
                if apq == 0.0:
                    continue
                tau = (A[j, j] - A[i, i]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ci, cj = A[:, i].copy(), A[:, j].copy()
                A[:, i] = c * ci - s * cj
                A[:, j] = s * ci + c * cj
                ri, rj = A[i, :].copy(), A[j, :].copy()
                A[i, :] = c * ri - s * rj
                A[j, :] = s * ri + c * rj
                A[i, j] = A[j, i] = 0.0
                vi, vj = V[:, i].copy(), V[:, j].copy()
                V[:, i] = c * vi - s * vj
                V[:, j] = s * vi + c * vj
    raise ArithmeticError("jacobi rotation sweeps exceeded the cap without converging")


def _project_simplex_masked(X, mask):
    """Project each row of X, restricted to its mask, onto the probability simplex.

    Entries outside the mask come back as 0. Sort-based exact projection.
    """
    C, n = X.shape
    key = np.where(mask, X, -np.inf)
    order = np.argsort(-key, axis=1, kind="stable")
    s = np.take_along_axis(np.where(mask, X, 0.0), order, axis=1)
    counts = mask.sum(axis=1)
    css = np.cumsum(s, axis=1)
    j = np.arange(1, n + 1)
    cond = (s - (css - 1.0) / j > 0.0) & (j <= counts[:, None])
    rho = cond.sum(axis=1)
    tau = (css[np.arange(C), rho - 1] - 1.0) / rho
    return np.where(mask, np.maximum(X - tau[:, None], 0.0), 0.0)


def minimize_cells(M, sideA, step, tol, max_iter, eta0=None):
    """Minimize the pairwise form over each bipartition cell by projected gradient.

    For each row of ``sideA`` (1 = point on side A), the feasible set is
    signed weight vectors eta with the A-part on the probability simplex and
    the negated B-part on the probability simplex. The objective is
    -0.5 * eta' M eta. Descent step ``step`` should be 1/L for L an upper
    bound on the spectral norm of M; a cell freezes once the iterate moves
    by at most tol * step in the max norm.

    Returns ``(vals, etas, iters, converged)`` aligned with the rows of
    ``sideA``.
    """
    M = np.ascontiguousarray(M, dtype=float)
    sideA = np.ascontiguousarray(sideA, dtype=bool)
    C, n = sideA.shape
    maskB = ~sideA
    if eta0 is None:
        cntA = sideA.sum(axis=1, keepdims=True)
        cntB = maskB.sum(axis=1, keepdims=True)
        eta = np.where(sideA, 1.0 / cntA, -1.0 / cntB)
    else:
        eta = np.array(eta0, dtype=float, order="C")
    iters = np.zeros(C, dtype=np.int64)
    converged = np.zeros(C, dtype=bool)
    active = np.arange(C)
    move_tol = tol * step
    for it in range(1, int(max_iter) + 1):
        e = eta[active]
        g = e @ M
        mA = sideA[active]
        mB = maskB[active]
        new = _project_simplex_masked(e + step * g, mA)
        new -= _project_simplex_masked(-e - step * g, mB)
        moved = np.abs(new - e).max(axis=1)
        eta[active] = new
        iters[active] = it
        done = moved <= move_tol
        if done.any():
            converged[active[done]] = True
            active = active[~done]
            if active.size == 0:
                break
    vals = -0.5 * np.einsum("ij,ij->i", eta @ M, eta)
    return vals, eta, iters, converged


def quad_form_gaps(M, E):
    """Gap values -0.5 * eta' M eta for each row eta of E."""
    M = np.ascontiguousarray(M, dtype=float)
    E = np.ascontiguousarray(E, dtype=float)
    return -0.5 * np.einsum("ij,ij->i", E @ M, E)
