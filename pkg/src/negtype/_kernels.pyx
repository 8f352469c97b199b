# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: cyclic Jacobi eigensolver, per-cell projected gradient,
and batched quadratic forms. Mirrors negtype._kernels_py exactly."""

from libc.math cimport fabs, sqrt

import numpy as np

BACKEND = "compiled"

cdef double JACOBI_REL_OFF = 1e-14
cdef int JACOBI_MAX_SWEEPS = 100


def jacobi_eigh(A):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (w, V), eigenvalues ascending, eigenvectors in columns. Raises
    ArithmeticError when 100 sweeps do not push the largest off-diagonal
    entry below 1e-14 times the Frobenius norm.
    """
    a_arr = np.array(A, dtype=np.float64, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n)
    cdef double[:, ::1] a = a_arr
    cdef double[:, ::1] v = v_arr
    cdef Py_ssize_t i, j, k, sweep
    cdef double fro = 0.0, off, apq, tau, t, c, s, ai, aj, thresh

    if n == 1:
        return a_arr.diagonal().copy(), v_arr

    for i in range(n):
        for j in range(n):
            fro += a[i, j] * a[i, j]
    thresh = JACOBI_REL_OFF * sqrt(fro)

    for sweep in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                if fabs(a[i, j]) > off:
                    off = fabs(a[i, j])
        if off <= thresh:
            w = a_arr.diagonal().copy()
            order = np.argsort(w, kind="stable")
            return w[order], v_arr[:, order]
        for i in range(n - 1):
            for j in range(i + 1, n):
                apq = a[i, j]
                if apq == 0.0:
                    continue
                tau = (a[j, j] - a[i, i]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    ai = a[k, i]
                    aj = a[k, j]
                    a[k, i] = c * ai - s * aj
                    a[k, j] = s * ai + c * aj
                for k in range(n):
                    ai = a[i, k]
                    aj = a[j, k]
                    a[i, k] = c * ai - s * aj
                    a[j, k] = s * ai + c * aj
                a[i, j] = 0.0
                a[j, i] = 0.0
                for k in range(n):
                    ai = v[k, i]
                    aj = v[k, j]
                    v[k, i] = c * ai - s * aj
                    v[k, j] = s * ai + c * aj
    raise ArithmeticError("jacobi rotation sweeps exceeded the cap without converging")


cdef double _proj_simplex(double* x, double* buf, Py_ssize_t m) noexcept nogil:
    """In-place projection of x[0..m) onto the probability simplex.

    buf is scratch of length >= m. Returns the threshold tau.
    """
    cdef Py_ssize_t i, j, rho
    cdef double key, css, tau
    for i in range(m):
        key = x[i]
        j = i
        while j > 0 and buf[j - 1] < key:
            buf[j] = buf[j - 1]
            j -= 1
        buf[j] = key
    css = 0.0
    rho = 0
    tau = buf[0] - 1.0
    for i in range(m):
        css += buf[i]
        if buf[i] - (css - 1.0) / (i + 1) > 0.0:
            rho = i + 1
            tau = (css - 1.0) / rho
    for i in range(m):
        x[i] = x[i] - tau
        if x[i] < 0.0:
            x[i] = 0.0
    return tau


def minimize_cells(M, sideA, double step, double tol, long long max_iter, eta0=None):
    """Minimize -0.5 * eta' M eta over each bipartition cell by projected gradient.

    Rows of sideA flag side-A membership; the A-part of eta lives on the
    probability simplex and the negated B-part on another. A cell freezes
    when an update moves it by at most tol * step in the max norm. Returns
    (vals, etas, iters, converged) aligned with sideA's rows.
    """
    m_arr = np.ascontiguousarray(M, dtype=np.float64)
    side_arr = np.ascontiguousarray(sideA, dtype=np.uint8)
    cdef Py_ssize_t C = side_arr.shape[0]
    cdef Py_ssize_t n = side_arr.shape[1]
    eta_arr = np.empty((C, n), dtype=np.float64)
    cdef double[:, ::1] mm = m_arr
    cdef unsigned char[:, ::1] side = side_arr
    cdef double[:, ::1] eta = eta_arr
    cdef bint have_init = eta0 is not None
    if have_init:
        eta_arr[:, :] = np.asarray(eta0, dtype=np.float64)
    vals_arr = np.empty(C, dtype=np.float64)
    iters_arr = np.zeros(C, dtype=np.int64)
    conv_arr = np.zeros(C, dtype=bool)
    cdef double[::1] vals = vals_arr
    cdef long long[::1] iters = iters_arr
    cdef unsigned char[::1] conv = conv_arr.view(np.uint8)

    g_arr = np.empty(n, dtype=np.float64)
    xa_arr = np.empty(n, dtype=np.float64)
    xb_arr = np.empty(n, dtype=np.float64)
    buf_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] g = g_arr
    cdef double[::1] xa = xa_arr
    cdef double[::1] xb = xb_arr
    cdef double[::1] buf = buf_arr

    cdef Py_ssize_t k, i, j, na, nb, pa, pb
    cdef long long it
    cdef double move_tol = tol * step
    cdef double acc, moved, diff, q

    with nogil:
        for k in range(C):
            na = 0
            nb = 0
            for i in range(n):
                if side[k, i]:
                    na += 1
                else:
                    nb += 1
            if not have_init:
                for i in range(n):
                    if side[k, i]:
                        eta[k, i] = 1.0 / na
                    else:
                        eta[k, i] = -1.0 / nb
            for it in range(1, max_iter + 1):
                for i in range(n):
                    acc = 0.0
                    for j in range(n):
                        acc += mm[i, j] * eta[k, j]
                    g[i] = acc
                pa = 0
                pb = 0
                for i in range(n):
                    if side[k, i]:
                        xa[pa] = eta[k, i] + step * g[i]
                        pa += 1
                    else:
                        xb[pb] = -eta[k, i] - step * g[i]
                        pb += 1
                _proj_simplex(&xa[0], &buf[0], na)
                _proj_simplex(&xb[0], &buf[0], nb)
                moved = 0.0
                pa = 0
                pb = 0
                for i in range(n):
                    if side[k, i]:
                        diff = fabs(xa[pa] - eta[k, i])
                        eta[k, i] = xa[pa]
                        pa += 1
                    else:
                        diff = fabs(-xb[pb] - eta[k, i])
                        eta[k, i] = -xb[pb]
                        pb += 1
                    if diff > moved:
                        moved = diff
                iters[k] = it
                if moved <= move_tol:
                    conv[k] = 1
                    break
            acc = 0.0
            for i in range(n):
                q = 0.0
                for j in range(n):
                    q += mm[i, j] * eta[k, j]
                acc += q * eta[k, i]
            vals[k] = -0.5 * acc
    return vals_arr, eta_arr, iters_arr, conv_arr


def quad_form_gaps(M, E):
    """Gap values -0.5 * eta' M eta for each row eta of E."""
    m_arr = np.ascontiguousarray(M, dtype=np.float64)
    e_arr = np.ascontiguousarray(E, dtype=np.float64)
    cdef Py_ssize_t S = e_arr.shape[0]
    cdef Py_ssize_t n = e_arr.shape[1]
    out_arr = np.empty(S, dtype=np.float64)
    cdef double[:, ::1] mm = m_arr
    cdef double[:, ::1] ee = e_arr
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc, q
    with nogil:
        for k in range(S):
            acc = 0.0
            for i in range(n):
                q = 0.0
                for j in range(n):
                    q += mm[i, j] * ee[k, j]
                acc += q * ee[k, i]
            out[k] = -0.5 * acc
    return out_arr
