# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: Sturm counts, bisection eigenvalues, and a
pivoted tridiagonal solve. Mirrors kernels._pure call for call."""
from libc.math cimport fabs, fmax

import numpy as np

from ..errors import IterationLimit, SingularShift

name = "compiled"

cdef double _TINY = 2.2250738585072014e-308


cdef int _count_below(double[::1] d, double[::1] e, double sigma) noexcept nogil:
    # sign count of the LDL^T pivots of (T - sigma*I); a zero pivot is nudged
    # negative so eigenvalues sitting exactly on sigma are counted
    cdef Py_ssize_t i, n = d.shape[0]
    cdef int count = 0
    cdef double q = d[0] - sigma
    if q == 0.0:
        q = -_TINY
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q
        if q == 0.0:
            q = -_TINY
        if q < 0.0:
            count += 1
    return count


def sturm_count(diag, off_diag, double sigma):
    """Number of eigenvalues of the symmetric tridiagonal matrix below sigma."""
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off_diag, dtype=np.float64)
    return _count_below(d, e, sigma)


def lowest_eigenvalues(diag, off_diag, int k, double rel_tol=1e-10, int max_iter=200):
    """The k algebraically smallest eigenvalues, each located by bisection on
    the Sturm count until the bracket width drops below rel_tol*max(1, |lam|).
    """
    cdef double[::1] d = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e = np.ascontiguousarray(off_diag, dtype=np.float64)
    cdef Py_ssize_t i, n = d.shape[0]
    cdef double radius, glo, ghi, a, b, mid, tol
    cdef int j, it, converged

    # a NaN anywhere poisons the Sturm counts, so the brackets would lie
    if np.isnan(np.asarray(d)).any() or np.isnan(np.asarray(e)).any():
        raise IterationLimit("matrix contains NaN; brackets cannot shrink")

    # Gershgorin interval containing the whole spectrum
    glo = d[0]
    ghi = d[0]
    for i in range(n):
        radius = 0.0
        if i > 0:
            radius += fabs(e[i - 1])
        if i < n - 1:
            radius += fabs(e[i])
        if d[i] - radius < glo:
            glo = d[i] - radius
        if d[i] + radius > ghi:
            ghi = d[i] + radius
    glo -= 1.0 + 1e-3 * fabs(glo)
    ghi += 1.0 + 1e-3 * fabs(ghi)

    out = np.empty(k, dtype=np.float64)
    cdef double[::1] mv = out
    for j in range(k):
        # invariant: count(a) <= j < count(b)
        a = glo
        b = ghi
        converged = 0
        for it in range(max_iter):
            tol = rel_tol * fmax(1.0, fmax(fabs(a), fabs(b)))
            if b - a <= tol:
                converged = 1
                break
            mid = 0.5 * (a + b)
            with nogil:
                if _count_below(d, e, mid) >= j + 1:
                    b = mid
                else:
                    a = mid
        if not converged:
            raise IterationLimit(
                f"bracket for eigenvalue {j} failed to shrink within {max_iter} "
                f"bisections (width {b - a!r})"
            )
        mv[j] = 0.5 * (a + b)
    return out


def solve_shifted(diag, off_diag, double shift, rhs):
    """Solve (T - shift*I) x = rhs by tridiagonal LU with partial pivoting."""
    cdef double[::1] d0 = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] e0 = np.ascontiguousarray(off_diag, dtype=np.float64)
    cdef Py_ssize_t i, n = d0.shape[0]

    x = np.array(rhs, dtype=np.float64, copy=True)
    dia = np.empty(n, dtype=np.float64)
    up1 = np.zeros(n, dtype=np.float64)
    up2 = np.zeros(n, dtype=np.float64)
    cdef double[::1] xv = x
    cdef double[::1] dv = dia
    cdef double[::1] u1 = up1
    cdef double[::1] u2 = up2
    cdef double low, mult, swap

    for i in range(n):
        dv[i] = d0[i] - shift
    for i in range(n - 1):
        u1[i] = e0[i]

    for i in range(n - 1):
        low = e0[i]
        if fabs(low) > fabs(dv[i]):
            swap = dv[i]; dv[i] = low; low = swap
            swap = u1[i]; u1[i] = dv[i + 1]; dv[i + 1] = swap
            swap = u2[i]; u2[i] = u1[i + 1]; u1[i + 1] = swap
            swap = xv[i]; xv[i] = xv[i + 1]; xv[i + 1] = swap
        if dv[i] == 0.0:
            raise SingularShift(f"exact zero pivot at row {i}")
        mult = low / dv[i]
        dv[i + 1] -= mult * u1[i]
        u1[i + 1] -= mult * u2[i]
        xv[i + 1] -= mult * xv[i]
    if dv[n - 1] == 0.0:
        raise SingularShift(f"exact zero pivot at row {n - 1}")

    xv[n - 1] /= dv[n - 1]
    if n > 1:
        xv[n - 2] = (xv[n - 2] - u1[n - 2] * xv[n - 1]) / dv[n - 2]
    for i in range(n - 3, -1, -1):
        xv[i] = (xv[i] - u1[i] * xv[i + 1] - u2[i] * xv[i + 2]) / dv[i]
    return x
