"""Pure-Python kernel backend.

Same contract as the compiled extension. Eigenvalues go through LAPACK's
bisection driver (the identical Sturm-count algorithm, vectorized in C) so
the fallback stays usable on the grid sizes the oracle needs.
"""
import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal, solve_banded

from ..errors import IterationLimit, SingularShift

name = "pure"

_TINY = np.finfo(float).tiny


def sturm_count(diag, off_diag, sigma):
    """Number of eigenvalues of the symmetric tridiagonal matrix below sigma.

    Sign count of the LDL^T pivots of (T - sigma*I); an exactly zero pivot is
    nudged negative so eigenvalues sitting on sigma are counted.
    """
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off_diag, dtype=float)
    count = 0
    q = d[0] - sigma
    if q == 0.0:
        q = -_TINY
    if q < 0.0:
        count += 1
    for i in range(1, d.shape[0]):
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q
        if q == 0.0:
            q = -_TINY
        if q < 0.0:
            count += 1
    return count


def lowest_eigenvalues(diag, off_diag, k, rel_tol=1e-10, max_iter=200):
    """The k algebraically smallest eigenvalues, ascending."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off_diag, dtype=float)
    if np.any(np.isnan(d)) or np.any(np.isnan(e)):
        raise IterationLimit("matrix contains NaN; brackets cannot shrink")
    if d.shape[0] == 1:
        return d.copy()
    try:
        return eigh_tridiagonal(
            d, e, eigvals_only=True, select="i", select_range=(0, k - 1)
        )
    except LinAlgError as exc:
        raise IterationLimit(str(exc)) from exc


def solve_shifted(diag, off_diag, shift, rhs):
    """Solve (T - shift*I) x = rhs by banded LU with partial pivoting."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off_diag, dtype=float)
    n = d.shape[0]
    ab = np.zeros((3, n))
    ab[0, 1:] = e
    ab[1, :] = d - shift
    ab[2, :-1] = e
    try:
        return solve_banded((1, 1), ab, np.asarray(rhs, dtype=float))
    except LinAlgError as exc:
        raise SingularShift(str(exc)) from exc
