"""Dense symmetric linear algebra kernels.

Two factorizations cover every solver in this package: a Cholesky
decomposition with an explicit pivot test for symmetric positive definite
(SPD) systems, and a cyclic Jacobi eigendecomposition for symmetric
matrices.  Both are plain NumPy implementations so the failure modes are
inspectable: a non-positive pivot raises :class:`NotPositiveDefiniteError`
instead of silently returning garbage, and the eigensolver has a hard
sweep budget.

All functions are pure and hold no shared state; they are safe to call
from multiple threads.  Intended scale is dense matrices up to a few
hundred rows.
"""

import numpy as np
from typing import NamedTuple

from .exceptions import NoConvergenceError, NotPositiveDefiniteError
from .validation import check_symmetric

# Relative pivot threshold below which a matrix is reported as not SPD.
PIVOT_RTOL = 1e-12

# Jacobi convergence: off-diagonal Frobenius norm relative to the input norm.
JACOBI_RTOL = 1e-12

DEFAULT_MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Eigenvalues sorted descending, orthonormal eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _cholesky(a: np.ndarray, rtol: float = PIVOT_RTOL) -> np.ndarray:
    """Lower-triangular Cholesky factor of an SPD matrix.

    Raises
    ------
    NotPositiveDefiniteError
        If any pivot is <= ``rtol`` times the largest diagonal entry of
        ``a``; this flags singular and indefinite inputs alike.
    """
    n = a.shape[0]
    threshold = rtol * max(float(np.max(np.diagonal(a))), 0.0)
    lower = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - lower[j, :j] @ lower[j, :j]
        if pivot <= threshold:
            raise NotPositiveDefiniteError(j, float(pivot))
        lower[j, j] = np.sqrt(pivot)
        if j + 1 < n:
            lower[j + 1 :, j] = (
                a[j + 1 :, j] - lower[j + 1 :, :j] @ lower[j, :j]
            ) / lower[j, j]
    return lower


def spd_solve(a: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``a @ x = rhs`` for symmetric positive definite ``a``.

    Parameters
    ----------
    a : ndarray of shape (n, n)
        Exactly symmetric positive definite matrix.
    rhs : ndarray of shape (n,) or (n, k)
        One or several right-hand sides.

    Returns
    -------
    ndarray with the shape of ``rhs``.
    """
    a = np.asarray(a, dtype=float)
    check_symmetric(a, "a")
    b = np.asarray(rhs, dtype=float)
    vector_input = b.ndim == 1
    if vector_input:
        b = b[:, None]
    if b.shape[0] != a.shape[0]:
        raise ValueError(
            f"rhs has {b.shape[0]} rows, expected {a.shape[0]}"
        )
    lower = _cholesky(a)
    n = a.shape[0]
    y = np.empty_like(b)
    for i in range(n):
        y[i] = (b[i] - lower[i, :i] @ y[:i]) / lower[i, i]
    x = np.empty_like(b)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - lower[i + 1 :, i] @ x[i + 1 :]) / lower[i, i]
    return x[:, 0] if vector_input else x


def spd_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a symmetric positive definite matrix, exactly symmetric."""
    a = np.asarray(a, dtype=float)
    check_symmetric(a, "a")
    inv = spd_solve(a, np.eye(a.shape[0]))
    # Column solves agree only to rounding; make the result exactly symmetric.
    return (inv + inv.T) / 2.0


def sym_eigen(
    a: np.ndarray, max_sweeps: int = DEFAULT_MAX_SWEEPS
) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    The returned eigenvalues are sorted in descending order and each
    eigenvector column is sign-canonicalized so that its entry of largest
    magnitude is positive (first such entry on ties), which makes the
    decomposition deterministic.

    Convergence requires the off-diagonal Frobenius norm to drop below
    ``JACOBI_RTOL`` times the Frobenius norm of the input within
    ``max_sweeps`` full sweeps; otherwise :class:`NoConvergenceError`
    is raised.
    """
    a = np.asarray(a, dtype=float)
    check_symmetric(a, "a")
    n = a.shape[0]
    work = a.copy()
    vectors = np.eye(n)
    threshold = JACOBI_RTOL * float(np.linalg.norm(a))

    def off_norm(m):
        off = m.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.linalg.norm(off))

    converged = off_norm(work) <= threshold
    sweeps = 0
    while not converged and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if apq == 0.0:
                    continue
                tau = (work[q, q] - work[p, p]) / (2.0 * apq)
                if abs(tau) < 1e154:
                    t = np.sign(tau) if tau != 0.0 else 1.0
                    t /= abs(tau) + np.sqrt(1.0 + tau * tau)
                else:
                    # Asymptotic root; avoids overflow in tau*tau.
                    t = 1.0 / (2.0 * tau)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                app, aqq = work[p, p], work[q, q]
                col_p = work[:, p].copy()
                col_q = work[:, q].copy()
                work[:, p] = c * col_p - s * col_q
                work[:, q] = s * col_p + c * col_q
                row_p = work[p, :].copy()
                row_q = work[q, :].copy()
                work[p, :] = c * row_p - s * row_q
                work[q, :] = s * row_p + c * row_q
                work[p, p] = app - t * apq
                work[q, q] = aqq + t * apq
                work[p, q] = 0.0
                work[q, p] = 0.0

                vec_p = vectors[:, p].copy()
                vec_q = vectors[:, q].copy()
                vectors[:, p] = c * vec_p - s * vec_q
                vectors[:, q] = s * vec_p + c * vec_q
        sweeps += 1
        converged = off_norm(work) <= threshold
    if not converged:
        raise NoConvergenceError(sweeps, off_norm(work))

    values = np.diagonal(work).copy()
    order = np.argsort(-values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]

    for k in range(n):
        column = vectors[:, k]
        if column[np.argmax(np.abs(column))] < 0.0:
            vectors[:, k] = -column
    return EigenDecomposition(values, vectors)
