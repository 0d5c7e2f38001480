"""Dense real-matrix helpers.

Thin, contract-checked wrappers around numpy/LAPACK for the handful of
constructions the rest of the package needs: Kronecker products, column
stacking, spectral radius, Cholesky factors, dense solves and determinants.
All functions are pure and return new arrays.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .errors import NotPositiveDefiniteError, NumericError, SingularMatrixError

SYMMETRY_RTOL = 1e-10
MAX_CONDITION = 1e12


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D float array (1-D input becomes a column)."""
    arr = np.array(a, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def _square(a, name: str) -> np.ndarray:
    arr = as_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    return arr


def kron(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def vec(a) -> np.ndarray:
    """Stack the columns of ``a`` into a single column vector."""
    arr = as_matrix(a, "a")
    return arr.reshape(-1, 1, order="F")


def unvec(v, rows: int, cols: int | None = None) -> np.ndarray:
    """Inverse of :func:`vec`."""
    cols = rows if cols is None else cols
    return np.asarray(v, dtype=float).reshape(rows, cols, order="F")


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus of a square matrix."""
    arr = _square(a, "a")
    try:
        eig = np.linalg.eigvals(arr)
    except np.linalg.LinAlgError as exc:  # QR iteration did not converge
        raise NumericError(f"eigenvalue iteration failed: {exc}") from exc
    return float(np.max(np.abs(eig)))


def is_symmetric(a, rtol: float = SYMMETRY_RTOL) -> bool:
    arr = np.asarray(a, dtype=float)
    scale = max(1.0, float(np.max(np.abs(arr))))
    return bool(np.max(np.abs(arr - arr.T)) <= rtol * scale)


@dataclass(frozen=True)
class SpdMat:
    """A symmetric positive definite matrix together with its Cholesky factor.

    ``base == factor @ factor.T`` with ``factor`` lower triangular and a
    strictly positive diagonal.
    """

    base: np.ndarray
    factor: np.ndarray

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def logdet(self) -> float:
        return 2.0 * float(np.sum(np.log(np.diag(self.factor))))


def spd_factor(s, rtol: float = SYMMETRY_RTOL) -> SpdMat:
    """Cholesky-factor a symmetric positive definite matrix.

    The input is symmetrized as ``(s + s.T) / 2`` after the symmetry check.

    Raises
    ------
    NotPositiveDefiniteError
        If ``s`` is not symmetric within ``rtol`` or a pivot is not positive.
    """
    if isinstance(s, SpdMat):
        return s
    arr = _square(s, "s")
    if not is_symmetric(arr, rtol):
        raise NotPositiveDefiniteError("scale not symmetric")
    sym = 0.5 * (arr + arr.T)
    c, info = lapack.dpotrf(sym, lower=1, clean=1)
    if info > 0:
        raise NotPositiveDefiniteError(
            f"matrix is not positive definite (failing pivot index {info - 1})",
            pivot=info - 1,
        )
    if info < 0:  # pragma: no cover - LAPACK argument error
        raise NumericError(f"dpotrf argument error {info}")
    factor = np.tril(c)
    factor.setflags(write=False)
    sym.setflags(write=False)
    return SpdMat(base=sym, factor=factor)


def _lu(a: np.ndarray):
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", sla.LinAlgWarning)
            lu, piv = sla.lu_factor(a, check_finite=False)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise SingularMatrixError(str(exc)) from exc
    return lu, piv


def condition_estimate(a) -> float:
    """Cheap 1-norm condition number estimate from an LU factorization."""
    arr = _square(a, "a")
    lu, _ = _lu(arr)
    if np.any(np.diag(lu) == 0.0):
        return float("inf")
    anorm = float(np.max(np.sum(np.abs(arr), axis=0)))
    rcond, info = lapack.dgecon(lu, anorm, norm="1")
    if info != 0 or rcond == 0.0:
        return float("inf")
    return 1.0 / rcond


def solve(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by LU with partial pivoting.

    Raises
    ------
    SingularMatrixError
        If the condition estimate exceeds 1e12.
    """
    arr = _square(a, "a")
    rhs = np.array(b, dtype=float)
    one_d = rhs.ndim == 1
    rhs = as_matrix(rhs, "b")
    if rhs.shape[0] != arr.shape[0]:
        raise ValueError(f"shape mismatch: a is {arr.shape}, b is {rhs.shape}")
    lu, piv = _lu(arr)
    if np.any(np.diag(lu) == 0.0):
        raise SingularMatrixError("matrix is exactly singular")
    anorm = float(np.max(np.sum(np.abs(arr), axis=0)))
    rcond, _ = lapack.dgecon(lu, anorm, norm="1")
    if rcond == 0.0 or 1.0 / rcond > MAX_CONDITION:
        raise SingularMatrixError(f"matrix is near singular (condition estimate {1.0 / max(rcond, 1e-300):.3g})")
    x = sla.lu_solve((lu, piv), rhs, check_finite=False)
    return x.ravel() if one_d else x


def det(a) -> float:
    """Determinant from the LU factorization used by :func:`solve`."""
    arr = _square(a, "a")
    lu, piv = _lu(arr)
    sign = -1.0 if np.count_nonzero(piv != np.arange(piv.size)) % 2 else 1.0
    return sign * float(np.prod(np.diag(lu)))
