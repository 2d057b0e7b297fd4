"""Dense SVD kernel with a deterministic phase convention.

``svd`` returns thin factors (min(m, n) triplets) with each left singular
vector rotated so that its largest-modulus entry is real and positive, ties
broken by lowest row index; the matching right vector gets the same rotation.
Repeated calls on identical input are therefore bitwise reproducible, which
downstream factorizations rely on for stable truncation prefixes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericError

__all__ = ["SvdResult", "svd", "svds"]


@dataclass
class SvdResult:
    """Thin SVD factors: A ≈ U @ diag(sigma) @ V^H.

    U is m x r and V is n x r with orthonormal columns; sigma is length r,
    nonnegative and descending.
    """

    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray

    @property
    def rank(self) -> int:
        return self.sigma.size


def _fix_phases(U: np.ndarray, V: np.ndarray) -> None:
    # Largest-modulus entry of each left vector made real positive (first
    # index wins ties); the paired right vector absorbs the same rotation.
    for j in range(U.shape[1]):
        i = int(np.argmax(np.abs(U[:, j])))
        m = abs(U[i, j])
        if m > 0.0:
            ph = np.conj(U[i, j]) / m
            U[:, j] *= ph
            V[:, j] *= ph


def svd(A) -> SvdResult:
    """Thin SVD of a dense matrix."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError("svd expects a matrix")
    if not (np.all(np.isfinite(A.real)) and np.all(np.isfinite(A.imag))):
        raise NumericError("svd input contains NaN or Inf")
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    V = Vh.conj().T.copy()
    U = U.copy()
    _fix_phases(U, V)
    return SvdResult(U=U, sigma=s, V=V)


def svds(A, r: int) -> SvdResult:
    """Leading r singular triplets of :func:`svd`."""
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError("svds expects a matrix")
    p = min(A.shape)
    if not 1 <= r <= p:
        raise DimensionError(f"truncation rank {r} out of range [1, {p}]")
    full = svd(A)
    return SvdResult(U=full.U[:, :r].copy(), sigma=full.sigma[:r].copy(), V=full.V[:, :r].copy())
