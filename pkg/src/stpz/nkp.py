"""Nearest Kronecker product approximation via rank-1 rearrangement.

``rearrange`` reshapes an (m1*m2) x (n1*n2) matrix into an
(m1*n1) x (m2*n2) matrix whose rank-1 structure corresponds to exact
Kronecker structure of the input; ``nkp`` takes its leading singular triplet
to produce the Frobenius-optimal factor pair (B, C) with A ≈ B ⊗ C.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .svd import svd

__all__ = ["KronFactors", "rearrange", "nkp"]


@dataclass
class KronFactors:
    """Optimal Kronecker pair: B is m1 x n1, C is m2 x n2.

    ``residual`` is ||A - B ⊗ C||_F, equal to the root tail energy of the
    rearranged matrix's singular values.
    """

    B: np.ndarray
    C: np.ndarray
    residual: float


def _split(rows: int, cols: int, m2: int, n2: int) -> tuple[int, int]:
    if m2 < 1 or n2 < 1 or rows % m2 != 0 or cols % n2 != 0:
        raise DimensionError(
            f"block shape {m2}x{n2} does not divide matrix shape {rows}x{cols}"
        )
    return rows // m2, cols // n2


def rearrange(A, m2: int, n2: int) -> np.ndarray:
    """Rearrangement of A into an (m1*n1) x (m2*n2) matrix.

    Row (j*m1 + i) is the column-major vec of the m2 x n2 block (i, j) of A,
    i.e. blocks are enumerated j-major.  The map is an isometry:
    ||rearrange(A)||_F == ||A||_F.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionError("rearrange expects a matrix")
    m1, n1 = _split(A.shape[0], A.shape[1], m2, n2)
    quads = A.reshape(m1, m2, n1, n2)
    return quads.transpose(2, 0, 3, 1).reshape(m1 * n1, m2 * n2).copy()


def nkp(A, m2: int, n2: int) -> KronFactors:
    """Factor pair minimizing ||A - B ⊗ C||_F over m1 x n1 / m2 x n2 pairs.

    vec(B) and vec(C) are sqrt(s1) times the leading left/right singular
    vectors of the rearrangement (column-major vec).  A zero input returns
    zero factors.
    """
    A = np.asarray(A, dtype=np.complex128)
    m1, n1 = _split(A.shape[0], A.shape[1], m2, n2)
    R = rearrange(A, m2, n2)
    if not R.any():
        return KronFactors(
            B=np.zeros((m1, n1), dtype=np.complex128),
            C=np.zeros((m2, n2), dtype=np.complex128),
            residual=0.0,
        )
    f = svd(R)
    s1 = np.sqrt(f.sigma[0])
    B = (s1 * f.U[:, 0]).reshape((m1, n1), order="F")
    # The rank-1 term of R is sigma_1 u1 v1^H while the Kronecker identity
    # rearrange(B ⊗ C) = vec(B) vec(C)^T uses a plain transpose, so C takes
    # the conjugated right vector (a no-op for real data).
    C = (s1 * np.conj(f.V[:, 0])).reshape((m2, n2), order="F")
    return KronFactors(B=B, C=C, residual=float(np.linalg.norm(f.sigma[1:])))
