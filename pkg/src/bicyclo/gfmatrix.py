"""Dense matrices over GF(p^e): products, row reduction, rank and nullspace."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .gf import FiniteField


@dataclass(frozen=True)
class GFMatrix:
    field: FiniteField
    data: np.ndarray  # int64 field encodings, shape (rows, cols)

    def __post_init__(self) -> None:
        d = np.asarray(self.data, dtype=np.int64)
        if d.ndim != 2:
            raise ParameterError(f"expected a 2-D array, got shape {d.shape}")
        if d.size and (d.min() < 0 or d.max() >= self.field.size):
            raise ParameterError(f"entries outside {self.field!r}")
        object.__setattr__(self, "data", d)

    @classmethod
    def zeros(cls, field: FiniteField, rows: int, cols: int) -> GFMatrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: FiniteField, k: int) -> GFMatrix:
        return cls(field, np.eye(k, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> GFMatrix:
        return GFMatrix(self.field, self.data.T.copy())

    def __matmul__(self, other: GFMatrix) -> GFMatrix:
        if other.field is not self.field:
            raise ParameterError("matrices over different fields")
        return GFMatrix(self.field, field_matmul(self.field, self.data, other.data))

    def conjugate(self, s: int) -> GFMatrix:
        """Entrywise Frobenius a -> a^(p^s)."""
        return GFMatrix(self.field, self.field.frobenius_array(self.data, s))

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def rank(self) -> int:
        return rank_and_nullspace(self)[0]


def field_matmul(F: FiniteField, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B over F.

    Splits the left factor into base-p digit planes and the right factor into
    the planes of gamma^r * B, so the product becomes e*e integer matrix
    products reduced mod p.  Float64 BLAS is exact here because every partial
    sum stays far below 2**53.
    """
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise ParameterError(f"shape mismatch {A.shape} @ {B.shape}")
    p, e = F.p, F.e
    if A.shape[-1] == 0:
        return np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.int64)
    if e == 1:
        return np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) % p
    pw = [p**r for r in range(e)]
    A_planes = [((A // w) % p).astype(np.float64) for w in pw]
    acc = [np.zeros(A.shape[:-1] + B.shape[1:], dtype=np.float64) for _ in range(e)]
    for r in range(e):
        Br = F.mul(F.exp(r), B)
        for s in range(e):
            acc[s] += A_planes[r] @ ((Br // pw[s]) % p).astype(np.float64)
    acc = np.stack(acc, axis=-1)
    return F.from_digits(np.rint(acc).astype(np.int64) % p)


def _rref_gf2(data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = data.shape
    packed = np.packbits(data.astype(np.uint8), axis=1)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        byte, bit = divmod(c, 8)
        mask = np.uint8(0x80 >> bit)
        hits = np.nonzero(packed[r:, byte] & mask)[0]
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            packed[[r, piv]] = packed[[piv, r]]
        others = np.nonzero(packed[:, byte] & mask)[0]
        others = others[others != r]
        if others.size:
            packed[others] ^= packed[r]
        pivots.append(c)
        r += 1
    out = np.unpackbits(packed, axis=1, count=cols).astype(np.int64)
    return out, pivots


def rref(M: GFMatrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    F = M.field
    if F.size == 2:
        return _rref_gf2(M.data)
    A = M.data.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(A[r:, c])[0]
        if hits.size == 0:
            continue
        piv = r + int(hits[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = F.sub(A[others], F.mul(A[others, c][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank_and_nullspace(M: GFMatrix) -> tuple[int, GFMatrix]:
    """Rank of M and a basis (as rows) of {v : M v = 0}."""
    F = M.field
    R, pivots = rref(M)
    rank = len(pivots)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), M.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if rank:
            basis[i, pivots] = F.neg(R[:rank, f])
    return rank, GFMatrix(F, basis)
