"""Matrix-level oracle for hyperbolic codes.

Everything here is computed from explicit parity-check matrices over the code
alphabet, without the set-level lemmas of :mod:`bicyclo.hyperbolic`.  The
parity check has one block of rows per defining-set point: the evaluation
row (alpha^(x i) beta^(y j)) over the splitting field, expanded into
coordinates over the alphabet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cosets import CodeShape, PointSet, multiplicative_order, prime_power
from .errors import CapacityError, ParameterError
from .gf import FiniteField, build_field
from .gfmatrix import GFMatrix, field_matmul, rank_and_nullspace
from .hyperbolic import HyperbolicSpec, contains_dual

MATRIX_COLUMN_CAP = 10_000


@dataclass(frozen=True)
class Splitting:
    """The alphabet GF(Q) and the extension GF(Q^s) holding alpha and beta."""

    alphabet: FiniteField
    ext: FiniteField
    degree: int  # s
    log_alpha: int
    log_beta: int

    @property
    def alpha_degree(self) -> int:
        return self.alphabet.e


def splitting(spec: HyperbolicSpec) -> Splitting:
    shape = spec.shape
    if shape.size > MATRIX_COLUMN_CAP:
        raise CapacityError(f"matrix oracle is limited to {MATRIX_COLUMN_CAP} columns, {shape} has {shape.size}")
    p, b = prime_power(spec.alphabet)
    Q = spec.alphabet
    s = math.lcm(multiplicative_order(Q, shape.n1), multiplicative_order(Q, shape.n2))
    K = build_field(p, b)
    F = build_field(p, b * s)
    return Splitting(K, F, s, F.order // shape.n1, F.order // shape.n2)


def evaluation_matrix(spec: HyperbolicSpec, points: PointSet, sp: Splitting | None = None) -> np.ndarray:
    """Rows (alpha^(x i) beta^(y j))_{i,j} over the splitting field, one per point."""
    sp = sp or splitting(spec)
    n1, n2 = spec.shape.n1, spec.shape.n2
    xs, ys = points.coords()
    i = np.repeat(np.arange(n1, dtype=np.int64), n2)
    j = np.tile(np.arange(n2, dtype=np.int64), n1)
    N = sp.ext.order
    logs = (np.outer(xs * sp.log_alpha % N, i) + np.outer(ys * sp.log_beta % N, j)) % N
    return sp.ext.exp(logs)


def parity_check_matrix(spec: HyperbolicSpec) -> GFMatrix:
    """Expanded parity check over the alphabet; |Z| * s rows, n1 * n2 columns."""
    sp = splitting(spec)
    Z = spec.defining
    E = evaluation_matrix(spec, Z, sp)  # (|Z|, N) over ext
    coords = sp.ext.expand(E, sp.alpha_degree)  # (|Z|, N, s)
    H = np.transpose(coords, (0, 2, 1)).reshape(-1, spec.shape.size)
    return GFMatrix(sp.alphabet, H)


def rank_and_nullspace_of(spec: HyperbolicSpec) -> tuple[int, GFMatrix]:
    return rank_and_nullspace(parity_check_matrix(spec))


def generator_matrix(spec: HyperbolicSpec) -> GFMatrix:
    return rank_and_nullspace(parity_check_matrix(spec))[1]


def matrix_contains_euclidean_dual(spec: HyperbolicSpec, H: GFMatrix | None = None) -> bool:
    """H H^T == 0: the row space of H (the dual) lies in the null space (the code)."""
    if spec.dual_type != "euclidean":
        raise ParameterError("matrix_contains_euclidean_dual needs a euclidean spec")
    H = H if H is not None else parity_check_matrix(spec)
    return (H @ H.T).is_zero()


def matrix_contains_hermitian_dual(spec: HyperbolicSpec, H: GFMatrix | None = None) -> bool:
    """H (H^(q))^T == 0, with entrywise q-th powers."""
    if spec.dual_type != "hermitian":
        raise ParameterError("matrix_contains_hermitian_dual needs a hermitian spec")
    H = H if H is not None else parity_check_matrix(spec)
    _, b = prime_power(spec.q)
    return (H @ H.conjugate(b).T).is_zero()


def matrix_contains_dual(spec: HyperbolicSpec, H: GFMatrix | None = None) -> bool:
    if spec.dual_type == "euclidean":
        return matrix_contains_euclidean_dual(spec, H)
    return matrix_contains_hermitian_dual(spec, H)


def vanishes_on(spec: HyperbolicSpec, words: np.ndarray, points: PointSet) -> np.ndarray:
    """For each word (rows, alphabet encodings), whether c(alpha^x, beta^y) = 0 on all points."""
    words = np.atleast_2d(np.asarray(words, dtype=np.int64))
    if points.cardinality == 0:
        return np.ones(words.shape[0], dtype=bool)
    sp = splitting(spec)
    emb = sp.ext.subfield_embedding(sp.alpha_degree)
    E = evaluation_matrix(spec, points, sp)
    vals = field_matmul(sp.ext, E, emb[words].T)  # (points, words)
    return ~np.any(vals, axis=0)


@dataclass(frozen=True)
class Codeword:
    shape: CodeShape
    entries: np.ndarray  # (n1, n2) alphabet encodings

    def __post_init__(self) -> None:
        e = np.asarray(self.entries, dtype=np.int64)
        if e.shape != (self.shape.n1, self.shape.n2):
            raise ParameterError(f"codeword shape {e.shape} does not match {self.shape}")
        object.__setattr__(self, "entries", e)

    @classmethod
    def from_vector(cls, shape: CodeShape, v: np.ndarray) -> Codeword:
        return cls(shape, np.asarray(v, dtype=np.int64).reshape(shape.n1, shape.n2))

    def vector(self) -> np.ndarray:
        return self.entries.reshape(-1)

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.entries))


def shift_codeword(c: Codeword, dr: int, dc: int) -> Codeword:
    """Rows rotated down by dr, columns rotated right by dc (multiplication by X^dr Y^dc)."""
    return Codeword(c.shape, np.roll(c.entries, (dr % c.shape.n1, dc % c.shape.n2), axis=(0, 1)))


def random_combinations(M: GFMatrix, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` random linear combinations of the rows of M with nonzero coefficient vectors."""
    if M.rows == 0:
        raise ParameterError("cannot sample from an empty row space")
    coeffs = rng.integers(0, M.field.size, size=(count, M.rows), dtype=np.int64)
    zero = ~np.any(coeffs, axis=1)
    while np.any(zero):
        coeffs[zero] = rng.integers(0, M.field.size, size=(int(zero.sum()), M.rows), dtype=np.int64)
        zero = ~np.any(coeffs, axis=1)
    return field_matmul(M.field, coeffs, M.data)


def sample_min_weight(spec: HyperbolicSpec, trials: int, seed: int, G: GFMatrix | None = None) -> int:
    """Minimum weight over ``trials`` random nonzero codewords.

    A value below ``spec.d`` would falsify the design-distance bound; a value
    at or above it proves nothing.
    """
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    G = G if G is not None else generator_matrix(spec)
    if G.rows == 0:
        raise ParameterError("the zero code has no nonzero codewords")
    rng = np.random.default_rng(seed)
    best = spec.length
    batch = max(1, min(trials, 2_000_000 // max(1, spec.length)))
    done = 0
    while done < trials:
        take = min(batch, trials - done)
        words = random_combinations(G, take, rng)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
        done += take
    return best


@dataclass
class OracleReport:
    set_predicate: bool
    matrix_predicate: bool
    defining_size: int
    rank: int
    nullity: int
    rows: int

    @property
    def agrees(self) -> bool:
        return self.set_predicate == self.matrix_predicate and self.rank == self.defining_size


def cross_check(spec: HyperbolicSpec) -> OracleReport:
    """Set predicate vs. matrix predicate, and rank vs. |Z|."""
    H = parity_check_matrix(spec)
    rank, basis = rank_and_nullspace(H)
    return OracleReport(
        set_predicate=contains_dual(spec),
        matrix_predicate=matrix_contains_dual(spec, H),
        defining_size=spec.defining.cardinality,
        rank=rank,
        nullity=basis.rows,
        rows=H.rows,
    )
