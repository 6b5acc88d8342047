"""Modular machinery on Z_{n1} x Z_{n2}: point sets, cyclotomic cosets and the
shifted-product minimisation used to certify the dual-containment thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, NamedTuple

import numpy as np

from .errors import ParameterError, UnsupportedParameterError

Mode = Literal["euclidean", "hermitian"]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    r = 3
    while r * r <= p:
        if p % r == 0:
            return False
        r += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` for prime ``p``, or None."""
    if q < 2:
        return None
    p = next(r for r in range(2, q + 1) if q % r == 0)
    if not is_prime(p):
        return None
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    return (p, e) if rest == 1 else None


def prime_factors(n: int) -> list[int]:
    out, r = [], 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(q: int, n: int) -> int:
    """Smallest m >= 1 with q**m == 1 (mod n)."""
    if n < 1:
        raise ParameterError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    if math.gcd(q, n) != 1:
        raise ParameterError(f"{q} is not invertible modulo {n}")
    m, acc = 1, q % n
    while acc != 1:
        acc = acc * q % n
        m += 1
    return m


def q_ary_digits(x: int, q: int, m: int) -> list[int]:
    """Little-endian base-q digits ``[d0, ..., d_{m-1}]`` of ``x``."""
    if q < 2:
        raise ParameterError(f"base must be >= 2, got {q}")
    if not 0 <= x < q**m:
        raise ParameterError(f"{x} is outside [0, {q}^{m})")
    digits = []
    for _ in range(m):
        x, d = divmod(x, q)
        digits.append(d)
    return digits


@dataclass(frozen=True)
class CodeShape:
    """Array dimensions ``n1 x n2`` of a bicyclic code over GF(q)."""

    n1: int
    n2: int
    q: int

    def __post_init__(self) -> None:
        if self.n1 < 1 or self.n2 < 1:
            raise ParameterError(f"periods must be positive, got {self.n1}x{self.n2}")
        if prime_power(self.q) is None:
            raise ParameterError(f"q={self.q} is not a prime power")
        if math.gcd(self.n1 * self.n2, self.q) != 1:
            raise ParameterError(
                f"gcd(n1*n2, q) = gcd({self.n1 * self.n2}, {self.q}) != 1; repeated-root codes unsupported"
            )

    @property
    def size(self) -> int:
        return self.n1 * self.n2

    @property
    def is_square(self) -> bool:
        return self.n1 == self.n2

    @property
    def characteristic(self) -> int:
        return prime_power(self.q)[0]

    def __str__(self) -> str:
        return f"{self.n1}x{self.n2} over GF({self.q})"


class Point(NamedTuple):
    x: int
    y: int


class PointSet:
    """Subset of Z_{n1} x Z_{n2} stored as a dense boolean grid.

    Instances are immutable; every operation returns a new set.
    """

    __slots__ = ("shape", "_grid", "_card")

    def __init__(self, shape: CodeShape, grid: np.ndarray | None = None):
        self.shape = shape
        if grid is None:
            grid = np.zeros((shape.n1, shape.n2), dtype=bool)
        else:
            grid = np.asarray(grid, dtype=bool)
            if grid.shape != (shape.n1, shape.n2):
                raise ParameterError(f"grid shape {grid.shape} does not match {shape.n1}x{shape.n2}")
            grid = grid.copy()
        grid.setflags(write=False)
        self._grid = grid
        self._card = int(np.count_nonzero(grid))

    @classmethod
    def from_points(cls, shape: CodeShape, points: Iterable[tuple[int, int]]) -> PointSet:
        grid = np.zeros((shape.n1, shape.n2), dtype=bool)
        for x, y in points:
            if not (0 <= x < shape.n1 and 0 <= y < shape.n2):
                raise ParameterError(f"point ({x}, {y}) outside {shape.n1}x{shape.n2}")
            grid[x, y] = True
        return cls._wrap(shape, grid)

    @classmethod
    def from_coords(cls, shape: CodeShape, xs: np.ndarray, ys: np.ndarray) -> PointSet:
        grid = np.zeros((shape.n1, shape.n2), dtype=bool)
        grid[np.asarray(xs, dtype=np.int64) % shape.n1, np.asarray(ys, dtype=np.int64) % shape.n2] = True
        return cls._wrap(shape, grid)

    @classmethod
    def full(cls, shape: CodeShape) -> PointSet:
        return cls._wrap(shape, np.ones((shape.n1, shape.n2), dtype=bool))

    @classmethod
    def empty(cls, shape: CodeShape) -> PointSet:
        return cls._wrap(shape, np.zeros((shape.n1, shape.n2), dtype=bool))

    @classmethod
    def _wrap(cls, shape: CodeShape, grid: np.ndarray) -> PointSet:
        # takes ownership of ``grid`` without copying
        obj = cls.__new__(cls)
        obj.shape = shape
        grid.setflags(write=False)
        obj._grid = grid
        obj._card = int(np.count_nonzero(grid))
        return obj

    @property
    def grid(self) -> np.ndarray:
        return self._grid

    @property
    def cardinality(self) -> int:
        return self._card

    def coords(self) -> tuple[np.ndarray, np.ndarray]:
        """Member coordinates as two index arrays, in lexicographic order."""
        xs, ys = np.nonzero(self._grid)
        return xs.astype(np.int64), ys.astype(np.int64)

    def points(self) -> list[Point]:
        xs, ys = self.coords()
        return [Point(int(x), int(y)) for x, y in zip(xs, ys)]

    def __len__(self) -> int:
        return self._card

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def __contains__(self, p: object) -> bool:
        x, y = p  # type: ignore[misc]
        return 0 <= x < self.shape.n1 and 0 <= y < self.shape.n2 and bool(self._grid[x, y])

    def _check(self, other: PointSet) -> None:
        if (self.shape.n1, self.shape.n2) != (other.shape.n1, other.shape.n2):
            raise ParameterError("point sets live on different grids")

    def __or__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet._wrap(self.shape, self._grid | other._grid)

    def __and__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet._wrap(self.shape, self._grid & other._grid)

    def __sub__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet._wrap(self.shape, self._grid & ~other._grid)

    def complement(self) -> PointSet:
        return PointSet._wrap(self.shape, ~self._grid)

    def isdisjoint(self, other: PointSet) -> bool:
        self._check(other)
        return not np.any(self._grid & other._grid)

    def issubset(self, other: PointSet) -> bool:
        self._check(other)
        return not np.any(self._grid & ~other._grid)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.shape.n1, self.shape.n2) == (other.shape.n1, other.shape.n2) and bool(
            np.array_equal(self._grid, other._grid)
        )

    def __hash__(self) -> int:
        return hash((self.shape.n1, self.shape.n2, self._grid.tobytes()))

    def __repr__(self) -> str:
        pts = self.points()
        body = ", ".join(f"({p.x},{p.y})" for p in pts[:8])
        if len(pts) > 8:
            body += ", ..."
        return f"PointSet({self.shape.n1}x{self.shape.n2}, |S|={self._card}, {{{body}}})"


@dataclass(frozen=True)
class Coset:
    representative: Point
    members: tuple[Point, ...]
    multiplier: int

    def __len__(self) -> int:
        return len(self.members)

    def as_set(self) -> frozenset[Point]:
        return frozenset(self.members)


def _require_coprime(t: int, shape: CodeShape) -> None:
    if math.gcd(t, shape.n1) != 1 or math.gcd(t, shape.n2) != 1:
        raise ParameterError(f"multiplier {t} is not coprime to both {shape.n1} and {shape.n2}")


def cyclotomic_coset(p: tuple[int, int], multiplier: int, shape: CodeShape) -> Coset:
    """Orbit of ``p`` under (x, y) -> (t x mod n1, t y mod n2), in orbit order."""
    _require_coprime(multiplier, shape)
    x0, y0 = p[0] % shape.n1, p[1] % shape.n2
    members = [Point(x0, y0)]
    x, y = x0, y0
    while True:
        x, y = x * multiplier % shape.n1, y * multiplier % shape.n2
        if (x, y) == (x0, y0):
            break
        members.append(Point(x, y))
    return Coset(representative=min(members), members=tuple(members), multiplier=multiplier)


def all_cosets(shape: CodeShape, multiplier: int) -> list[Coset]:
    """Partition of Z_tot into cosets, sorted by representative."""
    _require_coprime(multiplier, shape)
    seen = np.zeros((shape.n1, shape.n2), dtype=bool)
    out = []
    for x in range(shape.n1):
        for y in range(shape.n2):
            if not seen[x, y]:
                c = cyclotomic_coset((x, y), multiplier, shape)
                for px, py in c.members:
                    seen[px, py] = True
                out.append(c)
    return out


def scale_set(S: PointSet, t: int) -> PointSet:
    """Image of ``S`` under (x, y) -> (t x mod n1, t y mod n2)."""
    _require_coprime(t, S.shape)
    xs, ys = S.coords()
    return PointSet.from_coords(S.shape, xs * t, ys * t)


def negate_set(S: PointSet) -> PointSet:
    """The set Z^{-1} = {(-x mod n1, -y mod n2)}."""
    xs, ys = S.coords()
    return PointSet.from_coords(S.shape, -xs, -ys)


def close_under_multiplier(S: PointSet, multiplier: int) -> PointSet:
    """Union of the multiplier-cosets of all members of ``S``."""
    _require_coprime(multiplier, S.shape)
    shape = S.shape
    order = multiplicative_order(multiplier, math.lcm(shape.n1, shape.n2))
    xs, ys = S.coords()
    grid = np.zeros((shape.n1, shape.n2), dtype=bool)
    for _ in range(order):
        grid[xs % shape.n1, ys % shape.n2] = True
        xs, ys = xs * multiplier % shape.n1, ys * multiplier % shape.n2
    return PointSet._wrap(shape, grid)


@dataclass
class BranchMin:
    value: int
    point: Point
    shift: int


@dataclass
class MinReport:
    """Outcome of :func:`f_min_search`.

    ``per_branch`` maps ``(k, on_diagonal)`` to the branch minimum, where ``k``
    is the number of q-ary digits of x minus one and ``on_diagonal`` is True
    for the shift ``l == period - k - 1``.
    """

    q: int
    m: int
    mode: Mode
    n: int
    threshold: int
    shifts: tuple[int, ...]
    min_value: int
    argmin_point: Point
    argmin_shift: int
    per_branch: dict[tuple[int, bool], BranchMin] = field(default_factory=dict)
    points_searched: int = 0

    def class_min(self, on_diagonal: bool, k_max: int | None = None) -> BranchMin | None:
        """Minimum over the branches of one shift class, optionally with ``k <= k_max``."""
        best = None
        for (k, diag), b in sorted(self.per_branch.items()):
            if diag != on_diagonal or (k_max is not None and k > k_max):
                continue
            if best is None or (b.value, b.shift, b.point) < (best.value, best.shift, best.point):
                best = b
        return best


def f_min_search(q: int, m: int, mode: Mode) -> MinReport:
    """Exhaustively minimise f(x, y, l) = (-x q^l mod n)(-y q^l mod n).

    The search runs over every point of the hyperbolic region below the
    lemma threshold and every admissible shift; no symmetry reduction is used.
    Ties are broken lexicographically on (l, x, y).
    """
    if prime_power(q) is None:
        raise ParameterError(f"q={q} is not a prime power")
    if m <= 3:
        raise UnsupportedParameterError(f"m must exceed 3, got m={m}")
    if mode == "euclidean":
        period = m
        n = q**m - 1
        threshold = n - q ** (m // 2)
        shifts = tuple(range(m))
        x_max = n - 1
    elif mode == "hermitian":
        period = 2 * m
        n = q ** (2 * m) - 1
        threshold = n - q ** (m - 1)
        shifts = tuple(range(1, 2 * m, 2))
        x_max = n
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    pows = [pow(q, l, n) for l in shifts]
    per_branch: dict[tuple[int, bool], BranchMin] = {}
    best: tuple[int, int, int, int] | None = None  # (value, l, x, y)
    searched = 0
    for x in range(1, x_max + 1):
        y_hi = min(x_max, (threshold - 1) // x)  # x*y < threshold
        if y_hi < 1:
            break
        ys = np.arange(1, y_hi + 1, dtype=np.int64)
        searched += ys.size
        k = 0  # q^k - 1 < x <= q^(k+1) - 1
        while q ** (k + 1) <= x:
            k += 1
        for l, ql in zip(shifts, pows):
            fx = (-x * ql) % n
            vals = fx * ((-ys * ql) % n)
            i = int(np.argmin(vals))
            v = int(vals[i])
            y = int(ys[i])
            key = (k, l == period - k - 1)
            cur = per_branch.get(key)
            if cur is None or (v, l, x, y) < (cur.value, cur.shift, cur.point.x, cur.point.y):
                per_branch[key] = BranchMin(v, Point(x, y), l)
            if best is None or (v, l, x, y) < best:
                best = (v, l, x, y)
    assert best is not None
    return MinReport(
        q=q,
        m=m,
        mode=mode,
        n=n,
        threshold=threshold,
        shifts=shifts,
        min_value=best[0],
        argmin_point=Point(best[2], best[3]),
        argmin_shift=best[1],
        per_branch=per_branch,
        points_searched=searched,
    )
