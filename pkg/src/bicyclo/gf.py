"""Finite fields GF(p^e) with exp/log tables.

Elements are encoded as integers whose base-p digits are the coefficients of
the representing polynomial (lowest degree first).  The reduction polynomial
is the lexicographically smallest primitive polynomial, so the class of X is
the primitive element and the tables index powers of it directly.

Scalar arithmetic goes through :class:`FieldElement`; the ``FiniteField``
methods accept numpy arrays of encodings and are what the matrix code uses.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass

import numpy as np

from .cosets import is_prime, prime_factors
from .errors import CapacityError, ParameterError

DEFAULT_FIELD_CAP = 2**20


def field_cap() -> int:
    """Maximum field size; ``BICYCLO_FIELD_CAP`` overrides the default."""
    raw = os.environ.get("BICYCLO_FIELD_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_FIELD_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ParameterError(f"BICYCLO_FIELD_CAP must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ParameterError(f"BICYCLO_FIELD_CAP must be >= 2, got {cap}")
    return cap


# -- polynomials over GF(p), coefficient lists low degree first ---------------


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    e = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # f is monic
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            for j in range(e + 1):
                prod[d - e + j] = (prod[d - e + j] - c * f[j]) % p
    out = prod[:e] + [0] * (e - len(prod[:e]))
    return out


def _poly_powmod_x(k: int, f: list[int], p: int) -> list[int]:
    e = len(f) - 1
    result = [1] + [0] * (e - 1)
    base = ([0, 1] + [0] * (e - 2)) if e >= 2 else [(-f[0]) % p]
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        k >>= 1
    return result


def _is_primitive(f: list[int], p: int) -> bool:
    e = len(f) - 1
    order = p**e - 1
    one = [1] + [0] * (e - 1)
    if f[0] == 0:
        return False
    if _poly_powmod_x(order, f, p) != one:
        return False
    return all(_poly_powmod_x(order // r, f, p) != one for r in prime_factors(order))


def primitive_polynomial(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic polynomial of degree e (low first)."""
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if _is_primitive(f, p):
            return tuple(f)
    raise AssertionError("no primitive polynomial found")  # pragma: no cover


class FiniteField:
    """GF(p^e).  Build through :func:`build_field`, which caches instances."""

    def __init__(self, p: int, e: int):
        self.p = p
        self.e = e
        self.size = p**e
        self.order = self.size - 1
        self.reduction_polynomial = primitive_polynomial(p, e)
        self._pw = np.array([p**i for i in range(e)], dtype=np.int64)
        exp = np.zeros(2 * self.order, dtype=np.int64)
        log = np.full(self.size, -1, dtype=np.int64)
        if e == 1:
            g = (-self.reduction_polynomial[0]) % p
            v = 1
            for i in range(self.order):
                exp[i] = v
                log[v] = i
                v = v * g % p
        else:
            f_low = self.reduction_polynomial[:e]
            # digits of t * f_low for each possible carried-out coefficient t
            carry = [[(t * c) % p for c in f_low] for t in range(p)]
            digits = [1] + [0] * (e - 1)
            for i in range(self.order):
                v = sum(d * w for d, w in zip(digits, self._pw.tolist()))
                exp[i] = v
                log[v] = i
                t = digits[-1]
                digits = [0] + digits[:-1]
                if t:
                    digits = [(d - c) % p for d, c in zip(digits, carry[t])]
        exp[self.order :] = exp[: self.order]
        if np.any(log[1:] < 0):
            raise AssertionError("exp table is not a permutation of the nonzero elements")  # pragma: no cover
        exp.setflags(write=False)
        log.setflags(write=False)
        self.exp_table = exp
        self.log_table = log
        self._embeddings: dict[int, np.ndarray] = {}
        self._expanders: dict[int, np.ndarray] = {}

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    # -- scalar conveniences --------------------------------------------------

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(self, value)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def primitive_element(self) -> FieldElement:
        return FieldElement(self, int(self.exp_table[1 % self.order]))

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.size)]

    # -- vectorised arithmetic on integer encodings ---------------------------

    def digits(self, a) -> np.ndarray:
        """Base-p coefficient vectors, shape ``a.shape + (e,)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._pw) % self.p

    def from_digits(self, d) -> np.ndarray:
        d = np.asarray(d, dtype=np.int64) % self.p
        return d @ self._pw

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % self.p
        return self.from_digits(self.digits(a) + self.digits(b))

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.e == 1:
            return (-a) % self.p
        return self.from_digits(-self.digits(a))

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        lb = self.log_table[b]
        out = self.exp_table[(la + lb) % self.order] if self.order else np.zeros_like(a + b)
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.exp_table[(-self.log_table[a]) % self.order]

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def power(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        if k < 0:
            a, k = self.inv(a), -k
        out = self.exp_table[(self.log_table[a] * (k % self.order)) % self.order]
        return np.where(a == 0, 0, out)

    def frobenius_array(self, a, s: int = 1) -> np.ndarray:
        """Entrywise a -> a^(p^s)."""
        return self.power(a, self.p ** (s % self.e))

    def exp(self, k) -> np.ndarray:
        """gamma^k for the primitive element gamma."""
        return self.exp_table[np.asarray(k, dtype=np.int64) % self.order]

    # -- subfields -------------------------------------------------------------

    def _check_subdegree(self, b: int) -> None:
        if b < 1 or self.e % b:
            raise ParameterError(f"subfield degree {b} does not divide {self.e}")

    def subfield_embedding(self, b: int) -> np.ndarray:
        """Table mapping encodings of ``build_field(p, b)`` into this field.

        The standalone generator X is sent to a root of its reduction
        polynomial lying in the degree-b subfield, which makes the map a field
        isomorphism onto that subfield.
        """
        self._check_subdegree(b)
        if b in self._embeddings:
            return self._embeddings[b]
        sub = build_field(self.p, b)
        step = self.order // sub.order
        f = sub.reduction_polynomial
        root = None
        for j in range(sub.order):
            if math.gcd(j, sub.order) != 1:
                continue
            cand = int(self.exp(j * step))
            acc = 0
            for c in reversed(f):  # Horner
                acc = int(self.add(self.mul(acc, cand), c % self.p))
            if acc == 0:
                root = cand
                break
        assert root is not None
        table = np.zeros(sub.size, dtype=np.int64)
        table[1:] = self.exp((self.log_table[root] * sub.log_table[np.arange(1, sub.size)]) % self.order)
        table.setflags(write=False)
        self._embeddings[b] = table
        return table

    def _expander(self, b: int) -> np.ndarray:
        """Inverse change-of-basis matrix over GF(p) for the basis {w^r gamma^i}."""
        if b in self._expanders:
            return self._expanders[b]
        t = self.e // b
        sub = build_field(self.p, b)
        omega = int(self.subfield_embedding(b)[int(sub.exp_table[0 if sub.order == 1 else 1])])
        cols = []
        for i in range(t):
            gi = int(self.exp(i))
            for r in range(b):
                cols.append(self.digits(self.mul(gi, self.power(omega, r))))
        M = np.stack(cols, axis=1)  # e x e, column index i*b + r
        Minv = _inverse_mod_p(M, self.p)
        Minv.setflags(write=False)
        self._expanders[b] = Minv
        return Minv

    def expand(self, a, b: int) -> np.ndarray:
        """Coordinates over GF(p^b) in the basis {1, gamma, ..., gamma^(e/b - 1)}.

        Returns standalone ``build_field(p, b)`` encodings with shape ``a.shape + (e // b,)``.
        """
        self._check_subdegree(b)
        t = self.e // b
        Minv = self._expander(b)
        coords = (self.digits(a) @ Minv.T) % self.p  # (..., e), index i*b + r
        coords = coords.reshape(coords.shape[:-1] + (t, b))
        sub_pw = np.array([self.p**r for r in range(b)], dtype=np.int64)
        return coords @ sub_pw

    def combine(self, coeffs, b: int) -> np.ndarray:
        """Inverse of :meth:`expand`."""
        self._check_subdegree(b)
        coeffs = np.asarray(coeffs, dtype=np.int64)
        emb = self.subfield_embedding(b)
        t = self.e // b
        acc = np.zeros(coeffs.shape[:-1], dtype=np.int64)
        for i in range(t):
            acc = self.add(acc, self.mul(emb[coeffs[..., i]], self.exp(i)))
        return acc


def _inverse_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    A = np.concatenate([M % p, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r, c] % p), None)
        if piv is None:
            raise ParameterError("basis matrix is singular")  # pragma: no cover
        A[[c, piv]] = A[[piv, c]]
        A[c] = A[c] * pow(int(A[c, c]), -1, p) % p
        for r in range(n):
            if r != c and A[r, c]:
                A[r] = (A[r] - A[r, c] * A[c]) % p
    return A[:, n:].copy()


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, e: int) -> FiniteField:
    return FiniteField(p, e)


def build_field(p: int, e: int = 1) -> FiniteField:
    """Deterministic GF(p^e); raises for non-prime p or sizes beyond the cap."""
    if not is_prime(p):
        raise ParameterError(f"characteristic {p} is not prime")
    if e < 1:
        raise ParameterError(f"extension degree must be positive, got {e}")
    if p**e > field_cap():
        raise CapacityError(f"GF({p}^{e}) has {p**e} elements, above the cap of {field_cap()}")
    return _cached_field(p, e)


@dataclass(frozen=True)
class FieldElement:
    field: FiniteField
    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.size:
            raise ParameterError(f"{self.value} is not an element of {self.field!r}")

    def _other(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ParameterError(f"cannot combine elements of {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int) and 0 <= other < self.field.p:
            return other  # prime-subfield constant
        raise ParameterError(f"cannot combine {other!r} with an element of {self.field!r}")

    def _wrap(self, v) -> FieldElement:
        return FieldElement(self.field, int(v))

    def __add__(self, other):
        return self._wrap(self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.field.sub(self.value, self._other(other)))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(self.field.div(self.value, self._other(other)))

    def __pow__(self, k: int):
        return self._wrap(self.field.power(self.value, k))

    def inverse(self) -> FieldElement:
        return self._wrap(self.field.inv(self.value))

    def frobenius(self, s: int = 1) -> FieldElement:
        return self._wrap(self.field.frobenius_array(self.value, s))

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        log = int(self.field.log_table[self.value])
        return self.field.order // math.gcd(log, self.field.order)

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        if self.value == 0:
            return f"{self.field!r}(0)"
        return f"{self.field!r}(g^{int(self.field.log_table[self.value])})"


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def frobenius(a: FieldElement, s: int = 1) -> FieldElement:
    """a -> a^(p^s); an automorphism fixing GF(p)."""
    return a.frobenius(s)


def root_of_unity(F: FiniteField, n: int) -> FieldElement:
    """gamma^((|F| - 1) / n), an element of exact multiplicative order n."""
    if n < 1 or F.order % n:
        raise ParameterError(f"{n} does not divide |{F!r}*| = {F.order}")
    return FieldElement(F, int(F.exp(F.order // n)))


def expand_to_base(a: FieldElement, base_degree: int) -> list[FieldElement]:
    """Coordinates of ``a`` over the subfield GF(p^base_degree)."""
    F = a.field
    sub = build_field(F.p, base_degree) if F.e % base_degree == 0 else None
    if sub is None:
        raise ParameterError(f"subfield degree {base_degree} does not divide {F.e}")
    coords = F.expand(np.array(a.value), base_degree)
    return [FieldElement(sub, int(c)) for c in coords]


def combine_from_base(coeffs: list[FieldElement], F: FiniteField) -> FieldElement:
    """Recombine subfield coordinates produced by :func:`expand_to_base`."""
    if not coeffs:
        raise ParameterError("empty coordinate vector")
    sub = coeffs[0].field
    if F.e % sub.e or len(coeffs) != F.e // sub.e:
        raise ParameterError("coordinate vector does not match the extension degree")
    return FieldElement(F, int(F.combine(np.array([c.value for c in coeffs]), sub.e)))
