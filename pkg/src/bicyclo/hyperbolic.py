"""Bicyclic hyperbolic codes and their dual-containment thresholds.

A hyperbolic code is described entirely by its designed set, the region
``x' * y' < d`` shifted by the offsets ``(a, b)``; its defining set is the
cyclotomic closure of that region.  Dual containment is decided on the
designed set alone, and the closed-form thresholds are checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Literal

import numpy as np

from .cosets import (
    CodeShape,
    MinReport,
    PointSet,
    close_under_multiplier,
    f_min_search,
    multiplicative_order,
    negate_set,
    prime_power,
    scale_set,
)
from .errors import NotDualContainingError, ParameterError, UnsupportedParameterError

DualType = Literal["euclidean", "hermitian"]
DUAL_TYPES = ("euclidean", "hermitian")


def designed_set(shape: CodeShape, a: int, b: int, d: int) -> PointSet:
    """{((a + x') mod n1, (b + y') mod n2) : 1 <= x' <= n1, 1 <= y' <= n2, x' y' < d}."""
    if d < 1:
        raise ParameterError(f"design distance must be >= 1, got {d}")
    xs, ys = [], []
    for xp in range(1, min(shape.n1, d - 1) + 1):
        y_hi = min(shape.n2, (d - 1) // xp)
        if y_hi < 1:
            break
        yp = np.arange(1, y_hi + 1, dtype=np.int64)
        xs.append(np.full(y_hi, a + xp, dtype=np.int64))
        ys.append(b + yp)
    if not xs:
        return PointSet.empty(shape)
    return PointSet.from_coords(shape, np.concatenate(xs), np.concatenate(ys))


@dataclass(frozen=True)
class HyperbolicSpec:
    """Parameters of a hyperbolic code.

    ``shape.q`` is the base field size.  Euclidean specs describe a code over
    GF(q) closed under multiplication by q; Hermitian specs describe a code
    over GF(q^2) closed under multiplication by q^2.
    """

    shape: CodeShape
    d: int
    dual_type: DualType = "euclidean"
    a: int = 0
    b: int = 0

    def __post_init__(self) -> None:
        if self.dual_type not in DUAL_TYPES:
            raise ParameterError(f"dual type must be one of {DUAL_TYPES}, got {self.dual_type!r}")
        if not isinstance(self.d, (int, np.integer)) or self.d < 1:
            raise ParameterError(f"design distance must be a positive integer, got {self.d!r}")

    @classmethod
    def square(cls, n: int, q: int, d: int, dual_type: DualType = "euclidean") -> HyperbolicSpec:
        return cls(CodeShape(n, n, q), d, dual_type)

    @property
    def q(self) -> int:
        return self.shape.q

    @property
    def alphabet(self) -> int:
        """Size of the field the code is defined over."""
        return self.q if self.dual_type == "euclidean" else self.q**2

    @property
    def multiplier(self) -> int:
        return self.alphabet

    @property
    def narrow_sense(self) -> bool:
        return self.a % self.shape.n1 == 0 and self.b % self.shape.n2 == 0

    @property
    def length(self) -> int:
        return self.shape.size

    @cached_property
    def designed(self) -> PointSet:
        return designed_set(self.shape, self.a, self.b, self.d)

    @cached_property
    def defining(self) -> PointSet:
        return defining_set(self)

    def with_d(self, d: int) -> HyperbolicSpec:
        return HyperbolicSpec(self.shape, d, self.dual_type, self.a, self.b)

    def degeneracies(self) -> list[str]:
        """Reasons this spec sits outside the range the theory talks about."""
        out = []
        if self.d == 1:
            out.append("d=1: empty designed set")
        if self.d > min(self.shape.n1, self.shape.n2):
            out.append("d exceeds the period: designed set wraps onto coordinate 0")
        if self.d > self.shape.size:
            out.append("d exceeds n1*n2")
        return out


def defining_set(spec: HyperbolicSpec) -> PointSet:
    return close_under_multiplier(spec.designed, spec.multiplier)


def euclidean_dual_defining_set(Z: PointSet) -> PointSet:
    """Z_tot \\ Z^{-1}."""
    return negate_set(Z).complement()


def hermitian_dual_defining_set(Z: PointSet, q: int) -> PointSet:
    """Z_tot \\ Z^{-q}."""
    return scale_set(Z, -q).complement()


def contains_euclidean_dual(spec: HyperbolicSpec) -> bool:
    if spec.dual_type != "euclidean":
        raise ParameterError("contains_euclidean_dual needs a euclidean spec")
    return spec.designed.isdisjoint(negate_set(spec.defining))


def contains_hermitian_dual(spec: HyperbolicSpec) -> bool:
    if spec.dual_type != "hermitian":
        raise ParameterError("contains_hermitian_dual needs a hermitian spec")
    return spec.designed.isdisjoint(scale_set(spec.defining, -spec.q))


def contains_dual(spec: HyperbolicSpec) -> bool:
    if spec.dual_type == "euclidean":
        return contains_euclidean_dual(spec)
    return contains_hermitian_dual(spec)


def dimension(spec: HyperbolicSpec) -> int:
    return spec.shape.size - spec.defining.cardinality


# -- thresholds ---------------------------------------------------------------


@dataclass(frozen=True)
class Threshold:
    """Exact rational design-distance threshold."""

    numerator: int
    denominator: int
    formula_case: Literal["m_even", "m_odd"]
    primitive: bool

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise ParameterError("threshold denominator must be positive")
        g = math.gcd(self.numerator, self.denominator)
        if g > 1:
            object.__setattr__(self, "numerator", self.numerator // g)
            object.__setattr__(self, "denominator", self.denominator // g)

    @classmethod
    def of(cls, value: Fraction, m: int, primitive: bool) -> Threshold:
        return cls(value.numerator, value.denominator, "m_even" if m % 2 == 0 else "m_odd", primitive)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    @property
    def floor(self) -> int:
        return self.numerator // self.denominator

    def admits(self, d: int) -> bool:
        """d <= threshold, by cross-multiplication."""
        return d * self.denominator <= self.numerator

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @staticmethod
    def parse(text: str) -> Fraction:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den or 1))


def _require_m(m: int) -> None:
    if m <= 3:
        raise UnsupportedParameterError(f"closed-form thresholds need m > 3, got m={m}")


def _require_q(q: int) -> None:
    if prime_power(q) is None:
        raise ParameterError(f"q={q} is not a prime power")


def _delta(q: int, m: int) -> int:
    if m % 2 == 0:
        return (q**m - 1) - 2 * (q ** (m // 2) - 1)
    return (q**m - 1) - q ** ((m - 1) // 2)


def _delta_h(q: int, m: int, swapped: bool = False) -> int:
    odd = (m % 2 == 1) != swapped
    if odd:
        return (q**m - 1) ** 2
    return q ** (2 * m) - 1 - q ** (m - 1)


def delta_euclidean(q: int, m: int) -> Threshold:
    """Largest d for which H(n x n, q; d), n = q^m - 1, contains its Euclidean dual."""
    _require_q(q)
    _require_m(m)
    return Threshold.of(Fraction(_delta(q, m)), m, True)


def delta_euclidean_np(q: int, n: int) -> Threshold:
    """Sufficient threshold for length n x n, scaled from the primitive case m = ord_n(q)."""
    _require_q(q)
    if math.gcd(n, q) != 1:
        raise ParameterError(f"gcd(n, q) = gcd({n}, {q}) != 1")
    m = multiplicative_order(q, n)
    _require_m(m)
    big = q**m - 1
    return Threshold.of(Fraction(n * n, big * big) * _delta(q, m), m, n == big)


def delta_hermitian(q: int, m: int) -> Threshold:
    """Largest d for which H(n x n, q^2; d), n = q^(2m) - 1, contains its Hermitian dual."""
    _require_q(q)
    _require_m(m)
    return Threshold.of(Fraction(_delta_h(q, m)), m, True)


HermitianReading = Literal["theorem", "printed"]


def delta_hermitian_np(q: int, n: int, reading: HermitianReading = "theorem") -> Threshold:
    """Sufficient Hermitian threshold for length n x n with m = ord_n(q^2).

    ``reading="theorem"`` uses the primitive formula's parity assignment
    ((q^m - 1)^2 for odd m); ``"printed"`` swaps the two cases.
    """
    _require_q(q)
    if math.gcd(n, q) != 1:
        raise ParameterError(f"gcd(n, q) = gcd({n}, {q}) != 1")
    if reading not in ("theorem", "printed"):
        raise ParameterError(f"unknown reading {reading!r}")
    m = multiplicative_order(q * q, n)
    _require_m(m)
    big = q ** (2 * m) - 1
    value = Fraction(n * n, big * big) * _delta_h(q, m, swapped=reading == "printed")
    return Threshold.of(value, m, n == big)


# -- quantum codes --------------------------------------------------------------


@dataclass(frozen=True)
class QuantumParams:
    N: int
    K: int
    d_lower: int
    construction: Literal["css", "hermitian"]

    def __str__(self) -> str:
        return f"[[{self.N}, {self.K}, >={self.d_lower}]]"


def css_params(spec: HyperbolicSpec) -> QuantumParams:
    """[[N, 2k - N, >= d]] from a Euclidean dual-containing code over GF(q)."""
    if not contains_euclidean_dual(spec):
        raise NotDualContainingError(f"{spec.shape} with d={spec.d} does not contain its Euclidean dual")
    N = spec.length
    return QuantumParams(N, 2 * dimension(spec) - N, spec.d, "css")


def hermitian_params(spec: HyperbolicSpec) -> QuantumParams:
    """[[N, 2k - N, >= d]] over GF(q) from a Hermitian dual-containing code over GF(q^2)."""
    if not contains_hermitian_dual(spec):
        raise NotDualContainingError(f"{spec.shape} with d={spec.d} does not contain its Hermitian dual")
    N = spec.length
    return QuantumParams(N, 2 * dimension(spec) - N, spec.d, "hermitian")


def quantum_params(spec: HyperbolicSpec) -> QuantumParams:
    return css_params(spec) if spec.dual_type == "euclidean" else hermitian_params(spec)


# -- validators -------------------------------------------------------------------


def primitive_length(q: int, m: int, mode: DualType) -> int:
    return q**m - 1 if mode == "euclidean" else q ** (2 * m) - 1


def theorem_threshold(q: int, m: int, mode: DualType) -> Threshold:
    return delta_euclidean(q, m) if mode == "euclidean" else delta_hermitian(q, m)


def max_dual_containing_d(shape: CodeShape, dual_type: DualType) -> int:
    """Largest d whose narrow-sense code contains its dual (0 if none).

    Binary search; valid because the predicate is monotone in d.
    """
    lo, hi = 0, shape.size + 1  # predicate(hi) is false: Z = Z_tot
    base = HyperbolicSpec(shape, 1, dual_type)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if contains_dual(base.with_d(mid)):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class BoundaryReport:
    q: int
    m: int
    mode: DualType
    n: int
    threshold: Threshold
    holds_at_threshold: bool
    fails_above: bool
    exhaustive: bool = False
    mismatches: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.holds_at_threshold and self.fails_above and not self.mismatches

    def lines(self) -> list[str]:
        t = self.threshold.numerator
        out = [
            f"{self.mode} q={self.q} m={self.m} n={self.n} threshold={t}",
            f"  d={t}: contains dual = {self.holds_at_threshold} -> {'PASS' if self.holds_at_threshold else 'FAIL'}",
            f"  d={t + 1}: contains dual = {not self.fails_above} -> {'PASS' if self.fails_above else 'FAIL'}",
        ]
        if self.exhaustive:
            out.append(f"  exhaustive sweep d=1..{self.n}: {len(self.mismatches)} mismatches")
        return out


def verify_theorem_boundary(q: int, m: int, mode: DualType, exhaustive: bool = False) -> BoundaryReport:
    """Evaluate the set predicate on both sides of the closed-form threshold.

    With monotonicity in d, true at the threshold and false just above it
    certifies the full 'if and only if'.  ``exhaustive`` also sweeps every d
    in [1, n] and records disagreements.
    """
    t = theorem_threshold(q, m, mode)
    n = primitive_length(q, m, mode)
    base = HyperbolicSpec.square(n, q, 1, mode)
    delta = t.numerator
    report = BoundaryReport(
        q=q,
        m=m,
        mode=mode,
        n=n,
        threshold=t,
        holds_at_threshold=contains_dual(base.with_d(delta)),
        fails_above=not contains_dual(base.with_d(delta + 1)),
        exhaustive=exhaustive,
    )
    if exhaustive:
        for d in range(1, n + 1):
            if contains_dual(base.with_d(d)) != (d <= delta):
                report.mismatches.append(d)
    return report


@dataclass
class LemmaCheck:
    label: str
    expected: int
    observed: int
    relation: Literal["==", ">="]
    shift_expected: int | None = None
    shift_observed: int | None = None

    @property
    def passed(self) -> bool:
        ok = self.observed == self.expected if self.relation == "==" else self.observed >= self.expected
        if ok and self.shift_expected is not None:
            ok = self.shift_observed == self.shift_expected
        return ok


@dataclass
class LemmaReport:
    q: int
    m: int
    mode: DualType
    search: MinReport
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        s = self.search
        name = "lemma5" if self.mode == "euclidean" else "lemma8"
        out = [
            f"{name} q={self.q} m={self.m} n={s.n}: region xy < {s.threshold}, shifts {list(s.shifts)}, "
            f"{s.points_searched} points",
            f"  global min {s.min_value} at (x,y)=({s.argmin_point.x},{s.argmin_point.y}) l={s.argmin_shift}",
        ]
        for (k, diag), b in sorted(s.per_branch.items()):
            cls = "l=period-k-1" if diag else "l!=period-k-1"
            out.append(f"  branch k={k} {cls}: min {b.value} at ({b.point.x},{b.point.y}) l={b.shift}")
        for c in self.checks:
            shift = "" if c.shift_expected is None else f" at l={c.shift_observed} (expected l={c.shift_expected})"
            out.append(
                f"  {c.label}: observed {c.observed} {c.relation} {c.expected}{shift} -> {'PASS' if c.passed else 'FAIL'}"
            )
        return out


def verify_lemma(q: int, m: int, mode: DualType) -> LemmaReport:
    """Compare the exhaustive f-minimisation with the closed-form branch minima."""
    s = f_min_search(q, m, mode)
    checks: list[LemmaCheck] = []
    if mode == "euclidean":
        k_max = (m - 1) // 2
        off = s.class_min(False, k_max)
        on = s.class_min(True, k_max)
        half = -(-m // 2)  # ceil(m/2)
        checks.append(LemmaCheck("off-diagonal shifts", q**m - 1 - q ** (half - 1), off.value, "==", half - 1, off.shift))
        if m % 2 == 0:
            checks.append(LemmaCheck("diagonal shift", (q ** (m // 2) - 1) ** 2, on.value, "==", m // 2, on.shift))
        else:
            checks.append(LemmaCheck("diagonal shift", q**m - 1, on.value, ">="))
        checks.append(LemmaCheck("global minimum = delta", _delta(q, m), s.min_value, "=="))
    else:
        k_max = (2 * m - 1) // 2
        off = s.class_min(False, k_max)
        on = s.class_min(True, k_max)
        if m % 2 == 0:
            checks.append(LemmaCheck("off-diagonal shifts", q ** (2 * m) - 1 - q ** (m - 1), off.value, "==", m - 1, off.shift))
            checks.append(LemmaCheck("diagonal shift", q ** (2 * m) - 1, on.value, ">="))
        else:
            checks.append(LemmaCheck("off-diagonal shifts", q ** (2 * m) - 1 - q**m, off.value, "==", m, off.shift))
            checks.append(LemmaCheck("diagonal shift", (q**m - 1) ** 2, on.value, "==", m, on.shift))
        checks.append(LemmaCheck("global minimum = delta_h", _delta_h(q, m), s.min_value, "=="))
    return LemmaReport(q, m, mode, s, checks)


@dataclass
class ReadingCheck:
    reading: str
    threshold: Threshold
    holds: bool
    vacuous: bool


@dataclass
class LengthAudit:
    n: int
    m: int
    primitive: bool
    boundary: int
    readings: list[ReadingCheck]


@dataclass
class SufficiencyAudit:
    """Checks a non-primitive sufficiency threshold over every admissible length."""

    q: int
    m: int
    mode: DualType
    lengths: list[LengthAudit]

    def supported(self) -> list[str]:
        names = [r.reading for r in self.lengths[0].readings] if self.lengths else []
        return [name for i, name in enumerate(names) if all(la.readings[i].holds for la in self.lengths)]

    @property
    def passed(self) -> bool:
        # the adopted reading is always listed first
        return bool(self.lengths) and all(la.readings[0].holds for la in self.lengths)

    def lines(self) -> list[str]:
        name = "corollary7" if self.mode == "euclidean" else "corollary12-audit"
        out = [f"{name} q={self.q} m={self.m}: {len(self.lengths)} lengths"]
        for la in self.lengths:
            parts = []
            for r in la.readings:
                tag = "vacuous" if r.vacuous else ("holds" if r.holds else "VIOLATED")
                parts.append(f"{r.reading}: {r.threshold} (floor {r.threshold.floor}) {tag}")
            kind = "primitive" if la.primitive else "non-primitive"
            out.append(f"  n={la.n} ({kind}) true boundary d<={la.boundary}; " + "; ".join(parts))
        out.append(f"  readings consistent with the data: {', '.join(self.supported()) or 'none'}")
        return out


def admissible_lengths(q: int, m: int, mode: DualType) -> list[int]:
    """Lengths n > 1 dividing the primitive length whose order parameter equals m."""
    big = primitive_length(q, m, mode)
    mult = q if mode == "euclidean" else q * q
    return [n for n in range(2, big + 1) if big % n == 0 and multiplicative_order(mult, n) == m]


def sufficiency_audit(
    q: int,
    m: int,
    mode: DualType,
    lengths: list[int] | None = None,
    exhaustive: bool = False,
) -> SufficiencyAudit:
    """Test the scaled thresholds on each length.

    A reading holds on a length when every 2 <= d <= floor(threshold) yields a
    dual-containing code.  By monotonicity it suffices to test the floor;
    ``exhaustive`` tests every d.
    """
    _require_m(m)
    if lengths is None:
        lengths = admissible_lengths(q, m, mode)
    audits = []
    for n in lengths:
        shape = CodeShape(n, n, q)
        if mode == "euclidean":
            readings = [("theorem", delta_euclidean_np(q, n))]
        else:
            readings = [("theorem", delta_hermitian_np(q, n, "theorem")), ("printed", delta_hermitian_np(q, n, "printed"))]
        m_n = multiplicative_order(q if mode == "euclidean" else q * q, n)
        if m_n != m:
            raise ParameterError(f"n={n} has order parameter {m_n}, not {m}")
        boundary = max_dual_containing_d(shape, mode)
        checks = []
        for name, t in readings:
            top = t.floor
            if top < 2:
                checks.append(ReadingCheck(name, t, True, True))
                continue
            base = HyperbolicSpec(shape, 2, mode)
            ds = range(2, top + 1) if exhaustive else [top]
            holds = all(contains_dual(base.with_d(d)) for d in ds)
            checks.append(ReadingCheck(name, t, holds, False))
        audits.append(LengthAudit(n, m, n == primitive_length(q, m, mode), boundary, checks))
    return SufficiencyAudit(q, m, mode, audits)
