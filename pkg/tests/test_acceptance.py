"""Acceptance gate.

Each test carries a ``criterion`` marker; the summary hook in conftest.py
prints one PASS/FAIL line per criterion.  Run directly with
``python3 tests/test_acceptance.py`` or through ``pytest``.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np
import pytest

import brute
from bicyclo.cosets import CodeShape, PointSet, all_cosets, close_under_multiplier, f_min_search, negate_set, scale_set
from bicyclo.gf import build_field
from bicyclo.gfmatrix import GFMatrix
from bicyclo.hyperbolic import (
    HyperbolicSpec,
    contains_dual,
    contains_euclidean_dual,
    contains_hermitian_dual,
    css_params,
    delta_euclidean,
    delta_euclidean_np,
    delta_hermitian,
    delta_hermitian_np,
    designed_set,
    dimension,
    sufficiency_audit,
    verify_lemma,
)
from bicyclo.oracle import (
    Codeword,
    generator_matrix,
    matrix_contains_euclidean_dual,
    matrix_contains_hermitian_dual,
    parity_check_matrix,
    random_combinations,
    rank_and_nullspace,
    sample_min_weight,
    shift_codeword,
    vanishes_on,
)

criterion = pytest.mark.criterion

EUCLID_SMALL = [(n, d) for n in (3, 5, 7, 15) for d in range(1, n + 1)]
HERM_SMALL = [(n, d) for n in (3, 5, 15) for d in range(1, n + 1)]


def _timed(limit):
    """Context manager asserting the wrapped block stays under ``limit`` seconds."""

    class _T:
        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, *exc):
            self.elapsed = time.perf_counter() - self.t0
            if exc[0] is None:
                assert self.elapsed < limit, f"took {self.elapsed:.1f}s, budget {limit}s"

    return _T()


# -- 1, 2: primitive boundaries ---------------------------------------------------


@criterion(1, "Euclidean primitive boundary at delta in {9, 27, 49, 64}")
def test_euclidean_primitive_boundary():
    with _timed(10):
        for (q, m), delta in zip([(2, 4), (2, 5), (2, 6), (3, 4)], [9, 27, 49, 64]):
            assert delta_euclidean(q, m).value == delta
            n = q**m - 1
            assert contains_euclidean_dual(HyperbolicSpec.square(n, q, delta)), (q, m)
            assert not contains_euclidean_dual(HyperbolicSpec.square(n, q, delta + 1)), (q, m)


@criterion(2, "Hermitian primitive boundary at delta_h in {247, 961}")
def test_hermitian_primitive_boundary():
    with _timed(60):
        for (q, m), delta in zip([(2, 4), (2, 5)], [247, 961]):
            assert delta_hermitian(q, m).value == delta
            n = q ** (2 * m) - 1
            assert contains_hermitian_dual(HyperbolicSpec.square(n, q, delta, "hermitian")), (q, m)
            assert not contains_hermitian_dual(HyperbolicSpec.square(n, q, delta + 1, "hermitian")), (q, m)


# -- 3, 4: exhaustive f minimisation ----------------------------------------------


@criterion(3, "Euclidean f-minimisation: 9 (2,4), 27 (2,5), 64 (3,4)")
def test_euclidean_f_min():
    with _timed(30):
        r = f_min_search(2, 4, "euclidean")
        assert r.min_value == 9 == (2**2 - 1) ** 2
        branches = verify_lemma(2, 4, "euclidean")
        assert branches.passed, branches.lines()
        r = f_min_search(2, 5, "euclidean")
        assert r.min_value == 27 == 2**5 - 1 - 2**2
        assert verify_lemma(2, 5, "euclidean").passed
        assert f_min_search(3, 4, "euclidean").min_value == 64
        assert verify_lemma(3, 4, "euclidean").passed
        # independent nested-loop oracle
        assert brute.f_min(2, 4, False) == 9
        assert brute.f_min(2, 5, False) == 27


@criterion(4, "Hermitian f-minimisation: 247 (2,4) at odd l, 961 (2,5)")
def test_hermitian_f_min():
    with _timed(60):
        r = f_min_search(2, 4, "hermitian")
        assert r.min_value == 247 == 2**8 - 1 - 2**3
        assert r.argmin_shift % 2 == 1
        r5 = f_min_search(2, 5, "hermitian")
        assert r5.min_value == 961 == (2**5 - 1) ** 2
        assert r5.argmin_shift % 2 == 1
        assert verify_lemma(2, 4, "hermitian").passed
        assert verify_lemma(2, 5, "hermitian").passed
        assert brute.f_min(2, 4, True) == 247


# -- 5, 6, 7: set level vs matrix level -------------------------------------------


@criterion(5, "Euclidean set predicate equals H H^T = 0, q=2, n in {3,5,7,15}")
def test_euclidean_equivalence():
    with _timed(60):
        bad = []
        for n, d in EUCLID_SMALL:
            spec = HyperbolicSpec.square(n, 2, d)
            if contains_euclidean_dual(spec) != matrix_contains_euclidean_dual(spec):
                bad.append((n, d))
        assert bad == []


@criterion(6, "Hermitian set predicate equals H (H^(2))^T = 0, GF(4), n in {3,5,15}")
def test_hermitian_equivalence():
    with _timed(60):
        bad = []
        for n, d in HERM_SMALL:
            spec = HyperbolicSpec.square(n, 2, d, "hermitian")
            if contains_hermitian_dual(spec) != matrix_contains_hermitian_dual(spec):
                bad.append((n, d))
        assert bad == []


@criterion(7, "rank(H) = |Z| and nullity = n^2 - |Z| on every equivalence instance")
def test_rank_law():
    bad = []
    for mode, cases in (("euclidean", EUCLID_SMALL), ("hermitian", HERM_SMALL)):
        for n, d in cases:
            spec = HyperbolicSpec.square(n, 2, d, mode)
            rank, basis = rank_and_nullspace(parity_check_matrix(spec))
            z = spec.defining.cardinality
            if rank != z or basis.rows != n * n - z or dimension(spec) != basis.rows:
                bad.append((mode, n, d, rank, z))
    assert bad == []


# -- 8, 9: non-primitive sufficiency ------------------------------------------------


@criterion(8, "non-primitive Euclidean sufficiency at (2, 21): d in 2..5")
def test_euclidean_nonprimitive_sufficiency():
    with _timed(5):
        t = delta_euclidean_np(2, 21)
        assert t.value == Fraction(49, 9)
        for d in range(2, 6):
            assert t.admits(d)
            assert contains_euclidean_dual(HyperbolicSpec.square(21, 2, d)), d
        assert not t.admits(6)


@criterion(9, "non-primitive Hermitian audit at (2, 341): d up to 106")
def test_hermitian_nonprimitive_audit():
    with _timed(60):
        t = delta_hermitian_np(2, 341)
        assert t.value == Fraction(961, 9) and t.floor == 106
        base = HyperbolicSpec.square(341, 2, 2, "hermitian")
        for d in range(2, 107):
            assert contains_hermitian_dual(base.with_d(d)), d
        audit = sufficiency_audit(2, 5, "hermitian", lengths=[341, 1023])
        assert audit.passed
        # the data records which parity reading survives
        assert audit.supported() == ["theorem"]
        assert all(line for line in audit.lines())


# -- 10: quantum parameters ---------------------------------------------------------


@criterion(10, "CSS parameters for 15x15, q=2, d=2: [[225, 217, >=2]], k=221 by nullspace")
def test_css_parameters():
    spec = HyperbolicSpec.square(15, 2, 2)
    qp = css_params(spec)
    assert (qp.N, qp.K, qp.d_lower) == (225, 217, 2)
    _, basis = rank_and_nullspace(parity_check_matrix(spec))
    assert basis.rows == 221 == dimension(spec)
    assert qp.K == 2 * basis.rows - 225


# -- 11: property suites --------------------------------------------------------------


@criterion(11, "property suites")
@pytest.mark.parametrize("n1,n2,q,t", [(15, 15, 2, 2), (15, 15, 2, 4), (21, 9, 2, 2), (80, 80, 3, 3), (255, 255, 2, 4)])
def test_property_coset_partition(n1, n2, q, t):
    shape = CodeShape(n1, n2, q)
    seen = np.zeros((n1, n2), dtype=bool)
    for c in all_cosets(shape, t):
        xs = np.array([p[0] for p in c.members])
        ys = np.array([p[1] for p in c.members])
        assert not seen[xs, ys].any()
        seen[xs, ys] = True
        closed = {(x * t % n1, y * t % n2) for x, y in c.members}
        assert closed == set(c.members)
    assert seen.all()


@criterion(11, "property suites")
@pytest.mark.parametrize("mode,n,q", [("euclidean", 15, 2), ("euclidean", 21, 2), ("euclidean", 80, 3), ("hermitian", 15, 2), ("hermitian", 63, 2)])
def test_property_monotone_in_d(mode, n, q):
    base = HyperbolicSpec.square(n, q, 1, mode)
    values = [contains_dual(base.with_d(d)) for d in range(1, n + 2)]
    first_false = values.index(False) if False in values else len(values)
    assert all(values[:first_false]) and not any(values[first_false:])
    for d in range(1, n + 1):
        assert designed_set(base.shape, 0, 0, d).issubset(designed_set(base.shape, 0, 0, d + 1))


@criterion(11, "property suites")
@pytest.mark.parametrize("seed", range(5))
def test_property_negate_scale_bijections(seed):
    rng = np.random.default_rng(seed)
    shape = CodeShape(63, 45, 2)
    S = PointSet(shape, rng.random((63, 45)) < 0.05)
    assert negate_set(negate_set(S)) == S
    assert negate_set(S).cardinality == S.cardinality
    N = math.lcm(63, 45)
    units = [u for u in range(1, N) if math.gcd(u, N) == 1]
    for t in rng.choice(units, 4):
        t = int(t)
        img = scale_set(S, t)
        assert img.cardinality == S.cardinality
        assert scale_set(img, pow(t, -1, N)) == S
    assert close_under_multiplier(negate_set(S), 2) == negate_set(close_under_multiplier(S, 2))


@criterion(11, "property suites")
@pytest.mark.parametrize("p,e", [(2, 1), (2, 2), (2, 4), (2, 8), (2, 10), (3, 1), (3, 4), (5, 2)])
def test_property_field_axioms(p, e):
    F = build_field(p, e)
    rng = np.random.default_rng(p**e)
    a, b, c = rng.integers(0, F.size, size=(3, 1000))
    assert np.array_equal(F.add(a, b), F.add(b, a))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)
    assert np.array_equal(F.frobenius_array(a, e), a)
    assert np.array_equal(F.frobenius_array(F.mul(a, b), 1), F.mul(F.frobenius_array(a, 1), F.frobenius_array(b, 1)))
    assert np.array_equal(F.frobenius_array(F.add(a, b), 1), F.add(F.frobenius_array(a, 1), F.frobenius_array(b, 1)))


@criterion(11, "property suites")
@pytest.mark.parametrize("mode,n,d", [("euclidean", 15, 4), ("euclidean", 7, 3), ("hermitian", 15, 6), ("hermitian", 5, 2)])
def test_property_shift_cyclicity(mode, n, d):
    spec = HyperbolicSpec.square(n, 2, d, mode)
    H = parity_check_matrix(spec)
    G = generator_matrix(spec)
    rng = np.random.default_rng(17)
    words = random_combinations(G, 100, rng)
    shifted = []
    for w in words:
        dr, dc = (int(v) for v in rng.integers(0, n, size=2))
        shifted.append(shift_codeword(Codeword.from_vector(spec.shape, w), dr, dc).vector())
    syndromes = (H @ GFMatrix(H.field, np.array(shifted).T)).data
    assert not syndromes.any()


@criterion(11, "property suites")
@pytest.mark.parametrize("n,d", [(15, 2), (15, 4), (15, 9), (5, 3), (3, 2)])
def test_property_frobenius_dual_relation(n, d):
    spec = HyperbolicSpec.square(n, 2, d, "hermitian")
    H = parity_check_matrix(spec)  # its row space is the Euclidean dual
    K = H.field
    u = random_combinations(H, 200, np.random.default_rng(n + d))
    target = scale_set(spec.defining, -2).complement()  # defining set of the Hermitian dual
    assert vanishes_on(spec, K.frobenius_array(u, 1), target).all()


def _code_instances():
    for n, d in EUCLID_SMALL:
        yield "euclidean", n, d
    for n, d in HERM_SMALL:
        yield "hermitian", n, d


@criterion(11, "property suites")
def test_property_sampled_min_weight():
    bad = []
    for mode, n, d in _code_instances():
        spec = HyperbolicSpec.square(n, 2, d, mode)
        if spec.defining.cardinality == n * n:
            continue  # zero code
        G = generator_matrix(spec)
        w = sample_min_weight(spec, 10_000, seed=2024, G=G)
        if w < d:
            bad.append((mode, n, d, w))
    assert bad == []


@criterion(11, "property suites")
def test_property_seeded_determinism():
    for mode, n, d in [("euclidean", 15, 3), ("hermitian", 15, 4)]:
        spec = HyperbolicSpec.square(n, 2, d, mode)
        G = generator_matrix(spec)
        assert np.array_equal(G.data, generator_matrix(spec).data)
        a = random_combinations(G, 500, np.random.default_rng(99))
        b = random_combinations(G, 500, np.random.default_rng(99))
        assert np.array_equal(a, b)
        assert sample_min_weight(spec, 2000, seed=5, G=G) == sample_min_weight(spec, 2000, seed=5, G=G)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
