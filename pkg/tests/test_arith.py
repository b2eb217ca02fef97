import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.arith import GF, QQ, factor_univariate, splitting_field_for
from tautilt.arith import linalg, poly
from tautilt.arith.quadratic import (
    Definiteness,
    SymmetricIntegerMatrix,
    classify_definiteness,
    isotropic_or_negative_integer_vector,
    signature,
)

FIELDS = [GF(2), GF(5), GF(2, 2), GF(3, 2), GF(2, 3)]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_exhaustive(F):
    els = list(F.elements())
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    sample = els[: min(len(els), 5)]
    for a, b, c in itertools.product(sample, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(F):
    for a in range(1, F.q):
        assert F.pow(a, F.q - 1) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(1, 6), st.integers(0, 6), st.integers(1, 5), st.integers(0, 10**6))
def test_matmul_matches_elementwise_sums(fi, r, n, c, seed):
    F = FIELDS[fi]
    rng = np.random.default_rng(seed)
    a = F.random_array(rng, (r, n))
    b = F.random_array(rng, (n, c))
    ref = np.zeros((r, c), dtype=np.int64)
    for i in range(r):
        for j in range(c):
            acc = 0
            for k in range(n):
                acc = F.add(acc, F.mul(int(a[i, k]), int(b[k, j])))
            ref[i, j] = acc
    assert np.array_equal(F.matmul(a, b), ref)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.integers(1, 6), st.integers(0, 10**6))
def test_inverse_and_nullspace(fi, n, seed):
    F = FIELDS[fi]
    rng = np.random.default_rng(seed)
    a = F.random_array(rng, (n, n + 2))
    ker = linalg.nullspace(F, a)
    assert ker.shape[0] == n + 2 - linalg.rank(F, a)
    if ker.shape[0]:
        assert not F.matmul(a, ker.T).any()
    sq = a[:, :n]
    if linalg.rank(F, sq) == n:
        assert np.array_equal(F.matmul(sq, linalg.inverse(F, sq)), F.identity(n))


def test_solve_and_quotient_space():
    F = GF(2, 2)
    a = np.array([[1, 2, 0], [0, 1, 3]])
    x = linalg.solve(F, a, np.array([3, 1]))
    assert np.array_equal(F.matmul(a, x), np.array([3, 1]))
    Q = linalg.QuotientSpace(F, np.eye(3, dtype=np.int64), np.array([[1, 1, 0]]), 3)
    assert Q.dim == 2
    assert not Q.coords(np.array([1, 1, 0])).any()


def test_rationals_are_exact():
    assert QQ.add(Fraction(1, 3), Fraction(2, 3)) == 1
    assert QQ.mul(Fraction(3, 4), Fraction(4, 3)) == 1


# factorization and splitting fields

def _prod(factors, F):
    out = (1,)
    for f, m in factors:
        for _ in range(m):
            out = poly.mul(out, f, F)
    return out


def test_cube_roots_of_unity_split_over_f4():
    F = GF(2, 2)
    fac = factor_univariate([F.neg(1), 0, 0, 1], F)
    assert len(fac) == 3 and all(poly.degree(f) == 1 and m == 1 for f, m in fac)


def test_small_factorizations():
    F2 = GF(2)
    assert factor_univariate([1, 0, 1], F2) == [((1, 1), 2)]
    assert factor_univariate([1, 1, 1], F2) == [((1, 1, 1), 1)]
    with pytest.raises(ValueError):
        factor_univariate([0], F2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.lists(st.integers(0, 7), min_size=2, max_size=8), st.integers(0, 100))
def test_factorization_reproduces_input(fi, coeffs, seed):
    F = FIELDS[fi]
    f = poly.trim([c % F.q for c in coeffs])
    if poly.degree(f) < 1:
        return
    fac = factor_univariate(f, F, seed=seed)
    lead = f[-1]
    assert _prod(fac, F) == poly.monic(f, F) or poly.scale(_prod(fac, F), lead, F) == tuple(f)
    assert all(poly.is_irreducible(g, F) for g, _ in fac)


@pytest.mark.parametrize("e,p,q", [(3, 2, 4), (2, 3, 3), (6, 5, 25), (1, 7, 7), (4, 3, 9)])
def test_splitting_field(e, p, q):
    F = splitting_field_for(e, p)
    assert F.q == q
    # x^e' - 1 splits, e' the p'-part of e
    ep = e
    while ep % p == 0:
        ep //= p
    assert sum(1 for a in range(1, F.q) if F.pow(a, ep) == 1) == ep


# quadratic forms

@pytest.mark.parametrize(
    "rows,sig",
    [([[2, 0], [0, 3]], (2, 0, 0)), ([[3, 3], [3, 3]], (1, 1, 0)), ([[0, 1], [1, 0]], (1, 0, 1))],
)
def test_signature_examples(rows, sig):
    assert signature(SymmetricIntegerMatrix(rows)).as_tuple() == sig


@pytest.mark.parametrize(
    "rows,kind",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], Definiteness.POSITIVE_DEFINITE),
        ([[3, 3], [3, 3]], Definiteness.POSITIVE_SEMIDEFINITE),
        ([[1, 2], [2, 1]], Definiteness.INDEFINITE),
        ([[-1, 0], [0, -2]], Definiteness.NEGATIVE_DEFINITE),
        ([[-1, 0], [0, 0]], Definiteness.NEGATIVE_SEMIDEFINITE),
    ],
)
def test_classification_examples(rows, kind):
    assert classify_definiteness(SymmetricIntegerMatrix(rows)) is kind


def test_witness_vectors():
    assert isotropic_or_negative_integer_vector(SymmetricIntegerMatrix([[3, 3], [3, 3]])) in ((1, -1), (-1, 1))
    assert isotropic_or_negative_integer_vector(SymmetricIntegerMatrix.identity(2)) is None
    assert isotropic_or_negative_integer_vector(SymmetricIntegerMatrix([[4, 2], [2, 1]])) in ((1, -2), (-1, 2))


def test_non_symmetric_rejected():
    with pytest.raises(ValueError):
        SymmetricIntegerMatrix([[1, 2], [3, 1]])


sym_matrices = st.integers(1, 4).flatmap(
    lambda t: st.lists(st.integers(-5, 5), min_size=t * (t + 1) // 2, max_size=t * (t + 1) // 2).map(
        lambda xs, t=t: _symmetric(t, xs)
    )
)


def _symmetric(t, xs):
    it = iter(xs)
    m = [[0] * t for _ in range(t)]
    for i in range(t):
        for j in range(i, t):
            m[i][j] = m[j][i] = next(it)
    return SymmetricIntegerMatrix(m)


@settings(max_examples=200, deadline=None)
@given(sym_matrices)
def test_congruence_certificate_is_exact(M):
    s = signature(M)
    B = [[Fraction(x) for x in row] for row in s.transform]
    t = M.t
    prod = [[sum(B[k][i] * M[k, l] * B[l][j] for k in range(t) for l in range(t)) for j in range(t)] for i in range(t)]
    for i in range(t):
        for j in range(t):
            assert prod[i][j] == (s.diagonal[i] if i == j else 0)
    assert linalg.rank(QQ, B) == t if hasattr(QQ, "vmul") else _rank_q(B) == t


def _rank_q(rows):
    m = [list(r) for r in rows]
    r = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


@settings(max_examples=100, deadline=None)
@given(sym_matrices, st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2)), max_size=6))
def test_signature_is_congruence_invariant(M, ops):
    t = M.t
    U = [[int(i == j) for j in range(t)] for i in range(t)]
    for i, j, c in ops:
        i, j = i % t, j % t
        if i != j:
            for r in range(t):
                U[r][i] += c * U[r][j]
    assert signature(M.congruent(U)).as_tuple() == signature(M).as_tuple()


@settings(max_examples=100, deadline=None)
@given(sym_matrices)
def test_witness_has_nonpositive_value(M):
    v = isotropic_or_negative_integer_vector(M)
    if classify_definiteness(M) is Definiteness.POSITIVE_DEFINITE:
        assert v is None
    else:
        assert v is not None and any(v) and M.quadratic_value(v) <= 0
