import json

import numpy as np
import pytest

from tautilt.arith import GF
from tautilt.permgrp import PermutationGroup
from tautilt.silting import (
    AlgebraMismatch,
    BasedAlgebra,
    IdempotentsUnavailable,
    InfiniteDimensional,
    NotTwoTerm,
    Status,
    TwoTermComplex,
    explore,
    from_group_algebra,
    from_quiver,
    from_skew_coinvariant,
    hom_in_homotopy,
    initial_object,
    is_two_term_silting,
    key_of,
    left_mutate,
    mutate,
    path_algebra_A2,
    two_loop_algebra,
    right_mutate,
    shifted_object,
    silting_geq,
    support_tau_tilting_of,
    truncated_polynomial,
    truncated_polynomial_ring,
    verify_report,
)
from tautilt.silting.complexes import hom_space
from tautilt.silting.oracle import support_tau_tilting_pairs

F2 = GF(2)


def a2_arrow_complex(A):
    """The complex P_1 -> P_0 given by the arrow (g-vector (1, -1))."""
    H = hom_space(A, (1,), (0,))
    assert H.dim == 1
    return TwoTermComplex(A, (1,), (0,), H.basis[0])


# algebras

def test_fixture_algebras():
    R = two_loop_algebra()
    assert R.dim == 12 and R.cartan == [[3, 3], [3, 3]]
    assert truncated_polynomial(F2, 2).dim == 2
    A2 = path_algebra_A2()
    assert A2.dim == 3 and A2.cartan == [[1, 0], [1, 1]]


def test_group_and_skew_algebras():
    assert from_group_algebra(PermutationGroup.symmetric(2), F2).t == 1
    F4C3 = from_group_algebra(PermutationGroup.from_text("(1 2 3)", 3), GF(2, 2))
    assert F4C3.t == 3 and F4C3.cartan == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    S = from_skew_coinvariant(3, PermutationGroup.from_text("(1 2 3)", 3), 2)
    assert S.dim == 18 and S.t == 3 and S.cartan == [[2] * 3] * 3
    with pytest.raises(IdempotentsUnavailable):
        from_group_algebra(PermutationGroup.symmetric(3), GF(5))


def test_from_quiver_errors():
    with pytest.raises(InfiniteDimensional):
        from_quiver([1], [("x", 1, 1)], [], nilpotency_bound=6)


def test_bad_algebra_rejected():
    A = path_algebra_A2()
    with pytest.raises(ValueError):
        BasedAlgebra(A.F, A.T, A.idempotents[:1])


def test_algebra_json_round_trip():
    A = two_loop_algebra()
    data = json.loads(json.dumps(A.to_json()))
    assert set(data) >= {"field", "dim", "basis", "mult", "idempotents"}
    B = BasedAlgebra.from_json(data)
    assert B.dim == A.dim and np.array_equal(B.T, A.T) and B.cartan == A.cartan


# homotopy category

def test_hom_in_homotopy_examples():
    A = path_algebra_A2()
    P0, P1 = TwoTermComplex.stalk(A, 0), TwoTermComplex.stalk(A, 1)
    assert hom_in_homotopy(P0, P0, 1) == 0
    assert hom_in_homotopy(P0, P0, 0) == 1
    assert hom_in_homotopy(P0, P1, 0) == 0 and hom_in_homotopy(P1, P0, 0) == 1
    X = a2_arrow_complex(A)
    assert hom_in_homotopy(X, X, 1) == 0
    assert hom_in_homotopy(X, X, 5) == 0
    L = truncated_polynomial(F2, 2)
    Q = TwoTermComplex.stalk(L, 0)
    assert hom_in_homotopy(Q, Q, 1) == 0
    assert hom_in_homotopy(TwoTermComplex.stalk(L, 0, True), Q, 1) == 2


def test_algebra_mismatch():
    A, B = path_algebra_A2(), path_algebra_A2()
    with pytest.raises(AlgebraMismatch):
        hom_in_homotopy(TwoTermComplex.stalk(A, 0), TwoTermComplex.stalk(B, 0))


def test_is_two_term_silting_examples():
    A = path_algebra_A2()
    assert is_two_term_silting(initial_object(A))
    assert is_two_term_silting(shifted_object(A))
    assert not is_two_term_silting([TwoTermComplex.stalk(A, 1), TwoTermComplex.stalk(A, 1, True)])
    assert not is_two_term_silting([TwoTermComplex.stalk(A, 0)])


def test_validate_rejects_off_corner_differential():
    A = path_algebra_A2()
    with pytest.raises(ValueError):
        TwoTermComplex(A, (0,), (1,), A.one[None, None]).validate()


# mutation

def test_local_mutation():
    L = truncated_polynomial(F2, 2)
    T = left_mutate(initial_object(L), 0)
    assert key_of(T) == key_of(shifted_object(L))
    with pytest.raises(NotTwoTerm):
        left_mutate(T, 0)


def test_a2_mutation_and_involution():
    A = path_algebra_A2()
    T0 = initial_object(A)
    T1 = left_mutate(T0, 1)
    assert key_of(T1) == ((1, -1), (1, 0))
    assert is_two_term_silting(T1)
    assert silting_geq(T0, T1) and not silting_geq(T1, T0)
    pos = [X.g_vector for X in T1].index((1, -1))
    assert key_of(right_mutate(T1, pos)) == key_of(T0)
    back, side = mutate(T1, pos)
    assert side == "right" and key_of(back) == key_of(T0)
    st = support_tau_tilting_of(T1)
    assert st.module_dims == (2, 1) and st.projective == (0, 0)


def test_support_tau_tilting_extremes():
    A = path_algebra_A2()
    assert support_tau_tilting_of(initial_object(A)).module_dims == tuple(map(sum, A.cartan))
    s = support_tau_tilting_of(shifted_object(A))
    assert s.module_dims == (0, 0) and s.projective == (1, 1)


# exploration against the module-side oracle

def _a3(orientation, rad2=False):
    arrows = [("a", 1, 2), ("b", 2, 3)] if orientation == "linear" else [("a", 1, 2), ("b", 3, 2)]
    rels = ["b*a"] if rad2 else []
    return from_quiver([1, 2, 3], arrows, rels)


def _cycle(k, rels):
    arrows = [(f"a{i}", i, (i + 1) % k) for i in range(k)]
    return from_quiver(list(range(k)), arrows, rels)


CASES = [
    ("F2[x]/x^2", lambda: truncated_polynomial(F2, 2), 2),
    ("F2[x]/x^3", lambda: truncated_polynomial(F2, 3), 2),
    ("A2", path_algebra_A2, 5),
    ("A2 over F3", lambda: path_algebra_A2(GF(3)), 5),
    ("Klein four", lambda: from_group_algebra(PermutationGroup.from_text("(1 2),(3 4)", 4), F2), 2),
    ("coinvariant n=2", lambda: from_skew_coinvariant(2, PermutationGroup.trivial(2), 2), 2),
    ("x1^2, x2^2", lambda: truncated_polynomial_ring(2, 2, F2), 2),
    ("C x| S2, p=3", lambda: from_skew_coinvariant(2, PermutationGroup.symmetric(2), 3), 6),
    ("A3 linear", lambda: _a3("linear"), 14),
    ("A3 alternating", lambda: _a3("alt"), 14),
    ("A3 rad^2=0", lambda: _a3("linear", True), 12),
    ("2-cycle rad^2=0", lambda: _cycle(2, ["a1*a0", "a0*a1"]), 6),
    ("3-cycle rad^2=0", lambda: _cycle(3, ["a1*a0", "a2*a1", "a0*a2"]), 14),
]


@pytest.mark.parametrize("name,build,count", CASES, ids=[c[0] for c in CASES])
def test_explore_matches_oracle(name, build, count):
    A = build()
    rep = explore(A, budget=100)
    assert rep.status is Status.COMPLETE_FINITE
    assert rep.count == count
    verify_report(rep)
    assert support_tau_tilting_pairs(A).count == count
    # the cokernel dimension vectors are pairwise distinct support tau-tilting pairs
    pairs = {(s.module_dims, s.projective) for s in map(support_tau_tilting_of, rep.vertices.values())}
    assert len(pairs) == count


def test_budget_exhausted_and_json():
    A = path_algebra_A2()
    rep = explore(A, budget=2)
    assert rep.status is Status.BUDGET_EXHAUSTED
    data = explore(A, budget=50).to_json()
    assert data["status"] == "CompleteFinite"
    assert len(data["vertices"]) == 5
    assert all(set(e) == {"source", "target", "row", "side"} for e in data["edges"])
    assert json.dumps(data, sort_keys=True) == json.dumps(explore(A, budget=50).to_json(), sort_keys=True)
