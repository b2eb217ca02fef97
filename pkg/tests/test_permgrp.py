import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.permgrp import (
    NotPPrimeGroup,
    OrderBudgetExceeded,
    Permutation,
    PermutationGroup,
    closure,
    hyperfocal_rank,
    index_in_symmetric,
    orbits,
    p_regular_class_count,
    sign,
    subgroups_up_to_conjugacy,
)


def grp(text, n):
    return PermutationGroup.from_text(text, n)


@pytest.mark.parametrize("text,n,order", [("(1 2),(1 2 3)", 3, 6), ("(1 2 3)", 3, 3), ("", 4, 1), ("(1 2 3 4),(1 2)", 4, 24)])
def test_closure_orders(text, n, order):
    assert len(grp(text, n)) == order


def test_closure_from_permutation_objects():
    G = closure([Permutation.from_cycles("(1 2)(3 4)", 4), Permutation.from_cycles("(1 3)(2 4)", 4)], 4)
    assert len(G) == 4 and G.is_abelian()


def test_order_cap():
    with pytest.raises(OrderBudgetExceeded):
        len(PermutationGroup.from_text("(1 2),(1 2 3 4 5)", 5, order_cap=50))


def test_cycle_parser():
    s = Permutation.from_cycles("( 1 2 3 )(4 5)", 5)
    assert s.cycle_type() == (3, 2) and s.order() == 6
    assert Permutation.from_cycles(s.to_cycles(), 5) == s
    assert Permutation.identity(3).to_cycles() == "()"
    with pytest.raises(ValueError):
        Permutation.from_cycles("(1 4)", 3)


def test_conjugacy_classes():
    assert len(PermutationGroup.symmetric(3).conjugacy_classes()) == 3
    assert len(grp("(1 2 3)", 3).conjugacy_classes()) == 3
    assert len(PermutationGroup.trivial(3).conjugacy_classes()) == 1
    assert len(PermutationGroup.symmetric(4).conjugacy_classes()) == 5


@pytest.mark.parametrize("text,n,p,count", [("(1 2),(1 2 3)", 3, 3, 2), ("(1 2),(1 2 3)", 3, 5, 3), ("(1 2 3)", 3, 2, 3), ("(1 2),(1 2 3 4)", 4, 2, 2)])
def test_p_regular_class_count(text, n, p, count):
    assert p_regular_class_count(grp(text, n), p) == count


def test_orbits_are_zero_indexed_partitions():
    assert orbits(grp("(1 2)", 3)) == [(0, 1), (2,)]
    assert orbits(grp("(1 2 3)", 3)) == [(0, 1, 2)]
    assert orbits(PermutationGroup.trivial(4)) == [(0,), (1,), (2,), (3,)]


def test_sign_and_index():
    assert sign(Permutation.from_cycles("(1 2)", 2)) == -1
    assert sign(Permutation.identity(4)) == 1
    assert index_in_symmetric(grp("(1 2 3)", 3)) == 2


@pytest.mark.parametrize("text,n,p,m,rank", [("(1 2 3)", 3, 2, 4, 2), ("(1 2)", 2, 3, 3, 1), ("", 3, 2, 4, 0), ("", 3, 2, 3, 0)])
def test_hyperfocal_rank(text, n, p, m, rank):
    r = hyperfocal_rank(grp(text, n), p, m)
    assert r.rank == rank
    assert r.rank + r.orbit_count == n or r.semisimple_case


def test_hyperfocal_rank_semisimple_case_flagged():
    r = hyperfocal_rank(grp("(1 2)", 2), 3, 2)
    assert r.l == 0 and r.rank == 0 and r.semisimple_case


def test_hyperfocal_rank_requires_p_prime_group():
    with pytest.raises(NotPPrimeGroup):
        hyperfocal_rank(PermutationGroup.symmetric(3), 2, 4)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 4), (4, 11)])
def test_subgroup_classes(n, count):
    subs = subgroups_up_to_conjugacy(n)
    assert len(subs) == count
    assert all(math.factorial(n) % len(H) == 0 for H in subs)


perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))).map(Permutation))


@settings(max_examples=60, deadline=None)
@given(st.lists(perms, min_size=1, max_size=3), st.sampled_from([2, 3, 5]))
def test_group_invariants(gens, p):
    n = max(g.degree for g in gens)
    gens = [Permutation(list(g.images) + list(range(g.degree, n))) for g in gens]
    G = closure(gens, n)
    assert math.factorial(n) % len(G) == 0
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == len(G)
    if len(G) % p:
        assert p_regular_class_count(G, p) == len(classes)
    # closure under products and inverses
    els = set(G.elements)
    for a in random.Random(0).sample(sorted(els), min(len(els), 6)):
        assert a.inverse() in els
        for b in gens:
            assert a * b in els
    # a subgroup's orbits refine the group's
    H = closure(gens[:1], n)
    big = {i: o for o in orbits(G) for i in o}
    for o in orbits(H):
        assert set(o) <= set(big[o[0]])
