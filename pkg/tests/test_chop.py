import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt import chop
from tautilt.arith import GF
from tautilt.chop import MatModule, NotIrreducible, are_isomorphic, constituents, hom_dimension, is_irreducible, sign_twist, simple_modules
from tautilt.permgrp import PermutationGroup
from tautilt.skewalg import as_H_module

S3 = PermutationGroup.symmetric(3)
C3 = PermutationGroup.from_text("(1 2 3)", 3)


def test_irreducibility_examples():
    assert is_irreducible(MatModule.trivial(GF(5), S3)).irreducible
    cert = is_irreducible(MatModule.regular(GF(2, 2), C3))
    assert not cert.irreducible and cert.submodule.shape[0] == 1
    two = [S for S in simple_modules(S3, 5) if S.dim == 2][0]
    assert is_irreducible(two).irreducible


def test_constituent_examples():
    reg = constituents(MatModule.regular(GF(2, 2), C3))
    assert reg.dims == [1, 1, 1] and reg.multiplicities == [1, 1, 1]
    reg = constituents(MatModule.regular(GF(5), S3))
    assert sorted(zip(reg.dims, reg.multiplicities)) == [(1, 1), (1, 1), (2, 2)]
    C = constituents(as_H_module("coinvariant", 3, C3, GF(2, 2)))
    assert C.multiplicities == [2, 2, 2]


def test_isomorphism():
    F = GF(5)
    triv, sgn = MatModule.trivial(F, S3), MatModule.sign(F, S3)
    assert are_isomorphic(triv, triv)
    assert not are_isomorphic(triv, sgn)
    assert are_isomorphic(triv.tensor(sgn), sgn)
    with pytest.raises(NotIrreducible):
        are_isomorphic(MatModule.regular(F, S3), triv)


def test_sign_twist_tables():
    assert sign_twist(simple_modules(S3, 5)) == [1, 0, 2]
    assert sign_twist(simple_modules(C3, 2)) == [0, 1, 2]
    assert sign_twist(simple_modules(PermutationGroup.from_text("(1 2)", 2), 2)) == [0]


def test_hom_dimension_examples():
    F = GF(5)
    assert hom_dimension(MatModule.trivial(F, S3), MatModule.regular(F, S3)) == 1
    for S in simple_modules(S3, 5):
        assert hom_dimension(S, S) == 1
    F4 = GF(2, 2)
    simples = simple_modules(C3, 2)
    for a in simples:
        for b in simples:
            assert hom_dimension(a, as_H_module("coinvariant", 3, C3, F4, twist=b)) == 2


def test_relations_are_checked():
    F = GF(5)
    bad = np.array([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        MatModule(F, [bad], C3)


def test_module_json_round_trip():
    M = MatModule.regular(GF(2, 2), C3)
    N = MatModule.from_json(M.to_json(), C3)
    assert all(np.array_equal(a, b) for a, b in zip(M.gens, N.gens))


@pytest.mark.parametrize("text,n,p", [("(1 2),(1 2 3)", 3, 5), ("(1 2 3)", 3, 2), ("(1 2 3 4)", 4, 3), ("(1 2),(1 2 3 4)", 4, 5), ("(1 2),(1 2 3)", 3, 2)])
def test_dimension_conservation_and_semisimplicity(text, n, p):
    H = PermutationGroup.from_text(text, n)
    F = chop.splitting_field_for(H.exponent(), p)
    cl = constituents(MatModule.regular(F, H))
    assert cl.total_dimension() == len(H)
    if len(H) % p:
        assert cl.dims == cl.multiplicities


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 1000))
def test_determinism(seed):
    M = as_H_module("coinvariant", 3, S3, GF(5))
    a, b = constituents(M, seed), constituents(M, seed)
    assert a.dims == b.dims and a.multiplicities == b.multiplicities
    assert all(np.array_equal(x, y) for S, T in zip(a.simples, b.simples) for x, y in zip(S.gens, T.gens))
    assert a.total_dimension() == 6
