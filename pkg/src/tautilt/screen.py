"""Cartan-matrix screens and the decision procedure for ``k[(Z/m)^n x| H]``.

A Cartan matrix that is not positive definite rules out tau-tilting
finiteness for weakly symmetric algebras; for selfinjective algebras the
same test runs on the subspace of Nakayama-invariant vectors.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import chop
from .arith.fields import FiniteField
from .arith.quadratic import (
    Definiteness,
    SymmetricIntegerMatrix,
    classify_definiteness,
    isotropic_or_negative_integer_vector,
)
from .permgrp import (
    HyperfocalReport,
    NotPPrimeGroup,
    Permutation,
    PermutationGroup,
    hyperfocal_rank,
    p_adic_valuation,
)
from .skewalg import as_H_module, default_field


class NotApplicable(ValueError):
    pass


class Screen(enum.Enum):
    TAU_TILTING_INFINITE = "TauTiltingInfinite"
    NOT_G_TAME = "NotGTame"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ScreenVerdict:
    verdict: Screen
    witness: tuple[int, ...] | None = None
    justification: str = ""
    not_g_tame: bool = False
    definiteness: Definiteness | None = None

    @property
    def infinite(self) -> bool:
        return self.verdict in (Screen.TAU_TILTING_INFINITE, Screen.NOT_G_TAME)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "not_g_tame": self.not_g_tame,
            "definiteness": self.definiteness.value if self.definiteness else None,
            "witness": list(self.witness) if self.witness is not None else None,
            "justification": self.justification,
        }


def _quad(C: SymmetricIntegerMatrix, v) -> int:
    return C.quadratic_value(v)


def weakly_symmetric_screen(C: SymmetricIntegerMatrix) -> ScreenVerdict:
    """Screen a weakly symmetric algebra by its Cartan matrix.

    Not positive definite means tau-tilting infinite; not even positive
    semidefinite additionally rules out g-tameness. A positive definite
    matrix proves nothing.
    """
    d = classify_definiteness(C)
    if d is Definiteness.POSITIVE_DEFINITE:
        return ScreenVerdict(Screen.INCONCLUSIVE, None, "Cartan matrix is positive definite", definiteness=d)
    v = isotropic_or_negative_integer_vector(C)
    assert v is not None and _quad(C, v) <= 0
    if d is Definiteness.POSITIVE_SEMIDEFINITE:
        return ScreenVerdict(
            Screen.TAU_TILTING_INFINITE, v, "Cartan matrix is not positive definite", definiteness=d
        )
    return ScreenVerdict(
        Screen.NOT_G_TAME,
        v,
        "Cartan matrix is not positive semidefinite (hence also not positive definite)",
        not_g_tame=True,
        definiteness=d,
    )


def _orbit_matrix(nu: Permutation, t: int) -> np.ndarray:
    seen, cols = set(), []
    for i in range(t):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = nu.images[j]
        col = np.zeros(t, dtype=np.int64)
        col[orb] = 1
        cols.append(col)
    return np.stack(cols, axis=1)


def fold(C: SymmetricIntegerMatrix, nu: Permutation) -> tuple[SymmetricIntegerMatrix, np.ndarray]:
    """Restrict the form to nu-invariant vectors; returns ``(U^T C U, U)`` with orbit-sum columns."""
    if nu.degree != C.t:
        raise ValueError("Nakayama permutation has the wrong degree")
    U = _orbit_matrix(nu, C.t)
    M = np.array(C.rows, dtype=object)
    return SymmetricIntegerMatrix((U.T.astype(object) @ M @ U.astype(object)).tolist()), U


def selfinjective_screen(C: SymmetricIntegerMatrix, nu: Permutation | None = None) -> ScreenVerdict:
    nu = nu or Permutation.identity(C.t)
    Fm, U = fold(C, nu)
    w = isotropic_or_negative_integer_vector(Fm)
    if w is None:
        return ScreenVerdict(
            Screen.INCONCLUSIVE, None, "form is positive definite on Nakayama-invariant vectors",
            definiteness=Definiteness.POSITIVE_DEFINITE,
        )
    v = tuple(int(x) for x in U @ np.array(w, dtype=np.int64))
    assert any(v) and _quad(C, v) <= 0
    assert all(v[nu.images[i]] == v[i] for i in range(C.t))
    return ScreenVerdict(
        Screen.TAU_TILTING_INFINITE, v, "Nakayama-invariant vector with non-positive Cartan value",
        definiteness=classify_definiteness(Fm),
    )


# Cartan matrix of the skew group algebra

@dataclass
class CartanData:
    matrix: SymmetricIntegerMatrix
    dims: list[int]
    star: list[int]
    index: int
    field: FiniteField
    simples: list = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "dims": self.dims,
            "star": self.star,
            "index": self.index,
            "field": self.field.to_json(),
        }


def _require_p_prime(H: PermutationGroup, p: int):
    if H.order() % p == 0:
        raise NotPPrimeGroup(f"|H| = {H.order()} is divisible by {p}")


def cartan_data(n: int, H: PermutationGroup, p: int, seed: int = 0) -> CartanData:
    """Closed-form Cartan matrix ``index * dim S_l * dim S_m`` with simples from chop."""
    _require_p_prime(H, p)
    F = default_field(H, p)
    simples = chop.simple_modules(H, p, seed, field=F)
    dims = [S.dim for S in simples]
    idx = H.index_in_symmetric()
    C = SymmetricIntegerMatrix([[idx * a * b for b in dims] for a in dims])
    return CartanData(C, dims, chop.sign_twist(simples, seed), idx, F, simples)


def cartan_formula(n: int, H: PermutationGroup, p: int, seed: int = 0) -> SymmetricIntegerMatrix:
    return cartan_data(n, H, p, seed).matrix


def cartan_by_chop(n: int, H: PermutationGroup, p: int, seed: int = 0) -> SymmetricIntegerMatrix:
    """``dim Hom_H(S_l, C (x) S_m)`` for all simples, computed by linear algebra."""
    data = cartan_data(n, H, p, seed)
    F = data.field
    S = data.simples
    rows = []
    for Sl in S:
        row = []
        for Sm in S:
            target = as_H_module("coinvariant", n, H, F, twist=Sm if Sm.gens else None)
            if not Sl.gens:
                row.append(target.dim * Sl.dim)  # trivial group: every linear map
            else:
                row.append(chop.hom_dimension(Sl, target))
        rows.append(row)
    return SymmetricIntegerMatrix(rows)


@dataclass
class Main0Witness:
    vector: tuple[int, ...]
    pair: tuple[int, int]
    cartan: SymmetricIntegerMatrix
    star: list[int]

    def to_json(self) -> dict:
        return {"vector": list(self.vector), "pair": list(self.pair), "star": self.star}


def main0_witness(n: int, H: PermutationGroup, p: int, seed: int = 0) -> Main0Witness:
    """Integer null vector of the Cartan matrix invariant under the sign twist.

    Uses the first pair ``(l, m)`` with ``m != l`` and ``m != l*`` and sets
    ``v = dim S_m (e_l + e_l*) - dim S_l (e_m + e_m*)``.

    Raises:
        NotApplicable: fewer than ``min(p, 3)`` simple modules.
    """
    data = cartan_data(n, H, p, seed)
    t = len(data.dims)
    if t < min(p, 3):
        raise NotApplicable(f"only {t} simple modules, need at least {min(p, 3)}")
    star, dims = data.star, data.dims
    pair = next(((a, b) for a in range(t) for b in range(t) if b != a and b != star[a]), None)
    if pair is None:
        raise NotApplicable("no pair of simples with distinct sign twists")
    a, b = pair
    v = [0] * t
    for i, c in ((a, dims[b]), (star[a], dims[b]), (b, -dims[a]), (star[b], -dims[a])):
        v[i] += c
    v = tuple(v)
    C = data.matrix
    assert any(v), "witness vanished"
    assert all(v[star[i]] == v[i] for i in range(t)), "witness not invariant under the sign twist"
    assert all(x == 0 for x in C.apply(v)), "witness is not in the kernel"
    return Main0Witness(v, pair, C, star)


def star_permutation(star: list[int]) -> Permutation:
    return Permutation(star)


# decision procedure

class Verdict(enum.Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    UNKNOWN = "Unknown"


RULE_MAIN2 = "Thm-main2"
RULE_COR1 = "Cor-main1"
RULE_CYCLIC = "Prop-2.15a"
RULE_SEMISIMPLE = "semisimple"
RULE_UNKNOWN = "unknown"


@dataclass
class GroupAlgebraVerdict:
    verdict: Verdict
    rule: str
    p: int
    m: int
    n: int
    group: str
    l: int
    ibr: int
    pl_ge_n: bool
    p_prime: bool
    rank: int | None = None
    hyperfocal: HyperfocalReport | None = None
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "rule": self.rule,
            "rank": self.rank,
            "ibr": self.ibr,
            "pl_ge_n": self.pl_ge_n,
            "witness": list(self.witness) if self.witness is not None else None,
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "group": self.group,
            "l": self.l,
            "p_prime": self.p_prime,
        }


def decide(p: int, m: int, n: int, H: PermutationGroup, with_witness: bool = False, seed: int = 0) -> GroupAlgebraVerdict:
    """Decide tau-tilting finiteness of ``k[(Z/m)^n x| H]`` where the theory allows.

    The cascade, in order: semisimple group algebra; for p'-groups H the
    hyperfocal rank (at most 1 is finite, at least 2 with ``p^l >= n`` is
    infinite); otherwise enough simple modules with ``p^l >= n`` gives
    infinite. Everything else is Unknown.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if H.n != n:
        raise ValueError("group degree does not match n")
    l = p_adic_valuation(m, p)
    ibr = H.p_regular_class_count(p)
    pl_ge_n = p**l >= n
    p_prime = H.is_p_prime(p)
    common = dict(p=p, m=m, n=n, group=H.describe(), l=l, ibr=ibr, pl_ge_n=pl_ge_n, p_prime=p_prime)
    if p_prime:
        rep = hyperfocal_rank(H, p, m)
        if l == 0:
            return GroupAlgebraVerdict(Verdict.FINITE, RULE_SEMISIMPLE, rank=0, hyperfocal=rep, **common)
        if rep.rank <= 1:
            # cyclic hyperfocal subgroup; the iff criterion gives the same answer when p^l >= n
            rule = RULE_MAIN2 if pl_ge_n else RULE_CYCLIC
            return GroupAlgebraVerdict(Verdict.FINITE, rule, rank=rep.rank, hyperfocal=rep, **common)
        if pl_ge_n:
            w = None
            if with_witness and ibr >= min(p, 3):
                w = main0_witness(n, H, p, seed).vector
            return GroupAlgebraVerdict(Verdict.INFINITE, RULE_MAIN2, rank=rep.rank, hyperfocal=rep, witness=w, **common)
        return GroupAlgebraVerdict(Verdict.UNKNOWN, RULE_UNKNOWN, rank=rep.rank, hyperfocal=rep, **common)
    if pl_ge_n and ibr >= min(p, 3):
        return GroupAlgebraVerdict(Verdict.INFINITE, RULE_COR1, **common)
    return GroupAlgebraVerdict(Verdict.UNKNOWN, RULE_UNKNOWN, **common)
