"""Mutation of two-term silting objects and bounded exchange-graph search.

A silting object is a list of indecomposable two-term complexes. Mutation
at position ``i`` computes the multiplicities of a minimal approximation of
``T_i`` by the other summands, tests whether the cone stays two-term, and
then realizes the new summand from its g-vector (two-term presilting
complexes are determined by g-vectors), verifying the result exactly.
"""
from __future__ import annotations

import enum
import zlib
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ..arith import linalg
from .algebra import BasedAlgebra
from .complexes import (
    HomK,
    hom_space,
    TwoTermComplex,
    compose_chain,
    direct_sum,
    hom_in_homotopy,
    integer_det,
    is_two_term_silting,
    silting_geq,
    support_tau_tilting_of,
)


class NotTwoTerm(ValueError):
    """The requested mutation leaves the two-term range."""


class ApproximationFailure(RuntimeError):
    pass


def initial_object(A: BasedAlgebra) -> list[TwoTermComplex]:
    return [TwoTermComplex.stalk(A, i) for i in range(A.t)]


def shifted_object(A: BasedAlgebra) -> list[TwoTermComplex]:
    return [TwoTermComplex.stalk(A, i, shifted=True) for i in range(A.t)]


def key_of(summands) -> tuple[tuple[int, ...], ...]:
    """Canonical key: g-vectors sorted lexicographically."""
    return tuple(sorted(X.g_vector for X in summands))


# per-algebra caches keyed by complex identity (entries keep the complexes alive)

def _cache(A: BasedAlgebra, name: str) -> dict:
    return A.__dict__.setdefault(name, {})


def _homk(T: TwoTermComplex, U: TwoTermComplex) -> HomK:
    c = _cache(T.alg, "_homk_cache")
    hit = c.get((id(T), id(U)))
    if hit is None:
        hit = c[(id(T), id(U))] = (T, U, HomK(T, U))
    return hit[2]


def _hom1(T: TwoTermComplex, U: TwoTermComplex) -> int:
    c = _cache(T.alg, "_hom1_cache")
    hit = c.get((id(T), id(U)))
    if hit is None:
        hit = c[(id(T), id(U))] = (T, U, hom_in_homotopy(T, U, 1))
    return hit[2]


# radical of endomorphism rings

def _radical_endomorphisms(X: TwoTermComplex) -> tuple[HomK, np.ndarray]:
    """``End_K(X)`` and ambient rows spanning its radical (X indecomposable)."""
    c = _cache(X.alg, "_rad_cache")
    hit = c.get(id(X))
    if hit is None:
        hit = c[id(X)] = (X,) + _compute_radical(X)
    return hit[1], hit[2]


def _compute_radical(X: TwoTermComplex) -> tuple[HomK, np.ndarray]:
    A = X.alg
    F = A.F
    E = _homk(X, X)
    reps = E.reps
    r = reps.shape[0]
    if r == 0:
        return E, reps
    blocks = E.blocks(reps)
    lam = []
    for a in range(r):
        ga = (blocks[0][a], blocks[1][a])
        prod = compose_chain(A, blocks, ga)  # b then a
        M = E.Q.coords(E.coords_of(*prod))  # row b: coords of b*a
        c = A.residue(M.T.copy())
        if c is None:
            raise ApproximationFailure("endomorphism ring is not local with residue field F")
        lam.append(c)
    ker = linalg.nullspace(F, np.array(lam, dtype=np.int64).reshape(1, -1))
    if ker.shape[0] != r - 1:
        raise ApproximationFailure("residue map of the endomorphism ring is degenerate")
    rad = F.matmul(ker, reps) if ker.shape[0] else np.zeros((0, E.ambient), dtype=np.int64)
    return E, rad


def _radical_maps(Xk: TwoTermComplex, Xj: TwoTermComplex, same: bool) -> tuple[np.ndarray, np.ndarray]:
    """Block components of a spanning set of ``rad(X_k, X_j)``."""
    if same:
        E, rad = _radical_endomorphisms(Xj)
        return E.blocks(rad)
    H = _homk(Xk, Xj)
    return H.blocks(H.reps)


def approximation_multiplicities(summands, i: int, side: str = "left"):
    """Chosen maps for a minimal left (or right) approximation of ``T_i``.

    Returns a list over ``j != i`` of ``(j, maps)``, where ``maps`` is a list of
    block pairs ``(f^{-1}, f^0)`` for ``T_i -> X_j`` (left) or ``X_j -> T_i``
    (right), one per copy of ``X_j``.
    """
    A = summands[i].alg
    F = A.F
    Ti = summands[i]
    others = [j for j in range(len(summands)) if j != i]
    homs = {}
    for j in others:
        homs[j] = _homk(Ti, summands[j]) if side == "left" else _homk(summands[j], Ti)
    rad_cache = {}
    out = []
    for j in others:
        Hj = homs[j]
        if Hj.dim == 0:
            out.append((j, []))
            continue
        images = []
        for k in others:
            Hk = homs[k]
            if Hk.dim == 0:
                continue
            if side == "left":
                key = (k, j)
                if key not in rad_cache:
                    rad_cache[key] = _radical_maps(summands[k], summands[j], k == j)
                r1, r0 = rad_cache[key]
                g = Hk.blocks(Hk.reps)
                for q in range(r1.shape[0]):
                    c = compose_chain(A, g, (r1[q], r0[q]))
                    images.append(Hj.Q.coords(Hj.coords_of(*c)))
            else:
                key = (j, k)
                if key not in rad_cache:
                    rad_cache[key] = _radical_maps(summands[j], summands[k], k == j)
                r1, r0 = rad_cache[key]
                g = Hk.blocks(Hk.reps)
                for q in range(g[0].shape[0]):
                    c = compose_chain(A, (r1, r0), (g[0][q], g[1][q]))
                    images.append(Hj.Q.coords(Hj.coords_of(*c)))
        img = np.concatenate(images, axis=0) if images else np.zeros((0, Hj.dim), dtype=np.int64)
        span = linalg.row_space(F, img) if img.shape[0] else img
        chosen = []
        cur = span
        for a in range(Hj.dim):
            e = np.zeros(Hj.dim, dtype=np.int64)
            e[a] = 1
            if not linalg.in_span(F, cur, e):
                chosen.append(a)
                cur = np.vstack([cur, e]) if cur.shape[0] else e.reshape(1, -1)
        b1, b0 = Hj.blocks(Hj.reps[chosen]) if chosen else (None, None)
        out.append((j, [(b1[q], b0[q]) for q in range(len(chosen))]))
    return out


def _stack_maps(A, Ti, targets, maps, side):
    """Assemble the approximation ``T_i -> X'`` (left) or ``X' -> T_i`` (right)."""
    d = A.dim
    Xs = [X for X, _ in targets]
    Xp = direct_sum(Xs) if Xs else TwoTermComplex(A, (), (), np.zeros((0, 0, d), dtype=np.int64))
    if side == "left":
        f1 = np.zeros((len(Ti.minus), len(Xp.minus), d), dtype=np.int64)
        f0 = np.zeros((len(Ti.zero), len(Xp.zero), d), dtype=np.int64)
        c1 = c0 = 0
        for (X, _), (m1, m0) in zip(targets, maps):
            f1[:, c1 : c1 + len(X.minus)] = m1
            f0[:, c0 : c0 + len(X.zero)] = m0
            c1 += len(X.minus)
            c0 += len(X.zero)
    else:
        f1 = np.zeros((len(Xp.minus), len(Ti.minus), d), dtype=np.int64)
        f0 = np.zeros((len(Xp.zero), len(Ti.zero), d), dtype=np.int64)
        r1 = r0 = 0
        for (X, _), (m1, m0) in zip(targets, maps):
            f1[r1 : r1 + len(X.minus)] = m1
            f0[r0 : r0 + len(X.zero)] = m0
            r1 += len(X.minus)
            r0 += len(X.zero)
    return Xp, f1, f0


def _identity_blocks(A, verts):
    d = A.dim
    I = np.zeros((len(verts), len(verts), d), dtype=np.int64)
    for a, v in enumerate(verts):
        I[a, a] = A.idempotents[v]
    return I


def _split_mono(A, D, src, tgt) -> bool:
    """Does ``D: P_src -> P_tgt`` have a left inverse?"""
    if not src:
        return True
    H = hom_space(A, tgt, src)
    if H.dim == 0:
        return False
    img = H.then_basis(D).reshape(H.dim, -1)
    want = _identity_blocks(A, src).reshape(-1)
    return linalg.solve(A.F, img.T, want) is not None


def _split_epi(A, D, src, tgt) -> bool:
    """Does ``D: P_src -> P_tgt`` have a right inverse?"""
    if not tgt:
        return True
    H = hom_space(A, tgt, src)
    if H.dim == 0:
        return False
    img = H.basis_then(D).reshape(H.dim, -1)
    want = _identity_blocks(A, tgt).reshape(-1)
    return linalg.solve(A.F, img.T, want) is not None


def _cone_is_two_term(A, Ti, Xp, f1, f0, side) -> bool:
    if side == "left":
        # degree -2 -> -1 of the cone: T_i^{-1} -> T_i^0 + X'^{-1}
        D = np.concatenate([A.F.vneg(Ti.d), f1], axis=1)
        return _split_mono(A, D, Ti.minus, Ti.zero + Xp.minus)
    # degree 0 -> 1 of the cocone: X'^0 + T_i^{-1} -> T_i^0
    D = np.concatenate([f0, Ti.d], axis=0)
    return _split_epi(A, D, Xp.zero + Ti.minus, Ti.zero)


def _terms_for(g) -> tuple[tuple[int, ...], tuple[int, ...]]:
    minus = tuple(v for v, x in enumerate(g) for _ in range(max(0, -x)))
    zero = tuple(v for v, x in enumerate(g) for _ in range(max(0, x)))
    return minus, zero


def _compatible(Y: TwoTermComplex, rest) -> bool:
    if _hom1(Y, Y):
        return False
    return not any(_hom1(X, Y) or _hom1(Y, X) for X in rest)


def realize(A: BasedAlgebra, g, rest, seed: int = 0, tries: int = 64) -> TwoTermComplex:
    """A two-term complex with g-vector ``g`` such that ``rest + [it]`` is presilting.

    Presilting two-term complexes are determined by their g-vectors, so a
    complex already realized for ``g`` is reused when it fits.

    Raises:
        ApproximationFailure: no differential found within ``tries`` samples.
    """
    g = tuple(g)
    known = _cache(A, "_realized")
    Y = known.get(g)
    if Y is not None and _compatible(Y, rest):
        return Y
    minus, zero = _terms_for(g)
    H = hom_space(A, minus, zero)
    rng = np.random.Generator(np.random.PCG64(seed))
    attempts = 1 if H.dim == 0 else tries
    for _ in range(attempts):
        d = H.random(rng) if H.dim else np.zeros(H.shape, dtype=np.int64)
        Y = TwoTermComplex(A, minus, zero, d)
        if _compatible(Y, rest):
            known.setdefault(g, Y)
            return Y
    raise ApproximationFailure(f"could not realize g-vector {g} after {attempts} attempts")


def _seed_for(seed: int, summands, i: int, side: str) -> int:
    text = repr((seed, [X.g_vector for X in summands], i, side)).encode()
    return zlib.crc32(text)


def _mutate_side(summands, i: int, side: str, seed: int) -> list[TwoTermComplex]:
    summands = list(summands)
    A = summands[i].alg
    Ti = summands[i]
    choice = approximation_multiplicities(summands, i, side)
    targets, maps = [], []
    for j, ms in choice:
        for m in ms:
            targets.append((summands[j], j))
            maps.append(m)
    Xp, f1, f0 = _stack_maps(A, Ti, targets, maps, side)
    if not _cone_is_two_term(A, Ti, Xp, f1, f0, side):
        raise NotTwoTerm(f"{side} mutation at {i} leaves the two-term range")
    g = [0] * A.t
    for X, _ in targets:
        g = [a + b for a, b in zip(g, X.g_vector)]
    g = [a - b for a, b in zip(g, Ti.g_vector)]
    rest = summands[:i] + summands[i + 1 :]
    Y = realize(A, g, rest, seed=_seed_for(seed, summands, i, side))
    out = summands[:i] + [Y] + summands[i + 1 :]
    if abs(integer_det([list(X.g_vector) for X in out])) != 1:
        raise ApproximationFailure("mutated g-matrix is not unimodular")
    return out


def left_mutate(summands, i: int, seed: int = 0) -> list[TwoTermComplex]:
    """Left mutation at position ``i`` (0-based); the result is smaller in the silting order.

    Raises:
        NotTwoTerm: the cone of the approximation is not two-term.
    """
    return _mutate_side(summands, i, "left", seed)


def right_mutate(summands, i: int, seed: int = 0) -> list[TwoTermComplex]:
    """Right mutation at position ``i`` (0-based); the result is larger in the silting order."""
    return _mutate_side(summands, i, "right", seed)


def mutate(summands, i: int, seed: int = 0) -> tuple[list[TwoTermComplex], str]:
    """The unique two-term mutation at ``i``: left if possible, else right."""
    try:
        return left_mutate(summands, i, seed), "left"
    except NotTwoTerm:
        return right_mutate(summands, i, seed), "right"


# exploration

class Status(enum.Enum):
    COMPLETE_FINITE = "CompleteFinite"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass
class ExchangeGraphReport:
    status: Status
    budget: int
    t: int
    vertices: dict = field(default_factory=dict)  # key -> list of summands
    edges: list = field(default_factory=list)  # (key, key, position, side)

    @property
    def count(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict:
        adj = {k: [] for k in self.vertices}
        for a, b, _, _ in self.edges:
            adj[a].append(b)
        return adj

    def to_json(self) -> dict:
        keys = sorted(self.vertices)
        label = {k: n for n, k in enumerate(keys)}
        return {
            "status": self.status.value,
            "budget": self.budget,
            "t": self.t,
            "count": self.count,
            "vertices": [
                {
                    "id": label[k],
                    "g_matrix": [list(r) for r in k],
                    "support_tau_tilting": support_tau_tilting_of(self.vertices[k]).to_json(),
                }
                for k in keys
            ],
            "edges": [
                {"source": label[a], "target": label[b], "row": row, "side": s}
                for a, b, row, s in sorted(
                    ((a, b, a.index(self.vertices[a][i].g_vector), s) for a, b, i, s in self.edges if b in label),
                    key=lambda e: (label[e[0]], e[2]),
                )
            ],
        }


def explore(A: BasedAlgebra, budget: int = 200, seed: int = 0) -> ExchangeGraphReport:
    """Breadth-first search over two-term silting objects starting from ``A``.

    Stops with ``BudgetExhausted`` as soon as more than ``budget`` distinct
    objects would be needed.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    start = initial_object(A)
    rep = ExchangeGraphReport(Status.COMPLETE_FINITE, budget, A.t)
    k0 = key_of(start)
    rep.vertices[k0] = start
    queue = deque([k0])
    while queue:
        k = queue.popleft()
        T = rep.vertices[k]
        for i in range(A.t):
            U, side = mutate(T, i, seed)
            ku = key_of(U)
            rep.edges.append((k, ku, i, side))
            if ku in rep.vertices:
                continue
            if len(rep.vertices) >= budget:
                rep.status = Status.BUDGET_EXHAUSTED
                return rep
            rep.vertices[ku] = U
            queue.append(ku)
    return rep


def verify_report(rep: ExchangeGraphReport, poset: bool = True) -> None:
    """Assert the structural invariants of a report.

    Every object is two-term silting; every recorded edge is comparable in
    exactly one direction of the silting order; complete reports are
    ``t``-regular with symmetric adjacency.
    """
    for k, T in rep.vertices.items():
        assert is_two_term_silting(T), k
    if poset:
        for a, b, _, side in rep.edges:
            if b not in rep.vertices:
                continue
            ab = silting_geq(rep.vertices[a], rep.vertices[b])
            ba = silting_geq(rep.vertices[b], rep.vertices[a])
            assert ab != ba, (a, b)
            assert ab == (side == "left"), (a, b, side)
    if rep.status is Status.COMPLETE_FINITE:
        adj = rep.adjacency()
        for k, nbrs in adj.items():
            assert len(nbrs) == rep.t, (k, nbrs)
            for b in nbrs:
                assert k in adj[b], (k, b)
