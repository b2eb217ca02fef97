"""MeatAxe-style analysis of modules over group algebras.

A :class:`MatModule` is a list of generator matrices over a finite field,
acting on column vectors (``v -> G v``). Irreducibility uses Norton's
criterion with seeded random algebra elements, so every result is
reproducible from its seed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .arith import linalg
from .arith.fields import FiniteField, splitting_field_for
from .arith.poly import factor_univariate
from .permgrp import PermutationGroup

RANDOM_BUDGET = 64


class RandomBudgetExhausted(RuntimeError):
    pass


class NotIrreducible(ValueError):
    pass


class MatModule:
    """A module given by generator matrices.

    If ``group`` is given, the matrices must realise a homomorphism from it;
    this is checked along a spanning tree of the Cayley graph plus every
    non-tree edge, which verifies all relations.
    """

    def __init__(
        self, F: FiniteField, gens, group: PermutationGroup | None = None, check: bool = True, dim: int | None = None
    ):
        self.F = F
        self.gens = [np.asarray(g, dtype=np.int64) for g in gens]
        if group is not None and len(self.gens) != len(group.generators):
            raise ValueError("one matrix per group generator is required")
        d = self.gens[0].shape[0] if self.gens else (dim or 0)
        for g in self.gens:
            if g.shape != (d, d):
                raise ValueError("generator matrices must be square of equal size")
        self._dim = d
        self.group = group
        if check and group is not None:
            self._check_relations()

    @classmethod
    def trivial(cls, F, group: PermutationGroup) -> "MatModule":
        return cls(F, [np.ones((1, 1), dtype=np.int64) for _ in group.generators], group, check=False, dim=1)

    @classmethod
    def sign(cls, F, group: PermutationGroup) -> "MatModule":
        return cls(F, [np.array([[F.from_int(g.sign())]]) for g in group.generators], group, check=False, dim=1)

    @classmethod
    def regular(cls, F, group: PermutationGroup) -> "MatModule":
        """Left regular module on the basis ``group.elements``."""
        idx = group.index_of
        N = group.order()
        mats = []
        for g in group.generators:
            m = np.zeros((N, N), dtype=np.int64)
            for j, h in enumerate(group.elements):
                m[idx[g * h], j] = 1
            mats.append(m)
        return cls(F, mats, group, check=False)

    @property
    def dim(self) -> int:
        return self._dim

    def _check_relations(self):
        F, G = self.F, self.group
        e = G.identity()
        mats = {e: F.identity(self.dim)}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g, M in zip(G.generators, self.gens):
                y = g * x
                my = F.matmul(M, mats[x])
                if y in mats:
                    if not np.array_equal(mats[y], my):
                        raise ValueError("generator matrices violate a group relation")
                else:
                    mats[y] = my
                    queue.append(y)

    def element_matrix(self, word) -> np.ndarray:
        """Matrix of a word, given as generator indices applied right to left."""
        out = self.F.identity(self.dim)
        for i in word:
            out = self.F.matmul(self.gens[i], out)
        return out

    @cached_property
    def group_matrices(self) -> dict:
        """Matrix of every group element (requires ``group``)."""
        F, G = self.F, self.group
        if G is None:
            raise ValueError("module has no attached group")
        e = G.identity()
        mats = {e: F.identity(self.dim)}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g, M in zip(G.generators, self.gens):
                y = g * x
                if y not in mats:
                    mats[y] = F.matmul(M, mats[x])
                    queue.append(y)
        return mats

    def tensor(self, other: "MatModule") -> "MatModule":
        return MatModule(
            self.F,
            [self.F.kron(a, b) for a, b in zip(self.gens, other.gens)],
            self.group,
            check=False,
            dim=self.dim * other.dim,
        )

    def transpose(self) -> "MatModule":
        """Dual module: generators act by inverse transposes."""
        return MatModule(self.F, [linalg.inverse(self.F, g).T for g in self.gens], self.group, check=False)

    def is_trivial(self) -> bool:
        return self.dim == 1 and all(int(g[0, 0]) == 1 for g in self.gens)

    def traces(self) -> tuple[int, ...]:
        return tuple(int(self.F.vsum(np.diagonal(g))) for g in self.gens)

    def submodule(self, basis) -> "MatModule":
        """Action on the span of the given rows (must be invariant)."""
        S = linalg.Subspace(self.F, basis, self.dim)
        mats = []
        for g in self.gens:
            img = self.F.matmul(S.basis, g.T)  # rows are (g b)^T
            if not all(S.contains(r) for r in img):
                raise ValueError("subspace is not invariant")
            mats.append(S.coords(img).T)
        return MatModule(self.F, mats, self.group, check=False, dim=S.dim)

    def quotient(self, basis) -> "MatModule":
        S = linalg.Subspace(self.F, basis, self.dim)
        free = [c for c in range(self.dim) if c not in set(S.pivots)]
        mats = []
        for g in self.gens:
            cols = g[:, free].T  # rows: images of the complement basis vectors
            red = S.reduce(cols)
            mats.append(red[:, free].T)
        return MatModule(self.F, mats, self.group, check=False, dim=len(free))

    def to_json(self) -> dict:
        return {
            "field": self.F.to_json(),
            "dim": self.dim,
            "generators": [g.tolist() for g in self.gens],
        }

    @classmethod
    def from_json(cls, data: dict, group: PermutationGroup | None = None) -> "MatModule":
        return cls(FiniteField.from_json(data["field"]), data["generators"], group)

    def __repr__(self):
        return f"MatModule(dim={self.dim}, field={self.F!r}, gens={len(self.gens)})"


def spin(F: FiniteField, gens, v) -> np.ndarray:
    """RREF basis (rows) of the smallest subspace containing ``v`` and closed under ``gens``."""
    d = len(v)
    S = linalg.Subspace(F, [v], d)
    frontier = [np.asarray(v, dtype=np.int64)]
    while frontier:
        new = []
        for w in frontier:
            for g in gens:
                u = F.matmul(g, w)
                if np.any(S.reduce(u)):
                    S = linalg.Subspace(F, np.vstack([S.basis, u]), d)
                    new.append(u)
        frontier = new
        if S.dim == d:
            break
    return S.basis


def charpoly(F: FiniteField, a) -> tuple:
    """Characteristic polynomial via Hessenberg reduction (constant term first)."""
    n = a.shape[0]
    h = [[int(x) for x in row] for row in a]
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if h[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            h[piv], h[m] = h[m], h[piv]
            for row in h:
                row[piv], row[m] = row[m], row[piv]
        t = inv(h[m][m - 1])
        for i in range(m + 1, n):
            u = mul(h[i][m - 1], t)
            if not u:
                continue
            for j in range(n):
                h[i][j] = sub(h[i][j], mul(u, h[m][j]))
            for j in range(n):
                h[j][m] = add(h[j][m], mul(u, h[j][i]))
    # recurrence on leading principal submatrices
    polys = [(1,)]
    from .arith import poly as P

    for m in range(1, n + 1):
        pm = P.mul((F.neg(h[m - 1][m - 1]), 1), polys[m - 1], F)
        t = 1
        for i in range(1, m):
            t = mul(t, h[m - i][m - i - 1])
            c = mul(t, h[m - i - 1][m - 1])
            pm = P.sub(pm, P.scale(polys[m - i - 1], c, F), F)
        polys.append(pm)
    return polys[n]


def _poly_at(F: FiniteField, f, a) -> np.ndarray:
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(f):
        out = F.matmul(out, a)
        if c:
            out = F.vadd(out, F.vmul(F.identity(n), c))
    return out


@dataclass
class IrreducibilityCertificate:
    irreducible: bool
    seed: int
    submodule: np.ndarray | None = None  # rows spanning a proper submodule
    factor: tuple | None = None
    attempts: int = 0


def _random_element(M: MatModule, rng: np.random.Generator) -> np.ndarray:
    F = M.F
    d = M.dim
    k = len(M.gens)
    words = [M.gens[i] for i in range(k)]
    # a few random products enlarge the span cheaply
    for _ in range(3):
        a, b = rng.integers(0, len(words), size=2)
        words.append(F.matmul(words[a], words[b]))
    theta = np.zeros((d, d), dtype=np.int64)
    for w in words:
        c = int(rng.integers(0, F.q))
        if c:
            theta = F.vadd(theta, F.vmul(w, c))
    return theta


def is_irreducible(M: MatModule, seed: int = 0, budget: int = RANDOM_BUDGET) -> IrreducibilityCertificate:
    """Norton's irreducibility test.

    Raises:
        RandomBudgetExhausted: no conclusive random element within ``budget`` tries.
    """
    F, d = M.F, M.dim
    if d == 0:
        raise ValueError("zero module")
    if d == 1:
        return IrreducibilityCertificate(True, seed)
    if not M.gens:
        return IrreducibilityCertificate(False, seed, submodule=np.eye(1, d, dtype=np.int64))
    rng = np.random.Generator(np.random.PCG64(seed))
    gT = [g.T for g in M.gens]
    for attempt in range(1, budget + 1):
        theta = _random_element(M, rng)
        for f, _ in factor_univariate(charpoly(F, theta), F, seed=seed):
            N = _poly_at(F, f, theta)
            ker = linalg.nullspace(F, N)
            v = ker[0]
            S = spin(F, M.gens, v)
            if S.shape[0] < d:
                return IrreducibilityCertificate(False, seed, submodule=S, factor=f, attempts=attempt)
            kerT = linalg.nullspace(F, N.T)
            W = spin(F, gT, kerT[0])
            if W.shape[0] < d:
                sub = linalg.nullspace(F, W)
                return IrreducibilityCertificate(False, seed, submodule=sub, factor=f, attempts=attempt)
            if ker.shape[0] == len(f) - 1:
                return IrreducibilityCertificate(True, seed, factor=f, attempts=attempt)
    raise RandomBudgetExhausted(f"no conclusive element in {budget} attempts (seed {seed})")


def hom_dimension(M: MatModule, N: MatModule) -> int:
    """``dim Hom_H(M, N)`` from the intertwiner equations ``G_N X = X G_M``."""
    F = M.F
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return 0
    rows = []
    Im, In = F.identity(dm), F.identity(dn)
    for gm, gn in zip(M.gens, N.gens):
        # column-major vec: vec(G_N X) = (I (x) G_N) vec X, vec(X G_M) = (G_M^T (x) I) vec X
        rows.append(F.vsub(F.kron(Im, gn), F.kron(gm.T, In)))
    if not rows:
        return dm * dn
    return dm * dn - linalg.rank(F, np.vstack(rows))


def are_isomorphic(M: MatModule, N: MatModule, seed: int = 0) -> bool:
    """Isomorphism of irreducible modules (by Schur, iff a nonzero hom exists)."""
    for X in (M, N):
        if not is_irreducible(X, seed).irreducible:
            raise NotIrreducible(f"{X!r} is reducible")
    if M.dim != N.dim:
        return False
    return hom_dimension(M, N) > 0


def is_absolutely_irreducible(M: MatModule, seed: int = 0) -> bool:
    return is_irreducible(M, seed).irreducible and hom_dimension(M, M) == 1


@dataclass
class ConstituentList:
    items: list = dc_field(default_factory=list)  # (MatModule, multiplicity)

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def simples(self) -> list[MatModule]:
        return [m for m, _ in self.items]

    @property
    def dims(self) -> list[int]:
        return [m.dim for m, _ in self.items]

    @property
    def multiplicities(self) -> list[int]:
        return [k for _, k in self.items]

    def total_dimension(self) -> int:
        return sum(m.dim * k for m, k in self.items)


def _composition_factors(M: MatModule, seed: int) -> list[MatModule]:
    out = []
    stack = [M]
    while stack:
        X = stack.pop()
        cert = is_irreducible(X, seed)
        if cert.irreducible:
            out.append(X)
        else:
            stack.append(X.quotient(cert.submodule))
            stack.append(X.submodule(cert.submodule))
    return out


def _sort_key(M: MatModule):
    return (M.dim, 0 if M.is_trivial() else 1, M.traces())


def constituents(M: MatModule, seed: int = 0) -> ConstituentList:
    """Composition factors with multiplicities, in a canonical order.

    Order: by dimension, trivial module first, then by generator traces.
    """
    classes: list[list] = []
    for X in _composition_factors(M, seed):
        for c in classes:
            if c[0].dim == X.dim and hom_dimension(c[0], X) > 0:
                c[1] += 1
                break
        else:
            classes.append([X, 1])
    classes.sort(key=lambda c: _sort_key(c[0]))
    return ConstituentList([(m, k) for m, k in classes])


def simple_modules(group: PermutationGroup, p: int, seed: int = 0, field: FiniteField | None = None) -> list[MatModule]:
    """Simple modules of ``kH`` over a splitting field, canonically ordered."""
    F = field or splitting_field_for(group.exponent(), p)
    if group.order() == 1:
        return [MatModule(F, [], group, check=False, dim=1)]
    return constituents(MatModule.regular(F, group), seed).simples


def sign_twist(simples: list[MatModule], seed: int = 0) -> list[int]:
    """Table ``i -> j`` with ``S_i (x) sgn = S_j``."""
    if not simples:
        return []
    S0 = simples[0]
    G = S0.group
    F = S0.F
    sgn = MatModule.sign(F, G)
    out = []
    for S in simples:
        T = S.tensor(sgn) if S.gens else S
        j = next(
            (j for j, R in enumerate(simples) if R.dim == T.dim and (not T.gens or hom_dimension(T, R) > 0)),
            None,
        )
        if j is None:
            raise ValueError("sign twist of a simple is not in the list")
        out.append(j)
    return out
