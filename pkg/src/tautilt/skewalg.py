"""Skew group algebras of the coinvariant algebra.

The basis is ``b_i * h`` with ``b_i`` a staircase monomial and ``h`` in H;
its flat index is ``i * |H| + index(h)``. The product is
``(f s)(g t) = f (s.g) (s t)``.

Structure constants are integers, so every computation over a finite
field reduces them into the prime subfield.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import chop
from .arith import linalg
from .arith.fields import FiniteField, GF, splitting_field_for
from .arith.poly import roots
from .coinv import coinvariant_ring
from .permgrp import Permutation, PermutationGroup

DIMENSION_CAP = 2000


class DimensionBudget(RuntimeError):
    pass


class NotIdempotent(ValueError):
    pass


class RadicalUnknown(ValueError):
    pass


class IdempotentsUnavailable(ValueError):
    pass


class SkewAlgebra:
    def __init__(self, n: int, H: PermutationGroup, F: FiniteField):
        if H.n != n:
            raise ValueError("group degree does not match n")
        self.n = n
        self.H = H
        self.F = F
        self.ring = coinvariant_ring(n)
        self.elements = H.elements
        self.order = len(self.elements)
        self.gidx = H.index_of
        self.dim = self.ring.dim * self.order

    def index(self, mono_idx: int, g: Permutation) -> int:
        return mono_idx * self.order + self.gidx[g]

    def label(self, a: int) -> tuple:
        i, g = divmod(a, self.order)
        return self.ring.basis[i], self.elements[g]

    @cached_property
    def _left_mult(self) -> list[np.ndarray]:
        """Integer matrices of multiplication by each ``b_i`` on the coinvariant algebra."""
        ring = self.ring
        out = []
        for i in range(ring.dim):
            L = np.zeros((ring.dim, ring.dim), dtype=np.int64)
            for k in range(ring.dim):
                for m, c in ring.basis_product(i, k).items():
                    L[ring.index[m], k] = c
            out.append(L)
        return out

    @cached_property
    def _actions(self) -> list[np.ndarray]:
        return [self.ring.action_matrix(g) for g in self.elements]

    @cached_property
    def _gmul(self) -> np.ndarray:
        idx = self.gidx
        return np.array([[idx[s * t] for t in self.elements] for s in self.elements], dtype=np.int64)

    def basis_product(self, a: int, b: int) -> dict[int, int]:
        """Integer coefficients of ``basis[a] * basis[b]``."""
        i, s = divmod(a, self.order)
        j, t = divmod(b, self.order)
        w = self._left_mult[i] @ self._actions[s][:, j]
        st = int(self._gmul[s, t])
        return {int(k) * self.order + st: int(w[k]) for k in np.nonzero(w)[0]}

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """Dense ``T[a, b, c]``: coefficient of ``basis[c]`` in ``basis[a] basis[b]``, over F."""
        D = self.dim
        if D > 200:
            raise DimensionBudget(f"dense structure tensor of dimension {D} is too large")
        T = np.zeros((D, D, D), dtype=np.int64)
        for a in range(D):
            for b in range(D):
                for c, v in self.basis_product(a, b).items():
                    T[a, b, c] = v
        return self.F.vreduce(T)

    # elements as coordinate vectors over F
    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def one(self) -> np.ndarray:
        v = self.zero()
        v[self.index(0, self.H.identity())] = 1
        return v

    def basis_vector(self, a: int) -> np.ndarray:
        v = self.zero()
        v[a] = 1
        return v

    def group_element(self, g: Permutation) -> np.ndarray:
        return self.basis_vector(self.index(0, g))

    def monomial(self, exps, g: Permutation | None = None) -> np.ndarray:
        g = g or self.H.identity()
        return self.basis_vector(self.index(self.ring.index[tuple(exps)], g))

    def multiply(self, u, v) -> np.ndarray:
        F = self.F
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        out = self.zero()
        nu, nv = np.nonzero(u)[0], np.nonzero(v)[0]
        for a in nu:
            for b in nv:
                c = F.mul(int(u[a]), int(v[b]))
                for k, w in self.basis_product(int(a), int(b)).items():
                    out[k] = F.add(int(out[k]), F.mul(c, F.from_int(w)))
        return out

    def left_matrix(self, u) -> np.ndarray:
        """Matrix of ``x -> u x`` (columns are images of basis vectors)."""
        return np.stack([self.multiply(u, self.basis_vector(b)) for b in range(self.dim)], axis=1)

    def right_matrix(self, u) -> np.ndarray:
        return np.stack([self.multiply(self.basis_vector(a), u) for a in range(self.dim)], axis=1)

    def phi(self, u) -> int:
        return int(u[self.index(self.ring.delta_index, self.H.identity())])

    def pairing(self, u, v) -> int:
        return self.phi(self.multiply(u, v))

    def degree_of(self, a: int) -> int:
        return self.ring.degree_of(a // self.order)

    def positive_generators(self) -> list[np.ndarray]:
        """The variables ``x_i`` (as elements of degree 1)."""
        out = []
        for i in range(self.n):
            e = [0] * self.n
            e[i] = 1
            poly = self.ring.normal_form_monomial(tuple(e))
            v = self.zero()
            for m, c in poly.items():
                v[self.index(self.ring.index[m], self.H.identity())] = self.F.from_int(c)
            out.append(v)
        return out

    def to_json(self) -> dict:
        return {"n": self.n, "group": self.H.describe(), "p": self.F.p, "k": self.F.k, "dim": self.dim}


def skew_multiply(A: SkewAlgebra, u, v) -> np.ndarray:
    return A.multiply(u, v)


@dataclass
class GramCertificate:
    matrix: np.ndarray
    rank: int
    nondegenerate: bool
    n: int
    group: str
    p: int
    k: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group,
            "p": self.p,
            "k": self.k,
            "rank": self.rank,
            "nondegenerate": self.nondegenerate,
        }


def gram_matrix(A: SkewAlgebra, cap: int = DIMENSION_CAP, threads: int = 1) -> GramCertificate:
    """Gram matrix of ``<a, b> = phi(ab)`` on the basis, with rank over GF(p).

    ``phi(b_i s b_j t)`` vanishes unless ``t = s^-1``, and then equals the
    Delta-coefficient of ``b_i (s.b_j)``, i.e. ``(P A_s)[i, j]`` with ``P``
    the pairing matrix of the coinvariant algebra.
    """
    if A.dim > cap:
        raise DimensionBudget(f"dimension {A.dim} exceeds cap {cap}")
    Fp = GF(A.F.p)
    P = A.ring.pairing_matrix()
    h = A.order
    inv_idx = [A.gidx[g.inverse()] for g in A.elements]
    G = np.zeros((A.dim, A.dim), dtype=np.int64)

    def fill(s: int):
        block = Fp.vreduce(P @ A._actions[s])
        t = inv_idx[s]
        G[s::h, t::h] = block

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(fill, range(h)))
    else:
        for s in range(h):
            fill(s)
    r = linalg.rank(Fp, G)
    return GramCertificate(G, r, r == A.dim, A.n, A.H.describe(), A.F.p, A.F.k)


def associativity_check(A: SkewAlgebra, samples: int = 1000, seed: int = 0) -> bool:
    """``<ab, c> = <a, bc>`` on random triples."""
    rng = np.random.Generator(np.random.PCG64(seed))
    T = A.structure_tensor
    F = A.F
    D = A.dim
    flat = T.reshape(D * D, D)
    phi_idx = A.index(A.ring.delta_index, A.H.identity())

    def mul(u, v):
        return F.matmul(F.vmul(u[:, None], v[None, :]).reshape(-1), flat)

    for _ in range(samples):
        a, b, c = (F.random_array(rng, D) for _ in range(3))
        if mul(mul(a, b), c)[phi_idx] != mul(a, mul(b, c))[phi_idx]:
            return False
    return True


def abelian_characters(H: PermutationGroup, F: FiniteField) -> list[dict[Permutation, int]]:
    """All homomorphisms ``H -> F^*`` (trivial first, then by values on generators).

    Raises:
        IdempotentsUnavailable: ``H`` is not abelian, or F does not split ``kH``.
    """
    if not H.is_abelian():
        raise IdempotentsUnavailable("built-in idempotents need an abelian group")
    if H.order() % F.p == 0:
        raise IdempotentsUnavailable("group order divisible by the characteristic")
    choices = []
    for g in H.generators:
        o = g.order()
        choices.append(roots((F.neg(1),) + (0,) * (o - 1) + (1,), F))
    chars = []
    for values in itertools.product(*choices):
        chi = {H.identity(): 1}
        ok = True
        queue = [H.identity()]
        while queue and ok:
            x = queue.pop()
            for g, val in zip(H.generators, values):
                y = g * x
                v = F.mul(val, chi[x])
                if y in chi:
                    if chi[y] != v:
                        ok = False
                        break
                else:
                    chi[y] = v
                    queue.append(y)
        if ok:
            chars.append((tuple(values), chi))
    if len(chars) != H.order():
        raise IdempotentsUnavailable(f"{F!r} does not split the group algebra")
    chars.sort(key=lambda vc: (any(v != 1 for v in vc[0]), vc[0]))
    return [chi for _, chi in chars]


def character_idempotent(A: SkewAlgebra, chi: dict[Permutation, int]) -> np.ndarray:
    """``|H|^-1 sum_h chi(h)^-1 h``."""
    F = A.F
    c = F.inv(F.from_int(A.order))
    e = A.zero()
    for h in A.elements:
        e[A.index(0, h)] = F.mul(c, F.inv(chi[h]))
    return e


def primitive_idempotents(A: SkewAlgebra) -> list[np.ndarray]:
    return [character_idempotent(A, chi) for chi in abelian_characters(A.H, A.F)]


def verify_idempotents(A: SkewAlgebra, es) -> None:
    """Check ``e_i e_j = delta_ij e_i`` and that they sum to 1."""
    total = A.zero()
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            prod = A.multiply(e, f)
            want = e if i == j else A.zero()
            if not np.array_equal(prod, want):
                raise NotIdempotent(f"idempotent relation fails for ({i}, {j})")
        total = A.F.vadd(total, e)
    if not np.array_equal(total, A.one()):
        raise NotIdempotent("idempotents do not sum to 1")


def projective_of(A: SkewAlgebra, e) -> np.ndarray:
    """RREF basis (rows) of the left ideal ``A e``."""
    e = np.asarray(e, dtype=np.int64)
    if not np.array_equal(A.multiply(e, e), e):
        raise NotIdempotent("e*e != e")
    R = A.right_matrix(e)
    return linalg.row_space(A.F, R.T)


def _require_p_prime(A: SkewAlgebra):
    if A.order % A.F.p == 0:
        raise RadicalUnknown("radical is only the positive part when |H| is prime to p")


def socle_module(A: SkewAlgebra, e) -> chop.MatModule:
    """The socle of ``A e`` as an H-module (H acting by left multiplication)."""
    _require_p_prime(A)
    F = A.F
    basis = projective_of(A, e)
    # soc = {v in Ae : x_i v = 0 for all i}; coordinates c with v = c @ basis
    conds = [F.matmul(A.left_matrix(x), basis.T) for x in A.positive_generators()]
    ker = linalg.nullspace(F, np.vstack(conds), ncols=basis.shape[0])
    soc = F.matmul(ker, basis)
    return _restricted_module(A, soc)


def _restricted_module(A: SkewAlgebra, rows) -> chop.MatModule:
    F = A.F
    S = linalg.Subspace(F, rows, A.dim)
    mats = []
    for g in A.H.generators:
        L = A.left_matrix(A.group_element(g))
        img = F.matmul(S.basis, L.T)
        mats.append(S.coords(img).T)
    return chop.MatModule(F, mats, A.H, check=False, dim=S.dim)


@dataclass(frozen=True)
class SimpleLabel:
    index: int
    dim: int


def simple_labels(A: SkewAlgebra, seed: int = 0) -> list[chop.MatModule]:
    return chop.simple_modules(A.H, A.F.p, seed, field=A.F)


def socle_type(A: SkewAlgebra, e, seed: int = 0, simples=None) -> SimpleLabel:
    soc = socle_module(A, e)
    simples = simples if simples is not None else simple_labels(A, seed)
    for i, S in enumerate(simples):
        if S.dim == soc.dim and (not S.gens or chop.hom_dimension(S, soc) > 0):
            return SimpleLabel(i, S.dim)
    raise ValueError("socle is not simple")


def top_type(A: SkewAlgebra, e, seed: int = 0, simples=None) -> SimpleLabel:
    """The simple ``S`` (in chop's order) with ``e S != 0``, for ``e`` in the degree-0 part."""
    F = A.F
    simples = simples if simples is not None else simple_labels(A, seed)
    for i, S in enumerate(simples):
        if not S.gens:
            return SimpleLabel(i, S.dim)
        act = np.zeros((S.dim, S.dim), dtype=np.int64)
        for h, M in S.group_matrices.items():
            c = int(e[A.index(0, h)])
            if c:
                act = F.vadd(act, F.vmul(M, c))
        if act.any():
            return SimpleLabel(i, S.dim)
    raise NotIdempotent("idempotent acts as zero on every simple")


def coinvariant_module(n: int, H: PermutationGroup, F: FiniteField) -> chop.MatModule:
    """The coinvariant algebra as an H-module over F."""
    ring = coinvariant_ring(n)
    mats = [F.vreduce(ring.action_matrix(g)) for g in H.generators]
    return chop.MatModule(F, mats, H, check=False, dim=ring.dim)


def as_H_module(obj, n: int | None = None, H: PermutationGroup | None = None, F: FiniteField | None = None,
                twist: chop.MatModule | None = None) -> chop.MatModule:
    """H-module views: the coinvariant algebra (optionally tensored with ``twist``) or the whole skew algebra."""
    if isinstance(obj, SkewAlgebra):
        return _restricted_module(obj, np.eye(obj.dim, dtype=np.int64))
    if obj != "coinvariant":
        raise ValueError("expected a SkewAlgebra or 'coinvariant'")
    C = coinvariant_module(n, H, F)
    return C.tensor(twist) if twist is not None else C


def default_field(H: PermutationGroup, p: int) -> FiniteField:
    return splitting_field_for(H.exponent(), p)
