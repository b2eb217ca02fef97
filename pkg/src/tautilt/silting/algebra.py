"""Finite-dimensional algebras given by structure constants and idempotents.

Left projectives are ``P_i = A e_i``. A homomorphism ``P_i -> P_j`` is right
multiplication by an element of ``e_i A e_j``, so composing ``P_i -> P_j``
with ``P_j -> P_k`` multiplies the elements in that order.
"""
from __future__ import annotations

import re
from functools import cached_property, lru_cache

import numpy as np

from ..arith import linalg
from ..arith.fields import FiniteField, GF, splitting_field_for
from ..permgrp import PermutationGroup


class InfiniteDimensional(ValueError):
    pass


class AlgebraError(ValueError):
    pass


class IdempotentsUnavailable(ValueError):
    pass


class BasedAlgebra:
    """Algebra with dense structure tensor ``T[a, b, c]`` and primitive idempotents.

    Args:
        F: ground field.
        struct: array of shape ``(d, d, d)``; ``basis[a] * basis[b] = sum_c T[a, b, c] basis[c]``.
        idempotents: complete list of orthogonal primitive idempotents (coordinate vectors).
        labels: optional basis labels for export.
        check: verify associativity, the idempotent relations and primitivity.
    """

    def __init__(self, F: FiniteField, struct, idempotents, labels=None, check: bool = True):
        self.F = F
        self.T = np.asarray(struct, dtype=np.int64)
        d = self.T.shape[0]
        if self.T.shape != (d, d, d):
            raise AlgebraError("structure tensor must have shape (d, d, d)")
        self.dim = d
        self.idempotents = [np.asarray(e, dtype=np.int64) for e in idempotents]
        self.t = len(self.idempotents)
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        self._Tl = self.T.reshape(d, d * d)  # rows u: L matrices
        self._Tr = self.T.transpose(1, 0, 2).reshape(d, d * d)  # rows v: R matrices
        if check:
            self.check()

    # arithmetic
    def multiply(self, u, v) -> np.ndarray:
        F = self.F
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        outer = F.vmul(u[:, None], v[None, :]).reshape(-1)
        return F.matmul(outer, self.T.reshape(self.dim * self.dim, self.dim))

    def left_mats(self, xs) -> np.ndarray:
        """``L[m, v, w]``: row-vector matrix of ``y -> x_m y``."""
        xs = np.asarray(xs, dtype=np.int64).reshape(-1, self.dim)
        return self.F.matmul(xs, self._Tl).reshape(-1, self.dim, self.dim)

    def right_mats(self, ys) -> np.ndarray:
        """``R[m, u, w]``: row-vector matrix of ``x -> x y_m``."""
        ys = np.asarray(ys, dtype=np.int64).reshape(-1, self.dim)
        return self.F.matmul(ys, self._Tr).reshape(-1, self.dim, self.dim)

    @cached_property
    def one(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for e in self.idempotents:
            out = self.F.vadd(out, e)
        return out

    # validation
    def check(self) -> None:
        F, d = self.F, self.dim
        T2 = self.T.reshape(d * d, d)
        # (ab)c: sum_w T[a,b,w] T[w,c,x];  a(bc): sum_w T[b,c,w] T[a,w,x]
        left = F.matmul(T2, self.T.reshape(d, d * d)).reshape(d, d, d, d)
        right = F.matmul(T2, self._Tr).reshape(d, d, d, d)  # [b,c,a,x]
        if not np.array_equal(left, right.transpose(2, 0, 1, 3)):
            raise AlgebraError("structure constants are not associative")
        for i, e in enumerate(self.idempotents):
            for j, f in enumerate(self.idempotents):
                want = e if i == j else np.zeros(d, dtype=np.int64)
                if not np.array_equal(self.multiply(e, f), want):
                    raise AlgebraError(f"idempotent relation fails for ({i}, {j})")
        for b in range(d):
            x = np.eye(1, d, b, dtype=np.int64)[0]
            if not (np.array_equal(self.multiply(self.one, x), x) and np.array_equal(self.multiply(x, self.one), x)):
                raise AlgebraError("idempotents do not sum to the identity")
        for i in range(self.t):
            if not self.corner_is_local(i):
                raise AlgebraError(f"idempotent {i} is not primitive")

    # corners e_i A e_j
    @lru_cache(maxsize=None)
    def corner(self, i: int, j: int) -> linalg.Subspace:
        """``e_i A e_j`` as an RREF subspace of ``A``."""
        F = self.F
        Le = self.left_mats(self.idempotents[i])[0]
        Re = self.right_mats(self.idempotents[j])[0]
        proj = F.matmul(Le, Re)  # rows: e_i b e_j for each basis b
        return linalg.Subspace(F, proj, self.dim)

    @cached_property
    def cartan(self) -> list[list[int]]:
        return [[self.corner(i, j).dim for j in range(self.t)] for i in range(self.t)]

    def residue(self, M) -> int | None:
        """The unique ``c`` with ``M - c I`` nilpotent, or None."""
        F = self.F
        n = M.shape[0]
        for c in F.elements():
            N = F.vsub(M, F.vmul(F.identity(n), c))
            P = N
            for _ in range(max(1, n.bit_length())):
                P = F.matmul(P, P)
            if not P.any():
                return c
        return None

    def corner_is_local(self, i: int) -> bool:
        """``e_i A e_i`` is local: the non-units form a nilpotent ideal of codimension 1."""
        F = self.F
        S = self.corner(i, i)
        L = self.left_mats(S.basis)  # on all of A; restrict to the corner
        lam = []
        for Lb in L:
            sub = S.coords(F.matmul(S.basis, Lb))  # corner -> corner
            c = self.residue(sub)
            if c is None:
                return False
            lam.append(c)
        ker = linalg.nullspace(F, np.array(lam, dtype=np.int64).reshape(1, -1)) if S.dim else np.zeros((0, 0))
        if ker.shape[0] != S.dim - 1:
            return False
        rad = F.matmul(ker, S.basis) if ker.shape[0] else np.zeros((0, self.dim), dtype=np.int64)
        power = rad
        for _ in range(S.dim + 1):
            if power.shape[0] == 0:
                return True
            prods = [self.multiply(a, b) for a in power for b in rad]
            power = linalg.row_space(F, np.array(prods)) if prods else np.zeros((0, self.dim), dtype=np.int64)
        return power.shape[0] == 0

    # export
    def to_json(self) -> dict:
        nz = np.argwhere(self.T)
        return {
            "field": self.F.to_json(),
            "dim": self.dim,
            "basis": self.labels,
            "mult": [[int(a), int(b), int(c), int(self.T[a, b, c])] for a, b, c in nz],
            "idempotents": [e.tolist() for e in self.idempotents],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BasedAlgebra":
        F = FiniteField.from_json(data["field"])
        d = int(data["dim"])
        T = np.zeros((d, d, d), dtype=np.int64)
        for a, b, c, v in data["mult"]:
            T[a, b, c] = v
        return cls(F, T, data["idempotents"], data.get("basis"))

    def __repr__(self):
        return f"BasedAlgebra(dim={self.dim}, t={self.t}, field={self.F!r})"


# quivers with relations

_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*\*?\s*)?([A-Za-z_][\w]*(?:\s*\*\s*[A-Za-z_][\w]*)*|\d+)")


def _parse_relation(text: str, arrows: dict) -> dict[tuple, int]:
    """``"a*a - d1*b1"`` with paths written right to left (``x*y`` means y first)."""
    out: dict[tuple, int] = {}
    s = text.strip()
    if "=" in s:
        lhs, rhs = s.split("=", 1)
        s = f"{lhs} - ({rhs})"
        s = s.replace("- (", "-(")
        inner = rhs.strip()
        s = lhs + "".join(
            (" - " if sign in ("", "+") else " + ") + body
            for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", inner)
        )
    pos = 0
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse relation near {s[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        word = m.group(3)
        if word.isdigit():
            raise ValueError("constant terms are not allowed in relations")
        names = [w.strip() for w in word.split("*")]
        for nme in names:
            if nme not in arrows:
                raise ValueError(f"unknown arrow {nme!r}")
        path = tuple(reversed(names))  # traversal order
        for x, y in zip(path, path[1:]):
            if arrows[x][1] != arrows[y][0]:
                raise ValueError(f"path {word!r} is not composable")
        out[path] = out.get(path, 0) + sign * coeff
    return {p: c for p, c in out.items() if c}


def from_quiver(vertices, arrows, relations, F: FiniteField = None, nilpotency_bound: int = 16) -> BasedAlgebra:
    """Path algebra modulo homogeneous relations.

    Args:
        vertices: vertex names (order fixes the idempotent order).
        arrows: list of ``(name, source, target)``.
        relations: strings like ``"a*a - d1*b1"`` or ``"a*a = d1*b1"``;
            ``x*y`` means "first y, then x". Every relation must be
            homogeneous in path length.
        nilpotency_bound: give up if paths of this length survive.

    Raises:
        InfiniteDimensional: paths of length ``nilpotency_bound`` survive.
    """
    F = F or GF(2)
    vertices = list(vertices)
    vid = {v: i for i, v in enumerate(vertices)}
    arr = {name: (vid[s], vid[t]) for name, s, t in arrows}
    rels = [_parse_relation(r, arr) for r in relations]
    for r in rels:
        if len({len(p) for p in r}) > 1:
            raise ValueError("only homogeneous relations are supported")

    def src(path):
        return arr[path[0]][0]

    def tgt(path):
        return arr[path[-1]][1]

    paths_by_len = [[("e", v) for v in range(len(vertices))]]
    quot = []  # per length: (path index, QuotientSpace or basis selection)
    names = sorted(arr)
    L = 0
    while True:
        if L > 0:
            prev = paths_by_len[L - 1]
            cur = []
            for p in prev:
                for a in names:
                    if L == 1:
                        if arr[a][0] == p[1]:
                            cur.append((a,))
                    elif tgt(p) == arr[a][0]:
                        cur.append(p + (a,))
            paths_by_len.append(cur)
        paths = paths_by_len[L]
        index = {p: i for i, p in enumerate(paths)}
        ideal_rows = []
        if L > 0:
            for r in rels:
                lr = len(next(iter(r)))
                if lr > L:
                    continue
                for pre_len in range(L - lr + 1):
                    post_len = L - lr - pre_len
                    pres = paths_by_len[pre_len] if pre_len else [None]
                    posts = paths_by_len[post_len] if post_len else [None]
                    for pre in pres:
                        for post in posts:
                            row = np.zeros(len(paths), dtype=np.int64)
                            ok = False
                            for rp, c in r.items():
                                full = (pre or ()) + rp + (post or ())
                                if full in index:
                                    row[index[full]] = F.add(int(row[index[full]]), F.from_int(c))
                                    ok = True
                            if ok and row.any():
                                ideal_rows.append(row)
        ideal = linalg.Subspace(F, np.array(ideal_rows) if ideal_rows else np.zeros((0, len(paths))), len(paths))
        free = [c for c in range(len(paths)) if c not in set(ideal.pivots)]
        quot.append((paths, index, ideal, free))
        if not free:
            break
        L += 1
        if L >= nilpotency_bound:
            raise InfiniteDimensional(f"paths of length {L} survive the relations")

    # basis: non-pivot paths in each length
    basis = []
    for L, (paths, _, _, free) in enumerate(quot):
        basis.extend((L, c) for c in free)
    bidx = {b: i for i, b in enumerate(basis)}
    d = len(basis)

    def path_of(L, c):
        return quot[L][0][c]

    def concat(p, q):
        """``p * q`` = first q then p (traversal order q + p), or None."""
        if p[0] == "e":
            if q[0] == "e":
                return q if p[1] == q[1] else None
            return q if tgt(q) == p[1] else None
        if q[0] == "e":
            return p if src(p) == q[1] else None
        if tgt(q) != src(p):
            return None
        return q + p

    T = np.zeros((d, d, d), dtype=np.int64)
    for a, (La, ca) in enumerate(basis):
        for b, (Lb, cb) in enumerate(basis):
            r = concat(path_of(La, ca), path_of(Lb, cb))
            if r is None:
                continue
            L = La + Lb
            if L >= len(quot):
                continue
            paths, index, ideal, free = quot[L]
            v = np.zeros(len(paths), dtype=np.int64)
            v[index[r]] = 1
            red = ideal.reduce(v)
            for c in free:
                if red[c]:
                    T[a, b, bidx[(L, c)]] = red[c]
    idems = []
    for v in range(len(vertices)):
        e = np.zeros(d, dtype=np.int64)
        e[bidx[(0, v)]] = 1
        idems.append(e)

    def label(L, c):
        p = path_of(L, c)
        return f"e{vertices[p[1]]}" if p[0] == "e" else "*".join(reversed(p))

    return BasedAlgebra(F, T, idems, [label(L, c) for L, c in basis])


def truncated_polynomial(F: FiniteField = None, nilpotency: int = 2) -> BasedAlgebra:
    """``F[x]/(x^nilpotency)``."""
    rel = "*".join(["x"] * nilpotency)
    return from_quiver(["1"], [("x", "1", "1")], [rel], F or GF(2))


def path_algebra_A2(F: FiniteField = None) -> BasedAlgebra:
    """The path algebra of ``1 -> 2``."""
    return from_quiver(["1", "2"], [("a", "1", "2")], [], F or GF(2))


def two_loop_algebra(F: FiniteField = None) -> BasedAlgebra:
    """Two vertices, loops ``a`` and ``c``, arrows ``b1..b3: 1 -> 2`` and ``d1..d3: 2 -> 1``."""
    arrows = [("a", "1", "1"), ("c", "2", "2")]
    arrows += [(f"b{i}", "1", "2") for i in (1, 2, 3)] + [(f"d{i}", "2", "1") for i in (1, 2, 3)]
    rels = []
    for i in (1, 2, 3):
        rels += [f"a*a - d{i}*b{i}", f"c*c - b{i}*d{i}", f"a*d{i}", f"b{i}*a", f"c*b{i}", f"d{i}*c"]
        for j in (1, 2, 3):
            if i != j:
                rels += [f"b{i}*d{j}", f"d{i}*b{j}"]
    return from_quiver(["1", "2"], arrows, rels, F or GF(2))


# group algebras and skew group algebras

def _group_struct(H: PermutationGroup) -> np.ndarray:
    N = H.order()
    idx = H.index_of
    T = np.zeros((N, N, N), dtype=np.int64)
    for a, g in enumerate(H.elements):
        for b, h in enumerate(H.elements):
            T[a, b, idx[g * h]] = 1
    return T


def from_group_algebra(H: PermutationGroup, F: FiniteField) -> BasedAlgebra:
    """Group algebra ``F H`` for an abelian p'-group (split by F) or a p-group (local).

    Raises:
        IdempotentsUnavailable: any other group.
    """
    from ..skewalg import abelian_characters
    from ..skewalg import IdempotentsUnavailable as _IU

    N = H.order()
    T = _group_struct(H)
    labels = [g.to_cycles() for g in H.elements]
    if _is_p_group(N, F.p):
        one = np.zeros(N, dtype=np.int64)
        one[0] = 1
        return BasedAlgebra(F, T, [one], labels)
    try:
        chars = abelian_characters(H, F)
    except _IU as e:
        raise IdempotentsUnavailable(str(e)) from e
    inv_n = F.inv(F.from_int(N))
    idems = []
    for chi in chars:
        e = np.zeros(N, dtype=np.int64)
        for b, h in enumerate(H.elements):
            e[b] = F.mul(inv_n, F.inv(chi[h]))
        idems.append(e)
    return BasedAlgebra(F, T, idems, labels)


def _is_p_group(N: int, p: int) -> bool:
    while N % p == 0:
        N //= p
    return N == 1


def from_skew_coinvariant(n: int, H: PermutationGroup, p: int, F: FiniteField | None = None) -> BasedAlgebra:
    """The skew group algebra of the coinvariant algebra, with built-in idempotents.

    Supported: ``H`` abelian of order prime to ``p``, or ``H`` a p-group
    (then the algebra is local).
    """
    from ..skewalg import SkewAlgebra, primitive_idempotents
    from ..skewalg import IdempotentsUnavailable as _IU

    F = F or splitting_field_for(H.exponent(), p)
    A = SkewAlgebra(n, H, F)
    T = A.structure_tensor
    labels = [f"{'*'.join(f'x{i + 1}^{k}' for i, k in enumerate(m) if k) or '1'}|{g.to_cycles()}"
              for m, g in (A.label(a) for a in range(A.dim))]
    if _is_p_group(H.order(), p):
        return BasedAlgebra(F, T, [A.one()], labels)
    try:
        idems = primitive_idempotents(A)
    except _IU as e:
        raise IdempotentsUnavailable(str(e)) from e
    return BasedAlgebra(F, T, idems, labels)


def truncated_polynomial_ring(n: int, exponent: int, F: FiniteField) -> BasedAlgebra:
    """``F[x_1..x_n]/(x_i^exponent)``, local."""
    from itertools import product

    monos = list(product(range(exponent), repeat=n))
    idx = {m: i for i, m in enumerate(monos)}
    d = len(monos)
    T = np.zeros((d, d, d), dtype=np.int64)
    for a, m1 in enumerate(monos):
        for b, m2 in enumerate(monos):
            m = tuple(x + y for x, y in zip(m1, m2))
            if all(x < exponent for x in m):
                T[a, b, idx[m]] = 1
    one = np.zeros(d, dtype=np.int64)
    one[0] = 1
    return BasedAlgebra(F, T, [one], ["*".join(f"x{i + 1}^{k}" for i, k in enumerate(m) if k) or "1" for m in monos])
