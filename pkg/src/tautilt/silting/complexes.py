"""Two-term complexes of projectives and morphisms in the homotopy category.

A map between sums of indecomposable projectives ``P_{s_1}+...`` and
``P_{t_1}+...`` is a block array ``f[a, b]`` with ``f[a, b]`` in
``e_{s_a} A e_{t_b}``. Composition "f then g" is the block product ``f g``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..arith import linalg
from .algebra import BasedAlgebra


def compose(A: BasedAlgebra, X, Y) -> np.ndarray:
    """Batch "X then Y": ``X`` of shape ``(k, s, m, d)``, ``Y`` of shape ``(m, t, d)``."""
    X = np.asarray(X, dtype=np.int64)
    k, s, m, d = X.shape
    t = Y.shape[1]
    if k == 0 or s == 0 or t == 0 or m == 0:
        return np.zeros((k, s, t, d), dtype=np.int64)
    R = A.right_mats(Y.reshape(m * t, d)).reshape(m, t, d, d).transpose(0, 2, 1, 3).reshape(m * d, t * d)
    return A.F.matmul(X.reshape(k * s, m * d), R).reshape(k, s, t, d)


def compose_left(A: BasedAlgebra, X, Ys) -> np.ndarray:
    """Batch "X then Y": ``X`` of shape ``(s, m, d)``, ``Ys`` of shape ``(k, m, t, d)``."""
    Ys = np.asarray(Ys, dtype=np.int64)
    k, m, t, d = Ys.shape
    s = X.shape[0]
    if k == 0 or s == 0 or t == 0 or m == 0:
        return np.zeros((k, s, t, d), dtype=np.int64)
    L = A.left_mats(X.reshape(s * m, d)).reshape(s, m, d, d).transpose(1, 2, 0, 3).reshape(m * d, s * d)
    out = A.F.matmul(Ys.transpose(0, 2, 1, 3).reshape(k * t, m * d), L)
    return out.reshape(k, t, s, d).transpose(0, 2, 1, 3)


class HomSpace:
    """``Hom(P_src, P_tgt)`` with pivot coordinates.

    Each basis element is a single nonzero block ``(a, b)`` holding a basis
    row of ``e_{src_a} A e_{tgt_b}``; products with a fixed map are computed
    blockwise rather than on dense block arrays.
    """

    def __init__(self, A: BasedAlgebra, src: tuple[int, ...], tgt: tuple[int, ...]):
        self.A, self.src, self.tgt = A, tuple(src), tuple(tgt)
        d = A.dim
        s, t = len(self.src), len(self.tgt)
        rows, pos_a, pos_b, pivots, groups = [], [], [], [], []
        for a, i in enumerate(self.src):
            for b, j in enumerate(self.tgt):
                C = A.corner(i, j)
                if C.dim:
                    groups.append((a, b, len(rows), len(rows) + C.dim, C.basis))
                for row, pv in zip(C.basis, C.pivots):
                    rows.append(row)
                    pos_a.append(a)
                    pos_b.append(b)
                    pivots.append((a * t + b) * d + pv)
        self.rows = np.array(rows, dtype=np.int64).reshape(len(rows), d)
        self.pos_a = np.array(pos_a, dtype=np.int64)
        self.pos_b = np.array(pos_b, dtype=np.int64)
        self.groups = groups
        self.pivots = pivots
        self.shape = (s, t, d)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @property
    def basis(self) -> np.ndarray:
        """Dense basis of shape ``(dim, s, t, d)``."""
        out = np.zeros((self.dim,) + self.shape, dtype=np.int64)
        out[np.arange(self.dim), self.pos_a, self.pos_b] = self.rows
        return out

    def coords(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        flat = X.reshape(X.shape[: X.ndim - 3] + (int(np.prod(self.shape)),))
        return flat[..., self.pivots]

    def element(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64)
        lead = c.shape[:-1]
        c2 = c.reshape(int(np.prod(lead)), self.dim)
        out = np.zeros((c2.shape[0],) + self.shape, dtype=np.int64)
        for a, b, lo, hi, rows in self.groups:
            out[:, a, b] = self.A.F.matmul(c2[:, lo:hi], rows)
        return out.reshape(lead + self.shape)

    def random(self, rng) -> np.ndarray:
        return self.element(self.A.F.random_array(rng, (self.dim,)))

    def basis_then(self, Y) -> np.ndarray:
        """Every basis map followed by ``Y: P_tgt -> P_other``; shape ``(dim, s, t', d)``."""
        A = self.A
        d = A.dim
        s = self.shape[0]
        m, t2 = Y.shape[0], Y.shape[1]
        out = np.zeros((self.dim, s, t2, d), dtype=np.int64)
        if self.dim == 0 or t2 == 0:
            return out
        R = A.right_mats(Y.reshape(m * t2, d)).reshape(m, t2, d, d).transpose(0, 2, 1, 3).reshape(m, d, t2 * d)
        for b in range(m):
            idx = np.nonzero(self.pos_b == b)[0]
            if idx.size:
                out[idx, self.pos_a[idx]] = A.F.matmul(self.rows[idx], R[b]).reshape(-1, t2, d)
        return out

    def then_basis(self, X) -> np.ndarray:
        """``X: P_other -> P_src`` followed by every basis map; shape ``(dim, s', t, d)``."""
        A = self.A
        d = A.dim
        t = self.shape[1]
        s2, m = X.shape[0], X.shape[1]
        out = np.zeros((self.dim, s2, t, d), dtype=np.int64)
        if self.dim == 0 or s2 == 0:
            return out
        L = A.left_mats(X.reshape(s2 * m, d)).reshape(s2, m, d, d).transpose(1, 2, 0, 3).reshape(m, d, s2 * d)
        for a in range(m):
            idx = np.nonzero(self.pos_a == a)[0]
            if idx.size:
                res = A.F.matmul(self.rows[idx], L[a]).reshape(-1, s2, d)
                out[idx, :, self.pos_b[idx]] = res
        return out


def hom_space(A: BasedAlgebra, src, tgt) -> HomSpace:
    """Cached ``HomSpace`` per algebra."""
    cache = A.__dict__.setdefault("_hom_cache", {})
    key = (tuple(src), tuple(tgt))
    H = cache.get(key)
    if H is None:
        if len(cache) > 4096:
            cache.clear()
        H = cache[key] = HomSpace(A, key[0], key[1])
    return H


@dataclass(frozen=True)
class TwoTermComplex:
    """``P^{-1} --d--> P^0`` with ``minus``/``zero`` the vertex indices of the summands."""

    alg: BasedAlgebra
    minus: tuple[int, ...]
    zero: tuple[int, ...]
    d: np.ndarray

    @classmethod
    def stalk(cls, A: BasedAlgebra, i: int, shifted: bool = False) -> "TwoTermComplex":
        """``P_i`` in degree 0, or ``P_i[1]`` when ``shifted``."""
        if shifted:
            return cls(A, (i,), (), np.zeros((1, 0, A.dim), dtype=np.int64))
        return cls(A, (), (i,), np.zeros((0, 1, A.dim), dtype=np.int64))

    @property
    def g_vector(self) -> tuple[int, ...]:
        g = [0] * self.alg.t
        for i in self.zero:
            g[i] += 1
        for i in self.minus:
            g[i] -= 1
        return tuple(g)

    def validate(self) -> None:
        H = hom_space(self.alg, self.minus, self.zero)
        X = self.d
        if X.shape != H.shape:
            raise ValueError("differential has the wrong shape")
        if H.dim:
            back = H.element(H.coords(X))
        else:
            back = np.zeros_like(X)
        if not np.array_equal(back, X):
            raise ValueError("differential entries leave the corners e_i A e_j")

    def to_json(self) -> dict:
        return {"minus": list(self.minus), "zero": list(self.zero), "d": self.d.tolist(), "g": list(self.g_vector)}


def direct_sum(summands) -> TwoTermComplex:
    summands = list(summands)
    A = summands[0].alg
    minus = tuple(i for X in summands for i in X.minus)
    zero = tuple(i for X in summands for i in X.zero)
    d = np.zeros((len(minus), len(zero), A.dim), dtype=np.int64)
    r = c = 0
    for X in summands:
        d[r : r + len(X.minus), c : c + len(X.zero)] = X.d
        r += len(X.minus)
        c += len(X.zero)
    return TwoTermComplex(A, minus, zero, d)


class AlgebraMismatch(ValueError):
    pass


def _same_algebra(T, U):
    if T.alg is not U.alg:
        raise AlgebraMismatch("complexes live over different algebras")


class HomK:
    """``Hom_K(T, U)`` in degree 0: chain maps modulo null-homotopic ones.

    Elements are coordinate vectors over the joint basis of
    ``Hom(T^{-1}, U^{-1}) + Hom(T^0, U^0)``.
    """

    def __init__(self, T: TwoTermComplex, U: TwoTermComplex):
        _same_algebra(T, U)
        A = T.alg
        F = A.F
        self.T, self.U = T, U
        self.H1 = hom_space(A, T.minus, U.minus)
        self.H0 = hom_space(A, T.zero, U.zero)
        k1, k0 = self.H1.dim, self.H0.dim
        self.ambient = k1 + k0
        amb = hom_space(A, T.minus, U.zero)
        E1 = amb.coords(self.H1.basis_then(U.d))
        E0 = amb.coords(self.H0.then_basis(T.d))
        stack = np.concatenate([E1, F.vneg(E0)], axis=0)
        if self.ambient == 0:
            Z = np.zeros((0, 0), dtype=np.int64)
        elif amb.dim == 0:
            Z = np.eye(self.ambient, dtype=np.int64)
        else:
            Z = linalg.left_nullspace(F, stack)
        Hh = hom_space(A, T.zero, U.minus)
        if Hh.dim and self.ambient:
            n1 = self.H1.coords(Hh.then_basis(T.d))
            n0 = self.H0.coords(Hh.basis_then(U.d))
            N = np.concatenate([n1, n0], axis=1)
        else:
            N = np.zeros((0, self.ambient), dtype=np.int64)
        self.Q = linalg.QuotientSpace(F, Z, N, self.ambient)

    @property
    def dim(self) -> int:
        return self.Q.dim

    @property
    def reps(self) -> np.ndarray:
        return self.Q.reps

    def blocks(self, c) -> tuple[np.ndarray, np.ndarray]:
        """Component maps ``(f^{-1}, f^0)`` of coordinate vectors ``c``."""
        c = np.asarray(c, dtype=np.int64)
        if c.ndim == 1:
            c = c[None]
        k1 = self.H1.dim
        return self.H1.element(c[:, :k1]), self.H0.element(c[:, k1:])

    def coords_of(self, f1, f0) -> np.ndarray:
        return np.concatenate([self.H1.coords(f1), self.H0.coords(f0)], axis=-1)


def compose_chain(A: BasedAlgebra, f, g) -> tuple[np.ndarray, np.ndarray]:
    """Componentwise "f then g" for a batch ``f = (f1, f0)`` and a single ``g = (g1, g0)``."""
    return compose(A, f[0], g[0]), compose(A, f[1], g[1])


def hom_in_homotopy(T: TwoTermComplex, U: TwoTermComplex, shift: int = 0) -> int:
    """``dim Hom_K(T, U[shift])``; zero outside ``{-1, 0, 1}`` for two-term complexes."""
    _same_algebra(T, U)
    A = T.alg
    F = A.F
    if shift == 0:
        return HomK(T, U).dim
    if shift == 1:
        V = hom_space(A, T.minus, U.zero)
        if V.dim == 0:
            return 0
        S0 = hom_space(A, T.zero, U.zero)
        S1 = hom_space(A, T.minus, U.minus)
        rows = [V.coords(S0.then_basis(T.d)), V.coords(S1.basis_then(U.d))]
        return V.dim - linalg.rank(F, np.concatenate(rows, axis=0))
    if shift == -1:
        Hf = hom_space(A, T.zero, U.minus)
        if Hf.dim == 0:
            return 0
        c1 = Hf.then_basis(T.d).reshape(Hf.dim, -1)
        c2 = Hf.basis_then(U.d).reshape(Hf.dim, -1)
        cond = np.concatenate([c1, c2], axis=1)
        if cond.shape[1] == 0:
            return Hf.dim
        return Hf.dim - linalg.rank(F, cond)
    return 0


def is_presilting(summands) -> bool:
    T = direct_sum(summands)
    return hom_in_homotopy(T, T, 1) == 0


def integer_det(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(det)


def g_matrix(summands) -> list[list[int]]:
    return [list(X.g_vector) for X in summands]


def is_two_term_silting(summands) -> bool:
    """Presilting with ``t`` summands whose g-vectors form a unimodular basis."""
    summands = list(summands)
    if not summands or len(summands) != summands[0].alg.t:
        return False
    if abs(integer_det(g_matrix(summands))) != 1:
        return False
    return is_presilting(summands)


def silting_geq(T, U) -> bool:
    """``T >= U`` in the silting order: ``Hom_K(T, U[1]) = 0``."""
    return hom_in_homotopy(direct_sum(T), direct_sum(U), 1) == 0


@dataclass(frozen=True)
class SupportTauTilting:
    module_dims: tuple[int, ...]
    projective: tuple[int, ...]

    def to_json(self) -> dict:
        return {"M_dims": list(self.module_dims), "P": list(self.projective)}


def cokernel_dims(X: TwoTermComplex) -> tuple[int, ...]:
    """Dimension vector ``dim e_k H^0(X)`` of the cokernel of the differential."""
    A = X.alg
    F = A.F
    out = []
    for k in range(A.t):
        # e_k P^0 has basis e_k A e_j per summand; the image is spanned by e_k a d
        amb = hom_space(A, (k,), X.zero)
        src = hom_space(A, (k,), X.minus)
        if amb.dim == 0:
            out.append(0)
            continue
        if src.dim == 0 or len(X.minus) == 0:
            out.append(amb.dim)
            continue
        img = amb.coords(src.basis_then(X.d))
        out.append(amb.dim - linalg.rank(F, img))
    return tuple(out)


def support_tau_tilting_of(summands) -> SupportTauTilting:
    """Dimension vector of ``H^0`` and the shifted-projective part of a silting object."""
    summands = list(summands)
    t = summands[0].alg.t
    P = [0] * t
    dims = [0] * t
    for X in summands:
        if not X.zero:
            for i in X.minus:
                P[i] += 1
            continue
        for k, v in enumerate(cokernel_dims(X)):
            dims[k] += v
    return SupportTauTilting(tuple(dims), tuple(P))
