"""Brute-force support tau-tilting enumeration on the module side.

Independent of the complex/mutation code: modules are quotients ``P0/U`` of
projectives with ``U`` inside the radical, tau-rigidity is tested through
minimal projective presentations (``Hom(N, tau M) = 0`` iff
``Hom(P0, N) -> Hom(P1, N)`` is onto), and pairs are counted by subset
enumeration. Only practical for algebras of a handful of dimensions over
tiny fields.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..arith import linalg
from .algebra import BasedAlgebra


class OracleTooLarge(RuntimeError):
    pass


@dataclass
class Module:
    """Left module with row-vector action matrices ``acts[x]`` for each algebra basis element."""

    alg: BasedAlgebra
    acts: np.ndarray  # (D, n, n)

    @property
    def dim(self) -> int:
        return self.acts.shape[1]

    def act(self, y) -> np.ndarray:
        F = self.alg.F
        y = np.asarray(y, dtype=np.int64)
        return F.matmul(y.reshape(1, -1), self.acts.reshape(self.alg.dim, -1)).reshape(self.dim, self.dim)

    def piece(self, v: int) -> np.ndarray:
        """Basis rows of ``e_v M``."""
        return linalg.row_space(self.alg.F, self.act(self.alg.idempotents[v]))

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.piece(v).shape[0] for v in range(self.alg.t))


def _vectors(F, n: int):
    for digits in itertools.product(range(F.q), repeat=n):
        yield np.array(digits, dtype=np.int64)


def _spin(F, acts, rows) -> np.ndarray:
    """Smallest subspace containing ``rows`` and stable under ``acts``."""
    n = acts.shape[1]
    basis = linalg.row_space(F, rows) if len(rows) else np.zeros((0, n), dtype=np.int64)
    while True:
        if basis.shape[0] == 0:
            return basis
        imgs = F.matmul(basis, acts.transpose(1, 0, 2).reshape(n, -1)).reshape(-1, acts.shape[0], n)
        new = linalg.row_space(F, np.vstack([basis, imgs.transpose(1, 0, 2).reshape(-1, n)]))
        if new.shape[0] == basis.shape[0]:
            return new
        basis = new


def projective_module(A: BasedAlgebra, tops) -> tuple[Module, list]:
    """``P0 = sum of A e_v`` over ``tops``; also returns per-summand (vertex, basis rows in A)."""
    F = A.F
    parts = []
    for v in tops:
        R = A.right_mats(A.idempotents[v])[0]  # rows: b e_v
        parts.append((v, linalg.row_space(F, R)))
    n = sum(B.shape[0] for _, B in parts)
    acts = np.zeros((A.dim, n, n), dtype=np.int64)
    L = A.left_mats(np.eye(A.dim, dtype=np.int64))
    off = 0
    for v, B in parts:
        k = B.shape[0]
        piv = linalg.rref(F, B)[1]
        for x in range(A.dim):
            acts[x, off : off + k, off : off + k] = F.matmul(B, L[x])[:, piv]
        off += k
    return Module(A, acts), parts


def quotient_module(M: Module, U) -> Module:
    F = M.alg.F
    S = linalg.Subspace(F, U, M.dim)
    keep = [c for c in range(M.dim) if c not in set(S.pivots)]
    acts = np.zeros((M.alg.dim, len(keep), len(keep)), dtype=np.int64)
    for x in range(M.alg.dim):
        rows = S.reduce(M.acts[x][keep])
        acts[x] = rows[:, keep]
    return Module(M.alg, acts)


def radical_rows(A: BasedAlgebra) -> np.ndarray:
    """Basis of rad A for a basic split algebra: off-diagonal corners plus non-units of each local corner."""
    F = A.F
    rows = []
    for i in range(A.t):
        for j in range(A.t):
            C = A.corner(i, j)
            if i != j:
                rows.extend(C.basis)
                continue
            lam = []
            for b in C.basis:
                Lb = C.coords(F.matmul(C.basis, A.left_mats(b)[0]))
                c = A.residue(Lb)
                if c is None:
                    raise ValueError("corner algebra is not local")
                lam.append(c)
            ker = linalg.nullspace(F, np.array(lam, dtype=np.int64).reshape(1, -1))
            rows.extend(F.matmul(ker, C.basis) if ker.shape[0] else [])
    return np.array(rows, dtype=np.int64).reshape(-1, A.dim)


def _module_radical(M: Module, J) -> np.ndarray:
    F = M.alg.F
    if M.dim == 0 or len(J) == 0:
        return np.zeros((0, M.dim), dtype=np.int64)
    imgs = [M.act(y) for y in J]
    return linalg.row_space(F, np.vstack(imgs))


def submodules(M: Module, inside, cap: int = 20000) -> list[np.ndarray]:
    """All submodules of ``M`` contained in the submodule spanned by ``inside``."""
    F = M.alg.F
    Sp = linalg.Subspace(F, inside, M.dim)
    if F.q ** Sp.dim > 1 << 14:
        raise OracleTooLarge("too many vectors to enumerate")
    vecs = [F.matmul(c, Sp.basis) for c in _vectors(F, Sp.dim)][1:] if Sp.dim else []
    zero = np.zeros((0, M.dim), dtype=np.int64)
    seen = {(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vecs:
                if S.shape[0] and linalg.in_span(F, S, v):
                    continue
                W = _spin(F, M.acts, np.vstack([S, v]) if S.shape[0] else v.reshape(1, -1))
                key = tuple(map(tuple, W))
                if key not in seen:
                    seen[key] = W
                    nxt.append(W)
                    if len(seen) > cap:
                        raise OracleTooLarge("submodule lattice too large")
        frontier = nxt
    return list(seen.values())


def hom_basis(M: Module, N: Module) -> np.ndarray:
    """Basis of module maps ``M -> N`` as flattened ``(dim M, dim N)`` matrices (row convention)."""
    F = M.alg.F
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return np.zeros((0, m * n), dtype=np.int64)
    eqs = []
    Im, In = F.identity(m), F.identity(n)
    for x in range(M.alg.dim):
        # M_x phi - phi N_x = 0, vec over row-major phi
        eqs.append(F.vsub(F.kron(M.acts[x], In), F.kron(Im, N.acts[x].T)))
    return linalg.nullspace(F, np.vstack(eqs), m * n)


def _enumerate_ring(F, basis, cap=1 << 14):
    if F.q ** len(basis) > cap:
        raise OracleTooLarge("hom space too large to enumerate")
    for c in _vectors(F, len(basis)):
        yield F.matmul(c, basis) if len(basis) else None


def is_indecomposable(M: Module) -> bool:
    """No decomposition ``M = W + W'`` into nonzero submodules.

    Small endomorphism rings are checked directly (every endomorphism
    nilpotent or invertible); otherwise complementary pairs in the submodule
    lattice are searched.
    """
    F = M.alg.F
    n = M.dim
    if n == 0:
        return False
    E = hom_basis(M, M)
    if F.q ** E.shape[0] <= 1 << 12:
        for phi in _enumerate_ring(F, E):
            P = phi.reshape(n, n)
            if linalg.rank(F, P) == n:
                continue
            Q = P
            for _ in range(n):
                Q = F.matmul(Q, P)
            if Q.any():
                return False
        return True
    subs = submodules(M, F.identity(n))
    by_dim: dict[int, list] = {}
    for W in subs:
        by_dim.setdefault(W.shape[0], []).append(W)
    for k in range(1, n // 2 + 1):
        for W in by_dim.get(k, []):
            for W2 in by_dim.get(n - k, []):
                if linalg.rank(F, np.vstack([W, W2])) == n:
                    return False
    return True


def are_isomorphic(M: Module, N: Module) -> bool:
    if M.dim != N.dim or M.dim_vector != N.dim_vector:
        return False
    n = M.dim
    for phi in _enumerate_ring(M.alg.F, hom_basis(M, N)):
        if linalg.rank(M.alg.F, phi.reshape(n, n)) == n:
            return True
    return False


@dataclass
class Presented:
    """A module with its minimal projective presentation ``P1 -> P0 -> M``."""

    module: Module
    tops0: tuple[int, ...]
    gens1: list  # (vertex, list over P0 summands of algebra elements)


def _presentation(A, P0, parts, U, J) -> list:
    F = A.F
    Us = linalg.Subspace(F, U, P0.dim)
    JU = []
    for y in J:
        Y = P0.act(y)
        if Us.dim:
            JU.extend(F.matmul(Us.basis, Y))
    JUs = linalg.Subspace(F, np.array(JU, dtype=np.int64).reshape(-1, P0.dim), P0.dim)
    gens = []
    for v in range(A.t):
        Ev = P0.act(A.idempotents[v])
        eU = linalg.row_space(F, F.matmul(Us.basis, Ev)) if Us.dim else np.zeros((0, P0.dim), dtype=np.int64)
        cur = JUs.basis
        for u in eU:
            if linalg.in_span(F, cur, u) if cur.shape[0] else not u.any():
                continue
            cur = np.vstack([cur, u]) if cur.shape[0] else u.reshape(1, -1)
            # split u into algebra elements per P0 summand
            comps, off = [], 0
            for w, B in parts:
                k = B.shape[0]
                comps.append(F.matmul(u[off : off + k], B))
                off += k
            gens.append((v, comps))
    return gens


def tau_orthogonal(X: Presented, N: Module) -> bool:
    """``Hom(N, tau X) = 0`` via surjectivity of ``Hom(P0_X, N) -> Hom(P1_X, N)``."""
    F = N.alg.F
    if not X.gens1 or N.dim == 0:
        return True
    src = [N.piece(v) for v in X.tops0]
    tgt = [N.piece(w) for w, _ in X.gens1]
    tdim = sum(t.shape[0] for t in tgt)
    if tdim == 0:
        return True
    # image of each basis vector of sum_a e_{v_a} N
    cols = []
    for a, Sa in enumerate(src):
        for x in Sa:
            img = []
            for (w, comps), Tb in zip(X.gens1, tgt):
                y = F.matmul(x.reshape(1, -1), N.act(comps[a]))[0]
                img.append(linalg.Subspace(F, Tb, N.dim).coords(y) if Tb.shape[0] else np.zeros(0, dtype=np.int64))
            cols.append(np.concatenate(img))
    if not cols:
        return False
    return linalg.rank(F, np.array(cols)) == tdim


@dataclass
class OracleResult:
    indecomposables: list
    pairs: list  # (indices of modules, projective vertices)

    @property
    def count(self) -> int:
        return len(self.pairs)


def tau_rigid_indecomposables(A: BasedAlgebra, top_bound: int = 1) -> list[Presented]:
    """Indecomposable tau-rigid modules whose top has multiplicities at most ``top_bound``."""
    J = radical_rows(A)
    found: list[Presented] = []
    for mult in itertools.product(range(top_bound + 1), repeat=A.t):
        if not any(mult):
            continue
        tops = tuple(v for v, m in enumerate(mult) for _ in range(m))
        P0, parts = projective_module(A, tops)
        radP = _module_radical(P0, J)
        for U in submodules(P0, radP):
            M = quotient_module(P0, U)
            if not is_indecomposable(M):
                continue
            X = Presented(M, tops, _presentation(A, P0, parts, U, J))
            if not tau_orthogonal(X, M):
                continue
            if any(are_isomorphic(M, Y.module) for Y in found):
                continue
            found.append(X)
    return found


def support_tau_tilting_pairs(A: BasedAlgebra, top_bound: int = 1) -> OracleResult:
    mods = tau_rigid_indecomposables(A, top_bound)
    r = len(mods)
    ok = [[tau_orthogonal(mods[a], mods[b].module) and tau_orthogonal(mods[b], mods[a].module) for b in range(r)] for a in range(r)]
    dims = [X.module.dim_vector for X in mods]
    pairs = []
    for size in range(A.t + 1):
        for S in itertools.combinations(range(r), size):
            if not all(ok[a][b] for a, b in itertools.combinations(S, 2)):
                continue
            free = [v for v in range(A.t) if all(dims[a][v] == 0 for a in S)]
            need = A.t - size
            for Q in itertools.combinations(free, need):
                pairs.append((S, Q))
    return OracleResult(mods, pairs)
