"""Dense linear algebra over finite fields (numpy int arrays of encodings)."""
from __future__ import annotations

import numpy as np

from .fields import FiniteField


def as_matrix(a, ncols: int | None = None) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, ncols or 0), dtype=np.int64)
    return a


def rref(F: FiniteField, a) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form. Returns ``(R, pivots)`` with zero rows dropped."""
    m = as_matrix(a).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        piv = int(m[r, c])
        if piv != 1:
            m[r] = F.vmul(m[r], F.inv(piv))
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = F.vsub(m[hit], F.vmul(col[hit, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(F: FiniteField, a) -> int:
    a = as_matrix(a)
    if a.size == 0:
        return 0
    return len(rref(F, a)[1])


def nullspace(F: FiniteField, a, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of ``{x : a @ x = 0}``."""
    a = as_matrix(a, ncols)
    n = a.shape[1] if a.size or ncols is None else ncols
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, piv = rref(F, a)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = F.neg(int(r[i, f]))
    return basis


def left_nullspace(F: FiniteField, a) -> np.ndarray:
    """Basis (as rows) of ``{y : y @ a = 0}``."""
    return nullspace(F, as_matrix(a).T)


def row_space(F: FiniteField, a) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] == 0:
        return a
    return rref(F, a)[0]


def solve(F: FiniteField, a, b) -> np.ndarray | None:
    """A solution ``x`` of ``a @ x = b`` (``b`` vector or matrix), or None."""
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    bm = b.reshape(-1, 1) if vec else b
    n = a.shape[1]
    aug = np.concatenate([a, bm], axis=1)
    r, piv = rref(F, aug)
    if any(p >= n for p in piv):
        return None
    x = np.zeros((n, bm.shape[1]), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, n:]
    return x[:, 0] if vec else x


def inverse(F: FiniteField, a) -> np.ndarray:
    a = as_matrix(a)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    r, piv = rref(F, np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1))
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return r[:, n:]


def in_span(F: FiniteField, basis, v) -> bool:
    basis = as_matrix(basis)
    if basis.shape[0] == 0:
        return not np.any(v)
    return rank(F, np.vstack([basis, v])) == rank(F, basis)


class Subspace:
    """A subspace given by an RREF basis, with fast coordinates."""

    def __init__(self, F: FiniteField, rows, ambient: int):
        self.F = F
        self.ambient = ambient
        rows = as_matrix(rows, ambient)
        if rows.shape[0]:
            self.basis, self.pivots = rref(F, rows)
        else:
            self.basis, self.pivots = np.zeros((0, ambient), dtype=np.int64), []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def coords(self, v) -> np.ndarray:
        """Coordinates of vectors (rows) lying in the subspace."""
        v = np.asarray(v, dtype=np.int64)
        return v[..., self.pivots]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        return bool(np.array_equal(self.F.matmul(self.coords(v), self.basis), v))

    def reduce(self, v) -> np.ndarray:
        """Subtract the component along the pivot columns."""
        v = np.asarray(v, dtype=np.int64)
        if not self.pivots:
            return v.copy()
        return self.F.vsub(v, self.F.matmul(self.coords(v), self.basis))


class QuotientSpace:
    """``Z / N`` for subspaces ``N <= Z`` of a coordinate space.

    ``reps`` are representatives of a basis of the quotient; ``coords``
    expresses (batches of) vectors of ``Z`` in that basis.
    """

    def __init__(self, F: FiniteField, z_rows, n_rows, ambient: int):
        self.F = F
        self.ambient = ambient
        self.sub = Subspace(F, n_rows, ambient)
        z = as_matrix(z_rows, ambient)
        if z.shape[0]:
            red = self.sub.reduce(z)
            self.quot = Subspace(F, red, ambient)
        else:
            self.quot = Subspace(F, z, ambient)

    @property
    def dim(self) -> int:
        return self.quot.dim

    @property
    def reps(self) -> np.ndarray:
        return self.quot.basis

    def coords(self, v) -> np.ndarray:
        return self.quot.coords(self.sub.reduce(v))
