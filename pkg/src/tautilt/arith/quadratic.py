"""Exact signatures of integer quadratic forms.

Signatures come from rational symmetric Gaussian elimination (Lagrange
reduction): ``B^T M B = D`` with ``D`` diagonal and ``B`` invertible over QQ.
A row/column whose diagonal vanishes but which still has an off-diagonal
entry is first replaced by a sum ``e_i + e_j``; the resulting diagonal entry
``2 M[i][j]`` is nonzero (the hyperbolic-plane split).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class SymmetricIntegerMatrix:
    """Immutable symmetric integer matrix."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        t = len(rows)
        if any(len(r) != t for r in rows):
            raise ValueError("matrix is not square")
        for i in range(t):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        self._rows = rows

    @classmethod
    def identity(cls, t: int) -> "SymmetricIntegerMatrix":
        return cls([[int(i == j) for j in range(t)] for i in range(t)])

    @classmethod
    def diagonal(cls, entries) -> "SymmetricIntegerMatrix":
        entries = list(entries)
        return cls([[entries[i] if i == j else 0 for j in range(len(entries))] for i in range(len(entries))])

    @property
    def t(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        if isinstance(other, SymmetricIntegerMatrix):
            return self._rows == other._rows
        return NotImplemented

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"SymmetricIntegerMatrix({self.tolist()})"

    def quadratic_value(self, v: Sequence) -> int | Fraction:
        t = self.t
        return sum(v[i] * self._rows[i][j] * v[j] for i in range(t) for j in range(t))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(r[j] * v[j] for j in range(self.t)) for r in self._rows)

    def congruent(self, u: Sequence[Sequence[int]]) -> "SymmetricIntegerMatrix":
        """``U^T M U`` for an integer matrix ``U`` (columns are new basis vectors)."""
        t = self.t
        mu = [[sum(self._rows[i][k] * u[k][j] for k in range(t)) for j in range(t)] for i in range(t)]
        return SymmetricIntegerMatrix(
            [[sum(u[k][i] * mu[k][j] for k in range(t)) for j in range(t)] for i in range(t)]
        )


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
    INDEFINITE = "Indefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemidefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"


@dataclass(frozen=True)
class Signature:
    """Counts of positive, zero and negative squares.

    ``transform`` and ``diagonal`` carry the congruence certificate
    ``transform^T M transform = diag(diagonal)`` when produced by
    :func:`signature`.
    """

    positive: int
    zero: int
    negative: int
    transform: tuple[tuple[Fraction, ...], ...] | None = field(default=None, compare=False, repr=False)
    diagonal: tuple[Fraction, ...] | None = field(default=None, compare=False, repr=False)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.zero, self.negative)

    @property
    def t(self) -> int:
        return self.positive + self.zero + self.negative


def congruence_diagonalize(m: SymmetricIntegerMatrix):
    """Return ``(B, d)`` with ``B^T M B = diag(d)``, all entries Fractions."""
    t = m.t
    s = [[Fraction(x) for x in row] for row in m.rows]
    b = [[Fraction(int(i == j)) for j in range(t)] for i in range(t)]

    def swap(i, j):
        if i == j:
            return
        s[i], s[j] = s[j], s[i]
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in b:
            row[i], row[j] = row[j], row[i]

    for k in range(t):
        piv = next((i for i in range(k, t) if s[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, t) for j in range(i + 1, t) if s[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # column/row i += column/row j
            for r in range(t):
                s[r][i] += s[r][j]
            for c in range(t):
                s[i][c] += s[j][c]
            for row in b:
                row[i] += row[j]
            piv = i
        swap(k, piv)
        pk = s[k][k]
        for j in range(k + 1, t):
            if s[k][j] == 0:
                continue
            c = s[k][j] / pk
            for r in range(t):
                s[r][j] -= c * s[r][k]
            for col in range(t):
                s[j][col] -= c * s[k][col]
            for row in b:
                row[j] -= c * row[k]
    return tuple(tuple(r) for r in b), tuple(s[i][i] for i in range(t))


def signature(m: SymmetricIntegerMatrix) -> Signature:
    b, d = congruence_diagonalize(m)
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return Signature(pos, m.t - pos - neg, neg, transform=b, diagonal=d)


def classify_definiteness(m: SymmetricIntegerMatrix) -> Definiteness:
    sig = signature(m)
    if sig.negative == 0:
        return Definiteness.POSITIVE_DEFINITE if sig.zero == 0 else Definiteness.POSITIVE_SEMIDEFINITE
    if sig.positive == 0:
        return Definiteness.NEGATIVE_DEFINITE if sig.zero == 0 else Definiteness.NEGATIVE_SEMIDEFINITE
    return Definiteness.INDEFINITE


def primitive_integer_vector(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators, divide by the content, make the first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x != 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def isotropic_or_negative_integer_vector(m: SymmetricIntegerMatrix) -> tuple[int, ...] | None:
    """A nonzero ``v`` in ZZ^t with ``v^T M v <= 0``, or None if M is positive definite.

    The vector is the first congruence basis vector whose diagonal entry is
    non-positive, scaled to a primitive integer vector.
    """
    sig = signature(m)
    for i, d in enumerate(sig.diagonal):
        if d <= 0:
            return primitive_integer_vector([row[i] for row in sig.transform])
    return None
