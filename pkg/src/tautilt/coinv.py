"""The coinvariant algebra of S_n.

``C = k[x_1..x_n] / (E_1, ..., E_n)`` where the ``E_i`` are the elementary
symmetric polynomials. Normal forms use the Groebner basis
``h_{n-i+1}(x_1..x_i)`` (complete homogeneous), whose leading monomials in
lex order with ``x_n > ... > x_1`` are ``x_i^{n-i+1}``. Standard monomials
form the staircase ``{x^e : e_i <= n - i}``.

All rewriting runs over the integers; coefficients are specialised to
``QQ`` or a finite field only when elements are built.

Permutations act by ``x_i -> x_{s(i)}``. With products composing right to
left this is a left action: ``s.(t.f) = (s*t).f``.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Mapping

import numpy as np

from .arith.fields import QQ, Rationals
from .permgrp import Permutation

Exponent = tuple[int, ...]
IntPoly = dict[Exponent, int]


def _add_into(acc: IntPoly, poly: Mapping[Exponent, int], c: int = 1) -> None:
    for m, v in poly.items():
        w = acc.get(m, 0) + c * v
        if w:
            acc[m] = w
        else:
            acc.pop(m, None)


class CoinvariantRing:
    """Rewriting tables and staircase basis for a fixed ``n``.

    Obtain instances through :func:`coinvariant_ring`, which caches them.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.top_degree = n * (n - 1) // 2
        self.basis: tuple[Exponent, ...] = tuple(
            tuple(e) for e in product(*(range(n - i) for i in range(n)))
        )
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.delta: Exponent = tuple(n - 1 - i for i in range(n))
        self.delta_index = self.index[self.delta]
        # tails of x_i^{N} -> -(h_N(x_1..x_i) - x_i^N), N = n - i (0-indexed i)
        self._tails: list[list[Exponent]] = []
        for i in range(n):
            N = n - i
            tail = []
            for combo in combinations_with_replacement(range(i + 1), N):
                e = [0] * n
                for v in combo:
                    e[v] += 1
                if e[i] != N:
                    tail.append(tuple(e))
            self._tails.append(tail)
        self._nf_cache: dict[Exponent, IntPoly] = {}
        self._mul_cache: dict[tuple[int, int], IntPoly] = {}

    def is_standard(self, e: Exponent) -> bool:
        return all(e[i] <= self.n - 1 - i for i in range(self.n))

    def normal_form_monomial(self, e: Exponent) -> IntPoly:
        """Normal form of ``x^e`` as ``{staircase exponent: integer}``."""
        e = tuple(e)
        if len(e) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(e)}")
        hit = self._nf_cache.get(e)
        if hit is not None:
            return hit
        stack = [e]
        while stack:
            m = stack[-1]
            if m in self._nf_cache:
                stack.pop()
                continue
            bad = next((i for i in range(self.n - 1, -1, -1) if m[i] > self.n - 1 - i), None)
            if bad is None:
                self._nf_cache[m] = {m: 1}
                stack.pop()
                continue
            N = self.n - bad
            base = list(m)
            base[bad] -= N
            children = [tuple(b + t for b, t in zip(base, tail)) for tail in self._tails[bad]]
            pending = [c for c in children if c not in self._nf_cache]
            if pending:
                stack.extend(pending)
                continue
            out: IntPoly = {}
            for c in children:
                _add_into(out, self._nf_cache[c], -1)
            self._nf_cache[m] = out
            stack.pop()
        return self._nf_cache[e]

    def normal_form(self, poly: Mapping[Exponent, int]) -> IntPoly:
        out: IntPoly = {}
        for m, c in poly.items():
            if c:
                _add_into(out, self.normal_form_monomial(m), c)
        return out

    def basis_product(self, i: int, j: int) -> IntPoly:
        key = (i, j) if i <= j else (j, i)
        hit = self._mul_cache.get(key)
        if hit is None:
            a, b = self.basis[key[0]], self.basis[key[1]]
            hit = self.normal_form_monomial(tuple(x + y for x, y in zip(a, b)))
            self._mul_cache[key] = hit
        return hit

    def permute_monomial(self, s: Permutation, e: Exponent) -> Exponent:
        out = [0] * self.n
        for i, k in enumerate(e):
            out[s.images[i]] = k
        return tuple(out)

    @lru_cache(maxsize=None)
    def action_matrix(self, s: Permutation) -> np.ndarray:
        """Integer matrix of ``s`` on the staircase basis; column j is ``s.b_j``."""
        if s.degree != self.n:
            raise ValueError("permutation degree does not match n")
        a = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, m in enumerate(self.basis):
            for mm, c in self.normal_form_monomial(self.permute_monomial(s, m)).items():
                a[self.index[mm], j] = c
        return a

    @lru_cache(maxsize=None)
    def pairing_matrix(self) -> np.ndarray:
        """``P[i, k]`` is the coefficient of Delta in ``b_i b_k``."""
        P = np.zeros((self.dim, self.dim), dtype=np.int64)
        d = self.delta
        for i in range(self.dim):
            for k in range(i, self.dim):
                if sum(self.basis[i]) + sum(self.basis[k]) != self.top_degree:
                    continue
                c = self.basis_product(i, k).get(d, 0)
                P[i, k] = P[k, i] = c
        return P

    def degree_of(self, i: int) -> int:
        return sum(self.basis[i])

    def hilbert_function(self) -> list[int]:
        out = [0] * (self.top_degree + 1)
        for m in self.basis:
            out[sum(m)] += 1
        return out

    def trace_of_permutation(self, s: Permutation) -> int:
        return int(np.trace(self.action_matrix(s)))


@lru_cache(maxsize=None)
def coinvariant_ring(n: int) -> CoinvariantRing:
    return CoinvariantRing(n)


# field-tagged elements

def _coerce(field, c):
    if isinstance(field, Rationals):
        return Fraction(c)
    return field.from_int(int(c)) if isinstance(c, (int, np.integer)) else int(c)


class CoinvariantElement:
    """Element of the coinvariant algebra in staircase normal form."""

    __slots__ = ("ring", "field", "coeffs")

    def __init__(self, ring: CoinvariantRing, field, coeffs: Mapping[Exponent, object] | None = None):
        self.ring = ring
        self.field = field
        self.coeffs = {m: c for m, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def from_int_poly(cls, ring: CoinvariantRing, field, poly: Mapping[Exponent, int]) -> "CoinvariantElement":
        nf = ring.normal_form(poly)
        return cls(ring, field, {m: _coerce(field, c) for m, c in nf.items()})

    @classmethod
    def one(cls, ring, field):
        return cls.from_int_poly(ring, field, {(0,) * ring.n: 1})

    @classmethod
    def delta(cls, ring, field):
        return cls(ring, field, {ring.delta: _coerce(field, 1)})

    @classmethod
    def variable(cls, ring, field, i: int):
        """``x_i`` with ``i`` 1-indexed."""
        e = [0] * ring.n
        e[i - 1] = 1
        return cls.from_int_poly(ring, field, {tuple(e): 1})

    def _check(self, other: "CoinvariantElement"):
        if self.ring.n != other.ring.n or self.field != other.field:
            raise ValueError("elements live in different coinvariant algebras")

    def _fadd(self, a, b):
        return a + b if isinstance(self.field, Rationals) else self.field.add(a, b)

    def _fmul(self, a, b):
        return a * b if isinstance(self.field, Rationals) else self.field.mul(a, b)

    def __add__(self, other: "CoinvariantElement") -> "CoinvariantElement":
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = self._fadd(out.get(m, 0), c)
        return CoinvariantElement(self.ring, self.field, out)

    def __neg__(self):
        neg = (lambda c: -c) if isinstance(self.field, Rationals) else self.field.neg
        return CoinvariantElement(self.ring, self.field, {m: neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CoinvariantElement":
        c = _coerce(self.field, c)
        return CoinvariantElement(self.ring, self.field, {m: self._fmul(c, v) for m, v in self.coeffs.items()})

    def __mul__(self, other: "CoinvariantElement") -> "CoinvariantElement":
        self._check(other)
        ring = self.ring
        out: dict[Exponent, object] = {}
        for m1, c1 in self.coeffs.items():
            i = ring.index[m1]
            for m2, c2 in other.coeffs.items():
                c = self._fmul(c1, c2)
                for m, k in ring.basis_product(i, ring.index[m2]).items():
                    out[m] = self._fadd(out.get(m, 0), self._fmul(c, _coerce(self.field, k)))
        return CoinvariantElement(ring, self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, CoinvariantElement)
            and self.ring.n == other.ring.n
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring.n, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_vector(self) -> list:
        v = [0] * self.ring.dim
        for m, c in self.coeffs.items():
            v[self.ring.index[m]] = c
        return v

    def __repr__(self):
        return f"CoinvariantElement({format_polynomial(self.coeffs)!r}, n={self.ring.n})"

    def __str__(self):
        return format_polynomial(self.coeffs)


def normal_form(poly, n: int, field=QQ) -> CoinvariantElement:
    """Normal form of a polynomial given as ``{exponents: int}`` or as text."""
    if isinstance(poly, str):
        poly = parse_polynomial(poly, n)
    return CoinvariantElement.from_int_poly(coinvariant_ring(n), field, poly)


def multiply(a: CoinvariantElement, b: CoinvariantElement) -> CoinvariantElement:
    return a * b


def apply_permutation(s: Permutation, a: CoinvariantElement) -> CoinvariantElement:
    ring = a.ring
    if s.degree != ring.n:
        raise ValueError("permutation degree does not match n")
    out: dict[Exponent, object] = {}
    for m, c in a.coeffs.items():
        for mm, k in ring.normal_form_monomial(ring.permute_monomial(s, m)).items():
            term = a._fmul(c, _coerce(a.field, k))
            out[mm] = a._fadd(out.get(mm, 0), term)
    return CoinvariantElement(ring, a.field, out)


def phi(a: CoinvariantElement):
    """Coefficient of Delta."""
    return a.coeffs.get(a.ring.delta, 0)


def hilbert_function(n: int) -> list[int]:
    return coinvariant_ring(n).hilbert_function()


def trace_of_permutation(s: Permutation, n: int | None = None) -> int:
    return coinvariant_ring(n or s.degree).trace_of_permutation(s)


def elementary_symmetric(i: int, n: int) -> IntPoly:
    out: IntPoly = {}
    for subset in combinations_with_replacement(range(n), i):
        if len(set(subset)) == i:
            e = [0] * n
            for v in subset:
                e[v] = 1
            out[tuple(e)] = 1
    return out


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"^(?:(\d+)|x(\d+)(?:\^(\d+))?)$")


def parse_polynomial(text: str, n: int) -> IntPoly:
    """Parse integer polynomials such as ``"x1^2*x2 - 3*x3"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out: IntPoly = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        if pos > 0 and m.group(1) is None:
            raise ValueError(f"missing operator near {s[pos:]!r}")
        pos = m.end()
        coeff = -1 if m.group(1) == "-" else 1
        e = [0] * n
        for factor in m.group(2).split("*"):
            f = _FACTOR.match(factor)
            if not f:
                raise ValueError(f"bad factor {factor!r}")
            if f.group(1) is not None:
                coeff *= int(f.group(1))
            else:
                v = int(f.group(2))
                if not 1 <= v <= n:
                    raise ValueError(f"variable x{v} out of range 1..{n}")
                e[v - 1] += int(f.group(3) or 1)
        _add_into(out, {tuple(e): coeff})
    return out


def format_polynomial(coeffs: Mapping[Exponent, object]) -> str:
    if not coeffs:
        return "0"
    terms = []
    for m in sorted(coeffs, key=lambda e: (sum(e), e[::-1]), reverse=True):
        c = coeffs[m]
        mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(m) if k)
        neg = isinstance(c, (int, Fraction)) and c < 0
        mag = -c if neg else c
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append(("- " if neg else "+ ") + body)
    out = " ".join(terms)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def regular_character_holds(n: int) -> bool:
    """Trace of every non-identity permutation on the algebra is 0, identity gives n!."""
    from .permgrp import PermutationGroup

    ring = coinvariant_ring(n)
    for s in PermutationGroup.symmetric(n).elements:
        expect = math.factorial(n) if s.is_identity() else 0
        if ring.trace_of_permutation(s) != expect:
            return False
    return True
