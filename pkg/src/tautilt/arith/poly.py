"""Univariate polynomials over finite fields.

A polynomial is a tuple of field elements, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

import random

from .fields import FiniteField, prime_factors

Poly = tuple


def trim(f) -> Poly:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return tuple(f)


def degree(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly, F: FiniteField) -> Poly:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return trim(F.add(a, b) for a, b in zip(f, g))


def sub(f: Poly, g: Poly, F: FiniteField) -> Poly:
    n = max(len(f), len(g))
    f = tuple(f) + (0,) * (n - len(f))
    g = tuple(g) + (0,) * (n - len(g))
    return trim(F.sub(a, b) for a, b in zip(f, g))


def scale(f: Poly, c: int, F: FiniteField) -> Poly:
    return trim(F.mul(a, c) for a in f)


def mul(f: Poly, g: Poly, F: FiniteField) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(f: Poly, g: Poly, F: FiniteField) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    lead_inv = F.inv(g[-1])
    q = [0] * max(0, len(f) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = F.mul(c, lead_inv)
        q[i - dg] = c
        for j, b in enumerate(g):
            r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, b))
    return trim(q), trim(r[:dg])


def rem(f: Poly, g: Poly, F: FiniteField) -> Poly:
    return divmod_(f, g, F)[1]


def monic(f: Poly, F: FiniteField) -> Poly:
    if not f:
        return f
    return scale(f, F.inv(f[-1]), F)


def gcd(f: Poly, g: Poly, F: FiniteField) -> Poly:
    while g:
        f, g = g, rem(f, g, F)
    return monic(f, F)


def powmod(f: Poly, e: int, m: Poly, F: FiniteField) -> Poly:
    result: Poly = (1,)
    base = rem(f, m, F)
    while e:
        if e & 1:
            result = rem(mul(result, base, F), m, F)
        base = rem(mul(base, base, F), m, F)
        e >>= 1
    return rem(result, m, F)


def derivative(f: Poly, F: FiniteField) -> Poly:
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(f) if i > 0)


def evaluate(f: Poly, x: int, F: FiniteField) -> int:
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def from_roots(roots, F: FiniteField) -> Poly:
    out: Poly = (1,)
    for r in roots:
        out = mul(out, (F.neg(r), 1), F)
    return out


X: Poly = (0, 1)


def _pth_root(f: Poly, F: FiniteField) -> Poly:
    # every exponent is a multiple of p; a -> a^(q/p) inverts Frobenius
    e = F.q // F.p
    return trim(F.pow(f[i], e) for i in range(0, len(f), F.p))


def is_irreducible(f: Poly, F: FiniteField) -> bool:
    """Rabin's irreducibility test."""
    f = trim(f)
    n = degree(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(f, F)
    q = F.q
    if powmod(X, q**n, f, F) != rem(X, f, F):
        return False
    for r in prime_factors(n):
        h = sub(powmod(X, q ** (n // r), f, F), X, F)
        if degree(gcd(h, f, F)) != 0:
            return False
    return True


def _square_free(f: Poly, F: FiniteField) -> list[tuple[Poly, int]]:
    out = []
    g = derivative(f, F)
    if g:
        c = gcd(f, g, F)
        w = divmod_(f, c, F)[0]
        i = 1
        while degree(w) > 0:
            y = gcd(w, c, F)
            z = divmod_(w, y, F)[0]
            if degree(z) > 0:
                out.append((z, i))
            i += 1
            w = y
            c = divmod_(c, y, F)[0]
        if degree(c) > 0:
            for h, j in _square_free(_pth_root(c, F), F):
                out.append((h, j * F.p))
    else:
        for h, j in _square_free(_pth_root(f, F), F):
            out.append((h, j * F.p))
    return out


def _distinct_degree(f: Poly, F: FiniteField) -> list[tuple[Poly, int]]:
    out = []
    h = X
    i = 1
    rest = f
    while degree(rest) >= 2 * i:
        h = powmod(h, F.q, rest, F)
        g = gcd(sub(h, X, F), rest, F)
        if degree(g) > 0:
            out.append((g, i))
            rest = divmod_(rest, g, F)[0]
            h = rem(h, rest, F)
        i += 1
    if degree(rest) > 0:
        out.append((rest, degree(rest)))
    return out


def _equal_degree(f: Poly, d: int, F: FiniteField, rng: random.Random) -> list[Poly]:
    n = degree(f)
    if n == d:
        return [f]
    while True:
        a = trim(rng.randrange(F.q) for _ in range(n))
        if degree(a) < 1:
            continue
        if F.p == 2:
            # trace map to GF(2)
            t = a
            b = a
            for _ in range(F.k * d - 1):
                b = powmod(b, 2, f, F)
                t = add(t, b, F)
        else:
            t = sub(powmod(a, (F.q**d - 1) // 2, f, F), (1,), F)
        g = gcd(t, f, F)
        if 0 < degree(g) < n:
            h = divmod_(f, g, F)[0]
            return _equal_degree(g, d, F, rng) + _equal_degree(h, d, F, rng)


def factor_univariate(f, F: FiniteField, seed: int = 0) -> list[tuple[Poly, int]]:
    """Complete factorization of ``f`` over ``F``.

    Returns monic irreducible factors with multiplicities, sorted by degree
    and then coefficients. The leading coefficient of ``f`` is dropped.

    Raises:
        ValueError: if ``f`` is the zero polynomial.
    """
    f = trim(int(c) for c in f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    f = monic(f, F)
    if degree(f) == 0:
        return []
    rng = random.Random(seed)
    out: dict[Poly, int] = {}
    for part, mult in _square_free(f, F):
        for g, d in _distinct_degree(part, F):
            for h in _equal_degree(g, d, F, rng):
                h = monic(h, F)
                out[h] = out.get(h, 0) + mult
    return sorted(out.items(), key=lambda item: (degree(item[0]), item[0][::-1]))


def roots(f, F: FiniteField) -> list[int]:
    """Distinct roots of ``f`` in ``F``."""
    return sorted(F.neg(h[0]) for h, _ in factor_univariate(f, F) if degree(h) == 1)
