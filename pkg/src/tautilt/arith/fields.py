"""Scalar domains: the rationals and finite fields GF(p^k).

Finite field elements are plain integers in ``range(q)``.  The integer
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` encodes the residue class of
``c_0 + c_1 a + ... + c_{k-1} a^{k-1}`` where ``a`` is a root of the field's
modulus, so the prime subfield is exactly ``range(p)``.

Two APIs are offered: scalar methods (``add``, ``mul``, ...) take and return
Python ints, and ``v``-prefixed methods work elementwise on numpy arrays.
"""
from __future__ import annotations

import functools
import itertools
from fractions import Fraction

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Least ``k >= 1`` with ``a**k == 1 (mod n)``; ``n == 1`` gives 1."""
    if n == 1:
        return 1
    a %= n
    x, k = a, 1
    while x != 1:
        x = x * a % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not a unit modulo {n}")
    return k


class Rationals:
    """The field QQ, with :class:`fractions.Fraction` scalars."""

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0


QQ = Rationals()


class FiniteField:
    """The finite field GF(p^k).

    Args:
        p: the characteristic (must be prime).
        k: extension degree.
        modulus: optional monic irreducible polynomial of degree ``k`` over
            GF(p), as a coefficient tuple from the constant term upwards.
            Defaults to the first irreducible one in lexicographic order.
            Irreducibility is always certified.
    """

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p**k
        if k == 1:
            self.modulus = (0, 1)
        else:
            if modulus is None:
                modulus = _first_irreducible(p, k)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _is_irreducible_prime_field(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._build_tables()

    # -- construction ----------------------------------------------------
    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        self._pw = p ** np.arange(k, dtype=np.int64)
        self._digit_table = None
        if k == 1:
            self._inv_list = [0] + [pow(a, p - 2, p) for a in range(1, p)]
            self._inv_arr = np.array(self._inv_list, dtype=np.int64)
            return
        digits = [self._digits(a) for a in range(q)]
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                c = self._encode(_polymulmod(digits[a], digits[b], self.modulus, p))
                mul[a, b] = mul[b, a] = c
        add = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(q):
                add[a, b] = self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
        neg = np.array([self._encode([(-x) % p for x in digits[a]]) for a in range(q)], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self._mul, self._add, self._neg, self._inv_arr = mul, add, neg, inv
        self._sub = add[:, neg]
        self._mul_list = mul.tolist()
        self._add_list = add.tolist()
        self._sub_list = self._sub.tolist()
        self._neg_list = neg.tolist()
        self._inv_list = inv.tolist()
        # multiplication by the generator's powers, for the digit-wise matmul
        self._reduce_powers = _reduction_table(self.modulus, p, k)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(digits))

    # -- identity --------------------------------------------------------
    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    zero = 0
    one = 1

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def to_json(self) -> dict:
        out = {"p": self.p, "k": self.k}
        if self.k > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "FiniteField":
        mod = data.get("modulus")
        return cls(int(data["p"]), int(data.get("k", 1)), tuple(mod) if mod else None)

    def elements(self) -> range:
        return range(self.q)

    def generator(self) -> int:
        """A generator of the multiplicative group (smallest encoding)."""
        order = self.q - 1
        factors = prime_factors(order)
        for g in range(1, self.q):
            if all(self.pow(g, order // r) != 1 for r in factors):
                return g
        raise AssertionError("no primitive element")  # pragma: no cover

    # -- scalar arithmetic ------------------------------------------------
    def __call__(self, n: int) -> int:
        return self.from_int(n)

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._add_list[a][b]

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self._sub_list[a][b]

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return self._mul_list[a][b]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._neg_list[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_list[a]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a: int) -> bool:
        return a == 0

    # -- array arithmetic -------------------------------------------------
    def vreduce(self, a) -> np.ndarray:
        """Map integer arrays into the prime subfield."""
        return np.asarray(a, dtype=np.int64) % self.p

    def vadd(self, a, b):
        if self.k == 1:
            return (np.asarray(a) + b) % self.p
        return self._add[a, b]

    def vsub(self, a, b):
        if self.k == 1:
            return (np.asarray(a) - b) % self.p
        return self._sub[a, b]

    def vmul(self, a, b):
        if self.k == 1:
            return (np.asarray(a) * b) % self.p
        return self._mul[a, b]

    def vneg(self, a):
        if self.k == 1:
            return (-np.asarray(a)) % self.p
        return self._neg[a]

    def vinv(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv_arr[a]

    def vsum(self, a, axis=None):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        d = (a[..., None] // self._pw) % self.p
        if axis is None:
            s = d.reshape(-1, self.k).sum(axis=0) % self.p
            return int(s @ self._pw)
        if axis < 0:
            axis += a.ndim
        s = d.sum(axis=axis) % self.p
        return s @ self._pw

    def to_digits(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self._digit_table is None:
            self._digit_table = (np.arange(self.q, dtype=np.int64)[:, None] // self._pw) % self.p
        return self._digit_table[a]

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._pw

    def _int_matmul(self, a, b) -> np.ndarray:
        """Exact integer product of small nonnegative arrays, via BLAS when safe."""
        inner = a.shape[-1] if a.ndim else 1
        if inner * (self.p - 1) ** 2 < 2**52:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        return a @ b

    def matmul(self, a, b) -> np.ndarray:
        """Matrix product over the field."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return self._int_matmul(a, b) % self.p
        p, k = self.p, self.k
        da = self.to_digits(a)
        db = self.to_digits(b)
        # product of polynomials in the generator, coefficientwise matrices
        acc = [None] * (2 * k - 1)
        if a.ndim == 2 and b.ndim == 2:
            # all digit-plane products in one call
            r, c = a.shape[0], b.shape[1]
            big = self._int_matmul(
                da.transpose(2, 0, 1).reshape(k * r, a.shape[1]), db.reshape(b.shape[0], c * k)
            ).reshape(k, r, c, k)
            for i in range(k):
                for j in range(k):
                    m = big[i, :, :, j]
                    acc[i + j] = m.copy() if acc[i + j] is None else acc[i + j] + m
        else:
            for i in range(k):
                for j in range(k):
                    m = self._int_matmul(da[..., i], db[..., j])
                    acc[i + j] = m if acc[i + j] is None else acc[i + j] + m
        res = np.zeros(acc[0].shape + (k,), dtype=np.int64)
        for e, m in enumerate(acc):
            m %= p
            if not m.any():
                continue
            res += m[..., None] * self._reduce_powers[e]
        return self.from_digits(res % p)

    def kron(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        m = self.vmul(a[:, None, :, None], b[None, :, None, :])
        return m.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random_array(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)


def _polymulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg]
        if c:
            for i in range(k + 1):
                prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
    out = prod[:k] + [0] * max(0, k - len(prod))
    return out[:k]


def _reduction_table(mod, p, k) -> np.ndarray:
    """Row e holds the digits of a^e reduced modulo the field modulus."""
    rows = []
    for e in range(2 * k - 1):
        mono = [0] * e + [1]
        rows.append(_polymulmod(mono, [1], mod, p) if e >= k else mono + [0] * (k - len(mono)))
    return np.array(rows, dtype=np.int64)


def _is_irreducible_prime_field(f: tuple[int, ...], p: int) -> bool:
    from .poly import is_irreducible

    return is_irreducible(f, GF(p))


def _first_irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=k):
        f = tuple(reversed(tail)) + (1,)
        if f[0] == 0:
            continue
        if _is_irreducible_prime_field(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached field constructor with the default modulus."""
    return FiniteField(p, k)


def splitting_field_for(group_exponent: int, p: int) -> FiniteField:
    """Smallest GF(p^k) containing all e'-th roots of unity.

    ``e'`` is the p'-part of ``group_exponent``; by Brauer's theorem such a
    field splits every group algebra of exponent ``group_exponent``.
    """
    if group_exponent < 1:
        raise ValueError("group exponent must be >= 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    e = group_exponent
    while e % p == 0:
        e //= p
    return GF(p, multiplicative_order(p, e))
