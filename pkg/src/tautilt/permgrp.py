"""Permutation groups of small degree.

Points are 0-indexed internally; cycle notation in and out is 1-indexed.
Products compose right to left: ``(s * t)(i) = s(t(i))``.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

DEFAULT_ORDER_CAP = 10**6


class OrderBudgetExceeded(RuntimeError):
    pass


class NotPPrimeGroup(ValueError):
    pass


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, n: int) -> "Permutation":
        """Parse 1-indexed cycle notation such as ``"(1 2 3)(4 5)"``."""
        s = text.strip()
        if s in ("", "()", "id", "e"):
            return cls.identity(n)
        if not re.fullmatch(r"(\s*\([\d\s,]*\))+\s*", s):
            raise ValueError(f"malformed cycle notation: {text!r}")
        images = list(range(n))
        seen: set[int] = set()
        for body in re.findall(r"\(([^()]*)\)", s):
            pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            for x in pts:
                if not 1 <= x <= n:
                    raise ValueError(f"point {x} out of range 1..{n}")
                if x in seen:
                    raise ValueError(f"point {x} repeated in {text!r}")
                seen.add(x)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a - 1] = b - 1
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        a = self.images
        return Permutation(tuple(a[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, e: int) -> "Permutation":
        base = self if e >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            out = out * base
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation"):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-indexed, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def to_cycles(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self.to_cycles()!r}, n={self.degree})"

    __str__ = to_cycles


def sign(s: Permutation) -> int:
    return s.sign()


def parse_generators(text: str, n: int) -> list[Permutation]:
    """Generators separated by ``,`` or ``;`` outside parentheses, e.g. ``"(1 2),(1 2 3)"``.

    Juxtaposed cycles ``(1 2)(3 4)`` form a single permutation.
    """
    text = text.strip()
    if text in ("", "()"):
        return []
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in ",;":
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    gens = [Permutation.from_cycles(p, n) for p in parts if p.strip()]
    return [g for g in gens if not g.is_identity()]


class PermutationGroup:
    """Subgroup of S_n given by generators; elements are materialized on demand."""

    def __init__(self, generators: Iterable[Permutation], n: int, order_cap: int = DEFAULT_ORDER_CAP):
        self.n = n
        self.generators = [g for g in generators if not g.is_identity()]
        for g in self.generators:
            if g.degree != n:
                raise ValueError(f"generator {g} has degree {g.degree}, expected {n}")
        self.order_cap = order_cap

    @classmethod
    def from_text(cls, text: str, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> "PermutationGroup":
        return cls(parse_generators(text, n), n, order_cap)

    @classmethod
    def symmetric(cls, n: int, order_cap: int = DEFAULT_ORDER_CAP) -> "PermutationGroup":
        gens = []
        if n >= 2:
            gens.append(Permutation.from_cycles("(1 2)", n))
        if n >= 3:
            gens.append(Permutation([*range(1, n), 0]))
        return cls(gens, n, order_cap)

    @classmethod
    def trivial(cls, n: int) -> "PermutationGroup":
        return cls([], n)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        """BFS closure from the identity; order is deterministic given the generators."""
        e = Permutation.identity(self.n)
        seen = {e}
        out = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g in self.generators:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    if len(out) > self.order_cap:
                        raise OrderBudgetExceeded(f"group order exceeds cap {self.order_cap}")
                    queue.append(y)
        return tuple(out)

    @cached_property
    def index_of(self) -> dict[Permutation, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order()

    def __contains__(self, g: Permutation) -> bool:
        return g in self.index_of

    def __iter__(self):
        return iter(self.elements)

    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    def describe(self) -> str:
        return ",".join(g.to_cycles() for g in self.generators) or "()"

    def __repr__(self):
        return f"PermutationGroup({self.describe()!r}, n={self.n})"

    def is_abelian(self) -> bool:
        return all(a * b == b * a for a, b in combinations(self.generators, 2))

    def exponent(self) -> int:
        return math.lcm(*(g.order() for g in self.elements))

    @cached_property
    def _classes(self) -> tuple[tuple[Permutation, ...], ...]:
        seen: set[Permutation] = set()
        out = []
        for x in self.elements:
            if x in seen:
                continue
            cls = [x]
            seen.add(x)
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for g in self.generators:
                    z = g * y * g.inverse()
                    if z not in seen:
                        seen.add(z)
                        cls.append(z)
                        queue.append(z)
            out.append(tuple(cls))
        return tuple(out)

    def conjugacy_classes(self) -> list[tuple[Permutation, ...]]:
        return list(self._classes)

    def p_regular_class_count(self, p: int) -> int:
        """Number of conjugacy classes of elements of order prime to ``p``.

        By Brauer's theorem this is the number of simple modules over a
        splitting field of characteristic ``p``.
        """
        return sum(1 for c in self._classes if c[0].order() % p)

    def is_p_prime(self, p: int) -> bool:
        return self.order() % p != 0

    def orbits(self) -> list[tuple[int, ...]]:
        """Orbits on ``{0..n-1}``, each sorted, listed by least point."""
        parent = list(range(self.n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for g in self.generators:
            for i, j in enumerate(g.images):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(self.n):
            groups.setdefault(find(i), []).append(i)
        return [tuple(v) for _, v in sorted(groups.items())]

    def index_in_symmetric(self) -> int:
        return math.factorial(self.n) // self.order()

    def is_subgroup_of_alternating(self) -> bool:
        return all(g.sign() == 1 for g in self.generators)


def closure(generators: Iterable[Permutation], n: int, order_cap: int = DEFAULT_ORDER_CAP) -> PermutationGroup:
    G = PermutationGroup(generators, n, order_cap)
    G.elements  # noqa: B018  materialize
    return G


def conjugacy_classes(G: PermutationGroup):
    return G.conjugacy_classes()


def p_regular_class_count(G: PermutationGroup, p: int) -> int:
    return G.p_regular_class_count(p)


def orbits(G: PermutationGroup):
    return G.orbits()


def index_in_symmetric(G: PermutationGroup) -> int:
    return G.index_in_symmetric()


def p_adic_valuation(m: int, p: int) -> int:
    if m <= 0:
        raise ValueError("m must be positive")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


@dataclass(frozen=True)
class HyperfocalReport:
    p: int
    l: int
    orbit_count: int
    rank: int
    semisimple_case: bool = False

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "l": self.l,
            "orbit_count": self.orbit_count,
            "rank": self.rank,
            "semisimple_case": self.semisimple_case,
        }


def hyperfocal_rank(G: PermutationGroup, p: int, m: int) -> HyperfocalReport:
    """Rank of the p-hyperfocal subgroup of ``(Z/m)^n`` semidirect ``G``.

    For a p'-group ``G`` it is ``n`` minus the number of orbits: the
    ``G``-fixed vectors of ``(Z/p^l)^n`` are the vectors constant on orbits.
    When ``p`` does not divide ``m`` the whole group is p' and the rank is 0.
    """
    if not G.is_p_prime(p):
        bad = next(g for g in G.elements if g.order() % p == 0)
        raise NotPPrimeGroup(f"element {bad} has order divisible by {p}")
    l = p_adic_valuation(m, p)
    oc = len(G.orbits())
    if l == 0:
        return HyperfocalReport(p, 0, oc, 0, semisimple_case=True)
    return HyperfocalReport(p, l, oc, G.n - oc)


@lru_cache(maxsize=None)
def subgroups_up_to_conjugacy(n: int) -> tuple[PermutationGroup, ...]:
    """All subgroups of S_n (n <= 5) up to conjugacy in S_n.

    Every subgroup of S_n for n <= 5 is generated by at most two elements,
    so enumerating pairs suffices. Representatives are sorted by order and
    then by their sorted element lists.
    """
    if n > 5:
        raise ValueError("subgroup enumeration supported for n <= 5")
    sym = PermutationGroup.symmetric(n).elements
    groups: dict[frozenset, PermutationGroup] = {}
    for a in sym:
        for b in sym:
            if b < a:
                continue
            G = PermutationGroup((a, b), n)
            groups.setdefault(frozenset(G.elements), G)
    reps: dict[tuple, PermutationGroup] = {}
    for key, G in groups.items():
        canon = min(tuple(sorted(s * g * s.inverse() for g in key)) for s in sym)
        reps.setdefault(canon, G)
    return tuple(reps[k] for k in sorted(reps, key=lambda k: (len(k), k)))
