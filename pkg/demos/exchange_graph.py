"""Two-term silting objects of small algebras, counted two independent ways.

Exploration mutates from the regular module until nothing new appears.
The module-side oracle enumerates tau-rigid pairs directly. For the path
algebra of A2 the whole exchange pentagon is printed.
"""
from tautilt.arith import GF
from tautilt.permgrp import PermutationGroup
from tautilt.silting import explore, from_quiver, from_skew_coinvariant, path_algebra_A2, support_tau_tilting_of
from tautilt.silting.oracle import support_tau_tilting_pairs


def pentagon():
    rep = explore(path_algebra_A2(GF(2)))
    names = {k: f"T{i}" for i, k in enumerate(sorted(rep.vertices))}
    for k in sorted(rep.vertices):
        st = support_tau_tilting_of(rep.vertices[k])
        print(f"  {names[k]}: g-vectors {list(k)}  module dims {st.module_dims}  projective {st.projective}")
    for a, b, _, side in rep.edges:
        if side == "left":
            print(f"  {names[a]} -> {names[b]}")


def counts():
    algebras = {
        "A3, linear": from_quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], []),
        "A3, rad^2 = 0": from_quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], ["b*a"]),
        "C x| S2 at p = 3": from_skew_coinvariant(2, PermutationGroup.symmetric(2), 3),
    }
    for name, A in algebras.items():
        rep = explore(A, budget=100)
        print(f"  {name:<18} explore: {rep.count:>3} ({rep.status.value})  oracle: {support_tau_tilting_pairs(A).count}")


if __name__ == "__main__":
    print("Exchange graph of A2 (left mutations):")
    pentagon()
    print("\nCounts:")
    counts()
