"""Cartan matrix of a skew coinvariant algebra, checked two ways, then screened.

The closed form index * dim S_l * dim S_m is compared with Hom dimensions
computed from the module structure. The screen then folds the form along
the sign twist and exhibits an invariant vector of the kernel.
"""
import sys

from tautilt.permgrp import PermutationGroup
from tautilt.screen import cartan_by_chop, cartan_data, main0_witness, selfinjective_screen, star_permutation


def show(n, gens, p):
    H = PermutationGroup.from_text(gens, n)
    data = cartan_data(n, H, p)
    print(f"n={n}  H=<{gens or '()'}>  p={p}  field={data.field!r}")
    print(f"  simple dimensions {data.dims}, sign twist {data.star}, index {data.index}")
    for row in data.matrix.rows:
        print("   ", row)
    print("  agrees with Hom dimensions:", data.matrix.tolist() == cartan_by_chop(n, H, p).tolist())
    try:
        w = main0_witness(n, H, p)
    except ValueError as e:
        print("  no witness:", e)
        return
    verdict = selfinjective_screen(data.matrix, star_permutation(data.star))
    print(f"  kernel witness {list(w.vector)} from simples {w.pair}; screen says {verdict.verdict.value}")


def main(argv):
    cases = [(3, "(1 2 3)", 2), (3, "(1 2),(1 2 3)", 5), (2, "(1 2)", 3), (4, "(1 2 3 4)", 3)]
    if len(argv) == 3:
        cases = [(int(argv[0]), argv[1], int(argv[2]))]
    for case in cases:
        show(*case)
        print()


if __name__ == "__main__":
    main(sys.argv[1:])
