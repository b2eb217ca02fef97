"""Walk the family k[(Z/m)^n x| H] for small n and print each verdict.

For every subgroup H of S_n (up to conjugacy) and a few primes p, take
m = p^l with l the least exponent such that p^l >= n, and also m = p.
The second choice often drops below the range where the theory decides.
"""
from tautilt.permgrp import subgroups_up_to_conjugacy
from tautilt.screen import decide


def least_power(p, n):
    q = 1
    while q < n:
        q *= p
    return q


def main():
    print(f"{'n':>2} {'H':<18} {'p':>2} {'m':>3}  verdict   rule        rank  #IBr")
    for n in (2, 3, 4):
        for H in subgroups_up_to_conjugacy(n):
            for p in (2, 3, 5):
                for m in sorted({least_power(p, n), p}):
                    v = decide(p, m, n, H)
                    rank = "-" if v.rank is None else v.rank
                    print(f"{n:>2} {H.describe():<18} {p:>2} {m:>3}  {v.verdict.value:<9} {v.rule:<11} {rank!s:>4}  {v.ibr:>4}")


if __name__ == "__main__":
    main()
