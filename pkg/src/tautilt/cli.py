"""Command-line entry point ``tautilt``.

Exit codes: 0 finite / complete / success, 1 infinite, 2 unknown or
inconclusive, 3 exploration budget exhausted, 4 a size cap was exceeded,
64 usage error, 65 bad input data, 70 internal failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__

EXIT_OK, EXIT_INFINITE, EXIT_UNKNOWN, EXIT_BUDGET, EXIT_CAP = 0, 1, 2, 3, 4
EXIT_USAGE, EXIT_DATA, EXIT_SOFTWARE = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _group(args, n: int):
    from .permgrp import PermutationGroup

    spec = (args.group or "").strip()
    if spec.lower() in ("", "()", "1", "trivial"):
        return PermutationGroup.trivial(n)
    if spec.lower() in ("sym", "symmetric", f"s{n}"):
        return PermutationGroup.symmetric(n, args.max_group_order)
    return PermutationGroup.from_text(spec, n, args.max_group_order)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ValueError(f"cannot read {path}: {e.strerror}") from e


def _matrix_text(rows) -> str:
    return "\n".join("  " + " ".join(f"{x:>3}" for x in r) for r in rows)


# subcommands

def cmd_decide(args) -> int:
    from .screen import Verdict, decide

    H = _group(args, args.n)
    v = decide(args.p, args.m, args.n, H, with_witness=args.witness, seed=args.seed)
    text = f"{v.verdict.value} ({v.rule}); rank={v.rank} ibr={v.ibr} l={v.l} p^l>=n={v.pl_ge_n}"
    if v.witness is not None:
        text += f"\nwitness: {list(v.witness)}"
    _emit(args, v.to_json(), text)
    return {Verdict.FINITE: EXIT_OK, Verdict.INFINITE: EXIT_INFINITE, Verdict.UNKNOWN: EXIT_UNKNOWN}[v.verdict]


def cmd_cartan(args) -> int:
    from .screen import cartan_by_chop, cartan_data

    H = _group(args, args.n)
    data = cartan_data(args.n, H, args.p, seed=args.seed)
    out = data.to_json()
    text = f"Cartan matrix over {data.field!r} (simple dims {data.dims}):\n{_matrix_text(data.matrix.rows)}"
    if args.verify_chop:
        other = cartan_by_chop(args.n, H, args.p, seed=args.seed)
        out["chop_matrix"] = other.tolist()
        out["verified"] = other.tolist() == data.matrix.tolist()
        text += f"\nverified by chop: {str(out['verified']).lower()}"
    _emit(args, out, text)
    return EXIT_OK if out.get("verified", True) else EXIT_SOFTWARE


def cmd_screen(args) -> int:
    from .arith.quadratic import SymmetricIntegerMatrix
    from .permgrp import Permutation
    from .screen import selfinjective_screen, weakly_symmetric_screen

    raw = _read_json(args.cartan)
    rows = raw["matrix"] if isinstance(raw, dict) else raw
    C = SymmetricIntegerMatrix(rows)
    if args.nakayama is not None and args.weakly_symmetric:
        raise UsageError("--nakayama and --weakly-symmetric are exclusive")
    if args.nakayama is not None:
        nu = Permutation.from_cycles(args.nakayama, C.t)
        verdict = selfinjective_screen(C, nu)
    else:
        verdict = weakly_symmetric_screen(C)
    text = f"{verdict.verdict.value}: {verdict.justification}"
    if verdict.witness is not None:
        text += f"\nwitness: {list(verdict.witness)}"
    _emit(args, verdict.to_json(), text)
    return EXIT_INFINITE if verdict.infinite else EXIT_UNKNOWN


def cmd_selfinjective(args) -> int:
    from .skewalg import SkewAlgebra, default_field, gram_matrix

    H = _group(args, args.n)
    A = SkewAlgebra(args.n, H, default_field(H, args.p))
    cert = gram_matrix(A, cap=args.max_dim, threads=args.threads)
    status = "nondegenerate" if cert.nondegenerate else "degenerate"
    _emit(args, cert.to_json(), f"Gram matrix of dimension {A.dim} has rank {cert.rank}: {status}")
    return EXIT_OK if cert.nondegenerate else EXIT_SOFTWARE


def cmd_explore(args) -> int:
    from .silting import BasedAlgebra, Status, explore

    A = BasedAlgebra.from_json(_read_json(args.algebra))
    rep = explore(A, budget=args.budget, seed=args.seed)
    data = rep.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True, indent=2)
    lines = [f"{rep.status.value}: {rep.count} two-term silting objects (budget {rep.budget})"]
    if not args.json:
        for v in data["vertices"]:
            lines.append(f"  {v['id']}: g-matrix {v['g_matrix']}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if rep.status is Status.COMPLETE_FINITE else EXIT_BUDGET


def cmd_algebra(args) -> int:
    from .arith.fields import GF
    from .silting import algebra as alg

    F = GF(args.p, args.k)
    if args.preset == "truncated":
        A = alg.truncated_polynomial(F, args.nilpotency)
    elif args.preset == "A2":
        A = alg.path_algebra_A2(F)
    elif args.preset == "two-loop":
        A = alg.two_loop_algebra(F)
    elif args.preset == "group":
        A = alg.from_group_algebra(_group(args, args.n), F)
    else:  # skew
        A = alg.from_skew_coinvariant(args.n, _group(args, args.n), args.p)
    data = A.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(data, fh, sort_keys=True)
    _emit(args, data if not args.out else {"written": args.out, "dim": A.dim, "t": A.t, "cartan": A.cartan},
          f"algebra of dimension {A.dim} with {A.t} idempotents; Cartan {A.cartan}")
    return EXIT_OK


def cmd_coinv(args) -> int:
    from . import coinv
    from .permgrp import Permutation

    if args.action == "normal-form":
        if args.poly is None:
            raise UsageError("normal-form needs --poly")
        e = coinv.normal_form(args.poly, args.n)
        _emit(args, {"n": args.n, "input": args.poly, "normal_form": str(e)}, str(e))
    elif args.action == "trace":
        s = Permutation.from_cycles(args.perm or "()", args.n)
        tr = coinv.trace_of_permutation(s, args.n)
        _emit(args, {"n": args.n, "permutation": s.to_cycles(), "trace": tr}, str(tr))
    else:
        h = coinv.hilbert_function(args.n)
        _emit(args, {"n": args.n, "hilbert": h}, " ".join(map(str, h)))
    return EXIT_OK


# parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subroutines (default 0)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for Gram rows")
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")
    common.add_argument("--max-group-order", type=int, default=100_000, help="cap on enumerated group orders")
    common.add_argument("--max-dim", type=int, default=2000, help="cap on algebra dimension for Gram matrices")

    p = _Parser(prog="tautilt", description="Tau-tilting finiteness tools for skew group algebras.")
    p.add_argument("--version", action="version", version=f"tautilt {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def group_args(sp, need_p=True):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--group", default="", help='generators in cycle notation, e.g. "(1 2 3)"')
        if need_p:
            sp.add_argument("--p", type=int, required=True)

    d = sub.add_parser("decide", parents=[common], help="decide tau-tilting finiteness of k[(Z/m)^n x| H]")
    group_args(d)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--witness", action="store_true", help="attach a kernel witness when available")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("cartan", parents=[common], help="Cartan matrix of the skew coinvariant algebra")
    group_args(c)
    c.add_argument("--verify-chop", action="store_true")
    c.set_defaults(func=cmd_cartan)

    s = sub.add_parser("screen", parents=[common], help="screen a Cartan matrix")
    s.add_argument("--cartan", required=True, help="JSON file with a matrix or {\"matrix\": ...}")
    s.add_argument("--nakayama", help="Nakayama permutation in cycle notation")
    s.add_argument("--weakly-symmetric", action="store_true")
    s.set_defaults(func=cmd_screen)

    g = sub.add_parser("selfinjective", parents=[common], help="Gram matrix certificate")
    group_args(g)
    g.set_defaults(func=cmd_selfinjective)

    e = sub.add_parser("explore", parents=[common], help="explore two-term silting objects")
    e.add_argument("--algebra", required=True, help="BasedAlgebra JSON file")
    e.add_argument("--budget", type=int, default=200)
    e.add_argument("--out", help="write the exchange graph JSON here")
    e.set_defaults(func=cmd_explore)

    a = sub.add_parser("algebra", parents=[common], help="write a built-in algebra as JSON")
    a.add_argument("--preset", choices=["truncated", "A2", "two-loop", "group", "skew"], required=True)
    a.add_argument("--p", type=int, default=2)
    a.add_argument("--k", type=int, default=1)
    a.add_argument("--n", type=int, default=2)
    a.add_argument("--group", default="")
    a.add_argument("--nilpotency", type=int, default=2)
    a.add_argument("--out")
    a.set_defaults(func=cmd_algebra)

    q = sub.add_parser("coinv", parents=[common], help="coinvariant algebra utilities")
    q.add_argument("action", choices=["normal-form", "trace", "hilbert"])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--poly")
    q.add_argument("--perm")
    q.set_defaults(func=cmd_coinv)
    return p


def main(argv=None) -> int:
    from .permgrp import NotPPrimeGroup, OrderBudgetExceeded
    from .screen import NotApplicable
    from .silting import AlgebraError, ApproximationFailure, IdempotentsUnavailable, InfiniteDimensional
    from .skewalg import DimensionBudget

    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"tautilt: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OrderBudgetExceeded, DimensionBudget) as e:
        print(f"tautilt: cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except ApproximationFailure as e:
        print(f"tautilt: internal failure: {e}", file=sys.stderr)
        return EXIT_SOFTWARE
    except (NotPPrimeGroup, NotApplicable, IdempotentsUnavailable, AlgebraError, InfiniteDimensional,
            ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"tautilt: invalid input: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
