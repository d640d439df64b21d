"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 a mathematical check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from . import plumbing
from .dedekind import c_invariant, dedekind_rademacher_sum, dedekind_sum
from .exceptions import ConsistencyError, InputError
from .invariants import eta_combination, mubar_c_form, mubar_dedekind_form, verify_main_theorem
from .numeric import format_rational, parse_rational
from .seifert import SeifertData, enumerate_corpus, normalize_even, solve_coefficients, validate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAILURE = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for failed checks here
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class VerificationSummary:
    n_min: int
    n_max: int
    max_a: int
    total: int = 0
    passed: int = 0
    failures: list[tuple[str, list[str]]] = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self) -> dict[str, Any]:
        # wall time is left out so the report is reproducible byte for byte
        return {
            "corpus": {"n_min": self.n_min, "n_max": self.n_max, "max_a": self.max_a},
            "total": self.total,
            "passed": self.passed,
            "failures": [{"seifert": s, "failed": names} for s, names in self.failures],
        }


def _check_sphere(Y: SeifertData) -> tuple[str, list[str]]:
    try:
        return str(Y), verify_main_theorem(Y).failed_verdicts
    except (ConsistencyError, ArithmeticError, AssertionError) as exc:
        return str(Y), [f"exception: {type(exc).__name__}: {exc}"]


def _corpus(n_min: int, n_max: int, max_a: int) -> Iterable[SeifertData]:
    for n in range(n_min, n_max + 1):
        yield from enumerate_corpus(n, max_a)


def run_verification(n_min: int, n_max: int, max_a: int, jobs: int = 1) -> VerificationSummary:
    """Check every sphere in the corpus; failures are collected, never raised."""
    summary = VerificationSummary(n_min, n_max, max_a)
    start = time.perf_counter()
    corpus = _corpus(n_min, n_max, max_a)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_sphere, corpus, chunksize=64))
    else:
        results = [_check_sphere(Y) for Y in corpus]
    for label, failed in results:
        summary.total += 1
        if failed:
            summary.failures.append((label, failed))
        else:
            summary.passed += 1
    summary.wall_time = time.perf_counter() - start
    return summary


def _emit(args: argparse.Namespace, text: str, payload: Any) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _sphere(args: argparse.Namespace) -> SeifertData:
    return validate(args.a)


def cmd_sum(args: argparse.Namespace) -> int:
    value = dedekind_sum(args.q, args.p)
    _emit(args, format_rational(value), {"p": args.p, "q": args.q, "s": format_rational(value)})
    return EXIT_OK


def cmd_rsum(args: argparse.Namespace) -> int:
    x, y = parse_rational(args.x), parse_rational(args.y)
    value = dedekind_rademacher_sum(args.q, args.p, x, y)
    payload = {"p": args.p, "q": args.q, "x": format_rational(x), "y": format_rational(y), "s": format_rational(value)}
    _emit(args, format_rational(value), payload)
    return EXIT_OK


def cmd_c(args: argparse.Namespace) -> int:
    value = c_invariant(args.q, args.p)
    _emit(args, str(value), {"q": args.q, "p": args.p, "c": value})
    return EXIT_OK


def cmd_coeffs(args: argparse.Namespace) -> int:
    Y = _sphere(args)
    b = solve_coefficients(Y)
    if args.even_normalized:
        b = normalize_even(Y, b)
    text = f"{Y}: b = ({', '.join(str(x) for x in b)})"
    _emit(args, text, {"seifert": str(Y), "b": list(b.b), "even_normalized": b.even_normalized})
    return EXIT_OK


def cmd_eta(args: argparse.Namespace) -> int:
    Y = _sphere(args)
    value = eta_combination(Y)
    _emit(args, format_rational(value), {"seifert": str(Y), "eta_combination": format_rational(value)})
    return EXIT_OK


def cmd_mubar(args: argparse.Namespace) -> int:
    Y = _sphere(args)
    methods = ["c", "dedekind", "plumbing"] if args.method == "all" else [args.method]
    values = {}
    for m in methods:
        if m == "c":
            values[m] = mubar_c_form(Y)
        elif m == "dedekind":
            values[m] = mubar_dedekind_form(Y)
        else:
            values[m] = plumbing.mubar_oracle(Y)
    agree = len(set(values.values())) == 1
    lines = [f"{Y}"] + [f"  mubar ({m}): {format_rational(v)}" for m, v in values.items()]
    if len(values) > 1:
        lines.append(f"  agreement: {'yes' if agree else 'NO'}")
    payload = {"seifert": str(Y), "mubar": {m: format_rational(v) for m, v in values.items()}, "agree": agree}
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if agree else EXIT_FAILURE


def cmd_plumbing(args: argparse.Namespace) -> int:
    G = plumbing.build_plumbing(_sphere(args))
    if args.format == "dot":
        sys.stdout.write(G.to_dot())
    else:
        print(json.dumps(G.to_json_dict(), sort_keys=True))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    report = verify_main_theorem(_sphere(args))
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        d = report.to_dict()
        print(d["seifert"])
        for key in ["eta_combination", "mubar", "mubar_dedekind", "mubar_oracle", "signature", "wu_self_intersection", "aps_index"]:
            print(f"  {key}: {d[key]}")
        for name, ok in d["verdicts"].items():
            print(f"  [{'pass' if ok else 'FAIL'}] {name}")
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_verify(args: argparse.Namespace) -> int:
    n_max = args.n_max if args.n_max is not None else args.n
    if args.n < 3 or n_max < args.n:
        raise InputError("need 3 <= --n <= --n-max")
    if args.jobs < 1:
        raise InputError("--jobs must be at least 1")
    summary = run_verification(args.n, n_max, args.max_a, args.jobs)
    payload = summary.to_dict()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=2)
            fh.write("\n")
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"corpus: n = {args.n}..{n_max}, a_i <= {args.max_a}")
        print(f"checked {summary.total}, passed {summary.passed}, failed {len(summary.failures)}")
        for label, failed in summary.failures:
            print(f"  FAIL {label}: {', '.join(failed)}")
    print(f"wall time: {summary.wall_time:.2f}s", file=sys.stderr)
    return EXIT_OK if not summary.failures else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mubar", description="Exact invariants of Seifert fibered homology spheres.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    def sphere_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("a", nargs="+", type=int, help="multiplicities a_1 ... a_n")
        return p

    p = sub.add_parser(
        "sum",
        parents=[common],
        help="Dedekind sum s(q, p)",
        description="Dedekind sum s(q, p). The modulus p comes FIRST on the command line.",
    )
    p.add_argument("p", type=int, help="modulus (positive)")
    p.add_argument("q", type=int, help="multiplier, coprime to p")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser(
        "rsum",
        parents=[common],
        help="Dedekind-Rademacher sum s(q, p; x, y)",
        description="Dedekind-Rademacher sum s(q, p; x, y). The modulus p comes FIRST.",
    )
    p.add_argument("p", type=int, help="modulus (positive)")
    p.add_argument("q", type=int, help="multiplier (positive, coprime to p)")
    p.add_argument("--x", default="0", help="rational shift x, e.g. 1/2")
    p.add_argument("--y", default="0", help="rational shift y, e.g. 1/2")
    p.set_defaults(func=cmd_rsum)

    p = sub.add_parser("c", parents=[common], help="integer invariant c(q, p), q odd")
    p.add_argument("q", type=int)
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_c)

    p = sphere_cmd("coeffs", "solve sum b_i A/a_i = 1")
    p.add_argument("--even-normalized", action="store_true", help="make every a_i - b_i odd (even case)")
    p.set_defaults(func=cmd_coeffs)

    sphere_cmd("eta", "eta_Dir/2 + eta_Sign/8").set_defaults(func=cmd_eta)

    p = sphere_cmd("mubar", "mu-bar invariant")
    p.add_argument("--method", choices=["c", "dedekind", "plumbing", "all"], default="c")
    p.set_defaults(func=cmd_mubar)

    p = sphere_cmd("plumbing", "star-shaped plumbing graph")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.set_defaults(func=cmd_plumbing)

    sphere_cmd("report", "every invariant and consistency verdict for one sphere").set_defaults(func=cmd_report)

    p = sub.add_parser("verify", parents=[common], help="check all identities over a corpus")
    p.add_argument("--n", type=int, required=True, help="number of multiplicities")
    p.add_argument("--n-max", type=int, default=None, help="check n .. n-max")
    p.add_argument("--max-a", type=int, required=True, help="largest multiplicity")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--output", help="also write the JSON summary to this file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE


run = main

if __name__ == "__main__":
    sys.exit(main())
