"""Command-line entry point: ``virfuse {singular,project,generator,fusion,verify}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from .checks import SUITES, run_suites
from .density import DensityParams, ff_squared, project_f
from .exact import Poly, as_rational, rational_str
from .fusion import fusion_table
from .verma import DEFAULT_LEVEL_CAP, DegenerateKernel, SingularVectorCache, kac_weight, singular_vector
from .zhu import fusion_generator

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
DEFAULT_CACHE = ".virfuse-cache"


class UsageError(Exception):
    pass


def rational_arg(text: str):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational like -1 or 1/2, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="singular-vector cache directory (default: $VIRFUSE_CACHE or .virfuse-cache)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the disk cache")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--level-cap", type=int, default=DEFAULT_LEVEL_CAP)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="virfuse", description="Virasoro singular vectors and c=25 fusion rules.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("singular", parents=[common], help="solve for O_{p,q}(t)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=rational_arg, required=True)

    p = sub.add_parser("project", parents=[common], help="project O_{p,q}(t) onto D_{λ,μ} with μ = a*x + b")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--t", type=rational_arg, required=True)
    p.add_argument("--lambda", dest="lam", type=rational_arg, default=0)
    p.add_argument("--mu-x", type=rational_arg, default=1, help="coefficient a of x in μ")
    p.add_argument("--mu-const", type=rational_arg, default=0, help="constant b in μ")

    p = sub.add_parser("generator", parents=[common], help="fusion ideal generator for labels (m, n)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=rational_arg, default=as_rational(-1))

    p = sub.add_parser("fusion", parents=[common], help="fusion-rule table")
    p.add_argument("--t", type=rational_arg, default=as_rational(-1))
    p.add_argument("--max-label", type=int, default=9)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--max-level", type=int, default=8)
    p.add_argument("--max-label", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    return parser


def resolve_cache(args) -> Optional[SingularVectorCache]:
    if args.no_cache:
        return None
    return SingularVectorCache(args.cache or os.environ.get("VIRFUSE_CACHE") or DEFAULT_CACHE)


def _check_level(level: int, cap: int) -> None:
    if level > cap:
        raise UsageError(f"level {level} exceeds --level-cap {cap}")


def cmd_singular(args, cache):
    if args.p < 1 or args.q < 1:
        raise UsageError("--p and --q must be positive")
    _check_level(args.p * args.q, args.level_cap)
    op = singular_vector(args.p, args.q, args.t, level_cap=args.level_cap, cache=cache)
    c, h = kac_weight(args.p, args.q, args.t)
    doc = {
        "p": args.p,
        "q": args.q,
        "t": rational_str(args.t),
        "c": rational_str(c),
        "h": rational_str(h),
        "terms": op.to_json(),
    }
    if args.format == "table":
        lines = [f"O_{{{args.p},{args.q}}}(t={doc['t']})  c={doc['c']}  h={doc['h']}", f"{'partition':<24} coeff"]
        lines += [f"{str(r['partition']):<24} {r['coeff']}" for r in doc["terms"]]
        return EXIT_OK, "\n".join(lines)
    return EXIT_OK, doc


def cmd_project(args, cache):
    if args.p < 1 or args.q < 1:
        raise UsageError("--p and --q must be positive")
    _check_level(args.p * args.q, args.level_cap)
    op = singular_vector(args.p, args.q, args.t, level_cap=args.level_cap, cache=cache)
    params = DensityParams(args.lam, Poly.linear(args.mu_x, args.mu_const))
    f = project_f(op, params)
    rhs = ff_squared(args.p, args.q, args.t, params)
    doc = {
        "p": args.p,
        "q": args.q,
        "t": rational_str(args.t),
        "lambda": rational_str(args.lam),
        "mu": params.mu.to_json(),
        "f": f.to_json(),
        "ff_squared": rhs.to_json(),
        "identity": f * f == rhs,
    }
    if args.format == "table":
        text = f"f = {f}\nf^2 == FF product: {doc['identity']}"
        return (EXIT_OK if doc["identity"] else EXIT_FAILED), text
    return (EXIT_OK if doc["identity"] else EXIT_FAILED), doc


def cmd_generator(args, cache):
    if args.m < 2 or args.n < 2:
        raise UsageError("--m and --n must be at least 2")
    _check_level(args.m - 1, args.level_cap)
    g = fusion_generator(args.m, args.n, args.t, level_cap=args.level_cap, cache=cache)
    if args.format == "table":
        labels = ", ".join(f"{i}^{k}" if k > 1 else str(i) for i, k in sorted(g.labels.items()))
        return EXIT_OK, f"gen = {g.gen}\nlabels = {{{labels}}}\ncomplete = {g.complete}"
    return EXIT_OK, g.to_json()


def cmd_fusion(args, cache):
    if args.max_label < 2:
        raise UsageError("--max-label must be at least 2")
    _check_level(args.max_label - 1, args.level_cap)
    table = fusion_table(args.max_label, args.t, level_cap=args.level_cap, cache=cache, jobs=args.jobs)
    if args.format == "table":
        return EXIT_OK, table.to_text()
    return EXIT_OK, table.to_json()


def cmd_verify(args, cache):
    if args.max_level < 1 or args.max_label < 3:
        raise UsageError("--max-level must be >= 1 and --max-label >= 3")
    _check_level(max(args.max_level, args.max_label - 1), args.level_cap)
    results = run_suites(
        args.suite,
        max_level=args.max_level,
        max_label=args.max_label,
        seed=args.seed,
        cache=cache,
        jobs=args.jobs,
    )
    status = EXIT_OK if all(r.ok for r in results) else EXIT_FAILED
    if args.format == "table":
        lines = []
        for r in results:
            lines.append(r.summary())
            lines += [f"  FAIL {f}" for f in r.failures]
        return status, "\n".join(lines)
    return status, {"seed": args.seed, "suites": [r.to_json() for r in results]}


COMMANDS = {
    "singular": cmd_singular,
    "project": cmd_project,
    "generator": cmd_generator,
    "fusion": cmd_fusion,
    "verify": cmd_verify,
}


def execute(argv: Sequence[str]) -> tuple[int, str]:
    """Run one command; returns (exit status, rendered output)."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), ""
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.jobs < 1:
        return EXIT_USAGE, "error: --jobs must be at least 1"
    try:
        status, out = COMMANDS[args.command](args, resolve_cache(args))
    except (UsageError, ValueError) as exc:
        return EXIT_USAGE, f"error: {exc}"
    except DegenerateKernel as exc:
        return EXIT_FAILED, f"error: {exc}"
    if not isinstance(out, str):
        out = json.dumps(out, indent=1)
    return status, out


def main(argv: Optional[Sequence[str]] = None) -> int:
    status, out = execute(sys.argv[1:] if argv is None else argv)
    if out:
        stream = sys.stderr if status == EXIT_USAGE else sys.stdout
        print(out, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
