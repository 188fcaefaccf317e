"""``dicksonhit`` command line.

Every command can emit one JSON record ``{command, inputs, status, data,
timing}``; ``timing`` stays null unless ``--timing`` is given so that records
are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any

from ..cache import cache_clear, cache_info, default_cache_dir
from ..dickson import dickson_degree, dickson_q, enumerate_dickson_monomials
from ..f2poly import Polynomial
from ..hitsolver import HitSolver, ResourceCeilingExceeded, SolverLimits, verify_certificate
from ..verify.scan import main_theorem_scan
from ..verify.suites import DEFAULT_SEED, SUITES, run_suite
from .grammar import EvalError, ParseError, evaluate, parse

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CEILING = 3


class UsageError(Exception):
    pass


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    lim = SolverLimits()
    p.add_argument("--vars", type=int, default=default(None), help="number of variables")
    p.add_argument("--json", action="store_true", default=default(False), help="emit a JSON record")
    p.add_argument("--seed", type=int, default=default(DEFAULT_SEED), help="seed for randomized suites")
    p.add_argument("--limit-columns", type=int, default=default(lim.max_columns))
    p.add_argument("--limit-generators", type=int, default=default(lim.max_generators))
    p.add_argument("--limit-degree", type=int, default=default(lim.max_degree))
    p.add_argument("--cache-dir", default=default(None), help="hit-space cache directory")
    p.add_argument("--no-cache", action="store_true", default=default(False))
    p.add_argument("--workers", type=int, default=default(1))
    p.add_argument("--timing", action="store_true", default=default(False), help="include timings")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicksonhit", description="Hit problem computations for Dickson invariants."
    )
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")

    p = sub.add_parser("hit", parents=[common], help="decide whether an expression is hit")
    p.add_argument("expr")
    p.add_argument("--certificate", action="store_true", help="print the certificate")
    p.add_argument("--witness", action="store_true", help="print the non-hit residual")
    p.add_argument("--max-sq", type=int, default=None, help="only use Sq^i with i <= K")

    p = sub.add_parser("dickson", parents=[common], help="Dickson invariants")
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--degree", type=int)
    group.add_argument("--list", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])

    p = sub.add_parser("scan", parents=[common], help="hit-test every Dickson monomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the cache")
    p.add_argument("action", choices=["info", "clear"])
    return parser


def _solver(args) -> HitSolver:
    limits = SolverLimits(args.limit_columns, args.limit_generators, args.limit_degree)
    return HitSolver(limits, workers=args.workers, cache_dir=_cache_dir(args))


def _cache_dir(args):
    if args.no_cache:
        return None
    return args.cache_dir if args.cache_dir is not None else default_cache_dir()


def _need_vars(args) -> int:
    if args.vars is None:
        raise UsageError("--vars is required: the variable count is never inferred")
    if args.vars < 0:
        raise UsageError("--vars must be non-negative")
    return args.vars


def _poly(args) -> Polynomial:
    return evaluate(parse(args.expr), _need_vars(args))


def certificate_text(terms) -> str:
    """``Sq(i){u} + ...``, accepted back by ``eval``."""
    if not terms:
        return "0"
    return " + ".join(f"Sq({i}){{{u}}}" for i, u in terms)


# commands: each returns (status, data, text lines, exit code)


def cmd_eval(args):
    f = _poly(args)
    data = {"polynomial": str(f), "degree": f.degree, "terms": len(f)}
    return "ok", data, [str(f)], EXIT_OK


def cmd_hit(args):
    f = _poly(args)
    result = _solver(args).is_hit(f, max_sq=args.max_sq)
    if result.hit:
        ok = verify_certificate(f, result)
        data: dict[str, Any] = {"hit": True, "certificate_verified": ok}
        lines = ["Hit"]
        if args.certificate:
            data["certificate"] = [[i, str(u)] for i, u in result.terms]
            data["certificate_expression"] = certificate_text(result.terms)
            lines.append(data["certificate_expression"])
        if not ok:
            lines.append("certificate failed verification")
            return "certificate-failure", data, lines, EXIT_VIOLATION
        return "hit", data, lines, EXIT_OK
    data = {"hit": False}
    lines = ["NotHit"]
    if args.witness:
        residual = result.residual_polynomial
        data["witness"] = {"residual": str(residual), "degree": residual.degree}
        lines.append(str(residual))
    return "not-hit", data, lines, EXIT_OK


def cmd_dickson(args):
    n = args.n
    if not 1 <= n <= 6:
        raise UsageError("--n must be between 1 and 6")
    if args.degree is not None:
        specs = enumerate_dickson_monomials(n, args.degree)
        labels = [s.label() for s in specs]
        data = {"n": n, "degree": args.degree, "monomials": labels}
        return "ok", data, labels or ["(none)"], EXIT_OK
    gens = []
    lines = []
    for s in range(n):
        q = dickson_q(n, s)
        gens.append({"s": s, "degree": dickson_degree(n, s), "terms": len(q), "polynomial": str(q)})
        lines.append(f"Q({n},{s})  degree {dickson_degree(n, s)}  {len(q)} terms")
        if args.list:
            lines.append(f"  {q}")
    return "ok", {"n": n, "generators": gens}, lines, EXIT_OK


def cmd_verify(args):
    reports = run_suite(args.suite, seed=args.seed, solver=_solver(args))
    counts: dict[str, int] = {}
    for r in reports:
        counts[r.status] = counts.get(r.status, 0) + 1
    failed = [r for r in reports if not r.passed]
    data = {
        "suite": args.suite,
        "seed": args.seed,
        "summary": dict(sorted(counts.items())),
        "reports": [r.to_record(with_timing=args.timing) for r in reports],
    }
    lines = [f"{r.case} {json.dumps(r.params, sort_keys=True)} {r.status}" for r in reports]
    lines.append(f"{len(reports)} checks, {len(failed)} failed")
    status = "fail" if failed else "pass"
    return status, data, lines, EXIT_VIOLATION if failed else EXIT_OK


def cmd_scan(args):
    report = main_theorem_scan(args.n, args.dmax, solver=_solver(args))
    record = report.to_record(with_timing=args.timing)
    lines = []
    for row in report.degrees:
        if row.get("ceiling"):
            lines.append(f"degree {row['degree']}: resource ceiling ({row['reason']})")
        else:
            lines.append(
                f"degree {row['degree']}: {row['hit']}/{row['monomials']} hit, "
                f"{row['verified']} verified, rank {row['rank']}/{row['columns']}"
            )
            for label in row["not_hit"]:
                lines.append(f"  not hit: {label}")
    lines.append(f"status: {report.status} (expected {record['expected']})")
    if report.status == "incomplete":
        code = EXIT_CEILING
    elif report.status == record["expected"]:
        code = EXIT_OK
    else:
        code = EXIT_VIOLATION
    return report.status, record, lines, code


def cmd_cache(args):
    directory = args.cache_dir if args.cache_dir is not None else default_cache_dir()
    if args.action == "info":
        entries = cache_info(directory) if _exists(directory) else []
        lines = [f"{e['file']}  {e['bytes']} bytes" for e in entries] or ["(empty)"]
        return "ok", {"directory": str(directory), "entries": entries}, lines, EXIT_OK
    removed = cache_clear(directory) if _exists(directory) else 0
    return "ok", {"directory": str(directory), "removed": removed}, [f"removed {removed} files"], EXIT_OK


def _exists(directory) -> bool:
    return Path(directory).is_dir()


COMMANDS = {
    "eval": cmd_eval,
    "hit": cmd_hit,
    "dickson": cmd_dickson,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "cache": cmd_cache,
}

_INPUT_KEYS = {
    "eval": ("expr", "vars"),
    "hit": ("expr", "vars", "max_sq"),
    "dickson": ("n", "degree", "list"),
    "verify": ("suite", "seed"),
    "scan": ("n", "dmax"),
    "cache": ("action",),
}


def _emit(args, status: str, data, lines, elapsed: float | None) -> None:
    if args.json:
        record = {
            "command": args.command,
            "inputs": {k: getattr(args, k, None) for k in _INPUT_KEYS[args.command]},
            "status": status,
            "data": data,
            "timing": round(elapsed, 3) if args.timing and elapsed is not None else None,
        }
        print(json.dumps(record, sort_keys=True))
    else:
        for line in lines:
            print(line)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        status, data, lines, code = COMMANDS[args.command](args)
    except (ParseError, EvalError, UsageError) as exc:
        _emit(args, "usage-error", {"error": str(exc)}, [], None)
        print(f"dicksonhit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCeilingExceeded as exc:
        _emit(args, "resource-ceiling", {"error": str(exc)}, [f"resource ceiling: {exc}"], None)
        return EXIT_CEILING
    _emit(args, status, data, lines, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
