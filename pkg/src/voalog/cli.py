"""Command line interface: ``voalog verify | basis | apply``."""
from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, VoalogError

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
# (p, p') used when the options are omitted
SUITE_DEFAULTS = {
    "triplet": (2, 1),
    "wpp": (3, 2),
    "super": (3, 1),
    "affine": (2, 1),
    "logint": (2, 1),
    "all": (2, 1),
}


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors with exit status 2, matching config errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def build_parser() -> argparse.ArgumentParser:
    from .suites import SUITES

    ap = _Parser(prog="voalog", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification suite and write a report")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--p", type=int, default=None, help="default depends on the suite (see README)")
    v.add_argument("--pprime", type=int, default=None)
    v.add_argument("--cutoff", type=int, default=6)
    v.add_argument("--report", default=None, help="output path (default: stdout)")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--cocycle", default="standard")
    v.add_argument("--jobs", type=int, default=None, help="worker processes (fallback: VOALOG_JOBS, then 1)")
    v.add_argument("--timing", action="store_true", help="include wall times (breaks byte-stability)")

    b = sub.add_parser("basis", help="dump the basis of one graded component")
    b.add_argument("--sector", required=True, help='e.g. "triplet(2):1/2", "super(3,1):0", "affine:-3,1"')
    b.add_argument("--weight", required=True)
    b.add_argument("--charge", default=None, help="delta-charge (affine only)")

    a = sub.add_parser("apply", help="evaluate one mode descriptor on an element")
    a.add_argument("--op", required=True, help="descriptor JSON")
    a.add_argument("--to", required=True, help="element JSON")
    return ap


def _cmd_verify(args) -> int:
    from .suites import SuiteConfig, default_jobs, render_report, run_suite

    dp, dpp = SUITE_DEFAULTS[args.suite]
    p = args.p if args.p is not None else dp
    pprime = args.pprime if args.pprime is not None else dpp
    jobs = args.jobs if args.jobs is not None else default_jobs()
    cfg = SuiteConfig(args.suite, p, pprime, args.cutoff, args.cocycle, jobs)
    cfg.validate()
    results = run_suite(cfg)
    text = render_report(cfg, results, args.format, timing=args.timing)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in results:
        print(f"{r.status.upper():7s} {r.id}", file=sys.stderr)
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


def parse_sector(expr: str):
    """``triplet(p[,p']):r``, ``super(p,p'):r`` or ``affine:a,b`` (coordinates over the generators)."""
    from .errors import InvalidParameters
    from .lattice import Sector, affine, frac, super_ns, triplet

    if ":" not in expr:
        raise ConfigError(f"sector expression {expr!r} needs the form case:coordinates")
    head, coords = expr.split(":", 1)
    head = head.strip()
    try:
        pts = tuple(frac(x) for x in coords.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad coordinates {coords!r}") from exc
    try:
        if head == "affine":
            cfg = affine()
        elif head.startswith(("triplet(", "super(")) and head.endswith(")"):
            name, params = head[:-1].split("(", 1)
            nums = [int(x) for x in params.split(",")]
            cfg = triplet(*nums) if name == "triplet" else super_ns(*nums)
        else:
            raise ConfigError(f"unknown case {head!r}")
    except (InvalidParameters, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if len(pts) != cfg.rank:
        raise ConfigError(f"{head} needs {cfg.rank} coordinate(s)")
    return Sector(cfg, pts)


def _cmd_basis(args) -> int:
    from .fock import basis_to_json, graded_basis, weight_of
    from .lattice import fmt_q, frac

    sec = parse_sector(args.sector)
    charge = frac(args.charge) if args.charge is not None else None
    if sec.config.case_tag == "affine" and charge is None:
        raise ConfigError("affine components need --charge (weight spaces are infinite otherwise)")
    basis = graded_basis(sec, frac(args.weight), charge)
    doc = {
        "sector": [fmt_q(x) for x in sec.rep],
        "weight": fmt_q(frac(args.weight)),
        "dim": len(basis),
        "basis": [basis_to_json(b) for b in basis],
    }
    assert all(weight_of(sec.config, b) == frac(args.weight) for b in basis)
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _cmd_apply(args) -> int:
    from .descriptors import apply_json

    try:
        op = json.loads(args.op)
        to = json.loads(args.to)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    out = apply_json(op, to)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "basis":
            return _cmd_basis(args)
        return _cmd_apply(args)
    except ConfigError as exc:
        print(f"voalog: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VoalogError as exc:
        print(f"voalog: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
