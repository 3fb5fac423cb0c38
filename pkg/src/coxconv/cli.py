"""
Command-line front end.

Exit codes: 0 success, 1 usage error, 2 theorem violation or failed sweep.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .bruhat import bruhat_interval, bruhat_leq
from .convolution import demazure, exhaustion_report
from .coxeter import CoxeterMatrix, CoxeterSystem, format_word
from .errors import CoxeterError, TheoremViolation
from .verify import SweepConfig, exhaustion_sweep, verify_coxeter, verify_geometry

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
JOBS_ENV = "COXCONV_JOBS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _add_system_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", dest="kind", help="A, B, D or I2")
    p.add_argument("--rank", type=int)
    p.add_argument("--m", help="I2 parameter (integer or 'inf')")
    p.add_argument("--matrix", help='Coxeter matrix as JSON, e.g. "[[1,3],[3,1]]"')
    p.add_argument("--system", help="system JSON, inline or @path")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--output", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coxconv", description="Convolution sets in Coxeter groups")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("conv", help="convolution set x1 * x2 with its exhaustion report")
    _add_system_args(p)
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)
    _add_output_args(p)

    p = sub.add_parser("demazure", help="group and Demazure products")
    _add_system_args(p)
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)
    _add_output_args(p)

    p = sub.add_parser("bruhat", help="Bruhat comparison and interval")
    _add_system_args(p)
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    _add_output_args(p)

    p = sub.add_parser("verify-coxeter", help="property sweep over a finite Coxeter group")
    _add_system_args(p)
    p.add_argument("--cap", type=int, default=1200,
                   help="largest group order swept exhaustively (default 1200)")
    p.add_argument("--samples", type=int, default=20_000, help="pair samples above the cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=None)
    _add_output_args(p)

    p = sub.add_parser("verify-geometry", help="flag-variety sweeps over F_p^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_output_args(p)

    p = sub.add_parser("report", help="exhaustion reports for every pair of a finite group")
    _add_system_args(p)
    p.add_argument("--cap", type=int, default=20_000, help="maximum number of pairs")
    _add_output_args(p)
    return parser


def _system(args: argparse.Namespace) -> CoxeterSystem:
    if args.system:
        text = args.system
        if text.startswith("@"):
            text = Path(text[1:]).read_text(encoding="utf-8")
        return CoxeterSystem.from_json(text)
    if args.matrix:
        return CoxeterSystem(CoxeterMatrix.from_json({"matrix": json.loads(args.matrix)}))
    if args.kind:
        return CoxeterSystem.from_type(args.kind, args.rank, args.m)
    raise UsageError("give --type/--rank, --matrix or --system")


def _jobs(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        raise UsageError(f"{JOBS_ENV} must be an integer") from None


def _cell(word: str) -> str:
    return word if word else "e"


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows
    ) + "\n"


def _set_cell(words: list[str]) -> str:
    return "{" + ", ".join(_cell(w) for w in words) + "}"


def _render_report(d: dict) -> str:
    rows = [("field", "value")]
    for key in ("x1", "x2", "min", "max"):
        rows.append((key, _cell(d[key])))
    for key in ("set", "interval", "missing"):
        rows.append((key, _set_cell(d[key])))
    return _table(rows)


def _render_tallies(title: str, tallies: dict, extra: list[tuple[str, str]]) -> str:
    rows = [("property", "checked", "failed", "status")]
    for name, t in tallies.items():
        rows.append((name, str(t["checked"]), str(t["failed"]), t["status"]))
    head = "".join(f"{k}: {v}\n" for k, v in [("summary", title)] + extra)
    return head + _table(rows)


def _emit(args: argparse.Namespace, payload: dict, table: str) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n" if args.format == "json" else table
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_conv(args: argparse.Namespace) -> int:
    W = _system(args)
    report = exhaustion_report(W.normal_form(args.x1), W.normal_form(args.x2)).to_dict()
    _emit(args, report, _render_report(report))
    return EXIT_OK


def cmd_demazure(args: argparse.Namespace) -> int:
    W = _system(args)
    x1, x2 = W.normal_form(args.x1), W.normal_form(args.x2)
    out = {
        "x1": format_word(x1.word),
        "x2": format_word(x2.word),
        "product": format_word((x1 * x2).word),
        "demazure": format_word(demazure(x1, x2).word),
    }
    _emit(args, out, _table([("field", "value")] + [(k, _cell(v)) for k, v in out.items()]))
    return EXIT_OK


def cmd_bruhat(args: argparse.Namespace) -> int:
    W = _system(args)
    u, w = W.normal_form(args.u), W.normal_form(args.w)
    out = {"u": format_word(u.word), "w": format_word(w.word), "leq": bruhat_leq(u, w)}
    if W.is_finite:
        out["interval"] = bruhat_interval(u, w).words()
    rows = [("field", "value"), ("u", _cell(out["u"])), ("w", _cell(out["w"])),
            ("leq", str(out["leq"]).lower())]
    if "interval" in out:
        rows.append(("interval", _set_cell(out["interval"])))
    _emit(args, out, _table(rows))
    return EXIT_OK


def cmd_verify_coxeter(args: argparse.Namespace) -> int:
    W = _system(args)
    if args.cap <= 0 or args.samples <= 0:
        raise UsageError("caps must be positive")
    cfg = SweepConfig(full_sweep_max_order=args.cap, pair_samples=args.samples,
                      seed=args.seed, jobs=_jobs(args.jobs))
    summary = verify_coxeter(W, cfg)
    table = _render_tallies(
        "pass" if summary["passed"] else "FAIL", summary["properties"],
        [("order", str(summary["order"])), ("pairs", str(summary["pairs"]))])
    _emit(args, summary, table)
    return EXIT_OK if summary["passed"] else EXIT_VIOLATION


def cmd_verify_geometry(args: argparse.Namespace) -> int:
    summary = verify_geometry(args.n, args.p, seed=args.seed)
    table = _render_tallies(
        "pass" if summary["passed"] else "FAIL", summary["checks"],
        [("n", str(args.n)), ("p", str(args.p)), ("flags", str(summary["flags"]))])
    _emit(args, summary, table)
    return EXIT_OK if summary["passed"] else EXIT_VIOLATION


def cmd_report(args: argparse.Namespace) -> int:
    W = _system(args)
    if args.cap <= 0:
        raise UsageError("caps must be positive")
    out = exhaustion_sweep(W, max_pairs=args.cap)
    rows = [("x1", "x2", "missing")] + [
        (_cell(r["x1"]), _cell(r["x2"]), _set_cell(r["missing"])) for r in out["not_exhausted"]
    ]
    head = f"order: {out['order']}\npairs: {out['pairs']}\nexhausted: {out['exhausted']}\n"
    _emit(args, out, head + (_table(rows) if len(rows) > 1 else ""))
    return EXIT_OK


COMMANDS = {
    "conv": cmd_conv,
    "demazure": cmd_demazure,
    "bruhat": cmd_bruhat,
    "verify-coxeter": cmd_verify_coxeter,
    "verify-geometry": cmd_verify_geometry,
    "report": cmd_report,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"coxconv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as exc:
        print(f"coxconv: theorem violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (CoxeterError, ValueError, OSError) as exc:
        print(f"coxconv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
