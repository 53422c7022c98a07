"""Command-line front end: ``ramanujan-verify <list|verify|sweep|zeta|eta>``.

Exit codes: 0 pass, 1 numerical failure (residual above tolerance or a series
that did not converge), 2 usage error (bad flags, unknown id, invalid input),
3 hypothesis violation (or an instance sitting on a pole / degenerate point).
JSON output uses sorted keys and, unless ``--timing`` is given, no wall-clock
fields, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import fnmatch
import json
import os
import random
import sys
from dataclasses import replace
from typing import Sequence

from mpmath import mp

from .errors import (DegenerateInput, DomainError, NotConverged, PoleError, RamanujanVerifyError, UnknownIdentity,
                     UsageError)
from .identities.params import VerificationReport
from .identities.registry import get_entry, list_entries, registry_ids, registry_verify
from .numeric import PrecisionContext, complex_to_json, format_number, parse_scalar_expression
from .special import EtaParams, eta, gen_eta_residual, zeta_even, zeta_odd

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3
DEFAULT_DIGITS = 30
MIN_DIGITS = 8


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors raised (exit code 2 is applied by :func:`main`)."""

    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def _digits(value: int | None) -> int:
    if value is None:
        env = os.environ.get("RAMV_DIGITS", "").strip()
        if not env:
            return DEFAULT_DIGITS
        if not env.isdigit():
            raise UsageError(f"RAMV_DIGITS must be a positive integer, got {env!r}")
        value = int(env)
    if value < MIN_DIGITS:
        raise UsageError(f"--digits must be at least {MIN_DIGITS}, got {value}")
    return value


def _context(args) -> PrecisionContext:
    ctx = PrecisionContext(target_digits=_digits(args.digits))
    if args.max_terms is not None:
        if args.max_terms < 8:
            raise UsageError("--max-terms must be at least 8")
        ctx = replace(ctx, max_terms_direct=args.max_terms,
                      max_terms_accelerated=min(ctx.max_terms_accelerated, args.max_terms))
    return ctx


def _parse_value(text: str):
    """JSON when it parses (lists, numbers, {"re","im"} objects), otherwise the raw expression string."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _overrides(args) -> dict:
    """Parameters from ``--params-file`` updated by every ``--set K=V`` (inline wins)."""
    out: dict = {}
    if args.params_file:
        try:
            with open(args.params_file, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read --params-file: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("--params-file must contain a JSON object")
        out.update(loaded)
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--set expects K=V, got {item!r}")
        out[key.strip()] = _parse_value(value)
    return out


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _report_exit(report: VerificationReport) -> int:
    if not report.hypothesis.ok:
        return EXIT_HYPOTHESIS
    return EXIT_PASS if report.passed else EXIT_FAIL


def _num(x, digits: int) -> str:
    return "-" if x is None else mp.nstr(x, digits)


def _complex_text(z, digits: int) -> str:
    """Real values print as a real number, complex ones as ``re + im i``."""
    if z is None:
        return "-"
    if z.imag == 0:
        return mp.nstr(z.real, digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{mp.nstr(z.real, digits)} {sign} {mp.nstr(abs(z.imag), digits)}i"


def _report_text(report: VerificationReport, timing: bool) -> str:
    d = report.target_digits
    lines = [
        f"identity      {report.identity_id}",
        f"pass          {report.passed}",
        f"lhs           {_complex_text(report.lhs, d)}",
        f"rhs           {_complex_text(report.rhs, d)}",
        f"abs_residual  {_num(report.abs_residual, 6)}",
        f"rel_residual  {_num(report.rel_residual, 6)}",
        f"tolerance     {mp.nstr(report.tolerance, 3)}",
        f"decay_class   {report.decay_class}",
        f"working       {report.working_digits} digits",
    ]
    if timing and report.elapsed_ms is not None:
        lines.append(f"elapsed_ms    {report.elapsed_ms:.3f}")
    hyp = report.hypothesis
    lines.append(f"hypotheses    {'ok' if hyp.ok else 'VIOLATED'} (checked up to n = {hyp.checked_up_to})")
    for v in hyp.violations:
        witness = ", ".join(f"{k}={getattr(v, k)}" for k in ("n", "k", "i", "j") if getattr(v, k) is not None)
        lines.append(f"  - {v.condition}" + (f" [{witness}]" if witness else "") + (f": {v.detail}" if v.detail else ""))
    for s in report.series_stats:
        lines.append(f"  series {s.label or '-'}: {s.strategy}, {s.terms_used} terms, "
                     f"tail {mp.nstr(s.tail_estimate, 3)}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _emit_report(report: VerificationReport, args) -> int:
    if args.output == "json":
        _emit_json(report.to_json(args.timing))
    else:
        print(_report_text(report, args.timing))
    return _report_exit(report)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_list(args) -> int:
    entries = list_entries()
    if args.output == "json":
        _emit_json(entries)
        return EXIT_PASS
    for e in entries:
        defaults = ", ".join(f"{k}={json.dumps(v, ensure_ascii=False)}" for k, v in e["defaults"].items())
        tags = " [fixed]" if e["fixed"] else ""
        note = f" ({e['note']})" if e["note"] else ""
        print(f"{e['id']:<10} {e['title']}{note}{tags}\n{'':<10} defaults: {defaults}")
    return EXIT_PASS


def cmd_verify(args) -> int:
    ctx = _context(args)
    overrides = _overrides(args)
    get_entry(args.id)  # unknown id -> exit 2 before any parsing
    report = registry_verify(args.id, overrides or None, ctx)
    return _emit_report(report, args)


def _sweep_row(identity_id: str, ctx: PrecisionContext) -> tuple[dict, VerificationReport | None]:
    try:
        report = registry_verify(identity_id, None, ctx)
    except RamanujanVerifyError as exc:
        return {"id": identity_id, "pass": False, "error": f"{type(exc).__name__}: {exc}"}, None
    return {"id": identity_id, "pass": report.passed}, report


def cmd_sweep(args) -> int:
    ctx = _context(args)
    ids = sorted(i for i in registry_ids() if fnmatch.fnmatchcase(i, args.filter))
    if not ids:
        print(f"warning: no registry id matches {args.filter!r}", file=sys.stderr)
    # sequential: each entry is a few seconds at most and the order is fixed by id
    rows = [_sweep_row(i, ctx) for i in ids]
    ok = all(row["pass"] for row, _ in rows)
    if args.output == "json":
        out = []
        for row, report in rows:
            out.append(report.to_json(args.timing) if report is not None
                       else {"identity_id": row["id"], "pass": False, "error": row["error"]})
        _emit_json(out)
    else:
        print(f"{'id':<10} {'pass':<5} {'rel_residual':<12} {'terms':>7} {'ms':>9}")
        for row, report in rows:
            if report is None:
                print(f"{row['id']:<10} {'False':<5} {row['error']}")
                continue
            terms = sum(s.terms_used for s in report.series_stats)
            ms = f"{report.elapsed_ms:9.1f}" if args.timing and report.elapsed_ms is not None else f"{'-':>9}"
            print(f"{row['id']:<10} {str(report.passed):<5} {_num(report.rel_residual, 3):<12} {terms:>7} {ms}")
        print(f"{sum(r['pass'] for r, _ in rows)}/{len(rows)} passed")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_zeta(args) -> int:
    ctx = _context(args)
    s = args.s
    if s < 2:
        raise UsageError(f"zeta(s) needs an integer s >= 2 (s = 1 is the pole), got {s}")
    with ctx.workdps():
        if s % 2 == 0:
            value, method = zeta_even(s, ctx), "euler_bernoulli"
        else:
            value, method = zeta_odd(s, ctx), "ramanujan_two_scale"
        if args.output == "json":
            _emit_json({"s": s, "method": method, "digits": ctx.target_digits,
                        "value": format_number(value, ctx.target_digits)})
        else:
            print(mp.nstr(value, ctx.target_digits))
    return EXIT_PASS


def _scalar_arg(text: str, name: str):
    try:
        return parse_scalar_expression(text)
    except (DomainError, ValueError, SyntaxError, TypeError) as exc:
        raise UsageError(f"cannot parse {name}={text!r}: {exc}") from exc


def cmd_eta(args) -> int:
    ctx = _context(args)
    if args.tau is not None:
        if any(v is not None for v in (args.w, args.x1, args.x2)):
            raise UsageError("give either --tau or --w/--x1/--x2, not both")
        with ctx.workdps():
            tau = _scalar_arg(args.tau, "tau")
            if tau.imag <= 0:
                raise UsageError(f"tau must lie in the upper half plane (Im tau > 0), got {args.tau!r}")
            value = eta(tau, ctx)
            if args.output == "json":
                _emit_json({"tau": complex_to_json(tau, ctx.target_digits),
                            "eta": complex_to_json(value, ctx.target_digits)})
            else:
                print(_complex_text(value, ctx.target_digits))
        return EXIT_PASS
    if any(v is None for v in (args.w, args.x1, args.x2)):
        raise UsageError("eta needs --tau, or all of --w, --x1 and --x2")
    with ctx.workdps():
        values = [_scalar_arg(getattr(args, k), k) for k in ("w", "x1", "x2")]
        try:
            params = EtaParams(*values)
        except DomainError as exc:
            raise UsageError(str(exc)) from exc
        report = gen_eta_residual(params, ctx, timing=args.timing)
    return _emit_report(report, args)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=None,
                        help=f"target digits (>= {MIN_DIGITS}; default $RAMV_DIGITS or {DEFAULT_DIGITS})")
    common.add_argument("--max-terms", type=int, default=None, help="term budget for direct summation")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--params-file", default=None, help="JSON object of parameter overrides")
    common.add_argument("--set", action="append", metavar="K=V",
                        help="parameter override (JSON value or expression); repeatable, overrides --params-file")
    common.add_argument("--seed", type=int, default=0, help="seed for any randomized step (default 0)")
    common.add_argument("--timing", action="store_true", help="include wall-clock times (breaks byte-identity)")

    parser = _Parser(prog="ramanujan-verify",
                     description="High-precision verification of partial-fraction and Lambert-series identities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("list", parents=[common], help="list registry entries").set_defaults(func=cmd_list)
    p = sub.add_parser("verify", parents=[common], help="verify one registry entry")
    p.add_argument("id")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("sweep", parents=[common], help="verify every entry matching a glob")
    p.add_argument("filter", nargs="?", default="*")
    p.set_defaults(func=cmd_sweep)
    p = sub.add_parser("zeta", parents=[common], help="zeta(s) for an integer s >= 2")
    p.add_argument("s", type=int)
    p.set_defaults(func=cmd_zeta)
    p = sub.add_parser("eta", parents=[common], help="eta(tau), or the generalized eta transformation report")
    p.add_argument("--tau", default=None)
    p.add_argument("--w", default=None)
    p.add_argument("--x1", default=None)
    p.add_argument("--x2", default=None)
    p.set_defaults(func=cmd_eta)
    return parser


_VALUE_OPTIONS = ("--tau", "--w", "--x1", "--x2")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """``--tau -i`` -> ``--tau=-i`` so that argparse does not read a negative value as a flag."""
    out: list[str] = []
    items = list(argv)
    i = 0
    while i < len(items):
        if items[i] in _VALUE_OPTIONS and i + 1 < len(items) and items[i + 1].startswith("-") \
                and not items[i + 1].startswith("--"):
            out.append(f"{items[i]}={items[i + 1]}")
            i += 2
            continue
        out.append(items[i])
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    try:
        argv = sys.argv[1:] if argv is None else argv
        args = build_parser().parse_args(_join_negative_values(argv))
        random.seed(args.seed)
        mp.dps = 15
        return args.func(args)
    except (UsageError, UnknownIdentity) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (PoleError, DegenerateInput, DomainError) as exc:
        print(f"hypothesis violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except RamanujanVerifyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
