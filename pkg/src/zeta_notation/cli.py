"""``zeta`` command line: evaluate, decompose, compare, transform, classify, plot.

Machine formats (csv, json) render floats with 17 significant digits so a
value read back is bit-identical; the table format uses 6.  Exit status is
0 on success, 1 on domain errors (parse, evaluation, non-real complexity)
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import functools
import json
import math
import os
import sys
from typing import Sequence

from .asymptote import (
    Family,
    Thresholds,
    TransformParams,
    check_big_o,
    classify_zeta,
    compare_modulus,
    transform_to_real,
)
from .errors import (
    NegativeRealBranch,
    NonRealComplexity,
    ParseError,
    ZeroAlpha,
    ZetaError,
)
from .expr import EvalSettings, evaluate
from .parser import parse, parse_schedule
from .printer import print_canonical
from .zeta import PhaseKind, PolarSample, SampleFailure, phase_limit, trajectory

DEFAULT_SCHEDULE_TEXT = "geometric:2:2:40"
SCHEDULE_ENV = "ZETA_DEFAULT_SCHEDULE"

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Domain(ZetaError):
    pass


class _SourceError(Exception):
    """A ParseError together with the text it points into."""

    def __init__(self, err: ParseError, source: str, label: str):
        super().__init__(str(err))
        self.err, self.source, self.label = err, source, label


# ---------------------------------------------------------------------------
# number and row rendering


def fmt_machine(x) -> str:
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x + 0.0, ".17g")


def fmt_human(x) -> str:
    if isinstance(x, int):
        return str(x)
    if math.isinf(x) or math.isnan(x):
        return fmt_machine(x)
    return format(x + 0.0, ".6g")


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, float) and not math.isfinite(v):
        return json.dumps(fmt_machine(v))
    return fmt_machine(v)


def render_rows(columns: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join("" if v is None else v if isinstance(v, str) else fmt_machine(v)
                                  for v in row))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        if not rows:
            return "[]\n"
        objs = []
        for row in rows:
            fields = ", ".join(f"{json.dumps(c)}: {_json_value(v)}" for c, v in zip(columns, row))
            objs.append("  {" + fields + "}")
        return "[\n" + ",\n".join(objs) + "\n]\n"
    cells = [list(columns)] + [
        ["" if v is None else v if isinstance(v, str) else fmt_human(v) for v in row] for row in rows
    ]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells)


# ---------------------------------------------------------------------------
# argument handling


def _parse_expr(text: str, label: str = "expression"):
    try:
        return parse(text)
    except ParseError as err:
        raise _SourceError(err, text, label) from None


def _schedule(args):
    text = args.schedule or os.environ.get(SCHEDULE_ENV) or DEFAULT_SCHEDULE_TEXT
    try:
        sched = parse_schedule(text)
    except ParseError as err:
        raise _SourceError(err, text, "schedule") from None
    if args.tail_window is not None:
        if args.tail_window < 1:
            raise _Usage("--tail-window must be >= 1")
        sched = sched.with_tail_window(args.tail_window)
    return sched


def _settings(args) -> EvalSettings:
    try:
        return EvalSettings(log_base_for_bare_log=args.log_base)
    except ValueError as err:
        raise _Usage(str(err)) from None


def _phase_text(limit) -> str:
    if limit.kind is PhaseKind.CONVERGES:
        return f"phase→{fmt_human(limit.value)}"
    return "phase oscillates" if limit.kind is PhaseKind.OSCILLATES else "phase undetermined"


def _samples(expr, sched, settings, workers=None) -> list[PolarSample]:
    out = []
    for s in trajectory(expr, sched, settings, workers=workers):
        if isinstance(s, SampleFailure):
            raise _Domain(f"{s.error} at n={s.n}: {s.message}")
        out.append(s)
    return out


# ---------------------------------------------------------------------------
# commands; each returns the stdout payload


def cmd_eval(args) -> str:
    f = _parse_expr(args.expr)
    if args.n < 2:
        raise _Usage("n must be >= 2")
    v = evaluate(f, args.n, _settings(args))
    return render_rows(("n", "re", "im"), [(args.n, v.re, v.im)], args.format)


def cmd_decompose(args) -> str:
    f = _parse_expr(args.expr)
    rows = [(s.n, s.value.re, s.value.im, s.g, s.phi)
            for s in _samples(f, _schedule(args), _settings(args), args.workers)]
    return render_rows(("n", "re", "im", "g", "phi"), rows, args.format)


def cmd_plot(args) -> str:
    f = _parse_expr(args.expr)
    samples = _samples(f, _schedule(args), _settings(args), args.workers)
    rows = []
    prev = None
    for s in samples:
        darg = None if prev is None else s.phi - prev
        rows.append((s.n, s.value.re, s.value.im, s.g, s.phi, darg))
        prev = s.phi
    payload = render_rows(("n", "re", "im", "g", "phi", "darg"), rows, "csv")
    try:
        with open(args.out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as err:
        raise _Domain(f"cannot write {args.out}: {err.strerror or err}") from None
    return f"{len(rows)}\n"


def _thresholds(args) -> Thresholds:
    try:
        return Thresholds(args.small, args.large, args.theta_band, args.slope_tol)
    except ValueError as err:
        raise _Usage(str(err)) from None


def cmd_compare(args) -> str:
    f1 = _parse_expr(args.expr1, "first expression")
    f2 = _parse_expr(args.expr2, "second expression")
    verdict = compare_modulus(f1, f2, _schedule(args), _thresholds(args), _settings(args))
    token = verdict.relation.token
    if args.format == "table":
        head = f"{token}\ntrend_slope: {fmt_human(verdict.trend_slope)}\n"
        return head + render_rows(("n", "ratio"), verdict.ratio_evidence, "table")
    rows = [(token, verdict.trend_slope, n, r) for n, r in verdict.ratio_evidence]
    return render_rows(("relation", "trend_slope", "n", "ratio"), rows, args.format)


def cmd_bigo(args) -> str:
    psi = _parse_expr(args.expr1, "first expression")
    f = _parse_expr(args.expr2, "second expression")
    res = check_big_o(psi, f, _schedule(args), _thresholds(args), _settings(args))
    row = ("true" if res.holds else "false", res.witness_constant, res.from_n,
           res.verdict.relation.token)
    return render_rows(("holds", "witness_constant", "from_n", "relation"), [row], args.format)


def cmd_transform(args) -> str:
    f = _parse_expr(args.expr)
    try:
        params = TransformParams(args.alpha, args.beta)
    except ZeroAlpha:
        raise _Usage("--alpha must be nonzero") from None
    except ValueError as err:
        raise _Usage(str(err)) from None
    out = transform_to_real(f, params, _schedule(args), args.tol_abs, args.tol_rel, _settings(args))
    text = print_canonical(out)
    if args.format == "table":
        return text + "\n"
    return render_rows(("expr",), [(text,)], args.format)


def cmd_classify(args) -> str:
    f = _parse_expr(args.expr)
    sched = _schedule(args)
    settings = _settings(args)
    label = classify_zeta(f, sched, settings)
    limit = phase_limit(f, sched, settings, window=args.converge_window,
                        min_flips=args.oscillation_flips)
    if args.format == "table":
        head = label.family.value
        if label.family is Family.POLYNOMIAL:
            head += f" degree≈{fmt_human(label.degree)}"
        return f"{head}, {_phase_text(limit)}\n"
    row = (label.family.value, label.degree, limit.kind.value, limit.value)
    return render_rows(("family", "degree", "phase_kind", "phase"), [row], args.format)


# ---------------------------------------------------------------------------


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None


@functools.lru_cache(maxsize=None)
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--schedule", help=f"geometric:START:FACTOR:COUNT or list:N1,N2,... "
                        f"(default ${SCHEDULE_ENV} or {DEFAULT_SCHEDULE_TEXT})")
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--log-base", type=float, default=math.e,
                        help="base of bare log() (default e)")
    common.add_argument("--tol-abs", type=float, default=1e-9)
    common.add_argument("--tol-rel", type=float, default=1e-9)
    common.add_argument("--tail-window", type=int, default=None)
    common.add_argument("--workers", type=int, default=None, help=argparse.SUPPRESS)

    thresholds = argparse.ArgumentParser(add_help=False)
    d = Thresholds()
    thresholds.add_argument("--small", type=float, default=d.small)
    thresholds.add_argument("--large", type=float, default=d.large)
    thresholds.add_argument("--theta-band", type=float, default=d.theta_band)
    thresholds.add_argument("--slope-tol", type=float, default=d.slope_tol)

    parser = argparse.ArgumentParser(prog="zeta", description="Complex-valued asymptotic analysis "
                                     "of complexity functions f(n).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="print Re and Im of f(n) at one n")
    p.add_argument("expr")
    p.add_argument("n", type=_int_arg)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("decompose", parents=[common], help="modulus and phase along a schedule")
    p.add_argument("expr")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("compare", parents=[common, thresholds], help="compare two moduli")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("bigo", parents=[common, thresholds],
                       help="check |expr1| = O(|expr2|) with a witness constant")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(func=cmd_bigo)

    p = sub.add_parser("transform", parents=[common], help="real form (g - beta)/alpha")
    p.add_argument("expr")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("plot", parents=[common], help="write trajectory CSV for plotting")
    p.add_argument("expr")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("classify", parents=[common], help="growth family and limiting phase")
    p.add_argument("expr")
    p.add_argument("--converge-window", type=float, default=1e-3)
    p.add_argument("--oscillation-flips", type=int, default=3)
    p.set_defaults(func=cmd_classify)
    return parser


def _caret(source: str, err: ParseError) -> str:
    start, end = err.span.start, err.span.end
    printable = source.replace("\n", " ").replace("\t", " ")
    return f"  {printable}\n  {' ' * start}{'^' * max(1, end - start)}\n"


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        payload = args.func(args)
    except _Usage as err:
        stderr.write(f"zeta {args.command}: error: {err}\n")
        return EXIT_USAGE
    except _SourceError as exc:
        e = exc.err
        stderr.write(f"error: {exc.label}: {e.kind} at {e.span.start}..{e.span.end}: {e.message}\n")
        stderr.write(_caret(exc.source, e))
        return EXIT_DOMAIN
    except _Domain as err:
        stderr.write(f"error: {err}\n")
        return EXIT_DOMAIN
    except NonRealComplexity as err:
        stderr.write(f"error: NonRealComplexity: {err}\n")
        return EXIT_DOMAIN
    except NegativeRealBranch as err:
        stderr.write(f"error: NegativeRealBranch: {err}\n")
        return EXIT_DOMAIN
    except ZetaError as err:
        stderr.write(f"error: {type(err).__name__}: {err}\n")
        return EXIT_DOMAIN
    stdout.write(payload)
    return EXIT_OK


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
