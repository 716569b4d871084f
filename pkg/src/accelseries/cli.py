"""Command-line front end.

Three subcommands:

* sum: accelerate a series and report the best approximant per method;
* digits-table: the correct-digit table (methods as rows, orders k as
  columns) against the known or supplied reference limit;
* check: pass/fail verification of the asymptotic and algebraic properties
  (theorem1, theorem2, lemma1, lemma2, identity_s1, equivalences).

Backend selection: --backend float computes approximately at --digits
precision (15 = native binary64, >= 19 = fixed-precision decimal);
--backend rational computes exactly and ignores --digits.

Exit codes: 0 success (all checks pass), 1 a requested check failed,
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import decimal
import json
import math
import sys
from fractions import Fraction

from .diagnostics import (
    delta_s1_identity,
    digits_row,
    lemma2_residual,
    theorem1_scaling,
    theorem2_ratio,
)
from .errors import AccelSeriesError, PrecisionError
from .numeric import RationalContext, context_for_digits, parse_decimal
from .series import builtin, builtin_names, from_file
from .transforms import (
    MethodSpec,
    levin_tilde,
    levin_weniger_direct,
    levin_weniger_explicit,
    levin_weniger_pq,
    levin_weniger_pq_state,
    method_s,
    method_s_phi,
    ratio_powers,
    transform,
    two_point_powers,
    weniger_tilde,
)

_METHODS = ("s", "sphi", "levin", "weniger", "aitken")
_PHI_NAMES = ("weniger-tilde", "levin-tilde", "ratio-powers", "two-point-powers")
_PROPERTIES = ("theorem1", "theorem2", "lemma1", "lemma2", "identity_s1", "equivalences")
_SCOPE_NOTE = (
    "note: the d~ transformation comparison row is out of scope; "
    "rows shown cover the s, levin, and weniger methods."
)


def _add_common(p: argparse.ArgumentParser, digits_default: int) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--series", choices=sorted(builtin_names()), help="builtin series name")
    src.add_argument(
        "--terms-file",
        help="file with one signed decimal term per line (signs alternate, first positive)",
    )
    p.add_argument("--x", help="series parameter x (fraction or decimal)")
    p.add_argument("--rho", help="series parameter rho (fraction or decimal)")
    p.add_argument(
        "--method",
        action="append",
        choices=_METHODS,
        help="transformation method; repeatable",
    )
    p.add_argument("--phi", choices=_PHI_NAMES, default="weniger-tilde", help="phi family for sphi")
    p.add_argument("--kmax", type=int, default=15, help="highest transformation order (default 15)")
    p.add_argument("--terms", type=int, default=None, help="partial sums in row 0 (default kmax+1)")
    p.add_argument("--b", default="1", help="shift parameter b > 0 (default 1)")
    p.add_argument(
        "--digits",
        type=int,
        default=digits_default,
        help=f"working precision: 15 (binary64) or >= 19 (decimal); default {digits_default}",
    )
    p.add_argument("--backend", choices=("float", "rational"), default="float")
    p.add_argument("--output", choices=("table", "csv", "json"), default="table")
    p.add_argument("--reference", help="reference limit as a decimal literal")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accelseries",
        description="Convergence acceleration of alternating series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="accelerate and report the best approximant per method")
    _add_common(p_sum, 19)

    p_tab = sub.add_parser("digits-table", help="correct-digit table per method and order")
    _add_common(p_tab, 19)

    p_chk = sub.add_parser("check", help="verify asymptotic and algebraic properties")
    _add_common(p_chk, 30)
    p_chk.add_argument(
        "--property",
        action="append",
        choices=_PROPERTIES,
        help="property to verify; repeatable (default: all)",
    )
    p_chk.add_argument("--k", type=int, default=1, help="transformation order for theorem checks")
    p_chk.add_argument("--n", default="100,1000", help="comma-separated index list for asymptotic checks")
    return parser


def _resolve_ctx(args):
    if args.backend == "rational":
        return RationalContext()
    return context_for_digits(args.digits)


def _resolve_series(args):
    if args.terms_file:
        return from_file(args.terms_file)
    params = {}
    if args.x is not None:
        params["x"] = Fraction(args.x)
    if args.rho is not None:
        params["rho"] = Fraction(args.rho)
    return builtin(args.series, **params)


def _phi_family(name: str, b: Fraction):
    if name == "levin-tilde":
        return levin_tilde(b)
    if name == "weniger-tilde":
        return weniger_tilde(b)
    if name == "ratio-powers":
        return ratio_powers()
    return two_point_powers()


def _method_specs(args, default_kinds):
    b = Fraction(args.b)
    specs = []
    for kind in args.method or list(default_kinds):
        phi = _phi_family(args.phi, b) if kind == "sphi" else None
        specs.append(MethodSpec(kind, b=b, phi=phi))
    return specs


def _label(spec: MethodSpec) -> str:
    if spec.kind == "sphi":
        return f"sphi:{spec.phi.kind}"
    return spec.kind


def _reference(args, series, ctx):
    if args.reference is not None:
        return parse_decimal(args.reference, ctx)
    return series.known_limit(ctx)


def _fmt_digits(value) -> str:
    if value is None:
        return "-"
    if value == math.inf:
        return "exact"
    d = decimal.Decimal(repr(float(value)))
    return str(d.quantize(decimal.Decimal("0.1"), rounding=decimal.ROUND_HALF_UP))


def _terms_budget(args) -> int:
    terms = args.terms if args.terms is not None else args.kmax + 1
    if terms < args.kmax + 1:
        raise ValueError(f"--terms {terms} too small; need at least kmax+1 = {args.kmax + 1}")
    return terms


def _print_csv(header, rows, out):
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join("" if cell is None else str(cell) for cell in row) + "\n")


# --------------------------------------------------------------------------
# sum

def cmd_sum(args, out) -> int:
    ctx = _resolve_ctx(args)
    series = _resolve_series(args)
    specs = _method_specs(args, ["s"])
    terms = _terms_budget(args)
    reference = _reference(args, series, ctx)
    results = []
    for spec in specs:
        table = transform(series, ctx, spec, args.kmax, terms)
        k_eff = table.kmax
        value = None
        note = None
        try:
            value = table.entry(k_eff, 0)
        except AccelSeriesError as exc:
            note = str(exc)
        digits = None
        if value is not None and reference is not None:
            digits = digits_row(table, [k_eff], reference, ctx).digits[0]
        results.append((_label(spec), k_eff, value, digits, note))

    if args.output == "json":
        payload = {
            "command": "sum",
            "series": series.name,
            "backend": ctx.name,
            "kmax": args.kmax,
            "terms": terms,
            "reference": None if reference is None else ctx.format(reference),
            "results": [
                {
                    "method": label,
                    "k": k,
                    "s_k_0": None if value is None else ctx.format(value),
                    "digits": None if digits is None else float(digits),
                    "note": note,
                }
                for label, k, value, digits, note in results
            ],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.output == "csv":
        rows = [
            (k, label, "" if value is None else ctx.format(value), _fmt_digits(digits) if digits is not None else "")
            for label, k, value, digits, note in results
        ]
        _print_csv(("k", "method", "s_k_0", "digits"), rows, out)
    else:
        ref_text = "-" if reference is None else ctx.format(reference)
        out.write(
            f"series={series.name} backend={ctx.name} kmax={args.kmax} terms={terms} reference={ref_text}\n"
        )
        out.write(f"{'method':<22} {'k':>3}  {'s_k_0':<26} digits\n")
        for label, k, value, digits, note in results:
            value_text = note if value is None else ctx.format(value)
            out.write(f"{label:<22} {k:>3}  {value_text:<26} {_fmt_digits(digits)}\n")
    return 0


# --------------------------------------------------------------------------
# digits-table

def cmd_digits_table(args, out) -> int:
    ctx = _resolve_ctx(args)
    series = _resolve_series(args)
    specs = _method_specs(args, ["s", "levin", "weniger"])
    terms = _terms_budget(args)
    reference = _reference(args, series, ctx)
    if reference is None:
        raise ValueError(
            "no reference limit available for this series in this backend; pass --reference"
        )
    if args.kmax < 3:
        raise ValueError("digits-table needs --kmax >= 3")
    ks = list(range(3, args.kmax + 1))
    note = _SCOPE_NOTE if series.name in ("example6", "example7") else None

    table_rows = []
    for spec in specs:
        table = transform(series, ctx, spec, args.kmax, terms)
        row = digits_row(table, ks, reference, ctx)
        table_rows.append((_label(spec), table, row))

    if args.output == "json":
        payload = {
            "command": "digits-table",
            "series": series.name,
            "backend": ctx.name,
            "kmax": args.kmax,
            "terms": terms,
            "reference": ctx.format(reference),
            "ks": ks,
            "rows": [
                {
                    "method": label,
                    "digits": [None if d is None else float(d) for d in row.digits],
                    "s_k_0": [
                        ctx.format(table.rows[k][0]) if table.rows[k][0] is not None else None
                        for k in ks
                    ],
                    "absolute_metric": row.absolute,
                }
                for label, table, row in table_rows
            ],
        }
        if note:
            payload["note"] = note
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.output == "csv":
        rows = []
        for i, k in enumerate(ks):
            for label, table, row in table_rows:
                value = table.rows[k][0]
                rows.append(
                    (
                        k,
                        label,
                        "" if value is None else ctx.format(value),
                        "" if row.digits[i] is None else _fmt_digits(row.digits[i]),
                    )
                )
        _print_csv(("k", "method", "s_k_0", "digits"), rows, out)
    else:
        out.write(
            f"series={series.name} backend={ctx.name} terms={terms} reference={ctx.format(reference)}\n"
        )
        header = f"{'k':<10}" + "".join(f"{k:>7}" for k in ks)
        out.write(header + "\n")
        for label, table, row in table_rows:
            cells = "".join(f"{_fmt_digits(d):>7}" for d in row.digits)
            out.write(f"{label:<10}{cells}\n")
        if any(row.absolute for _, _, row in table_rows):
            out.write("note: digit counts use the absolute metric (reference = 0)\n")
        if note:
            out.write(note + "\n")
    return 0


# --------------------------------------------------------------------------
# check

def _tolerance(ctx):
    if ctx.exact:
        return None
    if ctx.digits10 == 15:
        return 1e-12
    return ctx.from_fraction(Fraction(1, 10 ** (ctx.digits10 - 7)))


def _close(ctx, a, b, tol):
    if tol is None:
        return a == b
    with ctx.guard():
        scale = max(abs(a), abs(b), 1)
        return abs(a - b) <= tol * scale


def _check_theorem1(series, ctx, specs, k, ns):
    if len(ns) < 2:
        raise ValueError("theorem1 needs at least two indices in --n")
    results = []
    for spec in specs:
        try:
            vals = theorem1_scaling(series, ctx, spec, k, ns)
        except PrecisionError as exc:
            results.append((_label(spec), False, str(exc)))
            continue
        n1, n2 = min(ns), max(ns)
        v1, v2 = vals[n1], vals[n2]
        with ctx.guard():
            v_inf = (n2 * v2 - n1 * v1) / (n2 - n1)
            ok = True
            devs = []
            for n in ns:
                dev = abs(vals[n] - v_inf)
                bound = Fraction(2, n)
                devs.append(f"dev@{n}={float(dev):.3g}(<= {float(bound):.3g})")
                if not dev <= bound:
                    ok = False
        detail = f"k={k} limit~{float(v_inf):.6g} " + " ".join(devs)
        results.append((_label(spec), ok, detail))
    return results


def _check_theorem2(series, ctx, specs, k, ns):
    if len(ns) < 2:
        raise ValueError("theorem2 needs at least two indices in --n")
    n1, n2 = min(ns), max(ns)
    results = []
    for spec in specs:
        try:
            scaled = {}
            for n in (n1, n2):
                ratio, expected = theorem2_ratio(series, ctx, spec, k, n)
                with ctx.guard():
                    scaled[n] = abs(ratio / expected - 1) * n * n
        except PrecisionError as exc:
            results.append((_label(spec), False, str(exc)))
            continue
        ok = scaled[n2] <= 10 * scaled[n1]
        detail = (
            f"k={k} n^2|ratio/phi-1|: @{n1}={float(scaled[n1]):.4g} @{n2}={float(scaled[n2]):.4g}"
        )
        results.append((_label(spec), ok, detail))
    return results


def _check_lemma1(series, ctx, b, ns):
    if len(ns) < 2:
        raise ValueError("lemma1 needs at least two indices in --n")
    n1, n2 = min(ns), max(ns)
    results = []
    for method in ("levin", "weniger"):
        for k in (2, 3):
            state = levin_weniger_pq_state(series, ctx, method, k - 1, n2 + k + 1, b)
            al = series.terms(ctx, n2 + k + 1)
            with ctx.guard():
                q_scaled = {}
                phi_scaled = {}
                for n in (n1, n2):
                    q_ratio = state.q_rows[k - 1][n + 1] / state.q_rows[k - 1][n]
                    q_scaled[n] = abs(q_ratio - 1) * n * n
                    beta_ratio = (al[n + 2] / al[n + 1]) / (al[n + k + 1] / al[n + k])
                    phi_scaled[n] = abs(beta_ratio * q_ratio - 1) * n * n
            ok_q = q_scaled[n2] <= 10 * q_scaled[n1]
            ok_phi = phi_scaled[n2] <= 10 * phi_scaled[n1]
            detail = (
                f"k={k} n^2|q_ratio-1|: @{n1}={float(q_scaled[n1]):.4g} @{n2}={float(q_scaled[n2]):.4g}; "
                f"n^2|phi/phi~-1|: @{n1}={float(phi_scaled[n1]):.4g} @{n2}={float(phi_scaled[n2]):.4g}"
            )
            results.append((f"{method} k={k}", ok_q and ok_phi, detail))
    return results


def _check_lemma2(series, ctx, specs):
    tol = _tolerance(ctx)
    results = []
    for spec in specs:
        worst = None
        ok = True
        for k in (1, 2, 3):
            for n in (0, 2, 5):
                res = lemma2_residual(series, ctx, spec, k, n)
                if not _close(ctx, res, 0, tol):
                    ok = False
                with ctx.guard():
                    mag = abs(res)
                if worst is None or mag > worst:
                    worst = mag
        detail = f"max residual {float(worst):.3g} over k<=3, n<=5"
        results.append((_label(spec), ok, detail))
    return results


def _check_identity_s1(series, ctx):
    tol = _tolerance(ctx)
    worst = None
    ok = True
    for n in range(0, 11):
        res = delta_s1_identity(series, ctx, n)
        if not _close(ctx, res, 0, tol):
            ok = False
        with ctx.guard():
            mag = abs(res)
        if worst is None or mag > worst:
            worst = mag
    return [("s", ok, f"max residual {float(worst):.3g} over n<=10")]


def _check_equivalences(series, ctx, b):
    tol = _tolerance(ctx)
    results = []
    M = 13
    tables = {
        "s": method_s(series, ctx, 2, M),
        "sphi:weniger-tilde": method_s_phi(series, ctx, weniger_tilde(b), 2, M),
        "levin": levin_weniger_pq(series, ctx, "levin", 2, M, b),
        "weniger": levin_weniger_pq(series, ctx, "weniger", 2, M, b),
        "aitken": transform(series, ctx, MethodSpec("aitken"), 1, M),
    }
    base = tables["s"]
    ok = True
    for name, table in tables.items():
        for n in range(0, 11):
            if not _close(ctx, table.entry(1, n), base.entry(1, n), tol):
                ok = False
    results.append(("row-1 universality", ok, "s, sphi, levin, weniger, aitken agree at k=1, n<=10"))

    ok = True
    for n in range(0, 11):
        if not _close(ctx, tables["levin"].entry(2, n), tables["weniger"].entry(2, n), tol):
            ok = False
    results.append(("levin=weniger at k=2", ok, "s_2^n agree for n<=10"))

    for method in ("levin", "weniger"):
        ok = True
        K, M2 = 4, 12
        t_pq = levin_weniger_pq(series, ctx, method, K, M2, b)
        t_dir = levin_weniger_direct(series, ctx, method, K, M2, b)
        t_exp = levin_weniger_explicit(series, ctx, method, K, M2, b)
        for k in range(K + 1):
            for n in range(min(7, M2 - k)):
                a = t_pq.entry(k, n)
                if not _close(ctx, a, t_dir.entry(k, n), tol) or not _close(
                    ctx, a, t_exp.entry(k, n), tol
                ):
                    ok = False
        results.append(
            (f"{method} realizations", ok, "pq = direct = explicit for k<=4, n<=6")
        )
    return results


def cmd_check(args, out) -> int:
    ctx = _resolve_ctx(args)
    series = _resolve_series(args)
    specs = _method_specs(args, ["s", "levin", "weniger"])
    props = args.property or list(_PROPERTIES)
    ns = sorted(int(t) for t in args.n.split(",") if t.strip())
    b = Fraction(args.b)

    report = []
    for prop in props:
        if prop == "theorem1":
            rows = _check_theorem1(series, ctx, specs, args.k, ns)
        elif prop == "theorem2":
            rows = _check_theorem2(series, ctx, specs, args.k, ns)
        elif prop == "lemma1":
            rows = _check_lemma1(series, ctx, b, ns)
        elif prop == "lemma2":
            rows = _check_lemma2(series, ctx, specs)
        elif prop == "identity_s1":
            rows = _check_identity_s1(series, ctx)
        else:
            rows = _check_equivalences(series, ctx, b)
        for target, ok, detail in rows:
            report.append((prop, target, ok, detail))

    all_ok = all(ok for _, _, ok, _ in report)
    if args.output == "json":
        payload = {
            "command": "check",
            "series": series.name,
            "backend": ctx.name,
            "properties": props,
            "results": [
                {"property": prop, "target": target, "passed": ok, "detail": detail}
                for prop, target, ok, detail in report
            ],
            "passed": all_ok,
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    elif args.output == "csv":
        rows = [
            (prop, target, "pass" if ok else "fail", detail.replace(",", ";"))
            for prop, target, ok, detail in report
        ]
        _print_csv(("property", "target", "result", "detail"), rows, out)
    else:
        out.write(f"series={series.name} backend={ctx.name}\n")
        for prop, target, ok, detail in report:
            mark = "PASS" if ok else "FAIL"
            out.write(f"{prop:<14} {target:<24} {mark}  {detail}\n")
        out.write("all checks passed\n" if all_ok else "some checks FAILED\n")
    return 0 if all_ok else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "sum":
            return cmd_sum(args, out)
        if args.command == "digits-table":
            return cmd_digits_table(args, out)
        return cmd_check(args, out)
    except (AccelSeriesError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
