"""Command-line front end.

Exit codes: 0 ok, 1 mismatch, 2 parse/usage, 3 evaluation, 4 class mismatch,
5 algebra (not invertible, degenerate), 6 non-verifiable theorem.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from fractions import Fraction

from . import riordan as rd
from . import seidel as sd
from . import series as ps
from . import transforms as tf
from .errors import BadParameters, EulerSeidelError, ParseError

DEFAULT_ORDER = 12
ENUM_CAP = 64

# options whose values may legitimately start with '-'
_VALUE_OPTS = {"--u", "--v", "--g", "--f", "--init", "--seq", "--p", "--q", "--s", "--x", "--y", "--pair"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _join_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def _rational(text):
    try:
        return ps.parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# rendering ---------------------------------------------------------------------


def _pretty_grid(rows, row_label="", col_label=""):
    cells = [[str(x) for x in r] for r in rows]
    ncols = max((len(r) for r in cells), default=0)
    widths = [max([len(str(j))] + [len(r[j]) for r in cells if j < len(r)]) for j in range(ncols)]
    lw = max([len(row_label + "\\" + col_label)] + [len(str(i)) for i in range(len(cells))])
    lines = [f"{row_label + chr(92) + col_label:>{lw}} | " + "  ".join(f"{j:>{w}}" for j, w in enumerate(widths))]
    lines.append("-" * len(lines[0]))
    for i, r in enumerate(cells):
        lines.append(f"{i:>{lw}} | " + "  ".join(f"{x:>{widths[j]}}" for j, x in enumerate(r)))
    return "\n".join(lines) + "\n"


def _csv(header, records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for rec in records:
        w.writerow([str(x) for x in rec])
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, sort_keys=False) + "\n"


def _grid_records(rows):
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            yield i, j, x


def render_table(table: sd.SeidelTable, fmt: str) -> str:
    if fmt == "json":
        return _json(table.to_json())
    if fmt == "csv":
        return _csv(["k", "n", "value"], _grid_records(table.rows))
    return _pretty_grid(table.rows, "k", "n")


def render_matrix(M: rd.TriangularMatrix, fmt: str) -> str:
    if fmt == "json":
        return _json(M.to_json())
    if fmt == "csv":
        return _csv(["row", "col", "value"], _grid_records(M.rows))
    return _pretty_grid(M.rows, "row", "col")


def render_sequence(values, fmt: str) -> str:
    if fmt == "json":
        return _json({"sequence": [str(x) for x in values]})
    if fmt == "csv":
        return _csv(["index", "value"], enumerate(values))
    return ps.format_series(values) + "\n"


def render_reports(reports, fmt: str) -> str:
    dicts = [r.to_json() for r in reports]
    if fmt == "json":
        return "".join(_json(d) for d in dicts)
    if fmt == "csv":
        recs = []
        for d in dicts:
            mm = d["first_mismatch"] or {}
            params = ";".join(f"{k}={v}" for k, v in d["params"].items())
            recs.append([d["theorem"], params, d["N"], str(d["match"]).lower(),
                         mm.get("index", mm.get("row", "")), mm.get("oracle", ""), mm.get("predicted", "")])
        return _csv(["theorem", "params", "N", "match", "index", "oracle", "predicted"], recs)
    lines = []
    for d in dicts:
        params = ", ".join(f"{k}={v}" for k, v in d["params"].items())
        status = "MATCH" if d["match"] else "MISMATCH"
        line = f"{d['theorem']}({params}) N={d['N']}: {status}"
        mm = d["first_mismatch"]
        if mm is not None:
            line += "  first mismatch " + ", ".join(f"{k}={v}" for k, v in mm.items())
        lines.append(line)
    return "\n".join(lines) + "\n"


# commands ----------------------------------------------------------------------


def cmd_table(args):
    spec = sd.SeidelSpec.parse(args.u, args.v, args.init)
    table = sd.build_table(spec, args.order)
    return render_table(table, args.format), 0


def cmd_coeffs(args):
    u, v = sd.parse_expr(args.u), sd.parse_expr(args.v)
    K, n = args.k, args.n
    if args.method == "enum":
        if K > ENUM_CAP:
            raise BadParameters(f"--method enum is capped at k <= {ENUM_CAP}")
        tri = [[sd.coeff_enum(n, k, l, u, v) for l in range(k + 1)] for k in range(K + 1)]
    elif args.method == "unit":
        tri = [[sd.coeff_unit_vector(n, k, l, u, v) for l in range(k + 1)] for k in range(K + 1)]
    else:
        tri = sd.coeff_triangle(n, K, u, v, args.dependence_class)
    if args.format == "json":
        return _json({"n": n, "K": K, "method": args.method, "rows": [[str(x) for x in r] for r in tri]}), 0
    if args.format == "csv":
        return _csv(["k", "l", "value"], _grid_records(tri)), 0
    return _pretty_grid(tri, "k", "l"), 0


def _parse_seq(text, N):
    init = sd.parse_init(text)
    return [Fraction(init(i)) for i in range(N + 1)]


def cmd_riordan(args):
    N = args.order
    flavor = rd.Flavor(args.flavor)
    R = rd.RiordanArray(ps.parse_series(args.g, N), ps.parse_series(args.f, N), flavor)
    if args.action == "matrix":
        return render_matrix(rd.to_matrix(R, N), args.format), 0
    if args.action == "inverse":
        inv = rd.inverse(R)
        g, f = ps.format_series(inv.g), ps.format_series(inv.f)
        if args.format == "json":
            return _json({"flavor": flavor.value, "g": g, "f": f}), 0
        if args.format == "csv":
            recs = [("g", i, c) for i, c in enumerate(inv.g)] + [("f", i, c) for i, c in enumerate(inv.f)]
            return _csv(["series", "index", "value"], recs), 0
        return f"{g}\n{f}\n", 0
    if args.seq is None:
        raise BadParameters("--action apply needs --seq")
    seq = _parse_seq(args.seq, N)
    w = rd.weight_vector(args.weight, N + 1)
    return render_sequence(rd.apply(R, [a * x for a, x in zip(seq, w)], N), args.format), 0


def _params(args, names):
    out = {}
    for name in names:
        val = getattr(args, name)
        if val is None:
            raise BadParameters(f"missing --{name}")
        out[name] = val
    return out


def _grid_reports(theorem, init, N):
    th = tf.get_theorem(theorem)
    for vals in itertools.product(tf.PARAMETER_GRID, repeat=len(th.params)):
        P = dict(zip(th.params, vals))
        if any(P[nz] == 0 for nz in th.nonzero):
            continue
        yield tf.verify_transform(theorem, P, init, N)


def cmd_verify(args):
    N = args.order
    name = args.theorem
    if name == "duality":
        if not args.pair or ":" not in args.pair:
            raise BadParameters("duality needs --pair A:B, e.g. T2412:T024112")
        a, b = args.pair.split(":", 1)
        first_names = _param_names(a)
        rep = tf.duality_check(a, b, _params(args, first_names), N)
        reports = [rep]
    elif name == "bivariate":
        init = sd.parse_init(args.init)
        reports = [tf.firengiz_dil_check(args.x if args.x is not None else 1,
                                         args.y if args.y is not None else 1, init, N)]
    elif name == "worked-example":
        rep = tf.worked_example_report(N)
        reports = [rep["t24111"], rep["stated_closed_form"]]
    else:
        th = tf.get_theorem(name)
        init = sd.parse_init(args.init)
        if args.grid:
            reports = list(_grid_reports(name, init, N))
        else:
            reports = [tf.verify_transform(name, _params(args, th.params), init, N)]
    ok = all(r.match for r in reports)
    return render_reports(reports, args.format), 0 if ok else 1


def _param_names(theorem_id):
    if theorem_id in tf.NON_VERIFIABLE:
        return tf.NON_VERIFIABLE[theorem_id][2]
    return tf.get_theorem(theorem_id).params


def derangement_report(N: int) -> dict:
    """Table of delta_n^k plus three independent checks of its values."""
    spec = sd.SeidelSpec.parse("-1", "n+1", "ones")
    table = sd.build_table(spec, N)
    closed_ok = all(
        table.cell(n, k)
        == sum((-1) ** (k - l) * math.comb(k, l) * Fraction(math.factorial(n + l), math.factorial(n)) for l in range(k + 1))
        for k in range(N + 1)
        for n in range(N - k + 1)
    )
    d = [1]
    for k in range(1, N + 1):
        d.append(k * d[-1] + (-1) ** k)
    final = table.final_sequence()
    egf = ps.exponential(N, -1) * ps.geometric(N)
    egf_vals = list(ps.egf_to_ogf(egf))
    return {
        "N": N,
        "table": table,
        "final": final,
        "closed_form": closed_ok,
        "derangements": final == [Fraction(x) for x in d],
        "egf": final == egf_vals,
    }


def cmd_derangements(args):
    rep = derangement_report(args.order)
    ok = rep["closed_form"] and rep["derangements"] and rep["egf"]
    checks = {
        "closed_form": rep["closed_form"],
        "derangement_recurrence": rep["derangements"],
        "egf_exp(-t)/(1-t)": rep["egf"],
    }
    if args.format == "json":
        out = _json({"N": rep["N"], "table": rep["table"].to_json(),
                     "final": [str(x) for x in rep["final"]], "checks": checks, "ok": ok})
    elif args.format == "csv":
        out = render_table(rep["table"], "csv")
    else:
        out = render_table(rep["table"], "pretty")
        out += "final sequence: " + ps.format_series(rep["final"]) + "\n"
        for name, val in checks.items():
            out += f"{name}: {'ok' if val else 'FAILED'}\n"
    return out, 0 if ok else 1


# wiring ------------------------------------------------------------------------


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("-N", "--order", type=int, default=DEFAULT_ORDER, help="truncation order (default 12)")
    common.add_argument("--format", choices=("pretty", "csv", "json"), default="pretty")
    common.add_argument("--output", metavar="FILE", help="write output to FILE instead of stdout")

    parser = _Parser(prog="eulerseidel", description="Generalized Euler-Seidel matrices and Riordan arrays.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("table", parents=[common], help="build a table a_n^k")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--init", default="ones")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("coeffs", parents=[common], help="path-weight triangle C_n(k, l)")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int, default=6, help="largest k (default 6)")
    p.add_argument("--method", choices=("enum", "recurrence", "unit"), default="enum")
    p.add_argument("--class", dest="dependence_class", choices=[c.value for c in sd.DependenceClass])
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("riordan", parents=[common], help="Riordan array operations")
    p.add_argument("--g", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--flavor", choices=("ordinary", "exponential"), default="ordinary")
    p.add_argument("--action", choices=("matrix", "inverse", "apply"), default="matrix")
    p.add_argument("--seq")
    p.add_argument("--weight", choices=tuple(rd.WEIGHTS), default="1",
                   help="multiply sequence term l by w_l before applying (default 1)")
    p.set_defaults(func=cmd_riordan)

    p = sub.add_parser("verify", parents=[common], help="check a closed form against the recurrence")
    p.add_argument("theorem", help="Euler, Seidel, T24, T024, T2412, T024112, T241, T24111, bivariate, duality, worked-example")
    for name in ("p", "q", "s", "x", "y"):
        p.add_argument(f"--{name}", type=_rational)
    p.add_argument("--init", default="ones")
    p.add_argument("--pair", help="duality pair A:B")
    p.add_argument("--grid", action="store_true", help="sweep the parameter grid")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derangements", parents=[common], help="the delta_n^k worked example")
    p.set_defaults(func=cmd_derangements)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        out, code = args.func(args)
    except EulerSeidelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
