"""Command-line front end.

Subcommands read a function spec (JSON, ``-`` for stdin) and write CSV or
JSON tables. Exit codes: 0 ok, 1 I/O error, 2 invalid input, 3 work budget
exceeded, 4 the ``(A_*)^* <= (A^*)_*`` check failed, 5 transform and oracle
disagree.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import catalog
from .analysis import classify_membership, series_diagnostic
from .errors import AggregationError, BudgetError
from .numerics import LatticeND
from .oracle import brute_nd, brute_sub_1d, brute_super_1d
from .transform import (DEFAULT_BUDGET, Direction, double_transform_compare, refine,
                        subadditive_nd, superadditive_nd)

EXIT_OK, EXIT_IO, EXIT_INPUT, EXIT_BUDGET, EXIT_INEQUALITY, EXIT_ORACLE = 0, 1, 2, 3, 4, 5


class CheckFailed(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def fmt(v) -> str:
    """Shortest round-trip decimal; integral values without a trailing ``.0``."""
    v = float(v)
    if math.isinf(v):
        return "inf"
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _json_num(v):
    v = float(v)
    return "inf" if math.isinf(v) else v


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise AggregationError(f"expected comma-separated numbers, got {text!r}") from exc


def _read_spec(path):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return catalog.loads(text)


def _arity(spec, args):
    if args.arity is not None:
        return args.arity
    return spec.arity if spec.arity is not None else 1


def _lattice(spec, args):
    n = _arity(spec, args)
    if isinstance(spec, catalog.Table) and args.step is None and args.count is None:
        return spec.fn.lattice
    step = 1.0 if args.step is None else args.step
    count = 8 if args.count is None else args.count
    return LatticeND.uniform(step, count, n)


def _emit(args, text):
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv(columns, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parts_str(parts):
    return ";".join(":".join(str(v) for v in p) if isinstance(p, tuple) else str(p) for p in parts)


def _table(args, spec, lattice, columns, arrays, text_columns=(), extra=None):
    """CSV or JSON table: coordinates, numeric columns, then text columns."""
    names = [f"x{i}" for i in range(1, lattice.ndim + 1)] + list(columns)
    names += [name for name, _ in text_columns]
    points = lattice.points()
    flat = [np.asarray(a).ravel() for a in arrays]
    if args.format == "json":
        rows = [[_json_num(x) for x in p] + [_json_num(a[r]) for a in flat] + [t[r] for _, t in text_columns]
                for r, p in enumerate(points)]
        body = {"spec": spec.to_json(), "step": list(lattice.steps),
                "count": [a.count for a in lattice.axes], "columns": names, "rows": rows}
        body.update(extra or {})
        return _json(body)
    rows = [[fmt(x) for x in p] + [fmt(a[r]) for a in flat] + [t[r] for _, t in text_columns]
            for r, p in enumerate(points)]
    return _csv(names, rows)


def cmd_transform(args):
    spec = _read_spec(args.spec)
    lattice = _lattice(spec, args)
    A = catalog.sample_nd(spec, lattice)
    sub = subadditive_nd(A, witnesses=args.witnesses, budget=args.budget)
    sup = superadditive_nd(A, witnesses=args.witnesses, budget=args.budget)
    bound = {"A_sub": sub.bound_side.value, "A_super": sup.bound_side.value}
    text_columns = ()
    if args.witnesses:
        idx = list(np.ndindex(*lattice.shape))
        text_columns = (("sub_parts", [_parts_str(sub.parts(i)) for i in idx]),
                        ("super_parts", [_parts_str(sup.parts(i)) for i in idx]))
    text = _table(args, spec, lattice, ["A", "A_sub", "A_super"], [A.values, sub.values, sup.values],
                  text_columns, {"bound_side": bound})
    print(f"A_sub: {bound['A_sub']}; A_super: {bound['A_super']}", file=sys.stderr)
    _emit(args, text)


def cmd_classify(args):
    spec = _read_spec(args.spec)
    n = _arity(spec, args)
    schedule = _floats(args.schedule) if args.schedule else None
    verdict = classify_membership(spec, n, schedule, use_closed_form=not args.numeric)
    _emit(args, _json(verdict.to_json()))


def cmd_compare(args):
    spec = _read_spec(args.spec)
    lattice = _lattice(spec, args)
    A = catalog.sample_nd(spec, lattice)
    rep = double_transform_compare(A, outer_stride=args.outer_stride, budget=args.budget)
    extra = {"max_violation": rep.max_violation, "tolerance": args.tolerance,
             "outer_stride": args.outer_stride}
    text = _table(args, spec, rep.lhs.lattice, ["lhs", "rhs"], [rep.lhs.values, rep.rhs.values],
                  extra=extra)
    _emit(args, text)
    print(f"max_violation: {fmt(rep.max_violation)}", file=sys.stderr)
    if rep.max_violation > args.tolerance:
        raise CheckFailed(EXIT_INEQUALITY, f"max violation {rep.max_violation!r} exceeds {args.tolerance!r}")


def cmd_generate(args):
    if args.kind == "band":
        spec = catalog.make_band_oscillator(args.a, args.b, args.q)
    else:
        spec = catalog.make_degenerate_oscillator(args.k_max)
    _emit(args, catalog.dumps(spec) + "\n")


def cmd_oracle_check(args):
    spec = _read_spec(args.spec)
    lattice = _lattice(spec, args)
    A = catalog.sample_nd(spec, lattice)
    f1 = A.to_1d() if A.ndim == 1 else None
    mismatches, checked, lines = [], 0, []
    for direction in Direction:
        dp = (subadditive_nd if direction is Direction.SUB else superadditive_nd)(A, budget=args.budget)
        for idx in np.ndindex(*lattice.shape):
            if not any(idx):
                continue
            if f1 is not None:
                brute = brute_sub_1d if direction is Direction.SUB else brute_super_1d
                val, wit = brute(f1, idx[0])
            else:
                val, wit = brute_nd(A, idx, direction)
            checked += 1
            got = dp.values[idx]
            if got != float(val):
                mismatches.append((direction.value, idx, got, float(val)))
            if args.witnesses:
                lines.append(f"{direction.value} {idx} {fmt(val)} {_parts_str(wit.parts)}")
    lines.append(f"checked {checked} cells, {len(mismatches)} mismatches")
    lines += [f"MISMATCH {d} {i}: dp={fmt(g)} oracle={fmt(o)}" for d, i, g, o in mismatches]
    _emit(args, "\n".join(lines) + "\n")
    if mismatches:
        raise CheckFailed(EXIT_ORACLE, f"{len(mismatches)} cells disagree with the oracle")


def cmd_refine(args):
    spec = _read_spec(args.spec)
    schedule = _floats(args.schedule)
    probes = _floats(args.probe)
    study = refine(spec, args.direction, probes, schedule, growth=args.growth, budget=args.budget)
    if args.format == "json":
        body = {"direction": study.direction.value, "schedule": list(study.schedule),
                "probe_points": list(study.probe_points),
                "estimates": [[_json_num(v) for v in row] for row in study.estimates],
                "verdicts": [{"trend": v.trend.value, "limit": v.limit} for v in study.verdicts]}
        text = _json(body)
    else:
        rows = [[fmt(s)] + [fmt(v) for v in row] for s, row in zip(study.schedule, study.estimates)]
        text = _csv(["step"] + [f"x={fmt(p)}" for p in probes], rows)
        for p, v in zip(probes, study.verdicts):
            print(f"x={fmt(p)}: {v.trend.value}" + ("" if v.limit is None else f"({fmt(v.limit)})"),
                  file=sys.stderr)
    _emit(args, text)


def cmd_series(args):
    spec = _read_spec(args.spec)
    if args.series == "harmonic":
        series = catalog.Harmonic()
    else:
        series = catalog.InverseImage(_read_spec(args.g) if args.g else spec)
    rep = series_diagnostic(spec, series, args.terms, convergent_below=args.convergent_below,
                            divergent_above=args.divergent_above)
    _emit(args, _json(rep.to_json()))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aggtransform", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, grid=True):
        sp.add_argument("spec", help="function spec JSON file, or - for stdin")
        if grid:
            sp.add_argument("--step", type=float, default=None, help="grid step (default 1)")
            sp.add_argument("--count", type=int, default=None, help="steps per axis (default 8)")
        sp.add_argument("--arity", type=int, default=None)
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum cell-pair visits per transform")

    sp = sub.add_parser("transform", help="tabulate A, A_sub and A_super on a grid")
    common(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--witnesses", action="store_true", help="add one optimal decomposition per cell")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("classify", help="membership of the classes with proper transforms")
    common(sp, grid=False)
    sp.add_argument("--schedule", default=None, help="comma-separated decreasing t values")
    sp.add_argument("--numeric", action="store_true", help="ignore closed-form slopes")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("compare", help="grid values of (A_*)^* and (A^*)_*")
    common(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--outer-stride", type=int, default=1,
                    help="run the outer transform on every m-th lattice index")
    sp.add_argument("--tolerance", type=float, default=1e-9)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("generate", help="write a spec for one of the oscillator constructions")
    sp.add_argument("--kind", choices=("band", "degenerate"), required=True)
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--b", type=float, default=2.0)
    sp.add_argument("--q", type=float, default=0.4)
    sp.add_argument("--k-max", type=int, default=8)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("oracle-check", help="compare the closures with exhaustive enumeration")
    common(sp)
    sp.add_argument("--witnesses", action="store_true")
    sp.set_defaults(func=cmd_oracle_check)

    sp = sub.add_parser("refine", help="transform values along a nested step schedule")
    common(sp, grid=False)
    sp.add_argument("--schedule", required=True, help="comma-separated nested steps, coarse first")
    sp.add_argument("--probe", required=True, help="comma-separated probe points")
    sp.add_argument("--direction", choices=("SUB", "SUPER"), required=True)
    sp.add_argument("--growth", type=float, default=1.5)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=cmd_refine)

    sp = sub.add_parser("series", help="series test for degenerate transforms")
    common(sp, grid=False)
    sp.add_argument("--series", choices=("harmonic", "inverse"), default="harmonic")
    sp.add_argument("--g", default=None, help="spec of g for a_j = g^-1(1/j) (default: the input spec)")
    sp.add_argument("--terms", type=int, default=10_000)
    sp.add_argument("--convergent-below", type=float, default=0.9)
    sp.add_argument("--divergent-above", type=float, default=0.95)
    sp.set_defaults(func=cmd_series)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except CheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AggregationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
