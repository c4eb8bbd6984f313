"""Command-line front end.

Subcommands:
    map      cell -> rank or rank -> cell for any curve in the catalogue
    cluster  interval decomposition of one rectangular query
    verify   run verification sweeps, emit a JSON report (exit 1 on failure)
    bounds   closed-form values, lower bounds, and the growth-case label
    bench    seeded benchmark experiments to CSV or JSON

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
Rationals print as 6-significant-digit decimals; JSON output also carries
exact numerator/denominator pairs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .core import NearCubeParams, RectQuery, TranslationQuerySet, Universe
from .clustering import cluster_intervals
from .curves import SUPPORTED_CURVES, make_curve
from .experiments import (
    DEFAULT_RATIOS,
    BenchmarkConfig,
    full_scale_cube_sizes,
    run_benchmark,
)
from .theory import (
    classify_near_cube,
    cube_lower_bound_formula_3d,
    lower_bound_continuous,
    lower_bound_general,
    onion2d_mean_formula,
    onion3d_mean_formula,
)
from .verify import SCOPES, run_verify

ROW_HEADER = ["curve", "d", "side", "l1", "l2", "l3", "ox", "oy", "oz", "clusters"]
STATS_HEADER = ["curve", "d", "side", "l1", "l2", "l3",
                "min", "q1", "median", "q3", "max", "mean", "count"]


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return f"{float(value):.6g}"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _fraction_json(fr: Fraction) -> dict:
    fr = Fraction(fr)
    return {"value": _fmt(fr), "num": fr.numerator, "den": fr.denominator}


def _formula_json(fv) -> dict:
    out = _fraction_json(fv.value)
    out["slack"] = _fmt(fv.slack)
    out["kind"] = fv.kind
    if fv.note:
        out["note"] = fv.note
    return out


def _parse_ints(text: str, what: str):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise SystemExit(f"error: {what} must be comma-separated integers, got {text!r}")


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


# ---------------------------------------------------------------------------
# Subcommand implementations.
# ---------------------------------------------------------------------------

def _cmd_map(args) -> int:
    curve = make_curve(args.curve, args.side)
    if (args.cell is None) == (args.rank is None):
        return _fail("provide exactly one of --cell or --rank")
    if args.cell is not None:
        cell = _parse_ints(args.cell, "--cell")
        print(curve.index(cell))
    else:
        cell = curve.cell_at(args.rank)
        print(",".join(str(c) for c in cell))
    return 0


def _cmd_cluster(args) -> int:
    curve = make_curve(args.curve, args.side)
    origin = _parse_ints(args.origin, "--origin")
    lengths = _parse_ints(args.lengths, "--lengths")
    q = RectQuery(origin, lengths)
    dec = cluster_intervals(curve, q)
    if args.format == "json":
        print(json.dumps({
            "schema_version": 1,
            "curve": args.curve,
            "side": args.side,
            "origin": list(origin),
            "lengths": list(lengths),
            "count": dec.count,
            "intervals": [list(iv) for iv in dec.intervals],
        }, indent=2))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["lo", "hi"])
        for lo, hi in dec.intervals:
            writer.writerow([lo, hi])
        print(f"# clusters: {dec.count}")
    return 0


def _cmd_verify(args) -> int:
    sides = _parse_ints(args.sides, "--sides") if args.sides else ()
    report = run_verify(scope=args.scope, max_side=args.max_side, sides=sides)
    print(json.dumps(report, indent=2))
    return 0 if report["passed"] else 1


def _cmd_bounds(args) -> int:
    lengths = _parse_ints(args.lengths, "--lengths")
    if args.d == 3 and len(lengths) == 1:
        lengths = lengths * 3
    if len(lengths) != args.d:
        return _fail(f"expected {args.d} lengths (or one cube side), got {lengths}")
    u = Universe(args.d, args.side)
    qs = TranslationQuerySet(u, lengths)  # validates length ranges

    values = {}
    if args.d == 2:
        values["onion_mean_formula"] = _formula_json(
            onion2d_mean_formula(lengths[0], lengths[1], args.side))
    else:
        if len(set(lengths)) == 1:
            values["onion_mean_formula"] = _formula_json(
                onion3d_mean_formula(lengths[0], args.side))
            values["continuous_bound_closed_form"] = _formula_json(
                cube_lower_bound_formula_3d(lengths[0], args.side))
    values["lower_bound_continuous"] = _formula_json(lower_bound_continuous(qs))
    values["lower_bound_general"] = _formula_json(lower_bound_general(qs))

    case_json = None
    try:
        params = NearCubeParams(
            mu=1.0,
            phis=tuple(l / args.side for l in lengths),
            psis=(0.0,) * args.d,
        )
        label = classify_near_cube(params, args.d, args.side)
        case_json = {
            "case": label.case,
            "phis": [round(p, 6) for p in label.phis],
            "eta_bound": None if label.eta_bound is None else round(label.eta_bound, 4),
            "note": label.note,
        }
    except ValueError as exc:
        case_json = {"case": None, "note": str(exc)}

    if args.format == "json":
        print(json.dumps({
            "schema_version": 1,
            "d": args.d,
            "side": args.side,
            "lengths": list(lengths),
            "values": values,
            "growth_case": case_json,
        }, indent=2))
    else:
        writer = csv.writer(sys.stdout)
        writer.writerow(["name", "value", "num", "den", "slack", "kind", "note"])
        for name, v in values.items():
            writer.writerow([name, v["value"], v["num"], v["den"],
                             v.get("slack", ""), v.get("kind", ""), v.get("note", "")])
        writer.writerow(["growth_case", case_json.get("case"), "", "",
                         case_json.get("eta_bound", ""), "", case_json.get("note", "")])
    return 0


def _default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SFCLUST_WORKERS", "1")))
    except ValueError:
        return 1


def _bench_rows_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(ROW_HEADER)
    for r in rows:
        l = list(r.lengths) + [""] * (3 - len(r.lengths))
        o = list(r.origin) + [""] * (3 - len(r.origin))
        writer.writerow([r.curve, r.d, r.s, *l, *o, r.clusters])
    return buf.getvalue()


def _bench_stats_csv(stats, d: int, s: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(STATS_HEADER)
    for curve_id, lengths, st in stats:
        l = (list(lengths) if lengths else []) + [""] * (3 - (len(lengths) if lengths else 0))
        writer.writerow([curve_id, d, s, *l,
                         _fmt(st.min), _fmt(st.q1), _fmt(st.median),
                         _fmt(st.q3), _fmt(st.max), _fmt(st.mean), st.count])
    return buf.getvalue()


def _cmd_bench(args) -> int:
    d = args.d
    if args.side is not None:
        s = args.side
    elif args.full_scale:
        s = 1024 if d == 2 else 512
    else:
        s = 256 if d == 2 else 64
    if args.curves:
        curves = tuple(args.curves.split(","))
    else:
        curves = ("onion2d", "hilbert2d") if d == 2 else ("onion3d", "hilbert3d")
    sizes = _parse_ints(args.sizes, "--sizes") if args.sizes else None
    if sizes is None and args.experiment == "random-cubes" and args.full_scale:
        sizes = full_scale_cube_sizes(d)

    ratios = [None]
    if args.experiment == "fixed-ratio":
        if args.rho_list in ("paper", "default"):
            ratios = list(DEFAULT_RATIOS)
        elif args.rho_list:
            ratios = [Fraction(p) for p in args.rho_list.split(",")]
        elif args.ratio:
            ratios = [Fraction(args.ratio)]
        else:
            return _fail("fixed-ratio needs --ratio or --rho-list")

    all_rows = []
    all_stats = []
    for ratio in ratios:
        config = BenchmarkConfig(
            experiment=args.experiment,
            curves=curves,
            d=d,
            s=s,
            seed=args.seed,
            count=args.count,
            sizes=sizes,
            ratio=ratio,
            step=args.step,
            samples_per_size=args.samples_per_size,
            workers=args.workers,
        )
        result = run_benchmark(config)
        all_rows.extend(result.rows)
        all_stats.extend(result.stats)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    base = args.experiment.replace("-", "_")
    if args.format == "csv":
        rows_path = out_dir / f"{base}_rows.csv"
        stats_path = out_dir / f"{base}_stats.csv"
        rows_path.write_text(_bench_rows_csv(all_rows))
        stats_path.write_text(_bench_stats_csv(all_stats, d, s))
        print(rows_path)
        print(stats_path)
    else:
        payload = {
            "schema_version": 1,
            "experiment": args.experiment,
            "d": d,
            "side": s,
            "seed": args.seed,
            "rows": [
                {"curve": r.curve, "lengths": list(r.lengths),
                 "origin": list(r.origin), "clusters": r.clusters}
                for r in all_rows
            ],
            "stats": [
                {"curve": c, "lengths": list(l) if l else None,
                 "min": st.min, "q1": st.q1, "median": st.median,
                 "q3": st.q3, "max": st.max, "mean": st.mean, "count": st.count}
                for c, l, st in all_stats
            ],
        }
        path = out_dir / f"{base}.json"
        path.write_text(json.dumps(payload, indent=2))
        print(path)
    return 0


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfclust",
        description="Space-filling-curve clustering analysis toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="map a cell to its rank or a rank to its cell")
    p_map.add_argument("curve", choices=SUPPORTED_CURVES)
    p_map.add_argument("--side", "-s", type=int, required=True)
    p_map.add_argument("--cell", help="comma-separated coordinates")
    p_map.add_argument("--rank", type=int)
    p_map.set_defaults(func=_cmd_map)

    p_cluster = sub.add_parser("cluster", help="interval decomposition of one query")
    p_cluster.add_argument("curve", choices=SUPPORTED_CURVES)
    p_cluster.add_argument("--side", "-s", type=int, required=True)
    p_cluster.add_argument("--origin", required=True, help="comma-separated coordinates")
    p_cluster.add_argument("--lengths", required=True, help="comma-separated side lengths")
    p_cluster.add_argument("--format", choices=("json", "csv"), default="json")
    p_cluster.set_defaults(func=_cmd_cluster)

    p_verify = sub.add_parser("verify", help="run verification sweeps")
    p_verify.add_argument("--scope", choices=SCOPES, default="all")
    p_verify.add_argument("--max-side", type=int, default=8)
    p_verify.add_argument("--sides", help="comma-separated sides for formula accuracy")
    p_verify.set_defaults(func=_cmd_verify)

    p_bounds = sub.add_parser("bounds", help="closed-form values and lower bounds")
    p_bounds.add_argument("--d", type=int, choices=(2, 3), required=True)
    p_bounds.add_argument("--side", "-s", type=int, required=True)
    p_bounds.add_argument("--lengths", "-l", required=True,
                          help="comma-separated lengths (one value = cube)")
    p_bounds.add_argument("--format", choices=("json", "csv"), default="json")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_bench = sub.add_parser("bench", help="run a benchmark experiment")
    p_bench.add_argument("--experiment", required=True,
                         choices=("random-cubes", "fixed-ratio", "random-corners"))
    p_bench.add_argument("--d", type=int, choices=(2, 3), default=2)
    p_bench.add_argument("--side", "-s", type=int)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--curves", help="comma-separated curve ids")
    p_bench.add_argument("--count", type=int, default=1000,
                         help="queries per size (cubes) or in total (corners)")
    p_bench.add_argument("--sizes", help="comma-separated cube sizes")
    p_bench.add_argument("--ratio", help="side ratio for fixed-ratio")
    p_bench.add_argument("--rho-list",
                         help="'default' (alias 'paper') for the standard ratio set, "
                              "or comma-separated ratios")
    p_bench.add_argument("--step", type=int, default=50)
    p_bench.add_argument("--samples-per-size", type=int, default=20)
    p_bench.add_argument("--workers", type=int, default=_default_workers())
    p_bench.add_argument("--full-scale", "--paper-scale", dest="full_scale",
                         action="store_true",
                         help="full-scale defaults (2D side 1024, 3D side 512)")
    p_bench.add_argument("--out-dir", default="bench_out")
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
