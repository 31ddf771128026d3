"""Command-line surface: evidence p-values from files or summary statistics.

Subcommands::

    pval      univariate p-value for a region, from a one-column CSV
    pval2d    depth-based bivariate p-value, from a two-column CSV + region config
    bioeq     two one-sided equivalence p-value from inline summary statistics
    simulate  Monte Carlo uniformity run; writes a JSON summary and a QQ CSV

Every report is JSON with a ``schema`` field and the full resolved
configuration (seed included), so any report can be reproduced from itself.
Exit status is 0 exactly when a report was produced; otherwise a one-line
JSON error with a machine-readable ``category`` goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import support
from .cd import make_asymptotic_normal_cd, make_bootstrap_cd, make_student_t_cd
from .depth import bootstrap_cloud, depth_of, p_multi
from .regions import (
    Halfspace,
    NullRegion,
    PointSet,
    QuadrantComplement,
    Rectangle,
    RegionND,
    format_region,
    parse_region,
)
from .simulate import PART2_COV, ExperimentSpec, run_experiment, write_qq_csv

SCHEMA_VERSION = 1

METHOD_TOKENS = {
    "full": "full",
    "direct": "direct",
    "max-direct": "max-direct",
    "pstar": "p-star",
    "pmax": "p-max",
}


class CliError(Exception):
    def __init__(self, category: str, message: str):
        super().__init__(message)
        self.category = category


# -- input handling ----------------------------------------------------------


def read_csv_columns(path, columns: int) -> np.ndarray:
    """Read a comma-separated numeric table with an optional header row.

    Rows with the wrong arity, non-numeric fields, or NaN values abort the
    read; silently dropping rows would corrupt n.
    """
    try:
        with open(path) as fh:
            lines = [ln.strip() for ln in fh]
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc}") from None
    rows = []
    for lineno, line in enumerate(lines, start=1):
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        try:
            values = [float(f) for f in fields]
        except ValueError:
            if lineno == 1 and not rows:
                continue  # header
            raise CliError("parse", f"{path}:{lineno}: non-numeric row {line!r}") from None
        if len(values) != columns:
            raise CliError(
                "parse", f"{path}:{lineno}: expected {columns} column(s), got {len(values)}"
            )
        if any(math.isnan(v) for v in values):
            raise CliError("parse", f"{path}:{lineno}: NaN values are rejected")
        rows.append(values)
    if not rows:
        raise CliError("parse", f"{path}: no numeric rows")
    data = np.array(rows, dtype=float)
    return data[:, 0] if columns == 1 else data


def _parse_vector(text: str, key: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise CliError("parse", f"config key {key!r}: bad number in {text!r}") from None


def _parse_points(text: str, key: str) -> list[list[float]]:
    return [_parse_vector(part, key) for part in text.split(";") if part.strip()]


def load_region_config(path) -> tuple[RegionND, np.ndarray | None]:
    """Key-value region config; returns the region and an optional covariance.

    Keys: ``shape`` (rectangle | halfspace | quadrant-complement | points),
    rectangle ``lo``/``hi``, halfspace ``normal``/``offset``,
    quadrant-complement ``corner``, point list ``points``; optional
    ``corners`` (semicolon-separated points) and ``cov`` (rows separated by
    semicolons) for simulation runs.
    """
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError("io", f"cannot read {path}: {exc}") from None
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError("parse", f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        kv[key] = value
    shape = kv.get("shape")
    if shape is None:
        raise CliError("parse", f"{path}: missing required key 'shape'")
    corners = _parse_points(kv["corners"], "corners") if "corners" in kv else None
    try:
        if shape == "rectangle":
            region = Rectangle(
                lower=_parse_vector(kv["lo"], "lo"),
                upper=_parse_vector(kv["hi"], "hi"),
                corners=corners,
            )
        elif shape == "halfspace":
            region = Halfspace(
                normal=_parse_vector(kv["normal"], "normal"),
                offset=float(kv["offset"]),
                corners=corners,
            )
        elif shape == "quadrant-complement":
            region = QuadrantComplement(corner=_parse_vector(kv["corner"], "corner"),
                                        corners=corners)
        elif shape == "points":
            region = PointSet(points=_parse_points(kv["points"], "points"), corners=corners)
        else:
            raise CliError("parse", f"{path}: unknown shape {shape!r}")
    except KeyError as exc:
        raise CliError("parse", f"{path}: shape {shape!r} needs key {exc.args[0]!r}") from None
    except ValueError as exc:
        raise CliError("validation", f"{path}: {exc}") from None
    cov = None
    if "cov" in kv:
        rows = _parse_points(kv["cov"], "cov")
        cov = np.array(rows, dtype=float)
    return region, cov


def emit_report(report: dict, out_path) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# -- subcommands --------------------------------------------------------------


def cmd_pval(args) -> dict:
    sample = read_csv_columns(args.input, 1)
    if sample.size < 2:
        raise CliError("validation", "need at least 2 observations")
    try:
        region = parse_region(args.region)
    except ValueError as exc:
        raise CliError("parse", str(exc)) from None
    n = int(sample.size)
    mean, sd = float(sample.mean()), float(sample.std(ddof=1))
    if args.cd == "t":
        cd = make_student_t_cd(n, mean, sd)
    elif args.cd == "z":
        cd = make_asymptotic_normal_cd(n, mean, sd)
    else:
        cd = make_bootstrap_cd(sample, args.boot_reps, seed=args.seed)
    method = METHOD_TOKENS[args.method]
    rep = support.p_value(cd, region)
    if method == "full":
        p = rep.p
    elif method == "direct":
        p = support.direct_support(cd, region)
    elif method == "max-direct":
        p = support.max_direct_p(cd, region)
    elif method == "p-star":
        p = support.p_star(cd, region)
    else:
        p = support.p_max_uni(cd, region)
    report = {
        "schema": SCHEMA_VERSION,
        "command": "pval",
        "config": {
            "input": str(args.input),
            "region": format_region(region),
            "method": args.method,
            "cd": args.cd,
            "boot_reps": args.boot_reps,
            "seed": args.seed,
        },
        "n": n,
        "mean": mean,
        "sd": sd,
        "pieces": [
            {
                "piece": format_region(NullRegion((ps.piece,))),
                "direct": ps.direct,
                "indirect": ps.indirect,
                "full": ps.full,
            }
            for ps in rep.pieces
        ],
        "p": float(p),
        "method": method,
    }
    if method == "direct":
        narrow = [ps.piece for ps in rep.pieces if ps.piece.width < 2.0 * cd.scale]
        if narrow:
            caution = (
                "direct support underestimates evidence on pieces narrower than "
                "twice the CD scale; the full-support method is recommended"
            )
            report["caution"] = caution
            print(f"caution: {caution}", file=sys.stderr)
    return report


def cmd_pval2d(args) -> dict:
    data = read_csv_columns(args.input, 2)
    region, _ = load_region_config(args.config)
    try:
        cloud = bootstrap_cloud(data, args.boot_reps, seed=args.seed)
        depths = _chunked_depths(cloud, args.depth, args.threads)
        base = p_multi(cloud, args.depth, region, _depths=depths)
        result = {
            "m": cloud.m,
            "depth": args.depth,
            "esp": base.esp,
            "tail": base.tail,
            "depth_floor": base.depth_floor,
            "floor_source": base.floor_source,
            "p_multi": base.p,
        }
        if region.corners.size:
            corner_depths = depth_of(cloud, region.corners, args.depth)
            corner_p = [float((depths <= d).mean()) for d in corner_depths]
            result["corner_p"] = corner_p
            result["p_max"] = max([base.p] + corner_p)
    except ValueError as exc:
        raise CliError("validation", str(exc)) from None
    return {
        "schema": SCHEMA_VERSION,
        "command": "pval2d",
        "config": {
            "input": str(args.input),
            "region": region.describe(),
            "depth": args.depth,
            "boot_reps": args.boot_reps,
            "seed": args.seed,
        },
        "n": int(data.shape[0]),
        **result,
    }


def _chunked_depths(cloud, kind: str, threads: int) -> np.ndarray:
    """Replicate depths computed in fixed chunks; identical for any thread count."""
    from .simulate import parallel_map_indexed

    pts = cloud.points
    chunk = 256
    starts = list(range(0, pts.shape[0], chunk))
    parts = parallel_map_indexed(
        lambda i: depth_of(cloud, pts[starts[i]: starts[i] + chunk], kind),
        len(starts),
        threads,
    )
    return np.concatenate(parts)


def cmd_bioeq(args) -> dict:
    try:
        cd = support.bioeq_cd(args.n1, args.n2, args.mean_t, args.mean_r, args.var_d)
        if not args.lower < args.upper:
            raise ValueError(
                f"equivalence limits must satisfy lower < upper, got [{args.lower}, {args.upper}]"
            )
    except ValueError as exc:
        raise CliError("validation", str(exc)) from None
    lower_tail = float(cd.cdf(args.lower))
    upper_tail = float(1.0 - cd.cdf(args.upper))
    p = max(lower_tail, upper_tail)
    alphas = _parse_vector(args.alphas, "--alphas")
    return {
        "schema": SCHEMA_VERSION,
        "command": "bioeq",
        "config": {
            "n1": args.n1,
            "n2": args.n2,
            "mean_t": args.mean_t,
            "mean_r": args.mean_r,
            "var_d": args.var_d,
            "lower": args.lower,
            "upper": args.upper,
            "alphas": alphas,
        },
        "df": cd.df,
        "lower_tail": lower_tail,
        "upper_tail": upper_tail,
        "p": p,
        "equivalence_supported": {f"{a:g}": bool(p <= a) for a in alphas},
    }


def cmd_simulate(args) -> dict:
    truth = _parse_vector(args.true_mean, "--true-mean")
    if args.config:
        region, cov = load_region_config(args.config)
        spec = ExperimentSpec(
            model="bivariate-normal",
            true_mean=truth,
            region=region,
            n=args.n,
            reps=args.reps,
            method=METHOD_TOKENS.get(args.method, args.method),
            depth=args.depth,
            boot_m=args.boot_reps,
            seed=args.seed,
            cov=PART2_COV if cov is None else cov,
        )
        region_desc = region.describe()
    elif args.region:
        try:
            region = parse_region(args.region)
        except ValueError as exc:
            raise CliError("parse", str(exc)) from None
        if len(truth) != 1:
            raise CliError("validation", "univariate runs need a scalar --true-mean")
        spec = ExperimentSpec(
            model="univariate-normal",
            true_mean=truth[0],
            region=region,
            n=args.n,
            reps=args.reps,
            method=METHOD_TOKENS[args.method],
            cd=args.cd,
            boot_m=args.boot_reps,
            seed=args.seed,
        )
        region_desc = format_region(region)
    else:
        raise CliError("validation", "simulate needs --region or --config")
    try:
        report = run_experiment(spec, threads=args.threads)
    except ValueError as exc:
        raise CliError("validation", str(exc)) from None
    qq_path = args.qq_out or (str(args.out) + ".qq.csv" if args.out else None)
    if qq_path:
        write_qq_csv(report, qq_path)
    return {
        "schema": SCHEMA_VERSION,
        "command": "simulate",
        "config": {
            "model": spec.model,
            "true_mean": truth,
            "region": region_desc,
            "n": spec.n,
            "reps": spec.reps,
            "method": spec.method,
            "cd": spec.cd,
            "depth": spec.depth,
            "boot_reps": spec.boot_m,
            "seed": spec.seed,
            "cov": np.asarray(spec.cov).tolist() if spec.model == "bivariate-normal" else None,
        },
        "qq_csv": qq_path,
        **report.summary(),
    }


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdsupport", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, region=False, input_file=False, config=False):
        if input_file:
            p.add_argument("--input", required=True, help="CSV input path")
        if region:
            p.add_argument("--region", help="region text, e.g. '[-0.01,0.01];0.5'")
        if config:
            p.add_argument("--config", help="key-value region config file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="report path (default: stdout)")

    p = sub.add_parser("pval", help="univariate region p-value from a CSV sample")
    common(p, region=True, input_file=True)
    p.add_argument("--method", choices=sorted(METHOD_TOKENS), default="full")
    p.add_argument("--cd", choices=("t", "z", "bootstrap"), default="t")
    p.add_argument("--boot-reps", type=int, default=2000)
    p.set_defaults(fn=cmd_pval)

    p = sub.add_parser("pval2d", help="depth-based bivariate p-value from a CSV sample")
    common(p, input_file=True, config=True)
    p.add_argument("--depth", choices=("mahalanobis", "simplicial"), default="mahalanobis")
    p.add_argument("--boot-reps", type=int, default=2000)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_pval2d)

    p = sub.add_parser("bioeq", help="equivalence p-value from summary statistics")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--mean-t", type=float, required=True)
    p.add_argument("--mean-r", type=float, required=True)
    p.add_argument("--var-d", type=float, required=True)
    p.add_argument("--lower", type=float, required=True)
    p.add_argument("--upper", type=float, required=True)
    p.add_argument("--alphas", default="0.01,0.05,0.1")
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(fn=cmd_bioeq)

    p = sub.add_parser("simulate", help="Monte Carlo uniformity run")
    common(p, region=True, config=True)
    p.add_argument("--true-mean", default="0", help="scalar, or 'a,b' for bivariate")
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--method", default="full",
                   choices=sorted(METHOD_TOKENS) + ["multi", "multi-max"])
    p.add_argument("--cd", choices=("t", "z", "bootstrap"), default="t")
    p.add_argument("--depth", choices=("mahalanobis", "simplicial"), default="simplicial")
    p.add_argument("--boot-reps", type=int, default=500)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--qq-out", help="QQ CSV path (default: <out>.qq.csv)")
    p.set_defaults(fn=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.fn(args)
    except CliError as exc:
        print(json.dumps({"error": {"category": exc.category, "message": str(exc)}}),
              file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": {"category": "validation", "message": str(exc)}}),
              file=sys.stderr)
        return 1
    emit_report(report, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
