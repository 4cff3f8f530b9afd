"""Command-line interface emitting CSV/JSON risk artifacts.

Subcommands: estimate, risk, sweep, disk, hedge-scan, bayes.

Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 impossible data.
Output files are written to a temporary file and atomically renamed, so a
failed run never leaves a partial artifact behind.  Floats are rendered in
shortest round-trip decimal form; divergent risks print as "inf" and risk
differences involving them as "undefined".
"""

import argparse
import concurrent.futures
import json
import math
import os
import sys
import tempfile

import numpy as np

from .bayes import (
    PriorGrid,
    ball_candidates,
    bayes_estimate_grid,
    disk_candidates,
    posterior,
    posterior_mean,
    purity_certificate,
    uniform_prior,
)
from .errors import ImpossibleDataError, SolverFailureError, TomoriskError
from .estimators import (
    MeasurementDesign,
    default_h,
    frequencies,
    make_estimator,
)
from .losses import LossKind
from .risk import (
    _pair_summary,
    enumerate_datasets,
    hedge_scan,
    risk,
    scaled_risk_difference,
    sweep,
)
from .states import embed3, purity

SWEEP_HEADER = ("design,N,axis_x,axis_y,axis_z,radius,"
                "estimator_a,estimator_b,loss,risk_a,risk_b,scaled_diff")
DISK_HEADER = "design,N,angle_deg,radius,risk_a,risk_b,diff"
HEDGE_HEADER = "design,N,h,risk"
BATCH_HEADER = "design,N,estimator,counts,f,estimate"


def fmt(value) -> str:
    """Shortest round-trip decimal; inf as "inf", undefined diffs by name."""
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tomorisk-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return fmt(value)
    return value


def _emit_rows(header: str, rows, out: str, fmt_name: str, footer=()) -> None:
    columns = header.split(",")
    if fmt_name == "json":
        payload = [
            {col: _json_value(val) for col, val in zip(columns, row)} for row in rows
        ]
        body = json.dumps({"columns": columns, "rows": payload, "footer": list(footer)},
                          indent=2)
        _atomic_write(out, body + "\n")
        return
    lines = [header]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    lines += list(footer)
    _atomic_write(out, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# argument plumbing


def _parse_floats(text: str):
    return [float(part) for part in str(text).split(",") if part != ""]


def _parse_counts(text: str):
    return [int(part) for part in str(text).split(",") if part != ""]


def _parse_range(text: str, cast=float):
    """start:stop:step inclusive grid, or a comma list of values."""
    text = str(text)
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"bad range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [cast(round(start + i * step, 12)) for i in range(count)]
    return [cast(float(p)) for p in text.split(",") if p != ""]


def _design(args) -> MeasurementDesign:
    if args.n is None:
        raise ValueError("--n is required")
    maker = MeasurementDesign.rebit if args.design == "rebit" else MeasurementDesign.qubit
    return maker(int(args.n))


def _estimator(name: str, h, design: MeasurementDesign):
    explicit = float(h) if h is not None else None
    return make_estimator(name, explicit, design)


def _axis(args, design: MeasurementDesign) -> np.ndarray:
    if args.axis is None:
        direction = np.zeros(design.naxes)
        direction[-1] = 1.0  # Z axis by default
        return direction
    vec = np.asarray(_parse_floats(args.axis), dtype=float)
    if vec.shape != (design.naxes,):
        raise ValueError(f"--axis needs {design.naxes} components for this design")
    norm = np.linalg.norm(vec)
    if norm == 0:
        raise ValueError("--axis must be nonzero")
    return vec / norm


def _load_config(argv):
    """Pre-scan for --config and return (defaults dict, remaining argv)."""
    remaining = list(argv)
    defaults = {}
    while "--config" in remaining:
        i = remaining.index("--config")
        try:
            path = remaining[i + 1]
        except IndexError:
            raise ValueError("--config needs a path") from None
        del remaining[i:i + 2]
        with open(path) as handle:
            for line in handle:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line {line!r}")
                key, value = line.split("=", 1)
                defaults[key.strip().replace("-", "_")] = value.strip()
    return defaults, remaining


# ---------------------------------------------------------------------------
# subcommands


def cmd_estimate(args) -> int:
    design = _design(args)
    estimator = _estimator(args.estimator, args.h, design)
    if args.all_datasets:
        rows = []
        for counts in enumerate_datasets(design):
            f = frequencies(counts, design)
            est = estimator.estimate(counts, design)
            rows.append((
                design.name, design.shots_per_axis, estimator.label(),
                ";".join(str(int(c)) for c in counts),
                ";".join(fmt(float(x)) for x in f),
                ";".join(fmt(float(x)) for x in est),
            ))
        if not args.out:
            raise ValueError("--all-datasets requires --out")
        _emit_rows(BATCH_HEADER, rows, args.out, args.format)
        return 0
    if args.counts is None:
        raise ValueError("--counts is required")
    counts = _parse_counts(args.counts)
    estimate = estimator.estimate(counts, design)
    print(" ".join(f"{x:.12g}" for x in estimate))
    print(f"purity {purity(estimate):.12g}")
    return 0


def cmd_risk(args) -> int:
    design = _design(args)
    loss = LossKind(args.loss)
    state = np.asarray(_parse_floats(args.state), dtype=float)
    est_a = _estimator(args.estimator_a, args.h, design)
    risk_a = risk(state, est_a, loss, design)
    print(f"risk_a {fmt(risk_a)}")
    if args.estimator_b:
        est_b = _estimator(args.estimator_b, args.h, design)
        risk_b = risk(state, est_b, loss, design)
        print(f"risk_b {fmt(risk_b)}")
        if math.isinf(risk_a) or math.isinf(risk_b):
            print("scaled_diff undefined")
        else:
            print(f"scaled_diff {fmt(scaled_risk_difference(state, est_a, est_b, loss, design))}")
    return 0


def _sweep_rows_for_n(payload):
    design_name, n, axis, radii, name_a, name_b, h, loss_value, ratio = payload
    maker = MeasurementDesign.rebit if design_name == "rebit" else MeasurementDesign.qubit
    design = maker(n)
    est_a = make_estimator(name_a, h, design)
    est_b = make_estimator(name_b, h, design)
    direction = np.asarray(axis, dtype=float)
    surface = sweep(direction, radii, est_a, est_b, loss_value, design)
    axis3 = embed3(direction)
    rows = []
    for row in surface.rows:
        risk_a = row.record_a.risk
        risk_b = row.record_b.risk
        if ratio:
            diff = (risk_a - risk_b) / risk_b if (
                math.isfinite(risk_a) and math.isfinite(risk_b) and risk_b != 0.0
            ) else math.nan
        else:
            diff = row.scaled_diff
        rows.append((design.name, n, float(axis3[0]), float(axis3[1]), float(axis3[2]),
                     row.radius, est_a.label(), est_b.label(), LossKind(loss_value).value,
                     risk_a, risk_b, diff))
    return rows


def cmd_sweep(args) -> int:
    if args.n is None:
        raise ValueError("--n is required")
    shots = _parse_range(args.n, cast=int)
    radii_text = args.radii if args.radii is not None else "0:1:0.01"
    radii = _parse_range(radii_text)
    if not radii:
        raise ValueError("empty radii grid")
    probe = MeasurementDesign.rebit(2) if args.design == "rebit" else MeasurementDesign.qubit(2)
    axis = _axis(args, probe)
    h = float(args.h) if args.h is not None else None
    payloads = [
        (args.design, n, tuple(axis), tuple(radii), args.estimator_a, args.estimator_b,
         h, args.loss, bool(args.ratio))
        for n in shots
    ]
    if args.jobs and args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            chunks = list(pool.map(_sweep_rows_for_n, payloads))
    else:
        chunks = [_sweep_rows_for_n(p) for p in payloads]
    rows = [row for chunk in chunks for row in chunk]
    if not args.out:
        raise ValueError("--out is required")
    _emit_rows(SWEEP_HEADER, rows, args.out, args.format)
    return 0


def _disk_rows_for_angles(payload):
    n, angles, radial_step, name_a, name_b, h, loss_value = payload
    design = MeasurementDesign.rebit(n)
    est_a = make_estimator(name_a, h, design)
    est_b = make_estimator(name_b, h, design)
    loss = LossKind(loss_value)
    radii = [round(i * radial_step, 12) for i in range(int(math.floor(1 / radial_step + 1e-9)) + 1)]
    rows = []
    for angle in angles:
        theta = math.radians(angle)
        direction = np.array([math.sin(theta), math.cos(theta)])
        for radius in radii:
            truth = radius * direction
            risk_a, risk_b, diff = _pair_summary(truth, est_a, est_b, loss, design)
            rows.append((design.name, n, float(angle), radius, risk_a, risk_b, diff))
    return rows


def cmd_disk(args) -> int:
    if args.design != "rebit":
        raise ValueError("disk maps are defined for the rebit design")
    design = _design(args)
    n = design.shots_per_axis
    h = float(args.h) if args.h is not None else None
    angular = float(args.angular_step)
    radial = float(args.radial_step)
    angles = [round(i * angular, 12) for i in range(int(round(360.0 / angular)))]
    jobs = max(int(args.jobs or 1), 1)
    if jobs > 1:
        chunk_size = max(1, math.ceil(len(angles) / jobs))
        chunks = [angles[i:i + chunk_size] for i in range(0, len(angles), chunk_size)]
        payloads = [(n, tuple(chunk), radial, args.estimator_a, args.estimator_b,
                     h, args.loss) for chunk in chunks]
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_disk_rows_for_angles, payloads))
        rows = [row for part in parts for row in part]
    else:
        rows = _disk_rows_for_angles((n, tuple(angles), radial, args.estimator_a,
                                      args.estimator_b, h, args.loss))
    if not args.out:
        raise ValueError("--out is required")
    _emit_rows(DISK_HEADER, rows, args.out, args.format)
    return 0


def cmd_hedge_scan(args) -> int:
    design = _design(args)
    n = design.shots_per_axis
    state = np.asarray(_parse_floats(args.state or ("0,1" if design.naxes == 2 else "0,0,1")),
                       dtype=float)
    h_grid = _parse_range(args.h_grid or "0.001:0.499:0.001")
    pairs = hedge_scan(state, h_grid, args.loss, design)
    rows = [(design.name, n, h, value) for h, value in pairs]
    finite = [(value, h) for h, value in pairs if math.isfinite(value)]
    if not finite:
        raise ValueError("every scanned risk is infinite")
    argmin_h = min(finite)[1]
    footer = (f"# argmin_h={fmt(argmin_h)}", f"# eq10_h={fmt(default_h(n))}")
    if not args.out:
        raise ValueError("--out is required")
    _emit_rows(HEDGE_HEADER, rows, args.out, args.format, footer=footer)
    return 0


def _load_prior(spec: str, dim: int) -> PriorGrid:
    text = spec
    if spec.startswith("@"):
        with open(spec[1:]) as handle:
            text = handle.read()
    elif os.path.exists(spec):
        with open(spec) as handle:
            text = handle.read()
    payload = json.loads(text)
    points = np.asarray(payload["points"], dtype=float)
    if points.ndim != 2 or points.shape[1] != dim:
        raise ValueError(f"prior points must be (M, {dim})")
    if "weights" in payload:
        return PriorGrid(points, np.asarray(payload["weights"], dtype=float))
    return uniform_prior(points)


def cmd_bayes(args) -> int:
    design = _design(args)
    if args.prior is None or args.counts is None:
        raise ValueError("--prior and --counts are required")
    prior = _load_prior(args.prior, design.naxes)
    counts = _parse_counts(args.counts)
    post = posterior(prior, counts, design)
    mean = posterior_mean(post)
    if design.naxes == 2:
        candidates = disk_candidates()
    else:
        candidates = ball_candidates()
    report = {
        "design": design.name,
        "N": design.shots_per_axis,
        "counts": list(map(int, counts)),
        "posterior": {
            "points": [list(map(float, p)) for p in post.points],
            "weights": [float(w) for w in post.weights],
        },
        "posterior_mean": [float(x) for x in mean],
        "posterior_mean_certificate": purity_certificate(mean),
        "bayes_estimates": {},
    }
    for kind in LossKind:
        estimate = bayes_estimate_grid(post, kind, candidates)
        report["bayes_estimates"][kind.value] = {
            "estimate": [float(x) for x in estimate],
            "certificate": purity_certificate(estimate),
        }
    body = json.dumps(report, indent=2) + "\n"
    if args.out:
        _atomic_write(args.out, body)
    else:
        sys.stdout.write(body)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tomorisk",
        description="Estimate qubit/rebit states and compute exact estimator risk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--design", choices=("rebit", "qubit"), default="rebit")
        p.add_argument("--n", help="shots per axis (int; sweep accepts list/range)")
        p.add_argument("--loss", choices=[k.value for k in LossKind], default="hs")
        p.add_argument("--h", type=float, default=None,
                       help="hedging strength for hedged estimators (default 1/N - 1/N^2)")
        p.add_argument("--out", default=None, help="output artifact path")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        p.add_argument("--config", help="flat key=value config file (flags override)")

    p_est = sub.add_parser("estimate", help="estimate a state from counts")
    common(p_est)
    p_est.add_argument("--counts", help="comma-separated '+1' counts per axis")
    p_est.add_argument("--estimator", default="cls",
                       choices=("linear", "cls", "hedged", "mle", "hedged_mle"))
    p_est.add_argument("--all-datasets", action="store_true",
                       help="emit estimates for every possible dataset to --out")
    p_est.set_defaults(func=cmd_estimate)

    p_risk = sub.add_parser("risk", help="exact risk at one true state")
    common(p_risk)
    p_risk.add_argument("--state", required=True, help="true Bloch components, comma-separated")
    p_risk.add_argument("--estimator-a", default="cls")
    p_risk.add_argument("--estimator-b", default=None)
    p_risk.set_defaults(func=cmd_risk)

    p_sweep = sub.add_parser("sweep", help="risk along an axis for one or more N")
    common(p_sweep)
    p_sweep.add_argument("--axis", help="axis direction components, comma-separated")
    p_sweep.add_argument("--radii", help="start:stop:step or comma list (default 0:1:0.01)")
    p_sweep.add_argument("--estimator-a", default="cls")
    p_sweep.add_argument("--estimator-b", default="hedged")
    p_sweep.add_argument("--ratio", action="store_true",
                         help="report (risk_a - risk_b)/risk_b instead of N*(risk_a - risk_b)")
    p_sweep.set_defaults(func=cmd_sweep)

    p_disk = sub.add_parser("disk", help="risk-difference field over the Bloch disk")
    common(p_disk)
    p_disk.add_argument("--estimator-a", default="cls")
    p_disk.add_argument("--estimator-b", default="hedged")
    p_disk.add_argument("--radial-step", default=0.01, type=float)
    p_disk.add_argument("--angular-step", default=2.0, type=float)
    p_disk.set_defaults(func=cmd_disk)

    p_scan = sub.add_parser("hedge-scan", help="risk of hedged(h) over a grid of h")
    common(p_scan)
    p_scan.add_argument("--state", help="true Bloch components (default boundary Z)")
    p_scan.add_argument("--h-grid", help="start:stop:step grid of h (default 0.001:0.499:0.001)")
    p_scan.set_defaults(func=cmd_hedge_scan)

    p_bayes = sub.add_parser("bayes", help="posterior update and grid-Bayes estimates")
    common(p_bayes)
    p_bayes.add_argument("--prior", help="inline JSON or a path to a JSON prior")
    p_bayes.add_argument("--counts", help="comma-separated '+1' counts per axis")
    p_bayes.set_defaults(func=cmd_bayes)

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        defaults, argv = _load_config(argv)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser()
    if defaults:
        for subparser in parser._subparsers._group_actions[0].choices.values():
            overrides = {}
            for arg_action in subparser._actions:
                if arg_action.dest not in defaults:
                    continue
                raw = defaults[arg_action.dest]
                if isinstance(arg_action, argparse._StoreTrueAction):
                    overrides[arg_action.dest] = raw.lower() in ("1", "true", "yes")
                elif arg_action.type is not None:
                    overrides[arg_action.dest] = arg_action.type(raw)
                else:
                    overrides[arg_action.dest] = raw
            subparser.set_defaults(**overrides)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ImpossibleDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except SolverFailureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (TomoriskError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
