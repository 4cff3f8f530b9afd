"""Shared CSV loading and validation for the figure scripts.

The scripts consume artifacts produced by the `tomorisk` CLI and never
recompute any risk numbers themselves; they fail fast when a file does not
match the documented schema.
"""

import csv
import sys

DISK_COLUMNS = ["design", "N", "angle_deg", "radius", "risk_a", "risk_b", "diff"]
SWEEP_COLUMNS = ["design", "N", "axis_x", "axis_y", "axis_z", "radius",
                 "estimator_a", "estimator_b", "loss", "risk_a", "risk_b",
                 "scaled_diff"]
BATCH_COLUMNS = ["design", "N", "estimator", "counts", "f", "estimate"]


class SchemaError(Exception):
    pass


def fail(message: str, code: int = 2):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(code)


def load_rows(path: str, columns):
    try:
        with open(path, newline="") as handle:
            reader = csv.DictReader(
                row for row in handle if not row.startswith("#")
            )
            if reader.fieldnames != columns:
                raise SchemaError(
                    f"{path}: expected columns {columns}, found {reader.fieldnames}"
                )
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def parse_float(row, key, path):
    value = row[key]
    try:
        return float(value)
    except (TypeError, ValueError):
        raise SchemaError(f"{path}: column {key!r} holds non-numeric value {value!r}")


def parse_vector(row, key, path):
    try:
        return [float(part) for part in row[key].split(";")]
    except (AttributeError, ValueError):
        raise SchemaError(f"{path}: column {key!r} holds malformed vector {row[key]!r}")


def parse_zoom(text: str):
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise SchemaError(f"bad zoom window {text!r}, expected lo:hi")
    if not lo < hi:
        raise SchemaError(f"bad zoom window {text!r}: lo must be below hi")
    return lo, hi


def deterministic_matplotlib():
    """Agg backend plus fixed SVG ids so identical inputs give identical files."""
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "tomorisk-figures"
    return matplotlib


def save(fig, out_path: str):
    fig.savefig(out_path, metadata={"Date": None} if out_path.endswith(".svg") else None)
