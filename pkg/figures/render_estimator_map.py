#!/usr/bin/env python3
"""Map of frequency vectors and the estimates they produce.

Reads one or more batch-estimate CSVs (`design,N,estimator,counts,f,estimate`,
typically one file per estimator covering every possible dataset) and
scatters the raw frequency vectors alongside each estimator's outputs, with
the unit circle drawn for reference.  Two-axis designs only.
"""

import argparse
import sys
from collections import defaultdict

import figio

MARKERS = ("o", "s", "^", "D", "v")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True)
    parser.add_argument("--out", required=True)
    args = parser.parse_args(argv)

    frequency_points = []
    estimates = defaultdict(list)
    try:
        for path in args.inputs:
            for row in figio.load_rows(path, figio.BATCH_COLUMNS):
                f = figio.parse_vector(row, "f", path)
                est = figio.parse_vector(row, "estimate", path)
                if len(f) != 2 or len(est) != 2:
                    raise figio.SchemaError(
                        f"{path}: estimator map is two-dimensional, got {len(f)} components"
                    )
                frequency_points.append(f)
                estimates[row["estimator"]].append(est)
    except figio.SchemaError as exc:
        figio.fail(str(exc))

    figio.deterministic_matplotlib()
    import matplotlib.pyplot as plt
    import numpy as np

    fig, ax = plt.subplots(figsize=(5.6, 5.6))
    circle = np.linspace(0.0, 2.0 * np.pi, 512)
    ax.plot(np.sin(circle), np.cos(circle), color="0.4", lw=1.0)
    freqs = np.array(frequency_points)
    ax.scatter(freqs[:, 0], freqs[:, 1], s=14, color="0.75", marker="x",
               label="frequency vectors")
    for marker, (name, points) in zip(MARKERS, sorted(estimates.items())):
        pts = np.array(points)
        ax.scatter(pts[:, 0], pts[:, 1], s=22, marker=marker, label=name)
    ax.set_aspect("equal")
    ax.set_xlabel("<X>")
    ax.set_ylabel("<Z>")
    ax.legend(loc="upper left", fontsize=8)
    ax.set_title("estimates over every possible dataset")
    fig.tight_layout()
    figio.save(fig, args.out)
    print(f"wrote {args.out} ({len(frequency_points)} datasets, "
          f"{len(estimates)} estimators)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
