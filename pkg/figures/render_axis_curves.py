#!/usr/bin/env python3
"""Scaled risk-difference curves along an axis, one curve per shot count.

Reads one or more sweep CSVs (`design,N,axis_x,...,scaled_diff`) and plots
scaled_diff against radius, one line per N, legend ordered by N, plus a
second panel zoomed to the configured radial window (default 0.9:1.0).
"""

import argparse
import sys
from collections import defaultdict

import figio


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--zoom", default="0.9:1.0", help="radial window lo:hi")
    args = parser.parse_args(argv)

    try:
        zoom = figio.parse_zoom(args.zoom)
        curves = defaultdict(list)
        axis_label = None
        for path in args.inputs:
            for row in figio.load_rows(path, figio.SWEEP_COLUMNS):
                n = int(figio.parse_float(row, "N", path))
                radius = figio.parse_float(row, "radius", path)
                value = figio.parse_float(row, "scaled_diff", path)
                curves[n].append((radius, value))
                axis_label = (row["axis_x"], row["axis_y"], row["axis_z"])
    except figio.SchemaError as exc:
        figio.fail(str(exc))

    figio.deterministic_matplotlib()
    import matplotlib.pyplot as plt

    fig, (full, zoomed) = plt.subplots(1, 2, figsize=(10.0, 4.2), sharey=False)
    for n in sorted(curves):
        points = sorted(curves[n])
        radii = [p[0] for p in points]
        values = [p[1] for p in points]
        full.plot(radii, values, label=f"N={n}")
        window = [(r, v) for r, v in points if zoom[0] <= r <= zoom[1]]
        if window:
            zoomed.plot([p[0] for p in window], [p[1] for p in window])
    full.axhline(0.0, color="0.6", lw=0.8)
    zoomed.axhline(0.0, color="0.6", lw=0.8)
    full.set_xlabel("radius")
    full.set_ylabel("N (risk_a - risk_b)")
    full.set_title(f"scaled risk difference along axis {axis_label}")
    zoomed.set_xlabel("radius")
    zoomed.set_title(f"zoom: r in [{zoom[0]:g}, {zoom[1]:g}]")
    zoomed.set_xlim(*zoom)
    full.legend(loc="best", fontsize=8)
    fig.tight_layout()
    figio.save(fig, args.out)
    print(f"wrote {args.out} ({len(curves)} curves)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
