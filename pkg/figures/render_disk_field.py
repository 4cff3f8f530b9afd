#!/usr/bin/env python3
"""Polar heat map of the risk-difference field over the Bloch disk.

Reads one disk CSV (`design,N,angle_deg,radius,risk_a,risk_b,diff`) and
renders `diff` on a diverging color scale anchored at zero, so a field
that is positive everywhere is visually unambiguous.  By default the
script refuses to plot a field whose minimum is not strictly positive:
that guard keeps a broken dominance claim from being rendered silently.
Pass --no-dominance-check to render arbitrary fields (e.g. differences of
incomparable estimators).
"""

import argparse
import sys

import numpy as np

import figio


def build_field(rows, path):
    angles = sorted({figio.parse_float(r, "angle_deg", path) for r in rows})
    radii = sorted({figio.parse_float(r, "radius", path) for r in rows})
    values = {}
    for row in rows:
        key = (figio.parse_float(row, "angle_deg", path),
               figio.parse_float(row, "radius", path))
        values[key] = figio.parse_float(row, "diff", path)
    field = np.empty((len(angles), len(radii)))
    for i, angle in enumerate(angles):
        for j, radius in enumerate(radii):
            if (angle, radius) not in values:
                raise figio.SchemaError(
                    f"{path}: incomplete polar grid, missing ({angle}, {radius})"
                )
            field[i, j] = values[(angle, radius)]
    return np.asarray(angles), np.asarray(radii), field


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="inputs", nargs="+", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--no-dominance-check", action="store_true",
                        help="permit zero or negative field values")
    args = parser.parse_args(argv)
    if len(args.inputs) != 1:
        figio.fail("disk renderer takes exactly one CSV")

    try:
        rows = figio.load_rows(args.inputs[0], figio.DISK_COLUMNS)
        angles, radii, field = build_field(rows, args.inputs[0])
    except figio.SchemaError as exc:
        figio.fail(str(exc))

    minimum = float(field.min())
    if not args.no_dominance_check and not minimum > 0.0:
        figio.fail(
            f"dominance violated: min(diff) = {minimum!r} is not > 0 "
            "(use --no-dominance-check to render anyway)",
            code=1,
        )

    figio.deterministic_matplotlib()
    import matplotlib.pyplot as plt
    from matplotlib.colors import TwoSlopeNorm

    # wrap the angular axis so the disk closes seamlessly
    step = angles[1] - angles[0] if len(angles) > 1 else 360.0
    theta = np.deg2rad(np.append(angles, angles[-1] + step))
    field_closed = np.vstack([field, field[:1]])

    limit = float(np.max(np.abs(field))) or 1e-15
    norm = TwoSlopeNorm(vmin=-limit, vcenter=0.0, vmax=limit)

    fig, ax = plt.subplots(subplot_kw={"projection": "polar"}, figsize=(6.2, 5.2))
    mesh = ax.pcolormesh(theta, radii, field_closed.T, norm=norm, cmap="RdBu_r",
                         shading="nearest")
    ax.set_theta_zero_location("N")
    ax.set_theta_direction(-1)
    design = rows[0]["design"]
    n = rows[0]["N"]
    ax.set_title(f"risk difference over the {design} disk (N={n})\n"
                 f"min {minimum:.3g}, max {field.max():.3g}")
    fig.colorbar(mesh, ax=ax, label="risk_a - risk_b")
    fig.tight_layout()
    figio.save(fig, args.out)
    print(f"wrote {args.out} ({field.size} cells, min diff {minimum:.6g})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
