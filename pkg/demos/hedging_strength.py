"""Scan the hedging strength h at the boundary state (0, 1).

The risk of the hedged estimator there is a clean quadratic in
s = sqrt(1-h), so the scan exposes both the empirical argmin and how close
the 1/N - 1/N^2 rule of thumb comes to it.
"""

import math

from tomorisk import MeasurementDesign, default_h, hedge_scan


def main():
    grid = [round(0.001 * i, 12) for i in range(1, 500)]
    for n in (2, 4, 10):
        design = MeasurementDesign.rebit(n)
        pairs = hedge_scan((0.0, 1.0), grid, "hs", design)
        best_h, best_risk = min(pairs, key=lambda hv: hv[1])
        rule = default_h(n)
        rule_risk = hedge_scan((0.0, 1.0), [rule], "hs", design)[0][1]
        expected_u = sum(
            math.comb(n, k) * 0.5**n / math.sqrt(1.0 + ((2.0 * k - n) / n) ** 2)
            for k in range(n + 1)
        )
        closed_form = 1.0 - expected_u**2
        print(f"N={n:2d}: scan argmin h = {best_h:.3f} (closed form {closed_form:.6f}), "
              f"risk {best_risk:.8f}; rule h = {rule:.4f}, risk {rule_risk:.8f} "
              f"(+{rule_risk - best_risk:.2e})")


if __name__ == "__main__":
    main()
