"""Probe when the Bayes-optimal estimate under infidelity is pure vs mixed.

A posterior supported only on nearby pure states pushes the optimum onto
the boundary; give any clearly mixed point a few percent of weight and the
optimum detaches from it.  Posterior updates and the grid argmins below are
all exact finite computations.
"""

import numpy as np

from tomorisk import (
    MeasurementDesign,
    bayes_estimate_grid,
    posterior,
    posterior_mean,
    purity_certificate,
    uniform_prior,
)
from tomorisk.bayes import NEAR_BOUNDARY_RADII, disk_candidates


def main():
    design = MeasurementDesign.rebit(4)
    cands = disk_candidates(extra_radii=NEAR_BOUNDARY_RADII)

    angles = np.deg2rad([10.0, 25.0, 40.0, 55.0])
    pure_points = np.stack([np.sin(angles), np.cos(angles)], axis=1)
    prior = uniform_prior(pure_points)
    post = posterior(prior, (3, 4), design)
    print("pure-supported posterior weights:", np.round(post.weights, 4))
    for loss in ("hs", "infid"):
        est = bayes_estimate_grid(post, loss, cands)
        print(f"  {loss}: estimate {np.round(est, 4)} -> {purity_certificate(est)}")
    print("  (the mean itself is", np.round(posterior_mean(post), 4),
          "- mixed, which is why squared-distance losses never report pure)")

    mixed = uniform_prior(np.vstack([pure_points, [[0.0, 0.0]]]))
    post2 = posterior(mixed, (3, 4), design)
    est2 = bayes_estimate_grid(post2, "infid", cands)
    print("add the maximally mixed state to the support:")
    print(f"  infid: estimate {np.round(est2, 4)} -> {purity_certificate(est2)} "
          f"(norm {np.linalg.norm(est2):.4f})")


if __name__ == "__main__":
    main()
