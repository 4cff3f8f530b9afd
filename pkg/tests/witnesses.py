"""Posterior generators for the Bayes-optimality witness suites.

Under the square-root fidelity convention implemented here, the
"pure posterior => pure Bayes estimate" behavior needs the pure support to
sit inside an open half-space: a positive combination of directions within
a cap of half-angle < 90 degrees cannot vanish, so the posterior-averaged
fidelity has no interior stationary point.  (A symmetric posterior, e.g.
three equal weights at 120-degree spacing, genuinely prefers the center.)

The "mixed support => mixed Bayes estimate" pull is a square-root kink
whose depth scales like (weight * sqrt(det rho))^2, so witness candidate
grids must include radii very close to 1 to resolve it.
"""

import numpy as np

from tomorisk import PriorGrid
from tomorisk.bayes import NEAR_BOUNDARY_RADII, disk_candidates

CAP_HALF_ANGLE_DEG = 60.0


def random_pure_cap_posterior(rng, n_points=6):
    """Pure rebit points within a random cap, Dirichlet weights."""
    center = rng.uniform(0.0, 360.0)
    offsets = rng.uniform(-CAP_HALF_ANGLE_DEG, CAP_HALF_ANGLE_DEG, size=n_points)
    angles = np.deg2rad(center + offsets)
    points = np.stack([np.sin(angles), np.cos(angles)], axis=1)
    weights = rng.dirichlet(np.ones(n_points))
    return PriorGrid(points, weights)


def random_mixed_support_posterior(rng, n_pure=5, interior_weight_floor=0.05):
    """Posterior with pure points plus one clearly mixed interior point.

    The interior point has Bloch norm at most 0.8 and weight at least
    ``interior_weight_floor``.
    """
    angles = np.deg2rad(rng.uniform(0.0, 360.0, size=n_pure))
    pure = np.stack([np.sin(angles), np.cos(angles)], axis=1)
    direction = rng.standard_normal(2)
    direction /= np.linalg.norm(direction)
    interior = rng.uniform(0.0, 0.8) * direction
    points = np.vstack([pure, interior[None, :]])
    w_interior = rng.uniform(interior_weight_floor, 0.25)
    rest = rng.dirichlet(np.ones(n_pure)) * (1.0 - w_interior)
    weights = np.concatenate([rest, [w_interior]])
    return PriorGrid(points, weights)


def witness_candidates():
    """Default disk grid enriched with near-boundary radii."""
    return disk_candidates(radial_step=0.02, angular_step_deg=2.0,
                           extra_radii=NEAR_BOUNDARY_RADII)
