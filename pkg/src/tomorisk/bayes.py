"""Discrete-grid Bayesian machinery: posteriors, means, and grid argmins.

Priors and posteriors are finite weighted grids of Bloch points.  That is
enough to exhibit the structural behavior of Bayes estimators numerically:
for squared-distance losses the posterior mean minimizes the posterior
Bayes risk, and under infidelity the optimum sits on the boundary for
purely-supported posteriors but strictly inside once a clearly mixed point
carries weight.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLossError, ImpossibleDataError, InvalidParameterError
from .estimators import MeasurementDesign, validate_counts
from .losses import bloch_loss_fn
from .risk import dataset_probability
from .states import PURE_THRESHOLD, validate_bloch

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class PriorGrid:
    """Weighted grid of Bloch points; weights sum to 1."""

    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        w = np.asarray(self.weights, dtype=float)
        if pts.ndim != 2 or pts.shape[1] not in (2, 3):
            raise InvalidParameterError(f"points must be (M, 2) or (M, 3), got {pts.shape}")
        if w.shape != (pts.shape[0],):
            raise InvalidParameterError("one weight per point required")
        if np.any(w < 0.0):
            raise InvalidParameterError("weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > _WEIGHT_TOL:
            raise InvalidParameterError(f"weights sum to {w.sum()!r}, expected 1")
        for row in pts:
            validate_bloch(row)
        pts = pts.copy()
        w = w.copy()
        pts.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def uniform_prior(points) -> PriorGrid:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return PriorGrid(pts, np.full(pts.shape[0], 1.0 / pts.shape[0]))


def posterior(prior: PriorGrid, counts, design: MeasurementDesign) -> PriorGrid:
    """Reweight the grid by the likelihood of the counts and renormalize."""
    c = validate_counts(counts, design)
    likelihoods = np.array(
        [dataset_probability(c, point, design) for point in prior.points]
    )
    raw = prior.weights * likelihoods
    total = float(raw.sum())
    if total <= 0.0:
        raise ImpossibleDataError(
            "every prior point assigns zero probability to the observed counts"
        )
    return PriorGrid(prior.points, raw / total)


def posterior_mean(grid: PriorGrid) -> np.ndarray:
    """Weight-averaged Bloch point; always a valid state by convexity."""
    return grid.weights @ grid.points


def bayes_estimate_grid(grid: PriorGrid, loss, candidates) -> np.ndarray:
    """Candidate minimizing the posterior-averaged loss.

    Ties are broken by first occurrence in candidate order.  Raises
    DegenerateLossError when every candidate has infinite Bayes risk.
    """
    cands = np.atleast_2d(np.asarray(candidates, dtype=float))
    if cands.shape[0] == 0:
        raise InvalidParameterError("candidate list is empty")
    if cands.shape[1] != grid.dim:
        raise InvalidParameterError("candidate dimension does not match the grid")
    fn = bloch_loss_fn(loss)
    objective = np.zeros(cands.shape[0])
    for weight, point in zip(grid.weights, grid.points):
        if weight == 0.0:
            continue
        objective += weight * np.asarray(fn(point, cands), dtype=float)
    if not np.any(np.isfinite(objective)):
        raise DegenerateLossError("every candidate has infinite posterior loss")
    best = int(np.argmin(np.where(np.isfinite(objective), objective, np.inf)))
    return cands[best].copy()


def purity_certificate(estimate) -> str:
    """Decidable pure/mixed tag: "pure" iff the Bloch norm is >= 1 - 1e-9."""
    arr = validate_bloch(estimate)
    return "pure" if float(np.linalg.norm(arr)) >= PURE_THRESHOLD else "mixed"


# Radii appended near the boundary when building witness candidate grids.
# Under infidelity, a posterior with a small weight w on a mixed point pulls
# the optimum inside by a depth on the order of (w * sqrt(det rho))^2, which
# sits far below any uniform radial step.
NEAR_BOUNDARY_RADII = (0.99, 0.995, 0.998, 0.999, 0.9995, 0.99985, 0.9999)


def disk_candidates(radial_step: float = 0.02, angular_step_deg: float = 2.0,
                    extra_radii=()) -> np.ndarray:
    """Polar candidate grid over the Bloch disk (2-vectors)."""
    radii = _radial_grid(radial_step, extra_radii)
    angles = np.deg2rad(np.arange(0.0, 360.0, angular_step_deg))
    directions = np.stack([np.sin(angles), np.cos(angles)], axis=1)
    cands = [np.zeros((1, 2))]
    for radius in radii:
        if radius > 0.0:
            cands.append(radius * directions)
    return np.concatenate(cands, axis=0)


def ball_candidates(n_directions: int = 400, radial_step: float = 0.02,
                    extra_radii=()) -> np.ndarray:
    """Fibonacci-sphere directions crossed with a radial grid (3-vectors)."""
    directions = fibonacci_sphere(n_directions)
    radii = _radial_grid(radial_step, extra_radii)
    cands = [np.zeros((1, 3))]
    for radius in radii:
        if radius > 0.0:
            cands.append(radius * directions)
    return np.concatenate(cands, axis=0)


def fibonacci_sphere(n: int) -> np.ndarray:
    """n roughly equidistributed unit 3-vectors."""
    if n < 1:
        raise InvalidParameterError("need at least one direction")
    i = np.arange(n) + 0.5
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - 2.0 * i / n
    rho = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.stack([rho * np.cos(phi), rho * np.sin(phi), z], axis=1)


def _radial_grid(radial_step: float, extra_radii) -> np.ndarray:
    if radial_step <= 0:
        raise InvalidParameterError("radial step must be positive")
    count = int(math.floor(1.0 / radial_step + 1e-9)) + 1
    radii = {round(i * radial_step, 12) for i in range(count)}
    radii.add(1.0)
    radii.update(float(x) for x in extra_radii)
    if any(not (0.0 <= x <= 1.0) for x in radii):
        raise InvalidParameterError("radii must lie in [0, 1]")
    return np.array(sorted(radii))
