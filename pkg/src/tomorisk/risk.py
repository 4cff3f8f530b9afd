"""Exact frequentist risk by full enumeration of the dataset space.

For a design with k axes and N shots per axis there are (N+1)^k possible
count tuples.  The risk of an estimator at a true state r is the exact sum

    R(r) = sum_D  Pr(D | r) * L(rho_r, rho_hat(D))

over that enumeration.  Dataset probabilities are products of per-axis
binomials, computed in log space with log-gamma binomial coefficients so
that N in the hundreds cannot overflow.  Terms with Pr(D|r) = 0 contribute
nothing even when the loss is infinite (0 * inf := 0 here); the result is
+inf exactly when some dataset with positive probability has infinite loss.

Risk *differences* between two estimators are accumulated from per-dataset
loss differences rather than by subtracting two separately rounded sums;
interior datasets cancel exactly and the tiny-but-positive differences that
occur deep inside the Bloch ball survive in floating point.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, xlogy

from .errors import InvalidParameterError, UndefinedDifferenceError
from .estimators import EstimatorSpec, MeasurementDesign, validate_counts
from .losses import LossKind, bloch_loss_fn
from .states import validate_bloch


def enumerate_datasets(design: MeasurementDesign) -> np.ndarray:
    """All (N+1)^k count tuples in lexicographic order, shape (M, k)."""
    n = design.shots_per_axis
    grids = np.meshgrid(*[np.arange(n + 1)] * design.naxes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _axis_log_pmf(r_component: float, n: int) -> np.ndarray:
    """Log binomial pmf over counts 0..N for one axis at Bloch component r_w."""
    counts = np.arange(n + 1)
    p = min(max((1.0 + r_component) / 2.0, 0.0), 1.0)
    log_binom = gammaln(n + 1) - gammaln(counts + 1) - gammaln(n - counts + 1)
    return log_binom + xlogy(counts, p) + xlogy(n - counts, 1.0 - p)


def dataset_probabilities(r, design: MeasurementDesign) -> np.ndarray:
    """Probabilities of every dataset in enumeration order at true state r."""
    truth = _design_state(r, design)
    n = design.shots_per_axis
    counts = _counts_table(design)
    log_p = np.zeros(counts.shape[0])
    for w in range(design.naxes):
        log_p += _axis_log_pmf(truth[w], n)[counts[:, w]]
    return np.exp(log_p)


def dataset_probability(counts, r, design: MeasurementDesign) -> float:
    """Probability of a single dataset at true state r."""
    c = validate_counts(counts, design)
    truth = _design_state(r, design)
    n = design.shots_per_axis
    total = 0.0
    for w in range(design.naxes):
        total += float(_axis_log_pmf(truth[w], n)[c[w]])
    return float(np.exp(total))


def _design_state(r, design: MeasurementDesign) -> np.ndarray:
    truth = validate_bloch(r)
    if truth.shape[0] != design.naxes:
        raise InvalidParameterError(
            f"state has {truth.shape[0]} components but design has {design.naxes} axes"
        )
    return truth


@lru_cache(maxsize=None)
def _counts_table(design: MeasurementDesign) -> np.ndarray:
    table = enumerate_datasets(design)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def estimate_table(estimator: EstimatorSpec, design: MeasurementDesign) -> np.ndarray:
    """Per-dataset estimates for a design, cached once per (estimator, design).

    Estimates do not depend on the true state, so sweeps over many true
    states reuse this table.
    """
    counts = _counts_table(design)
    n = design.shots_per_axis
    f = (2.0 * counts - n) / n
    if estimator.kind == "linear":
        table = f.copy()
    elif estimator.kind in ("cls", "hedged"):
        norm_sq = np.einsum("ij,ij->i", f, f)
        boundary = norm_sq >= 1.0
        scale = 1.0 if estimator.kind == "cls" else np.sqrt(1.0 - estimator.h)
        table = f.copy()
        norms = np.sqrt(norm_sq[boundary])
        table[boundary] = scale * f[boundary] / norms[:, None]
    else:
        from .estimators import apply_hedging, mle

        table = np.empty_like(f)
        for i, row in enumerate(counts):
            est = mle(row, design)
            if estimator.kind == "hedged_mle":
                est = apply_hedging(est, estimator.h)
            table[i] = est
    table.flags.writeable = False
    return table


def expected_loss(probs, losses) -> float:
    """Probability-weighted loss with the 0 * inf := 0 convention."""
    probs = np.asarray(probs, dtype=float)
    losses = np.asarray(losses, dtype=float)
    infinite = np.isinf(losses)
    if np.any(infinite):
        if np.any(infinite & (probs > 0.0)):
            return math.inf
        losses = np.where(infinite, 0.0, losses)
    return float(np.einsum("i,i->", probs, losses))


def risk(r, estimator: EstimatorSpec, loss, design: MeasurementDesign) -> float:
    """Exact risk of an estimator at true state r (may be +inf)."""
    truth = _design_state(r, design)
    probs = dataset_probabilities(truth, design)
    estimates = estimate_table(estimator, design)
    losses = bloch_loss_fn(loss)(truth, estimates)
    return expected_loss(probs, losses)


def _pair_summary(truth, estimator_a, estimator_b, kind, design):
    """(risk_a, risk_b, diff) in a single pass over the dataset table.

    ``diff`` is the per-dataset loss-difference sum (nan when either risk
    is infinite); interior datasets cancel exactly, so dominance gaps far
    below the rounding error of risk_a - risk_b survive.
    """
    probs = dataset_probabilities(truth, design)
    fn = bloch_loss_fn(kind)
    losses_a = fn(truth, estimate_table(estimator_a, design))
    losses_b = fn(truth, estimate_table(estimator_b, design))
    risk_a = expected_loss(probs, losses_a)
    risk_b = expected_loss(probs, losses_b)
    if math.isinf(risk_a) or math.isinf(risk_b):
        return risk_a, risk_b, math.nan
    bad = np.isinf(losses_a) | np.isinf(losses_b)
    if np.any(bad):
        delta = np.where(bad, 0.0, losses_a - losses_b)
    else:
        delta = losses_a - losses_b
    return risk_a, risk_b, float(np.einsum("i,i->", probs, delta))


def risk_difference(r, estimator_a: EstimatorSpec, estimator_b: EstimatorSpec,
                    loss, design: MeasurementDesign) -> float:
    """risk(A) - risk(B) accumulated from per-dataset loss differences.

    Raises UndefinedDifferenceError when either risk is infinite.
    """
    truth = _design_state(r, design)
    _, _, diff = _pair_summary(truth, estimator_a, estimator_b, LossKind(loss), design)
    if math.isnan(diff):
        raise UndefinedDifferenceError(
            "risk difference undefined: at least one risk is infinite"
        )
    return diff


def scaled_risk_difference(r, estimator_a: EstimatorSpec, estimator_b: EstimatorSpec,
                           loss, design: MeasurementDesign) -> float:
    """N * (risk(A) - risk(B)), compensating the generic 1/N risk scaling."""
    return design.shots_per_axis * risk_difference(r, estimator_a, estimator_b, loss, design)


@dataclass(frozen=True)
class RiskRecord:
    true_state: tuple
    estimator: EstimatorSpec
    loss: LossKind
    n: int
    risk: float


@dataclass(frozen=True)
class SweepRow:
    radius: float
    record_a: RiskRecord
    record_b: RiskRecord
    scaled_diff: float


@dataclass(frozen=True)
class RiskSurface:
    axis_label: str
    axis_direction: tuple
    design: MeasurementDesign
    loss: LossKind
    rows: tuple


def sweep(axis_direction, radii, estimator_a: EstimatorSpec, estimator_b: EstimatorSpec,
          loss, design: MeasurementDesign) -> RiskSurface:
    """Risk of both estimators along a ray of true states.

    ``axis_direction`` must be unit length (within 1e-12) with the design's
    dimension; ``radii`` must be sorted strictly ascending in [0, 1].
    """
    direction = np.asarray(axis_direction, dtype=float)
    if direction.shape != (design.naxes,):
        raise InvalidParameterError("axis direction does not match the design dimension")
    if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
        raise InvalidParameterError("axis direction must be unit length")
    radii = [float(x) for x in radii]
    if not radii:
        raise InvalidParameterError("radii list is empty")
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise InvalidParameterError("radii must be strictly increasing")

    kind = LossKind(loss)
    n = design.shots_per_axis
    rows = []
    for radius in radii:
        truth = radius * direction
        risk_a, risk_b, diff = _pair_summary(truth, estimator_a, estimator_b, kind, design)
        record_a = RiskRecord(tuple(truth), estimator_a, kind, n, risk_a)
        record_b = RiskRecord(tuple(truth), estimator_b, kind, n, risk_b)
        rows.append(SweepRow(radius, record_a, record_b, n * diff))
    label = "axis (" + ", ".join(f"{x:g}" for x in direction) + ")"
    return RiskSurface(label, tuple(direction), design, kind, tuple(rows))


@dataclass(frozen=True)
class DiskCell:
    angle_deg: float
    radius: float
    risk_a: float
    risk_b: float
    diff: float


def risk_disk(estimator_a: EstimatorSpec, estimator_b: EstimatorSpec, loss,
              design: MeasurementDesign, *, radial_step: float = 0.01,
              angular_step_deg: float = 2.0) -> list:
    """Unscaled risk difference over a polar grid covering the Bloch disk.

    Only defined for two-axis designs.  The angle is measured from the
    second design axis toward the first (so 0 degrees points along +Z for
    the standard X/Z design).
    """
    if design.naxes != 2:
        raise InvalidParameterError("risk_disk requires a two-axis design")
    radii = _step_grid(0.0, 1.0, radial_step)
    angles = _step_grid(0.0, 360.0 - angular_step_deg, angular_step_deg)
    kind = LossKind(loss)
    cells = []
    for angle in angles:
        theta = math.radians(angle)
        direction = np.array([math.sin(theta), math.cos(theta)])
        for radius in radii:
            truth = radius * direction
            risk_a, risk_b, diff = _pair_summary(truth, estimator_a, estimator_b,
                                                 kind, design)
            cells.append(DiskCell(angle, radius, risk_a, risk_b, diff))
    return cells


def hedge_scan(r, h_grid, loss, design: MeasurementDesign) -> list:
    """Exact risk of the hedged estimator at r for each strength in h_grid.

    The per-dataset frequency table is built once; only the boundary rows
    change with h, so the scan avoids caching one table per grid value.
    """
    kind = LossKind(loss)
    truth = _design_state(r, design)
    probs = dataset_probabilities(truth, design)
    fn = bloch_loss_fn(kind)
    counts = _counts_table(design)
    n = design.shots_per_axis
    f = (2.0 * counts - n) / n
    norm_sq = np.einsum("ij,ij->i", f, f)
    boundary = norm_sq >= 1.0
    units = f[boundary] / np.sqrt(norm_sq[boundary])[:, None]
    out = []
    for h in h_grid:
        h = float(h)
        if not (0.0 < h < 1.0):
            raise InvalidParameterError(f"hedging strength must lie in (0, 1), got {h!r}")
        estimates = f.copy()
        estimates[boundary] = np.sqrt(1.0 - h) * units
        out.append((h, expected_loss(probs, fn(truth, estimates))))
    return out


def _step_grid(start: float, stop: float, step: float) -> list:
    """Inclusive arithmetic grid with 12-decimal rounding to kill drift."""
    if step <= 0:
        raise InvalidParameterError("grid step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(count)]


def clear_caches() -> None:
    """Drop all memoized per-design tables (mainly for tests)."""
    _counts_table.cache_clear()
    estimate_table.cache_clear()
