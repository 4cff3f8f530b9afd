"""Estimators mapping measured counts to Bloch-vector estimates.

The measurement model: each Pauli axis in the design is measured
``shots_per_axis`` times, independently, and the dataset records the number
of "+1" outcomes per axis.  The outcome probability on axis w is
(1 + r_w) / 2, so the likelihood is a product of per-axis binomials.

Estimators:

* linear inversion      r_hat = f (empirical frequencies, possibly invalid)
* constrained LS        Euclidean projection of f onto the unit ball
* hedged                like constrained LS, but boundary estimates are
                        pulled inside by a factor sqrt(1 - h)
* MLE                   likelihood maximizer over the closed unit ball
* hedged MLE            MLE followed by the same pull-inside step
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import (
    InvalidDatasetError,
    InvalidParameterError,
    SolverFailureError,
)
from .states import PURE_THRESHOLD

AXIS_NAMES = ("X", "Y", "Z")


@dataclass(frozen=True)
class MeasurementDesign:
    """Pauli axes measured and the number of shots N on each axis."""

    axes: tuple
    shots_per_axis: int

    def __post_init__(self):
        axes = tuple(str(a).upper() for a in self.axes)
        object.__setattr__(self, "axes", axes)
        if len(axes) not in (2, 3) or len(set(axes)) != len(axes):
            raise InvalidParameterError(f"axes must be 2 or 3 distinct labels, got {axes}")
        for a in axes:
            if a not in AXIS_NAMES:
                raise InvalidParameterError(f"unknown axis {a!r}")
        if int(self.shots_per_axis) < 1:
            raise InvalidParameterError("shots_per_axis must be >= 1")
        object.__setattr__(self, "shots_per_axis", int(self.shots_per_axis))

    @classmethod
    def rebit(cls, shots_per_axis: int) -> "MeasurementDesign":
        return cls(("X", "Z"), shots_per_axis)

    @classmethod
    def qubit(cls, shots_per_axis: int) -> "MeasurementDesign":
        return cls(("X", "Y", "Z"), shots_per_axis)

    @property
    def naxes(self) -> int:
        return len(self.axes)

    @property
    def name(self) -> str:
        return "rebit" if self.naxes == 2 else "qubit"


def validate_counts(counts, design: MeasurementDesign) -> np.ndarray:
    """Counts of "+1" outcomes per axis, checked against the design."""
    arr = np.asarray(counts, dtype=int)
    if arr.shape != (design.naxes,):
        raise InvalidDatasetError(
            f"expected {design.naxes} per-axis counts, got shape {arr.shape}"
        )
    n = design.shots_per_axis
    if np.any(arr < 0) or np.any(arr > n):
        raise InvalidDatasetError(f"counts {arr.tolist()} outside [0, {n}]")
    return arr


def frequencies(counts, design: MeasurementDesign) -> np.ndarray:
    """Empirical frequency vector with components (2 n_w - N) / N."""
    arr = validate_counts(counts, design)
    n = design.shots_per_axis
    return (2.0 * arr - n) / n


def constrained_ls(f) -> np.ndarray:
    """Euclidean projection of the frequency vector onto the unit ball.

    Returns f unchanged when ||f||^2 < 1, else f / ||f||.
    """
    arr = np.asarray(f, dtype=float)
    norm_sq = float(arr @ arr)
    if norm_sq < 1.0:
        return arr.copy()
    return arr / np.sqrt(norm_sq)


def hedged(f, h: float) -> np.ndarray:
    """Projection estimator with boundary estimates scaled by sqrt(1 - h)."""
    _check_h(h)
    arr = np.asarray(f, dtype=float)
    norm_sq = float(arr @ arr)
    if norm_sq < 1.0:
        return arr.copy()
    return np.sqrt(1.0 - h) * arr / np.sqrt(norm_sq)


def default_h(n: int) -> float:
    """Rule-of-thumb hedging strength h = 1/N - 1/N^2.

    Zero at N = 1; callers must reject h = 0 for hedged estimators.
    """
    if int(n) < 1:
        raise InvalidParameterError("shot count must be >= 1")
    n = int(n)
    return 1.0 / n - 1.0 / n**2


def apply_hedging(estimate, h: float, pure_threshold: float = PURE_THRESHOLD) -> np.ndarray:
    """Scale (numerically) pure estimates by sqrt(1 - h); leave others alone."""
    _check_h(h)
    arr = np.asarray(estimate, dtype=float)
    if np.linalg.norm(arr) >= pure_threshold:
        return np.sqrt(1.0 - h) * arr
    return arr.copy()


def _check_h(h: float) -> None:
    if not (0.0 < h < 1.0):
        raise InvalidParameterError(f"hedging strength must lie in (0, 1), got {h!r}")


def log_likelihood(r, counts, design: MeasurementDesign) -> float:
    """Log likelihood of the counts at Bloch point r (design-dimensional).

    Per-axis terms n_w log((1+r_w)/2) + (N-n_w) log((1-r_w)/2).  Terms with
    zero count and zero probability contribute 0; a zero probability with a
    nonzero count makes the result -inf.
    """
    arr = np.asarray(r, dtype=float)
    c = validate_counts(counts, design)
    n = design.shots_per_axis
    return float(np.sum(xlogy(c, (1.0 + arr) / 2.0) + xlogy(n - c, (1.0 - arr) / 2.0)))


def _likelihood_gradient(r, counts, n):
    # d/dr_w of the log likelihood; 0/0 from saturated axes resolved to  0
    with np.errstate(divide="ignore", invalid="ignore"):
        up = np.where(counts > 0, counts / (1.0 + r), 0.0)
        down = np.where(n - counts > 0, (n - counts) / (1.0 - r), 0.0)
    return up - down


def _project_ball(x):
    norm = np.linalg.norm(x)
    if norm <= 1.0:
        return x
    return x / norm


def mle(counts, design: MeasurementDesign, *, grad_tol: float = 1e-10,
        max_iter: int = 100_000) -> np.ndarray:
    """Maximum-likelihood Bloch estimate over the closed unit ball.

    When ||f|| <= 1 the unconstrained optimum is feasible and the result is
    exactly the frequency vector.  Otherwise the (strictly concave)
    log likelihood is maximized by projected gradient ascent started at
    f / ||f||, with a doubling/halving backtracking line search (Armijo
    constant 1e-4) and convergence declared at projected-gradient norm
    <= ``grad_tol``.  The solver is fully deterministic.
    """
    f = frequencies(counts, design)
    if float(f @ f) <= 1.0:
        return f

    c = validate_counts(counts, design)
    n = design.shots_per_axis
    x = f / np.linalg.norm(f)
    value = log_likelihood(x, c, design)
    step = 1.0
    residual = np.inf
    for _ in range(max_iter):
        grad = _likelihood_gradient(x, c, n)
        xnorm = np.linalg.norm(x)
        if xnorm >= 1.0 - 1e-12:
            radial = float(grad @ x) / xnorm
            pg = grad - max(radial, 0.0) * x / xnorm
        else:
            pg = grad
        residual = float(np.linalg.norm(pg))
        if residual <= grad_tol:
            return x
        while True:
            candidate = _project_ball(x + step * grad)
            move = candidate - x
            cand_value = log_likelihood(candidate, c, design)
            if cand_value >= value + 1e-4 * float(grad @ move):
                break
            step /= 2.0
            if step < 1e-300:
                raise SolverFailureError(
                    "line search collapsed", last_iterate=x, residual=residual
                )
        x = candidate
        value = cand_value
        step *= 2.0
    raise SolverFailureError(
        f"no convergence after {max_iter} iterations (residual {residual:.3e})",
        last_iterate=x,
        residual=residual,
    )


ESTIMATOR_KINDS = ("linear", "cls", "hedged", "mle", "hedged_mle")
_HEDGED_KINDS = ("hedged", "hedged_mle")


@dataclass(frozen=True)
class EstimatorSpec:
    """An estimator kind plus its hedging strength where applicable."""

    kind: str
    h: float = None

    def __post_init__(self):
        if self.kind not in ESTIMATOR_KINDS:
            raise InvalidParameterError(f"unknown estimator kind {self.kind!r}")
        if self.kind in _HEDGED_KINDS:
            if self.h is None:
                raise InvalidParameterError(f"{self.kind} requires a hedging strength")
            _check_h(self.h)
        elif self.h is not None:
            raise InvalidParameterError(f"{self.kind} takes no hedging strength")

    def estimate(self, counts, design: MeasurementDesign) -> np.ndarray:
        f = frequencies(counts, design)
        if self.kind == "linear":
            return f
        if self.kind == "cls":
            return constrained_ls(f)
        if self.kind == "hedged":
            return hedged(f, self.h)
        if self.kind == "mle":
            return mle(counts, design)
        return apply_hedging(mle(counts, design), self.h)

    def label(self) -> str:
        if self.kind in _HEDGED_KINDS:
            return f"{self.kind}({self.h!r})"
        return self.kind


def make_estimator(kind: str, h: float = None, design: MeasurementDesign = None) -> EstimatorSpec:
    """Build an EstimatorSpec, filling in the default hedging strength.

    For hedged kinds with no explicit ``h``, uses default_h(N) from the
    design's shot count.
    """
    kind = str(kind).lower().replace("-", "_")
    if kind in _HEDGED_KINDS and h is None:
        if design is None:
            raise InvalidParameterError(f"{kind} needs either h or a design")
        h = default_h(design.shots_per_axis)
        if h == 0.0:
            raise InvalidParameterError("default hedging strength is 0 at N=1; pass h explicitly")
    if kind not in _HEDGED_KINDS:
        h = None
    return EstimatorSpec(kind, h)
