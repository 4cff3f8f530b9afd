"""Exact-risk workbench for single-qubit state estimators.

Estimate qubit/rebit states from Pauli counts (projection, hedging, MLE),
evaluate estimator risk exactly by enumerating every possible dataset, and
probe Bayes-optimal behavior on discrete prior grids.
"""

from .bayes import (
    PriorGrid,
    ball_candidates,
    bayes_estimate_grid,
    disk_candidates,
    posterior,
    posterior_mean,
    purity_certificate,
    uniform_prior,
)
from .errors import (
    DegenerateLossError,
    ImpossibleDataError,
    InvalidDatasetError,
    InvalidParameterError,
    InvalidStateError,
    SolverFailureError,
    TomoriskError,
    UndefinedDifferenceError,
)
from .estimators import (
    EstimatorSpec,
    MeasurementDesign,
    apply_hedging,
    constrained_ls,
    default_h,
    frequencies,
    hedged,
    log_likelihood,
    make_estimator,
    mle,
)
from .losses import (
    LossKind,
    bloch_hs,
    bloch_infidelity,
    bloch_loss_fn,
    bloch_relative_entropy,
    hs_loss,
    infidelity,
    loss_fn,
    relative_entropy,
)
from .risk import (
    DiskCell,
    RiskRecord,
    RiskSurface,
    SweepRow,
    dataset_probabilities,
    dataset_probability,
    enumerate_datasets,
    estimate_table,
    expected_loss,
    hedge_scan,
    risk,
    risk_difference,
    risk_disk,
    scaled_risk_difference,
    sweep,
)
from .states import (
    PURE_THRESHOLD,
    STATE_TOL,
    bloch_to_density,
    density_to_bloch,
    embed3,
    is_pure,
    purity,
    validate_bloch,
    validate_density,
)

__version__ = "0.1.0"
