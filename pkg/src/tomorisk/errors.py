"""Exception types shared across the package."""


class TomoriskError(Exception):
    """Base class for all tomorisk errors."""


class InvalidStateError(TomoriskError):
    """A Bloch vector or density matrix fails the state-validity checks."""


class InvalidDatasetError(TomoriskError):
    """Counts are inconsistent with the measurement design."""


class InvalidParameterError(TomoriskError):
    """A numeric parameter is outside its legal range."""


class ImpossibleDataError(TomoriskError):
    """Every prior point assigns zero likelihood to the observed counts."""


class UndefinedDifferenceError(TomoriskError):
    """A risk difference was requested but at least one risk is infinite."""


class DegenerateLossError(TomoriskError):
    """Every candidate has infinite posterior-averaged loss."""


class SolverFailureError(TomoriskError):
    """The likelihood maximizer did not converge within the iteration cap.

    Carries the last iterate and the projected-gradient norm at that point
    so callers can inspect how close the solver got.
    """

    def __init__(self, message, last_iterate=None, residual=None):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual
