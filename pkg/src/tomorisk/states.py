"""Single-qubit states: Bloch vectors, density matrices, and conversions.

States are plain numpy arrays.  A Bloch vector is a real 2-vector
(<X>, <Z>) when the qubit is confined to the X-Z plane, or a real 3-vector
(<X>, <Y>, <Z>) in general; valid states have Euclidean norm at most 1.
A density matrix is a 2x2 complex Hermitian unit-trace PSD array.
2-vectors embed as 3-vectors with <Y> = 0 whenever a matrix is needed.
"""

import numpy as np

from .errors import InvalidStateError

# Tolerance for all state-validity checks.
STATE_TOL = 1e-12

# Operational pure/mixed threshold on the Bloch norm.  The pure-vs-mixed
# dichotomy must be decidable on floats.
PURE_THRESHOLD = 1.0 - 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

IDENTITY = np.eye(2, dtype=complex)


def as_bloch(r) -> np.ndarray:
    """Coerce to a float Bloch vector of length 2 or 3 (no norm check)."""
    arr = np.asarray(r, dtype=float)
    if arr.ndim != 1 or arr.shape[0] not in (2, 3):
        raise InvalidStateError(
            f"Bloch vector must have 2 or 3 components, got shape {arr.shape}"
        )
    return arr


def validate_bloch(r, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``r`` as an array after checking it lies in the unit ball."""
    arr = as_bloch(r)
    norm = float(np.linalg.norm(arr))
    if norm > 1.0 + tol:
        raise InvalidStateError(f"Bloch norm {norm!r} exceeds 1 + {tol}")
    return arr


def embed3(r) -> np.ndarray:
    """Embed a 2-vector (<X>, <Z>) as (<X>, 0, <Z>); pass 3-vectors through."""
    arr = as_bloch(r)
    if arr.shape[0] == 3:
        return arr
    return np.array([arr[0], 0.0, arr[1]])


def bloch_to_density(r) -> np.ndarray:
    """Density matrix (I + r . sigma) / 2 for a valid Bloch vector.

    The eigenvalues of the result are (1 +/- ||r||) / 2.
    """
    arr = embed3(validate_bloch(r))
    rho = IDENTITY.copy()
    for component, pauli in zip(arr, PAULIS):
        rho += component * pauli
    return rho / 2.0


def validate_density(rho, tol: float = STATE_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; return the array."""
    mat = np.asarray(rho, dtype=complex)
    if mat.shape != (2, 2):
        raise InvalidStateError(f"density matrix must be 2x2, got {mat.shape}")
    if not np.allclose(mat, mat.conj().T, rtol=0.0, atol=tol):
        raise InvalidStateError("density matrix is not Hermitian")
    trace = complex(np.trace(mat))
    if abs(trace - 1.0) > tol:
        raise InvalidStateError(f"density matrix trace {trace!r} != 1")
    min_eig = float(np.linalg.eigvalsh(mat)[0])
    if min_eig < -tol:
        raise InvalidStateError(f"density matrix has eigenvalue {min_eig!r} < 0")
    return mat


def density_to_bloch(rho) -> np.ndarray:
    """Bloch 3-vector of Pauli expectation values Tr(rho sigma_i)."""
    mat = validate_density(rho)
    return np.array([float(np.trace(mat @ pauli).real) for pauli in PAULIS])


def purity(r) -> float:
    """Tr rho^2 = (1 + ||r||^2) / 2; equals 1 iff the state is pure."""
    arr = validate_bloch(r)
    return float((1.0 + arr @ arr) / 2.0)


def is_pure(r) -> bool:
    """True when the Bloch norm reaches the operational pure threshold."""
    arr = validate_bloch(r)
    return bool(np.linalg.norm(arr) >= PURE_THRESHOLD)
