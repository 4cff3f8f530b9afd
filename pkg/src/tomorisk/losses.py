"""Loss functions between single-qubit states.

Three losses are provided, each in two equivalent forms: a matrix form
taking 2x2 density matrices, and a vectorized Bloch form used by the risk
engine (the second argument may be a batch of estimates, shape (..., dim)).

* squared Hilbert-Schmidt distance  Tr (rho - sigma)^2
* quantum relative entropy          Tr rho (log rho - log sigma), in nats
* infidelity                        1 - Tr sqrt(sqrt(rho) sigma sqrt(rho))

Relative entropy diverges to +inf when the support of ``rho`` is not
contained in the support of ``sigma``; the divergence is returned as a
floating-point infinity, never masked by a finite sentinel.
"""

import enum

import numpy as np
from scipy.special import xlogy

from .states import PURE_THRESHOLD, validate_bloch, validate_density

# Eigenvalues at or below this are treated as zero support when deciding
# divergence; matches the pure threshold on Bloch norms ((1 - thr) / 2).
_SUPPORT_EIG_CUTOFF = (1.0 - PURE_THRESHOLD) / 2.0
# Weight of rho outside sigma's support below which the state is treated
# as supported (guards roundoff when rho == sigma and both are pure).
_SUPPORT_WEIGHT_TOL = 1e-12


class LossKind(str, enum.Enum):
    HILBERT_SCHMIDT = "hs"
    RELATIVE_ENTROPY = "relent"
    INFIDELITY = "infid"


# ---------------------------------------------------------------------------
# matrix forms


def hs_loss(rho, sigma) -> float:
    """Squared Hilbert-Schmidt distance Tr (rho - sigma)^2."""
    a = validate_density(rho)
    b = validate_density(sigma)
    delta = a - b
    return float(np.trace(delta @ delta).real)


def relative_entropy(rho, sigma) -> float:
    """Tr rho (log rho - log sigma) in nats, or +inf on support violation."""
    a = validate_density(rho)
    b = validate_density(sigma)
    lam = np.clip(np.linalg.eigvalsh(a), 0.0, 1.0)
    term_rho = float(xlogy(lam, lam).sum())
    mu, vecs = np.linalg.eigh(b)
    mu = np.clip(mu, 0.0, 1.0)
    cross = 0.0
    for j in range(2):
        v = vecs[:, j]
        weight = float((v.conj() @ a @ v).real)
        weight = max(weight, 0.0)
        if mu[j] <= _SUPPORT_EIG_CUTOFF:
            if weight > _SUPPORT_WEIGHT_TOL:
                return float("inf")
            continue
        cross += weight * float(np.log(mu[j]))
    return max(term_rho - cross, 0.0)


def infidelity(rho, sigma) -> float:
    """1 - Tr sqrt(sqrt(rho) sigma sqrt(rho)).

    For 2x2 states this is evaluated through the closed form
    1 - sqrt(Tr(rho sigma) + 2 sqrt(det rho * det sigma)), with the radicand
    clamped to [0, 1] against roundoff.
    """
    a = validate_density(rho)
    b = validate_density(sigma)
    overlap = float(np.trace(a @ b).real)
    # determinants below float-noise scale are treated as exactly zero:
    # a numerically pure state must behave as pure, not as sqrt(noise)
    det_a = float(np.linalg.det(a).real)
    det_b = float(np.linalg.det(b).real)
    det_a = det_a if det_a > 1e-14 else 0.0
    det_b = det_b if det_b > 1e-14 else 0.0
    radicand = overlap + 2.0 * np.sqrt(det_a * det_b)
    radicand = min(max(radicand, 0.0), 1.0)
    return 1.0 - float(np.sqrt(radicand))


def loss_fn(kind):
    """Matrix-form loss for a LossKind (or its string value)."""
    return _MATRIX_FNS[LossKind(kind)]


_MATRIX_FNS = {
    LossKind.HILBERT_SCHMIDT: hs_loss,
    LossKind.RELATIVE_ENTROPY: relative_entropy,
    LossKind.INFIDELITY: infidelity,
}


# ---------------------------------------------------------------------------
# Bloch forms (vectorized over the second argument)


def bloch_hs(r, estimates) -> np.ndarray:
    """HS loss in Bloch form: 0.5 * ||r - s||^2 rowwise."""
    truth = validate_bloch(r)
    est = np.atleast_2d(np.asarray(estimates, dtype=float))
    delta = est - truth
    out = 0.5 * np.einsum("...i,...i->...", delta, delta)
    return out if np.ndim(estimates) > 1 else float(out[0])

def bloch_infidelity(r, estimates) -> np.ndarray:
    """Infidelity in Bloch form, clamped against roundoff.

    1 - ||v||^2 below float-noise scale (4e-14, matching the matrix form's
    determinant cutoff) is treated as exactly zero.
    """
    truth = validate_bloch(r)
    est = np.atleast_2d(np.asarray(estimates, dtype=float))
    r2 = float(truth @ truth)
    s2 = np.einsum("...i,...i->...", est, est)
    dots = est @ truth
    gap_r = (1.0 - r2) if (1.0 - r2) > 4e-14 else 0.0
    gap_s = np.where(1.0 - s2 > 4e-14, 1.0 - s2, 0.0)
    fid2 = 0.5 * (1.0 + dots + np.sqrt(gap_r * gap_s))
    out = 1.0 - np.sqrt(np.clip(fid2, 0.0, 1.0))
    return out if np.ndim(estimates) > 1 else float(out[0])


def bloch_relative_entropy(r, estimates) -> np.ndarray:
    """Relative entropy in Bloch form; +inf where support is violated.

    Eigenvalues of a state with Bloch norm n are (1 +/- n) / 2, and the
    weight of ``rho`` on the eigenvector of ``sigma`` with eigenvalue
    (1 - ||s||)/2 is (1 - r.s_hat) / 2, which gives a closed form without
    any matrix work.
    """
    truth = validate_bloch(r)
    est = np.atleast_2d(np.asarray(estimates, dtype=float))
    rnorm = min(float(np.linalg.norm(truth)), 1.0)
    lam = np.array([(1.0 + rnorm) / 2.0, (1.0 - rnorm) / 2.0])
    term_rho = float(xlogy(lam, lam).sum())

    snorm = np.sqrt(np.einsum("...i,...i->...", est, est))
    snorm_clipped = np.minimum(snorm, 1.0)
    dots = est @ truth
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = np.where(snorm > 0.0, dots / np.where(snorm > 0.0, snorm, 1.0), 0.0)
    w_plus = (1.0 + cos) / 2.0
    w_minus = (1.0 - cos) / 2.0
    mu_plus = (1.0 + snorm_clipped) / 2.0
    mu_minus = (1.0 - snorm_clipped) / 2.0

    pure = snorm_clipped >= PURE_THRESHOLD
    diverges = pure & (w_minus > _SUPPORT_WEIGHT_TOL)
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = w_plus * np.log(mu_plus) + np.where(
            pure, 0.0, w_minus * np.log(np.where(pure, 1.0, mu_minus))
        )
    out = np.where(diverges, np.inf, np.maximum(term_rho - cross, 0.0))
    return out if np.ndim(estimates) > 1 else float(out[0])


def bloch_loss_fn(kind):
    """Bloch-form loss for a LossKind (or its string value)."""
    return _BLOCH_FNS[LossKind(kind)]


_BLOCH_FNS = {
    LossKind.HILBERT_SCHMIDT: bloch_hs,
    LossKind.RELATIVE_ENTROPY: bloch_relative_entropy,
    LossKind.INFIDELITY: bloch_infidelity,
}
