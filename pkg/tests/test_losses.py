import math

import numpy as np
import pytest

from tomorisk import (
    LossKind,
    bloch_hs,
    bloch_infidelity,
    bloch_loss_fn,
    bloch_relative_entropy,
    bloch_to_density,
    hs_loss,
    infidelity,
    loss_fn,
    relative_entropy,
)
from tests.test_states import random_states


# -- independent oracles -----------------------------------------------------

def hs_oracle(rho, sigma):
    delta = rho - sigma
    return float(np.trace(delta @ delta).real)


def infidelity_oracle(rho, sigma):
    """1 - Tr sqrt(sqrt(rho) sigma sqrt(rho)) by explicit eigendecomposition.

    Eigenvalues below float-noise scale are zeroed; otherwise sqrt turns
    +-1e-16 of noise into 1e-8 of spurious fidelity.
    """
    lam, u = np.linalg.eigh(rho)
    sqrt_rho = u @ np.diag(np.sqrt(np.clip(lam, 0.0, None))) @ u.conj().T
    inner = sqrt_rho @ sigma @ sqrt_rho
    mu = np.linalg.eigvalsh(inner)
    mu = np.where(mu > 1e-14, mu, 0.0)
    return 1.0 - float(np.sqrt(mu).sum())


def relent_commuting_oracle(p, q):
    """Relative entropy of two diagonal states with eigenvalues p, q."""
    total = 0.0
    for pi, qi in zip(p, q):
        if pi == 0.0:
            continue
        if qi == 0.0:
            return math.inf
        total += pi * (math.log(pi) - math.log(qi))
    return total


# -- Hilbert-Schmidt ---------------------------------------------------------

def test_hs_zero_at_identity():
    rho = bloch_to_density([0.3, 0.1, -0.2])
    assert hs_loss(rho, rho) == pytest.approx(0.0, abs=1e-15)


def test_hs_antipodal_pure_states():
    rho = bloch_to_density([0.0, 1.0])
    sigma = bloch_to_density([0.0, -1.0])
    assert hs_loss(rho, sigma) == pytest.approx(hs_oracle(rho, sigma), abs=1e-14)
    assert hs_loss(rho, sigma) == pytest.approx(2.0, abs=1e-12)


def test_hs_pure_vs_mixed():
    rho = bloch_to_density([0.0, 1.0])
    sigma = bloch_to_density([0.0, 0.0])
    assert hs_loss(rho, sigma) == pytest.approx(0.5, abs=1e-12)


def test_hs_matrix_matches_bloch_form():
    rng = np.random.default_rng(5)
    a = random_states(rng, 1000)
    b = random_states(rng, 1000)
    for r, s in zip(a, b):
        matrix = hs_loss(bloch_to_density(r), bloch_to_density(s))
        assert abs(matrix - bloch_hs(r, [s])[0]) < 1e-12


# -- relative entropy --------------------------------------------------------

def test_relent_zero_at_identity():
    rho = bloch_to_density([0.2, -0.3, 0.1])
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_relent_mixed_vs_pure_diverges():
    assert relative_entropy(
        bloch_to_density([0.0, 0.0]), bloch_to_density([0.0, 1.0])
    ) == math.inf


def test_relent_commuting_value():
    rho = bloch_to_density([0.0, 0.0])          # eigenvalues 1/2, 1/2
    sigma = bloch_to_density([0.0, 0.5])        # eigenvalues 3/4, 1/4
    expected = relent_commuting_oracle([0.5, 0.5], [0.75, 0.25])
    assert expected == pytest.approx(0.5 * math.log(2.0 / 3.0) + 0.5 * math.log(2.0))
    assert relative_entropy(rho, sigma) == pytest.approx(expected, abs=1e-12)


def test_relent_finite_for_full_rank_sigma():
    rng = np.random.default_rng(17)
    truths = random_states(rng, 200)
    sigmas = random_states(rng, 200, max_norm=1.0 - 1e-6)
    for r, s in zip(truths, sigmas):
        value = relative_entropy(bloch_to_density(r), bloch_to_density(s))
        assert math.isfinite(value)
        assert value >= 0.0


def test_relent_infinite_for_pure_sigma_and_different_rho():
    rng = np.random.default_rng(23)
    for r in random_states(rng, 50, max_norm=0.9):
        direction = np.array([0.6, 0.0, 0.8])
        assert relative_entropy(
            bloch_to_density(r), bloch_to_density(direction)
        ) == math.inf


def test_relent_pure_equal_states_is_zero():
    rho = bloch_to_density([0.0, 0.0, 1.0])
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-9)


# -- infidelity ---------------------------------------------------------------

def test_infidelity_zero_at_identity():
    rho = bloch_to_density([0.1, 0.2, 0.3])
    assert infidelity(rho, rho) == pytest.approx(0.0, abs=1e-8)


def test_infidelity_orthogonal_pure_states():
    assert infidelity(
        bloch_to_density([0.0, 1.0]), bloch_to_density([0.0, -1.0])
    ) == pytest.approx(1.0, abs=1e-12)


def test_infidelity_pure_vs_maximally_mixed():
    rho = bloch_to_density([0.0, 1.0])
    sigma = bloch_to_density([0.0, 0.0])
    expected = infidelity_oracle(rho, sigma)
    assert expected == pytest.approx(1.0 - math.sqrt(0.5), abs=1e-12)
    assert infidelity(rho, sigma) == pytest.approx(expected, abs=1e-12)


def test_infidelity_closed_form_matches_eigendecomposition():
    # sigma norms capped at 0.999: between there and exact purity the
    # eigendecomposition oracle itself loses ~sqrt(eps) accuracy on the
    # vanishing eigenvalue of sqrt(rho) sigma sqrt(rho)
    rng = np.random.default_rng(29)
    a = random_states(rng, 900)
    b = random_states(rng, 900, max_norm=0.999)
    # include exactly rank-1 sigma pairs
    pure = random_states(rng, 100)
    pure /= np.linalg.norm(pure, axis=1, keepdims=True)
    a = np.vstack([a, random_states(rng, 100)])
    b = np.vstack([b, pure])
    for r, s in zip(a, b):
        rho, sigma = bloch_to_density(r), bloch_to_density(s)
        assert abs(infidelity(rho, sigma) - infidelity_oracle(rho, sigma)) < 1e-9


# -- shared properties --------------------------------------------------------

def test_all_losses_nonnegative_and_zero_at_identity():
    rng = np.random.default_rng(31)
    a = random_states(rng, 1000)
    b = random_states(rng, 1000, max_norm=1.0 - 1e-9)
    for kind in LossKind:
        fn = loss_fn(kind)
        for r, s in zip(a[:333], b[:333]):
            value = fn(bloch_to_density(r), bloch_to_density(s))
            assert value >= -1e-15
        for r in a[:100]:
            rho = bloch_to_density(r)
            assert fn(rho, rho) < 1e-8


def test_bloch_kernels_match_matrix_forms():
    rng = np.random.default_rng(37)
    truths = random_states(rng, 60)
    estimates = random_states(rng, 40)
    for kind in LossKind:
        matrix_fn = loss_fn(kind)
        kernel = bloch_loss_fn(kind)
        for r in truths[:12]:
            batch = kernel(r, estimates)
            for s, value in zip(estimates, batch):
                reference = matrix_fn(bloch_to_density(r), bloch_to_density(s))
                if math.isinf(reference):
                    assert math.isinf(value)
                else:
                    assert abs(value - reference) < 1e-9


def test_bloch_kernels_scalar_mode():
    r = np.array([0.1, 0.5])
    s = np.array([0.0, 0.0])
    assert isinstance(bloch_hs(r, s), float)
    assert isinstance(bloch_infidelity(r, s), float)
    assert isinstance(bloch_relative_entropy(r, s), float)


def test_bloch_relent_divergence_vectorized():
    truth = np.array([0.0, 0.5])
    estimates = np.array([[0.0, 1.0], [0.0, 0.5], [1.0, 0.0]])
    values = bloch_relative_entropy(truth, estimates)
    assert math.isinf(values[0])
    assert values[1] == pytest.approx(0.0, abs=1e-12)
    assert math.isinf(values[2])
