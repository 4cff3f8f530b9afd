import numpy as np
import pytest

from tomorisk import (
    InvalidStateError,
    bloch_to_density,
    density_to_bloch,
    embed3,
    is_pure,
    purity,
    validate_bloch,
    validate_density,
)


def random_states(rng, count, dim=3, max_norm=1.0):
    """Uniform directions with radii up to max_norm."""
    vecs = rng.standard_normal((count, dim))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    radii = max_norm * rng.random(count) ** (1.0 / dim)
    return vecs * radii[:, None]


def test_maximally_mixed_density():
    rho = bloch_to_density([0.0, 0.0, 0.0])
    assert np.allclose(rho, np.eye(2) / 2.0, atol=1e-15)


def test_z_up_pure_density():
    rho = bloch_to_density([0.0, 0.0, 1.0])
    assert np.allclose(rho, np.diag([1.0, 0.0]), atol=1e-15)


def test_unit_norm_gives_pure_eigenvalues():
    r = np.ones(3) / np.sqrt(3.0)
    eigs = np.linalg.eigvalsh(bloch_to_density(r))
    assert abs(eigs[0] - 0.0) < 1e-12
    assert abs(eigs[1] - 1.0) < 1e-12


def test_eigenvalues_are_half_one_plus_minus_norm():
    rng = np.random.default_rng(7)
    for r in random_states(rng, 400):
        norm = np.linalg.norm(r)
        eigs = np.linalg.eigvalsh(bloch_to_density(r))
        assert abs(eigs[0] - (1.0 - norm) / 2.0) < 1e-10
        assert abs(eigs[1] - (1.0 + norm) / 2.0) < 1e-10


def test_density_to_bloch_trivial_cases():
    assert np.allclose(density_to_bloch(np.eye(2) / 2.0), [0.0, 0.0, 0.0], atol=1e-15)
    assert np.allclose(density_to_bloch(np.diag([1.0, 0.0])), [0.0, 0.0, 1.0], atol=1e-15)


def test_round_trip_specific_point():
    r = np.array([0.3, -0.2, 0.5])
    assert np.allclose(density_to_bloch(bloch_to_density(r)), r, atol=1e-12)


def test_round_trip_random_states():
    rng = np.random.default_rng(11)
    for r in random_states(rng, 1000):
        rho = bloch_to_density(r)
        back = bloch_to_density(density_to_bloch(rho))
        assert np.allclose(back, rho, atol=1e-12)


def test_rebit_embedding_round_trip():
    r2 = np.array([0.3, -0.4])
    rho = bloch_to_density(r2)
    assert np.allclose(density_to_bloch(rho), [0.3, 0.0, -0.4], atol=1e-15)
    assert np.allclose(embed3(r2), [0.3, 0.0, -0.4])


@pytest.mark.parametrize(
    "r,expected",
    [([0.0, 0.0], 0.5), ([0.0, 1.0], 1.0), ([0.6, 0.0, 0.8], 1.0)],
)
def test_purity_values(r, expected):
    assert purity(r) == pytest.approx(expected, abs=1e-15)


def test_purity_iff_unit_norm():
    rng = np.random.default_rng(3)
    for r in random_states(rng, 300):
        norm = np.linalg.norm(r)
        if abs(purity(r) - 1.0) < 1e-10:
            assert abs(norm - 1.0) < 1e-5
        if abs(norm - 1.0) < 1e-12:
            assert abs(purity(r) - 1.0) < 1e-10


def test_is_pure_threshold():
    assert is_pure([0.0, 1.0])
    assert not is_pure([0.0, 0.0])
    assert not is_pure([0.0, 1.0 - 1e-6])


def test_norm_above_tolerance_rejected():
    with pytest.raises(InvalidStateError):
        validate_bloch([1.0 + 1e-6, 0.0])
    with pytest.raises(InvalidStateError):
        bloch_to_density([0.9, 0.9])
    # right at the tolerance edge is accepted
    validate_bloch([1.0 + 0.5e-12, 0.0])


def test_bad_densities_rejected():
    with pytest.raises(InvalidStateError):
        validate_density(np.array([[1.0, 0.5], [0.0, 0.0]]))  # not Hermitian
    with pytest.raises(InvalidStateError):
        validate_density(np.diag([0.7, 0.7]))  # trace != 1
    with pytest.raises(InvalidStateError):
        validate_density(np.diag([1.5, -0.5]))  # negative eigenvalue
    with pytest.raises(InvalidStateError):
        density_to_bloch(np.diag([0.7, 0.7]))


def test_bad_shapes_rejected():
    with pytest.raises(InvalidStateError):
        validate_bloch([1.0])
    with pytest.raises(InvalidStateError):
        validate_bloch(np.zeros((2, 2)))
