import numpy as np
import pytest

from geomwork import (IDENTITY_2, SIGMA_MINUS, SIGMA_X, SIGMA_Y, SIGMA_Z,
                      InvalidParametersError, ParamHamiltonian, dissipator,
                      lindblad_rhs, pauli, tls_hamiltonian,
                      tls_hamiltonian_grad, tls_model,
                      validate_density_matrix)


def random_density(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


def test_pauli_definitions():
    np.testing.assert_array_equal(pauli("x"), np.array([[0, 1], [1, 0]], dtype=complex))
    np.testing.assert_array_equal(pauli("y"), np.array([[0, -1j], [1j, 0]]))
    np.testing.assert_array_equal(pauli("z"), np.array([[1, 0], [0, -1]], dtype=complex))
    np.testing.assert_array_equal(pauli("minus"), np.array([[0, 0], [1, 0]], dtype=complex))
    np.testing.assert_array_equal(pauli("identity"), np.eye(2))


def test_pauli_algebra():
    np.testing.assert_array_equal(pauli("z") @ pauli("z"), IDENTITY_2)
    np.testing.assert_allclose(SIGMA_MINUS, 0.5 * (SIGMA_X - 1j * SIGMA_Y), atol=0)


def test_pauli_unknown_name():
    with pytest.raises(KeyError):
        pauli("w")


def test_pauli_returns_copies():
    m = pauli("x")
    m[0, 0] = 99.0
    assert SIGMA_X[0, 0] == 0.0


def test_sigma_minus_lowers_excited_state():
    excited = np.array([1.0, 0.0], dtype=complex)
    np.testing.assert_array_equal(SIGMA_MINUS @ excited, np.array([0.0, 1.0], dtype=complex))


def test_tls_hamiltonian_values():
    np.testing.assert_array_equal(tls_hamiltonian(0.0, 0.0), np.zeros((2, 2)))
    np.testing.assert_array_equal(tls_hamiltonian(2.0, 0.0), np.diag([1.0, -1.0]).astype(complex))
    np.testing.assert_allclose(tls_hamiltonian(1.0, 0.5),
                               np.array([[0.5, 0.5], [0.5, -0.5]], dtype=complex), atol=0)


def test_tls_hamiltonian_grads():
    np.testing.assert_array_equal(tls_hamiltonian_grad(0), 0.5 * SIGMA_Z)
    np.testing.assert_array_equal(tls_hamiltonian_grad(1), SIGMA_X)
    with pytest.raises(IndexError):
        tls_hamiltonian_grad(2)


def test_tls_grad_matches_central_difference():
    h = 1e-4
    p = np.array([1.0, 1.0])
    fam = tls_model(1.0).hamiltonian
    for i, e in enumerate(np.eye(2)):
        fd = (fam.matrix(p + h * e) - fam.matrix(p - h * e)) / (2 * h)
        assert np.max(np.abs(fam.gradient(p, i) - fd)) <= 1e-8


def _bumpy_family():
    # deliberately nonlinear so central differences carry an O(h^2) error
    return ParamHamiltonian(
        dim=2, n_params=2,
        matrix=lambda p: np.sin(p[0]) * SIGMA_Z + p[1] ** 3 * SIGMA_X,
        gradient=lambda p, i: np.cos(p[0]) * SIGMA_Z if i == 0 else 3.0 * p[1] ** 2 * SIGMA_X,
    )


def test_gradient_fd_error_ratio_is_second_order():
    fam = _bumpy_family()
    p = np.array([0.7, 0.9])

    def fd_error(i, h):
        e = np.zeros(2)
        e[i] = h
        fd = (fam.matrix(p + e) - fam.matrix(p - e)) / (2 * h)
        return np.max(np.abs(fam.gradient(p, i) - fd))

    for i in range(2):
        ratio = fd_error(i, 0.05) / fd_error(i, 0.025)
        assert 3.2 <= ratio <= 4.8


def test_dissipator_dephasing_fixes_maximally_mixed():
    np.testing.assert_allclose(dissipator(SIGMA_Z, 0.5 * IDENTITY_2), np.zeros((2, 2)), atol=1e-15)


def test_dissipator_decay_of_excited_state():
    out = dissipator(SIGMA_MINUS, np.diag([1.0, 0.0]).astype(complex))
    np.testing.assert_allclose(out, np.diag([-1.0, 1.0]).astype(complex), atol=1e-15)


def test_dissipator_traceless_random():
    rng = np.random.default_rng(7)
    for d in (2, 3):
        for _ in range(25):
            L = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
            assert abs(np.trace(dissipator(L, random_density(rng, d)))) <= 1e-12


def test_dissipator_dimension_mismatch():
    with pytest.raises(ValueError):
        dissipator(SIGMA_Z, np.eye(3) / 3.0)


def test_rhs_ground_state_stationary_without_drive():
    model = tls_model(1.0, 0.3)
    out = lindblad_rhs(model, (1.7, 0.0), np.diag([0.0, 1.0]).astype(complex))
    np.testing.assert_allclose(out, np.zeros((2, 2)), atol=1e-15)


def test_rhs_hand_value_at_maximally_mixed():
    # H = sigma_x commutes with I/2; only the decay channel contributes
    out = lindblad_rhs(tls_model(1.0, 0.0), (0.0, 1.0), 0.5 * IDENTITY_2)
    np.testing.assert_allclose(out, np.diag([-0.5, 0.5]).astype(complex), atol=1e-15)


def test_rhs_traceless_and_hermitian_on_random_states():
    rng = np.random.default_rng(11)
    model = tls_model(0.8, 0.4)
    for _ in range(30):
        point = rng.uniform(-3, 3, size=2)
        rho = random_density(rng, 2)
        out = lindblad_rhs(model, point, rho)
        assert abs(np.trace(out)) <= 1e-12
        assert np.max(np.abs(out - out.conj().T)) <= 1e-12


def test_rhs_dimension_mismatch():
    with pytest.raises(ValueError):
        lindblad_rhs(tls_model(1.0), (0.0, 1.0), np.eye(3) / 3.0)


def test_negative_rate_rejected():
    with pytest.raises(InvalidParametersError):
        tls_model(-1.0)
    with pytest.raises(InvalidParametersError):
        tls_model(1.0, -0.5)


def test_collapse_operator_shape_checked():
    from geomwork import LindbladModel, tls_family
    with pytest.raises(ValueError):
        LindbladModel(tls_family(), ((1.0, np.eye(3)),))


def test_validate_density_matrix():
    validate_density_matrix(0.5 * IDENTITY_2)
    with pytest.raises(ValueError):
        validate_density_matrix(np.array([[0.5, 0.1], [0.2, 0.5]], dtype=complex))
    with pytest.raises(ValueError):
        validate_density_matrix(np.diag([0.7, 0.7]).astype(complex))
    with pytest.raises(ValueError):
        validate_density_matrix(np.diag([1.5, -0.5]).astype(complex))
