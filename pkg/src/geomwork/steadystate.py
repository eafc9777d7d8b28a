"""Liouvillian superoperators and steady-state extraction.

Vectorization is column-stacking throughout: vec(rho) = rho.flatten(order="F"),
so vec(A rho B) = (B^T kron A) vec(rho) and the master equation becomes
vec(drho/dt) = L vec(rho) with a dense d^2 x d^2 matrix L.

The steady state is the right singular vector of L belonging to its smallest
singular value, reshaped, Hermitized and trace-normalized. SVD is robust for
the small dense Liouvillians targeted here (d <= ~16) and, unlike an
eigendecomposition, does not misbehave on defective matrices. A steady state
is only returned when it is unique: if the two smallest singular values are
within a factor 1e-8 of each other (relative to the largest) the null space
is considered degenerate and an error is raised instead of silently picking a
representative.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DegenerateSteadyStateError, InvalidParametersError, NoSteadyStateError
from .operators import SIGMA_X, SIGMA_Y, SIGMA_Z, LindbladModel

DEGENERACY_RATIO = 1e-8
NULL_RESIDUAL_RATIO = 1e-6


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float


def hamiltonian_superop(H: np.ndarray) -> np.ndarray:
    """Superoperator of the coherent part, -i(I kron H - H^T kron I)."""
    d = H.shape[0]
    eye = np.eye(d)
    return -1j * (np.kron(eye, H) - np.kron(H.T, eye))


def dissipator_superop(model: LindbladModel) -> np.ndarray:
    """Superoperator of all collapse channels; cached on the model (it is
    independent of the control point)."""
    cached = getattr(model, "_dissipator_super", None)
    if cached is not None:
        return cached
    d = model.dim
    eye = np.eye(d)
    out = np.zeros((d * d, d * d), dtype=complex)
    for rate, L in model.channels:
        if not rate:
            continue
        LdL = L.conj().T @ L
        out += rate * (np.kron(L.conj(), L)
                       - 0.5 * np.kron(eye, LdL)
                       - 0.5 * np.kron(LdL.T, eye))
    object.__setattr__(model, "_dissipator_super", out)
    return out


def liouvillian_matrix(model: LindbladModel, point) -> np.ndarray:
    """Dense Liouvillian L with vec(drho/dt) = L vec(rho) (column stacking)."""
    H = model.hamiltonian.matrix(np.asarray(point, dtype=float))
    return hamiltonian_superop(H) + dissipator_superop(model)


def _steady_from_superop(L: np.ndarray, dim: int) -> np.ndarray:
    _, s, vh = np.linalg.svd(L)
    if s[0] == 0.0:
        raise DegenerateSteadyStateError("Liouvillian is identically zero; every state is stationary")
    if s[-1] > NULL_RESIDUAL_RATIO * s[0]:
        raise NoSteadyStateError(
            f"smallest singular value {s[-1]:.3e} exceeds {NULL_RESIDUAL_RATIO:.0e} x largest {s[0]:.3e}")
    if s[-2] < DEGENERACY_RATIO * s[0]:
        raise DegenerateSteadyStateError(
            f"null space not one-dimensional: two smallest singular values "
            f"{s[-1]:.3e}, {s[-2]:.3e} vs largest {s[0]:.3e}")
    rho = vh[-1].conj().reshape((dim, dim), order="F")
    rho = 0.5 * (rho + rho.conj().T)
    tr = float(np.trace(rho).real)
    if abs(tr) < 1e-12:
        raise NoSteadyStateError("null vector is traceless and cannot be normalized to a state")
    return rho / tr


def steady_state(model: LindbladModel, point) -> np.ndarray:
    """Unique steady state of the model at a control point.

    Parameters
    ----------
    model : LindbladModel
    point : array-like control coordinates

    Returns
    -------
    ndarray
        d x d density matrix with L vec(rho) = 0, Hermitian and unit trace.

    Raises
    ------
    DegenerateSteadyStateError
        If the Liouvillian null space is not one-dimensional.
    NoSteadyStateError
        If no numerical null vector exists.
    """
    return _steady_from_superop(liouvillian_matrix(model, point), model.dim)


def bloch_components(rho: np.ndarray) -> BlochVector:
    """(x, y, z) = (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z) for a qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"Bloch components need a 2x2 state, got shape {rho.shape}")
    return BlochVector(
        float(np.einsum("ij,ji->", rho, SIGMA_X).real),
        float(np.einsum("ij,ji->", rho, SIGMA_Y).real),
        float(np.einsum("ij,ji->", rho, SIGMA_Z).real),
    )


def density_from_bloch(b) -> np.ndarray:
    """Inverse map rho = (I + x sigma_x + y sigma_y + z sigma_z) / 2."""
    x, y, z = b
    return 0.5 * (np.eye(2, dtype=complex) + x * SIGMA_X + y * SIGMA_Y + z * SIGMA_Z)


def tls_steady_closed_form(delta: float, omega: float, gamma: float,
                           gamma_phi: float = 0.0) -> BlochVector:
    """Closed-form steady-state Bloch vector of the driven, damped, dephased TLS.

    With Gamma_2 = gamma/2 + gamma_phi and
    D = 4 omega^2 Gamma_2 + gamma (delta^2 + Gamma_2^2):

        x = -2 gamma omega delta / D
        y =  2 gamma omega Gamma_2 / D
        z = -gamma (delta^2 + Gamma_2^2) / D
    """
    g2 = 0.5 * gamma + gamma_phi
    denom = 4.0 * omega * omega * g2 + gamma * (delta * delta + g2 * g2)
    if denom <= 0.0:
        raise InvalidParametersError(f"steady-state denominator D = {denom} must be positive")
    return BlochVector(
        -2.0 * gamma * omega * delta / denom,
        2.0 * gamma * omega * g2 / denom,
        -gamma * (delta * delta + g2 * g2) / denom,
    )
