"""Two-band lattice pseudospin Hamiltonian at fixed Bloch momentum.

Control space is the hopping plane (t1, t2); the momentum k is a frozen
external parameter, never a control coordinate. The same dissipation
channels as the two-level model (relaxation on sigma_minus, dephasing on
sigma_z) act in the pseudospin basis.

At k = pi the Hamiltonian reduces to (t1 - t2) sigma_x: both hoppings enter
through a single effective coordinate, the work one-form becomes integrable,
and the hopping-plane curvature vanishes identically. Away from k = pi the
two directions decouple and displaced cycles enclose finite curvature.
"""

from __future__ import annotations

import numpy as np

from .geometry import curvature_fd
from .operators import (SIGMA_MINUS, SIGMA_X, SIGMA_Y, SIGMA_Z, LindbladModel,
                        ParamHamiltonian)
from .errors import InvalidParametersError


def ssh_hamiltonian(t1: float, t2: float, k: float) -> np.ndarray:
    """Bloch Hamiltonian (t1 + t2 cos k) sigma_x + (t2 sin k) sigma_y."""
    return (t1 + t2 * np.cos(k)) * SIGMA_X + (t2 * np.sin(k)) * SIGMA_Y


def ssh_hamiltonian_grad(i: int, k: float) -> np.ndarray:
    """dH/dt1 = sigma_x; dH/dt2 = cos k sigma_x + sin k sigma_y."""
    if i == 0:
        return SIGMA_X.copy()
    if i == 1:
        return np.cos(k) * SIGMA_X + np.sin(k) * SIGMA_Y
    raise IndexError(f"parameter index {i} out of range for the (t1, t2) family")


def ssh_family(k: float) -> ParamHamiltonian:
    """The (t1, t2) hopping family at fixed momentum k."""
    k = float(k)
    return ParamHamiltonian(
        dim=2,
        n_params=2,
        matrix=lambda p: ssh_hamiltonian(p[0], p[1], k),
        gradient=lambda p, i: ssh_hamiltonian_grad(i, k),
    )


def ssh_model(gamma: float, gamma_phi: float, k: float) -> LindbladModel:
    """Hopping-plane model with the TLS dissipation channels in the pseudospin basis."""
    if gamma < 0 or gamma_phi < 0:
        raise InvalidParametersError("rates must be nonnegative")
    return LindbladModel(
        hamiltonian=ssh_family(k),
        channels=((gamma, SIGMA_MINUS), (0.5 * gamma_phi, SIGMA_Z)),
        label="ssh",
        params={"gamma": float(gamma), "gamma_phi": float(gamma_phi), "k": float(k)},
    )


def ssh_curvature(t1: float, t2: float, k: float, gamma: float,
                  gamma_phi: float, h: float | None = None) -> float:
    """Hopping-plane curvature F_{t1 t2} via the generic steady-state pipeline."""
    return curvature_fd(ssh_model(gamma, gamma_phi, k), (t1, t2), 0, 1, h=h)
