"""Pauli algebra, parametrized Hamiltonian families, and the Lindblad right-hand side.

All operators are dense complex numpy arrays; energies and rates are
dimensionless (hbar = 1). The ladder convention is sigma_minus = |g><e| with
|e> = (1, 0)^T, so pure decay drives the Bloch z component to -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidParametersError

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

_NAMED = {
    "x": SIGMA_X,
    "y": SIGMA_Y,
    "z": SIGMA_Z,
    "minus": SIGMA_MINUS,
    "identity": IDENTITY_2,
}
for _m in _NAMED.values():
    _m.flags.writeable = False


def pauli(name: str) -> np.ndarray:
    """Return a fresh copy of the named 2x2 operator: x, y, z, minus, identity."""
    try:
        return _NAMED[name].copy()
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; expected one of {sorted(_NAMED)}") from None


def tls_hamiltonian(delta: float, omega: float) -> np.ndarray:
    """Driven two-level Hamiltonian (delta/2) sigma_z + omega sigma_x."""
    return 0.5 * delta * SIGMA_Z + omega * SIGMA_X


def tls_hamiltonian_grad(i: int) -> np.ndarray:
    """Derivative of the TLS Hamiltonian wrt parameter 0 (detuning) or 1 (drive)."""
    if i == 0:
        return 0.5 * SIGMA_Z
    if i == 1:
        return SIGMA_X.copy()
    raise IndexError(f"parameter index {i} out of range for the (delta, omega) family")


@dataclass(frozen=True)
class ParamHamiltonian:
    """A Hamiltonian family over control parameters, with analytic derivatives.

    ``matrix(point)`` returns the d x d Hamiltonian at a control point and
    ``gradient(point, i)`` returns dH/dlambda_i; both must be Hermitian at
    every point. Gradients are analytic by construction — finite differences
    are used only as a test oracle against them.
    """

    dim: int
    n_params: int
    matrix: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray, int], np.ndarray]


def tls_family() -> ParamHamiltonian:
    """The (delta, omega) two-level family with its exact gradients."""
    return ParamHamiltonian(
        dim=2,
        n_params=2,
        matrix=lambda p: tls_hamiltonian(p[0], p[1]),
        gradient=lambda p, i: tls_hamiltonian_grad(i),
    )


@dataclass(frozen=True)
class LindbladModel:
    """A Hamiltonian family plus rate-weighted collapse channels.

    ``channels`` holds (rate, collapse operator) pairs entering the master
    equation as rate * D[L](rho). ``label`` and ``params`` carry the model
    identity into output metadata; they do not affect the dynamics.
    """

    hamiltonian: ParamHamiltonian
    channels: tuple
    label: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        d = self.hamiltonian.dim
        checked = []
        for rate, L in self.channels:
            rate = float(rate)
            if rate < 0:
                raise InvalidParametersError(f"negative channel rate {rate}")
            L = np.asarray(L, dtype=complex)
            if L.shape != (d, d):
                raise ValueError(f"collapse operator shape {L.shape} does not match dimension {d}")
            if not np.all(np.isfinite(L)):
                raise ValueError("collapse operator has non-finite entries")
            checked.append((rate, L))
        object.__setattr__(self, "channels", tuple(checked))

    @property
    def dim(self) -> int:
        return self.hamiltonian.dim


def tls_model(gamma: float, gamma_phi: float = 0.0) -> LindbladModel:
    """Driven TLS with relaxation ``gamma`` and pure dephasing ``gamma_phi``.

    The dephasing channel enters with rate gamma_phi / 2 on sigma_z, so the
    total coherence decay rate is Gamma_2 = gamma/2 + gamma_phi.
    """
    if gamma < 0 or gamma_phi < 0:
        raise InvalidParametersError("rates must be nonnegative")
    return LindbladModel(
        hamiltonian=tls_family(),
        channels=((gamma, SIGMA_MINUS), (0.5 * gamma_phi, SIGMA_Z)),
        label="tls",
        params={"gamma": float(gamma), "gamma_phi": float(gamma_phi)},
    )


def dissipator(L: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """D[L](rho) = L rho L^dag - (L^dag L rho + rho L^dag L) / 2."""
    L = np.asarray(L, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or L.shape != rho.shape:
        raise ValueError(f"dimension mismatch: L {L.shape} vs rho {rho.shape}")
    LdL = L.conj().T @ L
    return L @ rho @ L.conj().T - 0.5 * (LdL @ rho + rho @ LdL)


def lindblad_rhs(model: LindbladModel, point, rho: np.ndarray) -> np.ndarray:
    """Master-equation right-hand side -i[H(point), rho] + sum_k r_k D[L_k](rho)."""
    rho = np.asarray(rho, dtype=complex)
    d = model.dim
    if rho.shape != (d, d):
        raise ValueError(f"state shape {rho.shape} does not match model dimension {d}")
    H = model.hamiltonian.matrix(np.asarray(point, dtype=float))
    out = -1j * (H @ rho - rho @ H)
    for rate, L in model.channels:
        if rate:
            out += rate * dissipator(L, rho)
    return out


def validate_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12,
                            trace_tol: float = 1e-12, eig_floor: float = -1e-10) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity; return rho as a complex array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} differs from 1 beyond {trace_tol:.1e}")
    lowest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if lowest < eig_floor:
        raise ValueError(f"not positive semidefinite: lowest eigenvalue {lowest:.3e}")
    return rho
