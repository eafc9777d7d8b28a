"""Work one-form and curvature two-form over control-parameter space.

The one-form components are A_i = Re Tr(rho_ss dH/dlambda_i), the quasistatic
work per unit displacement of control parameter i. The curvature
F_ij = d_i A_j - d_j A_i measures how much work fails to commute under the
order of parameter variations; for the TLS family it is also available in
closed form. Fields sample F_12 on a rectangular grid, recording nodes where
the steady state does not exist as missing values (never zeros, which would
corrupt flux integrals downstream).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import GeomworkError, InvalidParametersError
from .operators import LindbladModel
from .steadystate import steady_state

IMAG_RESIDUAL_TOL = 1e-10


def work_one_form(model: LindbladModel, point) -> np.ndarray:
    """One-form components A_i = Re Tr(rho_ss(point) dH/dlambda_i).

    The trace of a product of two Hermitian matrices is real; the imaginary
    residual is asserted to stay below 1e-10 as a tripwire for solver defects.
    Steady-state errors propagate.
    """
    point = np.asarray(point, dtype=float)
    rho = steady_state(model, point)
    comps = np.empty(model.hamiltonian.n_params)
    for i in range(model.hamiltonian.n_params):
        val = np.einsum("ij,ji->", rho, model.hamiltonian.gradient(point, i))
        assert abs(val.imag) <= IMAG_RESIDUAL_TOL, \
            f"one-form imaginary residual {val.imag:.3e} at point {point.tolist()}"
        comps[i] = val.real
    return comps


def curvature_closed_form_tls(delta: float, omega: float, gamma: float,
                              gamma_phi: float = 0.0) -> float:
    """Closed-form TLS curvature F_{delta omega}.

    F = -2 omega gamma (2 gamma_phi delta^2
        + Gamma_2 (2 Gamma_2^2 + Gamma_2 gamma + 4 omega^2)) / D^2
    with Gamma_2 and D as in the closed-form steady state.
    """
    g2 = 0.5 * gamma + gamma_phi
    denom = 4.0 * omega * omega * g2 + gamma * (delta * delta + g2 * g2)
    if denom <= 0.0:
        raise InvalidParametersError(f"steady-state denominator D = {denom} must be positive")
    num = 2.0 * gamma_phi * delta * delta + g2 * (2.0 * g2 * g2 + g2 * gamma + 4.0 * omega * omega)
    return -2.0 * omega * gamma * num / (denom * denom)


def default_fd_step(point, i: int) -> float:
    """Default central-difference step for axis i: 1e-3 * max(1, |lambda_i|)."""
    return 1e-3 * max(1.0, abs(float(point[i])))


def curvature_fd(model: LindbladModel, point, i: int = 0, j: int = 1,
                 h: float | None = None) -> float:
    """Curvature F_ij by second-order central differences of the one-form.

    F_ij ~ [A_j(p + h_i e_i) - A_j(p - h_i e_i)] / (2 h_i)
         - [A_i(p + h_j e_j) - A_i(p - h_j e_j)] / (2 h_j)

    Antisymmetric by construction: swapping (i, j) produces exactly the
    negated value, and i == j returns exactly 0.
    """
    if i == j:
        return 0.0
    point = np.asarray(point, dtype=float)
    hi = default_fd_step(point, i) if h is None else float(h)
    hj = default_fd_step(point, j) if h is None else float(h)
    ei = np.zeros_like(point)
    ei[i] = hi
    ej = np.zeros_like(point)
    ej[j] = hj
    dAj = (work_one_form(model, point + ei)[j] - work_one_form(model, point - ei)[j]) / (2.0 * hi)
    dAi = (work_one_form(model, point + ej)[i] - work_one_form(model, point - ej)[i]) / (2.0 * hj)
    return float(dAj - dAi)


def coherence(x: float, y: float) -> float:
    """Steady-state coherence magnitude sqrt(x^2 + y^2) / 2 in the dissipative basis."""
    return 0.5 * float(np.hypot(x, y))


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectangular grid: per-axis (lo, hi) bounds and point counts."""

    lo: tuple
    hi: tuple
    shape: tuple

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lo)
        hi = tuple(float(v) for v in self.hi)
        shape = tuple(int(n) for n in self.shape)
        if not (len(lo) == len(hi) == len(shape) == 2):
            raise ValueError("grid must be two-dimensional")
        for a, b, n in zip(lo, hi, shape):
            if not (np.isfinite(a) and np.isfinite(b)):
                raise ValueError("grid bounds must be finite")
            if b <= a:
                raise ValueError(f"grid axis needs hi > lo, got [{a}, {b}]")
            if n < 2:
                raise ValueError(f"grid axis needs at least 2 points, got {n}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "shape", shape)

    def axes(self):
        return (np.linspace(self.lo[0], self.hi[0], self.shape[0]),
                np.linspace(self.lo[1], self.hi[1], self.shape[1]))

    def as_dict(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi), "shape": list(self.shape)}


@dataclass
class CurvatureField:
    """Grid-sampled curvature values with their evaluation metadata.

    ``values`` has shape ``grid.shape``; failed nodes hold NaN and serialize
    to empty CSV cells.
    """

    grid: GridSpec
    values: np.ndarray
    method: str
    h: float | None
    model_label: str
    model_params: dict

    @property
    def failed_nodes(self) -> int:
        return int(np.isnan(self.values).sum())

    def max_abs(self):
        """(|F|, lambda1, lambda2) at the largest finite |F| on the grid."""
        masked = np.where(np.isnan(self.values), -np.inf, np.abs(self.values))
        flat = int(np.argmax(masked))
        i, j = np.unravel_index(flat, self.values.shape)
        ax1, ax2 = self.grid.axes()
        return float(np.abs(self.values[i, j])), float(ax1[i]), float(ax2[j])

    def metadata(self) -> dict:
        return {
            "grid": self.grid.as_dict(),
            "method": self.method,
            "h": self.h,
            "model": self.model_label,
            "params": dict(self.model_params),
            "failed_nodes": self.failed_nodes,
        }

    def write_csv(self, path) -> None:
        """Rows `lambda1,lambda2,F`, row-major over the grid, NaN as empty cell."""
        ax1, ax2 = self.grid.axes()
        lines = ["lambda1,lambda2,F"]
        for i, l1 in enumerate(ax1):
            for j, l2 in enumerate(ax2):
                v = self.values[i, j]
                cell = "" if np.isnan(v) else f"{v:.17g}"
                lines.append(f"{l1:.17g},{l2:.17g},{cell}")
        with open(path, "w", newline="") as fh:
            fh.write("\n".join(lines) + "\n")

    def write_metadata(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.metadata(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def curvature_field(model: LindbladModel, grid: GridSpec,
                    method: str = "finite_difference",
                    h: float | None = None, threads: int = 1) -> CurvatureField:
    """Sample F_12 on a grid via the closed form or the generic pipeline.

    Parameters
    ----------
    model : LindbladModel
    grid : GridSpec
    method : {"finite_difference", "closed_form"}
        The closed form applies to the TLS family only.
    h : float, optional
        Central-difference step; per-axis default when omitted.
    threads : int
        Grid rows are independent and may be evaluated in a thread pool;
        aggregation is index-ordered, so results do not depend on threads.

    Nodes where the steady state fails are recorded as NaN; the sweep never
    aborts on individual nodes.
    """
    if method not in ("finite_difference", "closed_form"):
        raise ValueError(f"unknown method {method!r}")
    if method == "closed_form" and model.label != "tls":
        raise InvalidParametersError("closed_form curvature is only defined for the TLS family")
    ax1, ax2 = grid.axes()
    g = model.params.get("gamma")
    gp = model.params.get("gamma_phi", 0.0)

    def node(l1, l2):
        try:
            if method == "closed_form":
                return curvature_closed_form_tls(l1, l2, g, gp)
            return curvature_fd(model, (l1, l2), h=h)
        except GeomworkError:
            return np.nan

    def row(l1):
        return [node(l1, l2) for l2 in ax2]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, ax1))
    else:
        rows = [row(l1) for l1 in ax1]
    values = np.asarray(rows)
    return CurvatureField(grid=grid, values=values, method=method, h=h,
                          model_label=model.label, model_params=dict(model.params))
