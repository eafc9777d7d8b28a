"""Geometric structure of quasistatic work in driven open quantum steady states.

The pipeline: Lindblad models with analytic Hamiltonian gradients
(`operators`), steady states from the Liouvillian null space (`steadystate`),
the work one-form and curvature over control space (`geometry`), cycle work
by line and flux integrals (`cycles`), dynamical verification of the
quasistatic limit (`dynamics`), the hopping-plane case study (`ssh`), and a
CSV-emitting experiment CLI (`cli`).
"""

__version__ = "0.1.0"

from .errors import (ConfigError, DegenerateSteadyStateError, GeomworkError,
                     IntegrationFailureError, InvalidParametersError,
                     NoSteadyStateError, StepTooLargeError)
from .operators import (IDENTITY_2, SIGMA_MINUS, SIGMA_X, SIGMA_Y, SIGMA_Z,
                        LindbladModel, ParamHamiltonian, dissipator,
                        lindblad_rhs, pauli, tls_family, tls_hamiltonian,
                        tls_hamiltonian_grad, tls_model,
                        validate_density_matrix)
from .steadystate import (BlochVector, bloch_components, density_from_bloch,
                          dissipator_superop, hamiltonian_superop,
                          liouvillian_matrix, steady_state,
                          tls_steady_closed_form)
from .geometry import (CurvatureField, GridSpec, coherence,
                       curvature_closed_form_tls, curvature_fd,
                       curvature_field, default_fd_step, work_one_form)
from .cycles import (Circle, Cycle, Rectangle, WorkResult, cycle_from_json,
                     cycle_to_json, cycle_work, flux_work,
                     gauge_shift_residual, line_integral_work, reverse)
from .dynamics import (ConvergencePoint, DriveSchedule, Trajectory,
                       default_time_step, dynamic_work, errors_decreasing,
                       evolve, quasistatic_convergence)
from .ssh import (ssh_curvature, ssh_family, ssh_hamiltonian,
                  ssh_hamiltonian_grad, ssh_model)

__all__ = [
    "__version__",
    "GeomworkError", "InvalidParametersError", "DegenerateSteadyStateError",
    "NoSteadyStateError", "StepTooLargeError", "IntegrationFailureError",
    "ConfigError",
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "SIGMA_MINUS", "IDENTITY_2",
    "pauli", "tls_hamiltonian", "tls_hamiltonian_grad", "tls_family",
    "ParamHamiltonian", "LindbladModel", "tls_model", "dissipator",
    "lindblad_rhs", "validate_density_matrix",
    "BlochVector", "hamiltonian_superop", "dissipator_superop",
    "liouvillian_matrix", "steady_state", "bloch_components",
    "density_from_bloch", "tls_steady_closed_form",
    "work_one_form", "curvature_closed_form_tls", "curvature_fd",
    "default_fd_step", "coherence", "GridSpec", "CurvatureField",
    "curvature_field",
    "Circle", "Rectangle", "Cycle", "reverse", "cycle_to_json",
    "cycle_from_json", "line_integral_work", "flux_work",
    "gauge_shift_residual", "WorkResult", "cycle_work",
    "DriveSchedule", "Trajectory", "default_time_step", "evolve",
    "dynamic_work", "ConvergencePoint", "errors_decreasing",
    "quasistatic_convergence",
    "ssh_hamiltonian", "ssh_hamiltonian_grad", "ssh_family", "ssh_model",
    "ssh_curvature",
]
