from .bogoliubov import (
    BogoliubovCompatibilityReport,
    BogoliubovFrame,
    apply_bogoliubov,
    beam_splitter_frame,
    bogoliubov_to_rke,
    check_bogoliubov_compatibility,
    squeezing_frame,
)
from .gaussian import (
    GaussianCompatibilityReport,
    ScatteringCheck,
    check_gaussian_compatibility,
    drift_matrix,
    gaussian_rhs,
    gaussian_to_rke,
    hamiltonian_matrix_from_h,
)
from .generators import GaussianGenerator, RKEGenerator
from .integrate import DEFAULT_DT, Trajectory, evolve, evolve_many, rk4
from .rke import rke_rhs

__all__ = [
    "BogoliubovCompatibilityReport",
    "BogoliubovFrame",
    "DEFAULT_DT",
    "GaussianCompatibilityReport",
    "GaussianGenerator",
    "RKEGenerator",
    "ScatteringCheck",
    "Trajectory",
    "apply_bogoliubov",
    "beam_splitter_frame",
    "bogoliubov_to_rke",
    "check_bogoliubov_compatibility",
    "check_gaussian_compatibility",
    "drift_matrix",
    "evolve",
    "evolve_many",
    "gaussian_rhs",
    "gaussian_to_rke",
    "hamiltonian_matrix_from_h",
    "rk4",
    "rke_rhs",
    "squeezing_frame",
]
