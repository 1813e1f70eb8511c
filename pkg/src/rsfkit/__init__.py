"""Gaussian bosonic states in the symplectic picture and their reduced field."""

from .config import HBAR, KB, default_tol
from .dynamics import (
    BogoliubovFrame,
    GaussianGenerator,
    RKEGenerator,
    Trajectory,
    bogoliubov_to_rke,
    check_bogoliubov_compatibility,
    check_gaussian_compatibility,
    evolve,
    evolve_many,
    gaussian_to_rke,
)
from .entanglement import entanglement_necessary_condition, separable_counterpart, tmsv_state
from .entropy import entropy_bounds, reduced_von_neumann, reduced_wehrl, wehrl_quadrature_oracle
from .errors import IncompatibleGeneratorError, PhysicalityError
from .fields import (
    ConjugateField,
    GeneralizedField,
    ReducedField,
    conjugate_reduce,
    correlation_matrix,
    generalized_field,
    reduce,
)
from .symplectic import (
    QuadratureState,
    check_heisenberg,
    coherent_state,
    squeezed_state,
    standard_form,
    symplectic_form,
    thermal_state,
    transfer_matrix,
    vacuum_state,
)

__version__ = "0.1.0"
