"""Gaussian evolution with scattering, and its reduction to kinetic equations."""

from dataclasses import dataclass

import numpy as np

from ..config import HBAR, resolve_tol
from ..errors import IncompatibleGeneratorError
from ..symplectic import (
    QuadratureState,
    commutator_norm,
    realify,
    symplectic_form,
    transfer_matrix,
)
from .generators import RKEGenerator


def drift_matrix(gen):
    """``A = J (G + I_C)``."""
    return gen.drift


@dataclass(frozen=True)
class GaussianFlowTerms:
    """Precomputed arrays of the affine moment flow; broadcast over leading axes.

    ``dV = A' V + V A'^T + D + sum_i w_i K_i V K_i^T`` with
    ``A' = A - (sum_i w_i)/2`` and ``dxi = B xi`` with ``B = A + sum_i w_i (K_i - 1)``.
    """

    A_shift: np.ndarray
    B: np.ndarray
    D: np.ndarray
    K: np.ndarray
    w: np.ndarray


def flow_terms(gen):
    dim = 2 * gen.n_modes
    eye = np.eye(dim)
    A = gen.drift
    if gen.scattering:
        w = np.array([wi for wi, _ in gen.scattering])
        K = np.stack([Ki for _, Ki in gen.scattering])
    else:
        w = np.zeros(0)
        K = np.zeros((0, dim, dim))
    wsum = w.sum()
    B = A + np.einsum("m,mij->ij", w, K) - wsum * eye
    return GaussianFlowTerms(A - 0.5 * wsum * eye, B, gen.diffusion, K, w)


def vector_field(terms, V, xi):
    AV = terms.A_shift @ V
    dV = AV + np.swapaxes(AV, -1, -2) + terms.D
    if terms.w.shape[-1]:
        KV = terms.K @ V[..., None, :, :]
        KVK = KV @ np.swapaxes(terms.K, -1, -2)
        dV = dV + np.sum(terms.w[..., :, None, None] * KVK, axis=-3)
    dxi = np.squeeze(terms.B @ xi[..., :, None], -1)
    return dV, dxi


def gaussian_rhs(gen, state):
    """Time derivative ``(dV, dxi)`` of the moments under ``gen``."""
    if not isinstance(state, QuadratureState):
        state = QuadratureState(*state)
    if state.n_modes != gen.n_modes:
        raise ValueError(f"generator has {gen.n_modes} modes, state has {state.n_modes}")
    return vector_field(flow_terms(gen), state.V, state.xi)


@dataclass(frozen=True)
class ScatteringCheck:
    TKTt_norm: float
    TKTdag_unitarity: float


@dataclass(frozen=True)
class GaussianCompatibilityReport:
    comm_JG: float
    comm_JIC: float
    per_K: tuple
    compatible: bool
    violations: tuple

    def to_json(self):
        return {
            "compatible": self.compatible,
            "comm_JG": self.comm_JG,
            "comm_JIC": self.comm_JIC,
            "per_K": [
                {"TKTt_norm": k.TKTt_norm, "TKTdag_unitarity": k.TKTdag_unitarity} for k in self.per_K
            ],
            "violations": list(self.violations),
        }


def check_gaussian_compatibility(gen, tol=None):
    """Exact test of whether ``gen`` closes on the reduced field.

    Needs ``[J, G] = [J, I_C] = 0`` and, for every scattering matrix,
    ``T K T^T = 0`` with ``T K T^dag`` unitary. Always returns a report.
    """
    tol = resolve_tol(tol)
    n = gen.n_modes
    J = symplectic_form(n)
    T = transfer_matrix(n)
    comm_JG = commutator_norm(J, gen.G)
    comm_JIC = commutator_norm(J, gen.I_C)
    violations = []
    if comm_JG > tol:
        violations.append("[J,G] ≠ 0")
    if comm_JIC > tol:
        violations.append("[J,I_C] ≠ 0")
    per_K = []
    for i, (_, K) in enumerate(gen.scattering):
        s = T @ K @ T.T
        q = T @ K @ T.conj().T
        check = ScatteringCheck(
            float(np.linalg.norm(s)), float(np.linalg.norm(q @ q.conj().T - np.eye(n)))
        )
        per_K.append(check)
        if check.TKTt_norm > tol:
            violations.append(f"T K_{i} T^T ≠ 0")
        if check.TKTdag_unitarity > tol:
            violations.append(f"T K_{i} T^dag not unitary")
    return GaussianCompatibilityReport(
        comm_JG, comm_JIC, tuple(per_K), not violations, tuple(violations)
    )


def gaussian_to_rke(gen, tol=None, hbar=HBAR, strict=True):
    """Kinetic-equation generator equivalent to a compatible Gaussian one.

    ``h = i hbar T G J T^dag``, ``gamma_up/down = +-T (I_C J -+ J R_C J) T^dag``,
    ``u_i = T K_i T^dag`` and ``zeta = 0``. Incompatible generators raise
    :class:`IncompatibleGeneratorError`; ``strict=False`` skips the gate and
    applies the same formulas, which is only meaningful for showing how the
    two pictures disagree.
    """
    tol = resolve_tol(tol)
    if strict:
        report = check_gaussian_compatibility(gen, tol)
        if not report.compatible:
            raise IncompatibleGeneratorError(report.violations)
    n = gen.n_modes
    J = symplectic_form(n)
    T = transfer_matrix(n)
    Td = T.conj().T
    h = 1j * hbar * T @ gen.G @ J @ Td
    JRJ = J @ gen.R_C @ J
    IJ = gen.I_C @ J
    gamma_up = T @ (IJ - JRJ) @ Td
    gamma_down = -T @ (IJ + JRJ) @ Td
    scattering = [(w, T @ K @ Td) for w, K in gen.scattering]
    return RKEGenerator(h, None, gamma_up, gamma_down, scattering, tol=max(tol, 1e-12))


def hamiltonian_matrix_from_h(h, hbar=HBAR):
    """Inverse of the ``h = i hbar T G J T^dag`` map on passive Hamiltonians.

    Returns ``G`` with 2x2 blocks ``Re(h_kk') 1 - Im(h_kk') J2`` (divided by hbar),
    the general form of a quadratic Hamiltonian commuting with ``J``.
    """
    h = np.atleast_2d(np.asarray(h, dtype=complex))
    if np.linalg.norm(h - h.conj().T) > 1e-12 * max(1.0, np.linalg.norm(h)):
        raise ValueError("h is not Hermitian")
    return realify(0.5 * (h + h.conj().T) / hbar)
