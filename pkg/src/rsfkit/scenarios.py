"""Ready-made configurations: Gaussian thermal operations, the Gaussian
amplifier, and the two-mode stabilizability generators."""

from dataclasses import dataclass

import numpy as np

from .config import HBAR, resolve_tol
from .dynamics.bogoliubov import BogoliubovFrame
from .dynamics.generators import GaussianGenerator, RKEGenerator
from .symplectic import J2, commutator_norm, is_symplectic, rotation, symplectic_form

# Gaussian thermal operations ------------------------------------------------


@dataclass(frozen=True)
class GTOParams:
    """Single-mode Gaussian thermal operation at one instant.

    ``V -> S [Q S^-1 V S^-T Q^T + (1 - p) nu 1] S^T`` with
    ``Q = sqrt(p) R(phi)``; ``dp``, ``dphi`` are the time derivatives.
    """

    S: np.ndarray
    p: float
    dp: float
    phi: float
    dphi: float
    nu: float

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        if S.shape != (2, 2) or not is_symplectic(S, tol=1e-10):
            raise ValueError("S must be a 2x2 symplectic matrix")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not self.nu >= 1.0:
            raise ValueError(f"nu must be >= 1, got {self.nu}")
        object.__setattr__(self, "S", S)


def gto_map(params, V0):
    """Second moments after the operation described by ``params``."""
    S = params.S
    Sinv = np.linalg.inv(S)
    Q = np.sqrt(params.p) * rotation(params.phi)
    P = (1.0 - params.p) * params.nu * np.eye(2)
    return S @ (Q @ Sinv @ np.asarray(V0) @ Sinv.T @ Q.T + P) @ S.T


@dataclass(frozen=True)
class GTOGenerator:
    A: np.ndarray
    JRJ: np.ndarray
    condition_norm: float
    compatible: bool

    def to_json(self):
        return {
            "A": self.A.tolist(),
            "JRJ": self.JRJ.tolist(),
            "condition_norm": self.condition_norm,
            "compatible": self.compatible,
        }


def gto_generator(params, tol=None):
    """Drift ``A`` and diffusion term of a Gaussian thermal operation.

    ``A = dp/(2p) + dphi S S^T J`` and ``JRJ = -(dp/p) nu S S^T``, the term
    added to ``A V + V A^T`` in ``dV/dt``. Compatible with kinetic equations
    iff ``dphi [J, S S^T] = 0``.
    """
    tol = resolve_tol(tol)
    if params.p <= 0.0:
        raise ValueError("p = 0 is degenerate: the drift is undefined")
    SSt = params.S @ params.S.T
    A = params.dp / (2.0 * params.p) * np.eye(2) + params.dphi * SSt @ J2
    JRJ = -(params.dp / params.p) * params.nu * SSt
    norm = abs(params.dphi) * commutator_norm(J2, SSt)
    return GTOGenerator(A, JRJ, norm, norm <= tol)


# Gaussian amplification -------------------------------------------------------


def _rates(kappa):
    kappa = np.atleast_1d(np.asarray(kappa, dtype=float))
    if kappa.ndim == 2:
        if np.any(kappa != np.diag(np.diag(kappa))):
            raise ValueError("kappa must be diagonal")
        kappa = np.diag(kappa)
    if np.any(kappa < 0):
        raise ValueError("amplification rates must be >= 0")
    return kappa


def amplification_frame(kappa, t):
    """Bogoliubov frame of the phase-insensitive amplifier with a vacuum bath.

    ``X_up = cosh(nu) 1``, ``X_down = -sinh(nu) [[0, 1], [1, 0]]`` with
    ``cosh(nu(t)) = exp(kappa t)`` per mode. At ``t = 0`` with ``kappa > 0`` the
    derivative of ``sinh(nu)`` diverges and is stored as ``inf``.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    kappa = _rates(kappa)
    n = kappa.size
    growth = np.exp(kappa * t)
    cosh_nu = growth
    sinh_nu = np.sqrt(np.maximum(growth**2 - 1.0, 0.0))
    d_cosh = kappa * growth
    with np.errstate(divide="ignore", invalid="ignore"):
        d_sinh = np.where(kappa == 0.0, 0.0, kappa * growth**2 / sinh_nu)
    d_sinh = np.where(np.isnan(d_sinh), np.inf, d_sinh)

    # system and bath blocks share the per-mode profile; X_down swaps them
    rows, cols = np.arange(2 * n), np.roll(np.arange(2 * n), n)
    x_up, dx_up = np.diag(np.tile(cosh_nu, 2)), np.diag(np.tile(d_cosh, 2))
    x_down, dx_down = np.zeros((2 * n, 2 * n)), np.zeros((2 * n, 2 * n))
    x_down[rows, cols] = -np.tile(sinh_nu, 2)
    dx_down[rows, cols] = -np.tile(d_sinh, 2)
    return BogoliubovFrame.from_blocks(x_up, x_down, dx_up, dx_down)


def amplification_rke(kappa, n_bath=0.0):
    """``gamma_up = 2 kappa (1 + n)``, ``gamma_down = 2 kappa n``, ``h = 0``."""
    kappa = _rates(kappa)
    n_bath = np.broadcast_to(_rates(n_bath), kappa.shape)
    return RKEGenerator(
        np.zeros((kappa.size, kappa.size)),
        None,
        np.diag(2.0 * kappa * (1.0 + n_bath)),
        np.diag(2.0 * kappa * n_bath),
    )


# Operator -> matrix translation ----------------------------------------------


def ladder_to_quadrature(n_modes):
    """``L`` with ``(a_1..a_N, a_1^dag..a_N^dag) = L xi``."""
    L = np.zeros((2 * n_modes, 2 * n_modes), dtype=complex)
    for k in range(n_modes):
        L[k, 2 * k] = L[n_modes + k, 2 * k] = 1.0 / np.sqrt(2.0)
        L[k, 2 * k + 1] = 1j / np.sqrt(2.0)
        L[n_modes + k, 2 * k + 1] = -1j / np.sqrt(2.0)
    return L


def quadratic_hamiltonian(M, hbar=HBAR):
    """``G`` of ``H = sum_jk M_jk b_j b_k`` over ``b = (a, a^dag)``, up to a constant.

    ``H`` must be Hermitian; the returned ``G`` satisfies ``H = xi^T G xi / 2``
    (in units of ``hbar``).
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0] // 2
    L = ladder_to_quadrature(n)
    P = L.T @ M @ L
    G = (P + P.T) / hbar
    if np.linalg.norm(G.imag) > 1e-12 * max(1.0, np.linalg.norm(G)):
        raise ValueError("operator is not Hermitian: quadratic form has an imaginary part")
    return G.real


def linear_operator_row(annihilation, creation):
    """Row ``c`` with ``c . xi = sum_k annihilation_k a_k + creation_k a_k^dag``."""
    coeffs = np.concatenate([np.asarray(annihilation, dtype=complex), np.asarray(creation, dtype=complex)])
    return coeffs @ ladder_to_quadrature(len(coeffs) // 2)


@dataclass(frozen=True)
class StabilizabilityCase:
    name: str
    G: np.ndarray
    C: np.ndarray
    comm_JG: float
    comm_JIC: float
    verdict_G: bool
    verdict_IC: bool

    @property
    def generator(self):
        return GaussianGenerator(self.G, self.C)

    def to_json(self):
        return {
            "name": self.name,
            "comm_JG": self.comm_JG,
            "comm_JIC": self.comm_JIC,
            "verdict_G": self.verdict_G,
            "verdict_IC": self.verdict_IC,
        }


def _case(name, M, rows, tol):
    G = quadratic_hamiltonian(M)
    C = np.array(rows)
    J = symplectic_form(2)
    I_C = (C.conj().T @ C).imag
    cJG, cJI = commutator_norm(J, G), commutator_norm(J, I_C)
    return StabilizabilityCase(name, G, C, cJG, cJI, cJG <= tol, cJI <= tol)


def stabilizability_suite(omega=1.0, squeezing=1.0, tol=None):
    """The three two-mode (Hamiltonian, dissipator) pairs that maximise stabilised
    entanglement: local damping, dissipative squeezed-state preparation and
    cascaded oscillators. Unit rates; the verdicts do not depend on them."""
    tol = resolve_tol(tol)
    # b = (a1, a2, a1^dag, a2^dag); M is symmetrised by the quadratic form
    h_sq = np.zeros((4, 4), dtype=complex)
    h_sq[0, 1] = -1j * omega  # -i w a1 a2
    h_sq[2, 3] = 1j * omega  # +i w a1^dag a2^dag
    h_cas = np.zeros((4, 4), dtype=complex)
    h_cas[:2, :2] = -0.5j * omega  # -(i w/2)(a1 + a2)^2
    h_cas[2:, 2:] = 0.5j * omega  # +(i w/2)(a1^dag + a2^dag)^2

    ch, sh = np.cosh(squeezing), np.sinh(squeezing)
    damping = [linear_operator_row([1, 0], [0, 0]), linear_operator_row([0, 1], [0, 0])]
    squeezed_prep = [linear_operator_row([ch, 0], [0, -sh]), linear_operator_row([0, ch], [-sh, 0])]
    cascaded = [linear_operator_row([1, 1], [0, 0])]
    return [
        _case("local_damping", h_sq, damping, tol),
        _case("squeezed_state_preparation", h_sq, squeezed_prep, tol),
        _case("cascaded_oscillators", h_cas, cascaded, tol),
    ]
