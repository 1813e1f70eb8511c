"""Symplectic-picture primitives.

Quadratures are ordered ``(x_1, p_1, ..., x_N, p_N)`` with
``x = (a + a^dag)/sqrt(2)`` and ``p = -i(a - a^dag)/sqrt(2)``; this is the
only ordering used anywhere in the package. Vacuum has ``V = 1/2``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .config import resolve_tol

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_form(n_modes):
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    return block_diag(*([J2] * n_modes))


def transfer_matrix(n_modes):
    """N x 2N map from quadratures to annihilation operators: ``a = T xi``."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be >= 1, got {n_modes}")
    T = np.zeros((n_modes, 2 * n_modes), dtype=complex)
    k = np.arange(n_modes)
    T[k, 2 * k] = 1.0 / np.sqrt(2.0)
    T[k, 2 * k + 1] = 1j / np.sqrt(2.0)
    return T


def _check_phase_space_matrix(M, name="matrix"):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] % 2:
        raise ValueError(f"{name} must have even dimension, got {M.shape[0]}")
    return M


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class QuadratureState:
    """Second-moment matrix ``V`` and first moments ``xi`` of an N-mode state.

    ``V`` holds the symmetrised second moments (not the covariance); the
    covariance is ``V - |xi><xi|``. The stored ``V`` is symmetrised on
    construction after checking that the asymmetry is within tolerance.
    """

    V: np.ndarray
    xi: np.ndarray

    def __init__(self, V, xi=None, tol=None):
        tol = resolve_tol(tol)
        V = np.asarray(V, dtype=float)
        _check_phase_space_matrix(V, "V")
        asym = np.linalg.norm(V - V.T)
        if asym > tol * max(1.0, np.linalg.norm(V)):
            raise ValueError(f"V is not symmetric (||V - V^T|| = {asym:.3e})")
        if xi is None:
            xi = np.zeros(V.shape[0])
        xi = np.asarray(xi, dtype=float).reshape(-1)
        if xi.shape[0] != V.shape[0]:
            raise ValueError(f"xi has length {xi.shape[0]}, expected {V.shape[0]}")
        object.__setattr__(self, "V", _frozen(0.5 * (V + V.T)))
        object.__setattr__(self, "xi", _frozen(xi))

    @property
    def n_modes(self):
        return self.V.shape[0] // 2

    @property
    def covariance(self):
        return self.V - np.outer(self.xi, self.xi)

    def transformed(self, S):
        """State after the linear map ``xi -> S xi``."""
        S = np.asarray(S, dtype=float)
        return QuadratureState(S @ self.V @ S.T, S @ self.xi)


def vacuum_state(n_modes):
    return QuadratureState(0.5 * np.eye(2 * n_modes))


def thermal_state(nbar):
    """Product thermal state; ``nbar`` is a scalar or one occupation per mode."""
    nbar = np.atleast_1d(np.asarray(nbar, dtype=float))
    return QuadratureState(np.diag(np.repeat(nbar + 0.5, 2)))


def coherent_state(alpha):
    alpha = np.atleast_1d(np.asarray(alpha, dtype=complex))
    xi = np.sqrt(2.0) * np.column_stack([alpha.real, alpha.imag]).reshape(-1)
    return QuadratureState(0.5 * np.eye(2 * alpha.size) + np.outer(xi, xi), xi)


def squeezed_state(s):
    """Single-mode squeezed vacuum, ``V = diag(e^{2s}, e^{-2s}) / 2``."""
    return QuadratureState(0.5 * np.diag([np.exp(2 * s), np.exp(-2 * s)]))


@dataclass(frozen=True)
class HeisenbergReport:
    min_eigenvalue: float
    physical: bool


def heisenberg_min_eigenvalue(V, xi=None):
    """Smallest eigenvalue of ``V_cov + iJ/2``; broadcasts over leading axes."""
    V = np.asarray(V, dtype=float)
    dim = V.shape[-1]
    if V.shape[-2] != dim or dim % 2:
        raise ValueError(f"expected stacks of even square matrices, got shape {V.shape}")
    cov = V if xi is None else V - xi[..., :, None] * xi[..., None, :]
    H = cov + 0.5j * symplectic_form(dim // 2)
    H = 0.5 * (H + np.conj(np.swapaxes(H, -1, -2)))
    return np.linalg.eigvalsh(H)[..., 0]


def check_heisenberg(state, tol=None):
    tol = resolve_tol(tol)
    if not isinstance(state, QuadratureState):
        state = QuadratureState(state)
    lam = float(heisenberg_min_eigenvalue(state.V, state.xi))
    return HeisenbergReport(lam, lam >= -tol)


def is_symplectic(S, tol=None):
    tol = resolve_tol(tol)
    S = _check_phase_space_matrix(S, "S")
    J = symplectic_form(S.shape[0] // 2)
    return bool(np.linalg.norm(S @ J @ S.T - J) <= tol)


def is_passive(S, tol=None):
    """Symplectic and orthogonal, i.e. a beam-splitter / phase-shifter network."""
    tol = resolve_tol(tol)
    S = _check_phase_space_matrix(S, "S")
    return is_symplectic(S, tol) and bool(np.linalg.norm(S @ S.T - np.eye(S.shape[0])) <= tol)


def rotation(theta):
    """Single-mode phase rotation ``[[cos, sin], [-sin, cos]]``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def realify(m):
    """Real 2N x 2N image of a complex N x N matrix, block ``Re m 1 - Im m J2``.

    This is the ring homomorphism under which ``T realify(m) T^dag = m``; it
    maps unitaries to passive symplectic matrices and Hermitian matrices to
    Hamiltonian matrices that commute with ``J``.
    """
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return np.kron(m.real, np.eye(2)) - np.kron(m.imag, J2)


def commutator_norm(X, Y):
    return float(np.linalg.norm(X @ Y - Y @ X))


@dataclass(frozen=True)
class StandardFormParams:
    a: float
    b: float
    c_plus: float
    c_minus: float

    def matrix(self):
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        return np.array(
            [
                [a, 0.0, cp, 0.0],
                [0.0, a, 0.0, cm],
                [cp, 0.0, b, 0.0],
                [0.0, cm, 0.0, b],
            ]
        )

    def state(self):
        return QuadratureState(self.matrix())


def standard_form(V, tol=None):
    """Two-mode standard-form parameters from the local symplectic invariants.

    Accepts a two-mode :class:`QuadratureState` (its covariance is used) or a
    bare 4 x 4 matrix taken as the covariance. Returns ``c_plus >= |c_minus|``
    with ``sign(c_minus) = sign(det C)``.
    """
    tol = resolve_tol(tol)
    state = V if isinstance(V, QuadratureState) else QuadratureState(V)
    if state.n_modes != 2:
        raise ValueError(f"standard form needs a two-mode state, got {state.n_modes} modes")
    report = check_heisenberg(state, tol)
    if not report.physical:
        raise ValueError(f"unphysical state: min eig of V_cov + iJ/2 is {report.min_eigenvalue:.3e}")

    cov = state.covariance
    det_a = np.linalg.det(cov[:2, :2])
    det_b = np.linalg.det(cov[2:, 2:])
    det_c = np.linalg.det(cov[:2, 2:])
    det_v = np.linalg.det(cov)
    a, b = np.sqrt(det_a), np.sqrt(det_b)

    # c_plus^2 and c_minus^2 are the roots of z^2 - s z + det_c^2
    s = (a * a * b * b + det_c * det_c - det_v) / (a * b)
    disc = s * s - 4.0 * det_c * det_c
    scale = max(1.0, s * s)
    if disc < -tol * scale:
        raise ValueError(f"standard-form invariants give complex roots (discriminant {disc:.3e})")
    root = np.sqrt(max(disc, 0.0))
    big, small = 0.5 * (s + root), 0.5 * (s - root)
    if small < -tol * max(1.0, abs(s)):
        raise ValueError(f"standard-form invariants give a negative c^2 ({small:.3e})")
    c_plus = np.sqrt(max(big, 0.0))
    c_minus = np.sign(det_c) * np.sqrt(max(small, 0.0))
    return StandardFormParams(float(a), float(b), float(c_plus), float(c_minus))
