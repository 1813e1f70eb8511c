"""Reduced, conjugate and generalized fields of a bosonic state.

With the transfer matrix ``T`` the reduced state of the field (RSF) follows
from the quadrature moments as::

    r = T V T^dag - 1/2,   alpha = T xi,
    c = T V T^T,           alpha_star = conj(T) xi.
"""

from dataclasses import dataclass

import numpy as np

from .config import resolve_tol
from .symplectic import QuadratureState, check_heisenberg, transfer_matrix


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def hermitian_part(M):
    return 0.5 * (M + np.conj(np.swapaxes(M, -1, -2)))


@dataclass(frozen=True)
class ReducedField:
    """Single-particle density matrix ``r`` and averaged field ``alpha``."""

    r: np.ndarray
    alpha: np.ndarray

    def __init__(self, r, alpha=None, tol=None):
        tol = resolve_tol(tol)
        r = np.atleast_2d(np.asarray(r, dtype=complex))
        if r.ndim != 2 or r.shape[0] != r.shape[1]:
            raise ValueError(f"r must be square, got shape {r.shape}")
        if np.linalg.norm(r - r.conj().T) > tol * max(1.0, np.linalg.norm(r)):
            raise ValueError("r is not Hermitian")
        if alpha is None:
            alpha = np.zeros(r.shape[0], dtype=complex)
        alpha = np.asarray(alpha, dtype=complex).reshape(-1)
        if alpha.shape[0] != r.shape[0]:
            raise ValueError(f"alpha has length {alpha.shape[0]}, expected {r.shape[0]}")
        object.__setattr__(self, "r", _frozen(hermitian_part(r)))
        object.__setattr__(self, "alpha", _frozen(alpha))

    @property
    def n_modes(self):
        return self.r.shape[0]

    @property
    def particle_number(self):
        return float(np.trace(self.r).real)

    def to_json(self):
        return {
            "n_modes": self.n_modes,
            "r_re": self.r.real.tolist(),
            "r_im": self.r.imag.tolist(),
            "alpha_re": self.alpha.real.tolist(),
            "alpha_im": self.alpha.imag.tolist(),
        }

    @classmethod
    def from_json(cls, data, tol=None):
        r = np.asarray(data["r_re"], dtype=float) + 1j * np.asarray(data.get("r_im", 0.0), dtype=float)
        n = r.shape[0]
        alpha_re = np.asarray(data.get("alpha_re", np.zeros(n)), dtype=float)
        alpha_im = np.asarray(data.get("alpha_im", np.zeros(n)), dtype=float)
        if "n_modes" in data and int(data["n_modes"]) != n:
            raise ValueError(f"n_modes={data['n_modes']} does not match r of size {n}")
        return cls(r, alpha_re + 1j * alpha_im, tol=tol)


@dataclass(frozen=True)
class ConjugateField:
    c: np.ndarray
    alpha_star: np.ndarray

    def __init__(self, c, alpha_star=None, tol=None):
        tol = resolve_tol(tol)
        c = np.atleast_2d(np.asarray(c, dtype=complex))
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError(f"c must be square, got shape {c.shape}")
        if np.linalg.norm(c - c.T) > tol * max(1.0, np.linalg.norm(c)):
            raise ValueError("c is not symmetric")
        if alpha_star is None:
            alpha_star = np.zeros(c.shape[0], dtype=complex)
        alpha_star = np.asarray(alpha_star, dtype=complex).reshape(-1)
        if alpha_star.shape[0] != c.shape[0]:
            raise ValueError("alpha_star length does not match c")
        object.__setattr__(self, "c", _frozen(0.5 * (c + c.T)))
        object.__setattr__(self, "alpha_star", _frozen(alpha_star))

    @property
    def n_modes(self):
        return self.c.shape[0]


@dataclass(frozen=True)
class GeneralizedField:
    """Moments of ``A = (a_1..a_N, a_1^dag..a_N^dag)``: ``g = [[r, c], [c*, r^T + 1]]``."""

    g: np.ndarray
    A_vec: np.ndarray

    @property
    def n_modes(self):
        return self.g.shape[0] // 2


def _as_state(state):
    return state if isinstance(state, QuadratureState) else QuadratureState(*state)


def _require_physical(state, tol):
    report = check_heisenberg(state, tol)
    if not report.physical:
        raise ValueError(
            f"unphysical state: min eig of V_cov + iJ/2 is {report.min_eigenvalue:.3e}"
        )


def reduce(state, tol=None):
    """RSF ``(r, alpha)`` of a quadrature state."""
    tol = resolve_tol(tol)
    state = _as_state(state)
    _require_physical(state, tol)
    T = transfer_matrix(state.n_modes)
    r = T @ state.V @ T.conj().T - 0.5 * np.eye(state.n_modes)
    return ReducedField(r, T @ state.xi, tol=tol)


def conjugate_reduce(state, tol=None):
    tol = resolve_tol(tol)
    state = _as_state(state)
    _require_physical(state, tol)
    T = transfer_matrix(state.n_modes)
    return ConjugateField(T @ state.V @ T.T, T.conj() @ state.xi, tol=tol)


def generalized_field(rf, cf):
    if rf.n_modes != cf.n_modes:
        raise ValueError(f"mode mismatch: r has {rf.n_modes} modes, c has {cf.n_modes}")
    n = rf.n_modes
    g = np.block([[rf.r, cf.c], [cf.c.conj(), rf.r.T + np.eye(n)]])
    return GeneralizedField(_frozen(g), _frozen(np.concatenate([rf.alpha, cf.alpha_star])))


def correlation_matrix(rf, tol=None):
    """``r_alpha = r - |alpha><alpha|``, with eigenvalues in ``(-tol, 0)`` set to 0.

    Raises ``ValueError`` if an eigenvalue lies below ``-tol``.
    """
    tol = resolve_tol(tol)
    r_alpha = hermitian_part(rf.r - np.outer(rf.alpha, rf.alpha.conj()))
    w, U = np.linalg.eigh(r_alpha)
    if w[0] < -tol:
        raise ValueError(f"correlation matrix is not positive: min eigenvalue {w[0]:.3e}")
    if w[0] < 0:
        r_alpha = (U * np.clip(w, 0.0, None)) @ U.conj().T
    return r_alpha


def correlation_eigenvalues(r, alpha, tol=None):
    """Clamped eigenvalues of ``r - |alpha><alpha|``; broadcasts over leading axes."""
    tol = resolve_tol(tol)
    r_alpha = r - alpha[..., :, None] * np.conj(alpha[..., None, :])
    w = np.linalg.eigvalsh(hermitian_part(r_alpha))
    if np.any(w < -tol):
        raise ValueError(f"correlation matrix is not positive: min eigenvalue {w.min():.3e}")
    return np.clip(w, 0.0, None)
