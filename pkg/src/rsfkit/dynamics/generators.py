"""Generator data for the two pictures."""

from dataclasses import dataclass

import numpy as np

from ..config import resolve_tol
from ..symplectic import is_symplectic, symplectic_form


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


def _scattering(entries, check, kind):
    out = []
    for w, M in entries:
        w = float(w)
        if not w >= 0:
            raise ValueError(f"scattering weight must be >= 0, got {w}")
        M = check(M)
        out.append((w, _frozen(M)))
    return tuple(out)


@dataclass(frozen=True)
class GaussianGenerator:
    """Quadratic Hamiltonian ``G``, linear Lindblad rows ``C`` and a finite
    scattering measure ``[(w_i, K_i)]`` with symplectic ``K_i``.

    ``H = xi^T G xi / 2`` and ``L_k = C[k] . xi``. Weights are rates.
    """

    G: np.ndarray
    C: np.ndarray
    scattering: tuple

    def __init__(self, G, C=None, scattering=(), tol=None):
        tol = resolve_tol(tol)
        G = np.asarray(G, dtype=float)
        if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] % 2:
            raise ValueError(f"G must be an even square matrix, got shape {G.shape}")
        if np.linalg.norm(G - G.T) > tol * max(1.0, np.linalg.norm(G)):
            raise ValueError("G is not symmetric")
        dim = G.shape[0]
        if C is None:
            C = np.zeros((0, dim), dtype=complex)
        C = np.atleast_2d(np.asarray(C, dtype=complex))
        if C.size == 0:
            C = np.zeros((0, dim), dtype=complex)
        if C.shape[1] != dim:
            raise ValueError(f"C must have {dim} columns, got shape {C.shape}")

        def check_K(K):
            K = np.asarray(K, dtype=float)
            if K.shape != (dim, dim):
                raise ValueError(f"scattering matrix has shape {K.shape}, expected {(dim, dim)}")
            if not is_symplectic(K, tol=max(tol, 1e-12) * max(1.0, np.linalg.norm(K) ** 2)):
                raise ValueError("scattering matrix K is not symplectic")
            return K

        object.__setattr__(self, "G", _frozen(0.5 * (G + G.T)))
        object.__setattr__(self, "C", _frozen(C))
        object.__setattr__(self, "scattering", _scattering(scattering, check_K, "K"))

    @property
    def n_modes(self):
        return self.G.shape[0] // 2

    @property
    def R_C(self):
        return (self.C.conj().T @ self.C).real

    @property
    def I_C(self):
        return (self.C.conj().T @ self.C).imag

    @property
    def drift(self):
        return symplectic_form(self.n_modes) @ (self.G + self.I_C)

    @property
    def diffusion(self):
        J = symplectic_form(self.n_modes)
        return J @ self.R_C @ J.T


@dataclass(frozen=True)
class RKEGenerator:
    """Reduced-kinetic-equation data ``(h, zeta, gamma_up, gamma_down, [(w_i, u_i)])``."""

    h: np.ndarray
    zeta: np.ndarray
    gamma_up: np.ndarray
    gamma_down: np.ndarray
    scattering: tuple

    def __init__(self, h, zeta=None, gamma_up=None, gamma_down=None, scattering=(), tol=None):
        tol = resolve_tol(tol)
        h = np.atleast_2d(np.asarray(h, dtype=complex))
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError(f"h must be square, got shape {h.shape}")
        n = h.shape[0]

        def hermitian(M, name, psd=False):
            M = np.zeros((n, n), dtype=complex) if M is None else np.atleast_2d(np.asarray(M, dtype=complex))
            if M.shape != (n, n):
                raise ValueError(f"{name} has shape {M.shape}, expected {(n, n)}")
            scale = max(1.0, np.linalg.norm(M))
            if np.linalg.norm(M - M.conj().T) > tol * scale:
                raise ValueError(f"{name} is not Hermitian")
            M = 0.5 * (M + M.conj().T)
            if psd:
                lam = np.linalg.eigvalsh(M)[0]
                if lam < -tol * scale:
                    raise ValueError(f"{name} is not positive semidefinite (min eigenvalue {lam:.3e})")
            return M

        def check_u(u):
            u = np.atleast_2d(np.asarray(u, dtype=complex))
            if u.shape != (n, n):
                raise ValueError(f"scattering unitary has shape {u.shape}, expected {(n, n)}")
            if np.linalg.norm(u @ u.conj().T - np.eye(n)) > max(tol, 1e-12):
                raise ValueError("scattering matrix u is not unitary")
            return u

        zeta = np.zeros(n, dtype=complex) if zeta is None else np.asarray(zeta, dtype=complex).reshape(-1)
        if zeta.shape[0] != n:
            raise ValueError(f"zeta has length {zeta.shape[0]}, expected {n}")
        object.__setattr__(self, "h", _frozen(hermitian(h, "h")))
        object.__setattr__(self, "zeta", _frozen(zeta))
        object.__setattr__(self, "gamma_up", _frozen(hermitian(gamma_up, "gamma_up", psd=True)))
        object.__setattr__(self, "gamma_down", _frozen(hermitian(gamma_down, "gamma_down", psd=True)))
        object.__setattr__(self, "scattering", _scattering(scattering, check_u, "u"))

    @property
    def n_modes(self):
        return self.h.shape[0]
