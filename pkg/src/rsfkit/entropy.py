"""Reduced von Neumann and Wehrl entropies of a reduced field.

Both depend only on the eigenvalues ``lam`` of the correlation matrix::

    s_v = k_B sum[(lam + 1) log(lam + 1) - lam log lam]
    s_w = k_B sum[log(lam + 1)] + k_B N

and satisfy ``s_v <= s_w <= s_v + k_B N``. Natural logarithms throughout.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import xlogy

from .config import KB, resolve_tol
from .fields import correlation_eigenvalues, correlation_matrix


def _eigenvalues(rf, tol):
    return correlation_eigenvalues(rf.r, rf.alpha, tol)


def von_neumann_from_eigenvalues(lam, kB=KB):
    lam = np.asarray(lam, dtype=float)
    return kB * np.sum(xlogy(lam + 1.0, lam + 1.0) - xlogy(lam, lam), axis=-1)


def wehrl_from_eigenvalues(lam, kB=KB):
    lam = np.asarray(lam, dtype=float)
    return kB * (np.sum(np.log1p(lam), axis=-1) + lam.shape[-1])


def reduced_von_neumann(rf, kB=KB, tol=None):
    return float(von_neumann_from_eigenvalues(_eigenvalues(rf, resolve_tol(tol)), kB))


def reduced_wehrl(rf, kB=KB, tol=None):
    return float(wehrl_from_eigenvalues(_eigenvalues(rf, resolve_tol(tol)), kB))


@dataclass(frozen=True)
class EntropyReport:
    s_v: float
    s_w: float
    bound_ok: bool
    lower_margin: float
    upper_margin: float

    def to_json(self):
        return {"s_v": self.s_v, "s_w": self.s_w, "bound_ok": self.bound_ok}


def entropy_bounds(rf, kB=KB, tol=None):
    """Both entropies and whether ``s_v <= s_w <= s_v + k_B N`` holds to ``tol``."""
    tol = resolve_tol(tol)
    lam = _eigenvalues(rf, tol)
    s_v = float(von_neumann_from_eigenvalues(lam, kB))
    s_w = float(wehrl_from_eigenvalues(lam, kB))
    lower = s_w - s_v
    upper = s_v + kB * rf.n_modes - s_w
    return EntropyReport(s_v, s_w, bool(lower >= -tol and upper >= -tol), lower, upper)


def _husimi_grid(rf, half_width, points_per_axis, tol):
    if rf.n_modes != 1:
        raise ValueError(f"the quadrature oracle is single-mode only, got {rf.n_modes} modes")
    if points_per_axis < 3:
        raise ValueError("need at least 3 points per axis")
    r_alpha = correlation_matrix(rf, tol)
    width = float(r_alpha[0, 0].real) + 1.0
    alpha = complex(rf.alpha[0])
    if half_width is None:
        half_width = 6.0 * np.sqrt(width) + abs(alpha)
    axis = np.linspace(-half_width, half_width, points_per_axis)
    beta = axis[None, :] + 1j * axis[:, None]
    dist2 = np.abs(beta - alpha) ** 2
    log_q = -np.log(width) - dist2 / width
    return axis, beta, np.exp(log_q), log_q


def _integrate(axis, values):
    """``(1/pi) * integral d^2 beta`` by the trapezoidal rule on both axes."""
    return trapezoid(trapezoid(values, axis, axis=1), axis) / np.pi


def _check_mass(axis, q):
    mass = _integrate(axis, q)
    if mass < 1.0 - 1e-6:
        raise ValueError(f"grid too small: Husimi function mass on grid is {mass:.8f}")
    return mass


def wehrl_quadrature_oracle(rf, half_width=None, points_per_axis=801, kB=KB, tol=None):
    """Wehrl entropy of the maximising Gaussian Husimi function, by quadrature.

    ``Q(beta) = exp(-|beta - alpha|^2 / (r_alpha + 1)) / (r_alpha + 1)`` is
    integrated on a square grid centred on the origin. Single mode only.
    """
    tol = resolve_tol(tol)
    axis, _, q, log_q = _husimi_grid(rf, half_width, points_per_axis, tol)
    _check_mass(axis, q)
    return float(-kB * _integrate(axis, q * log_q))


def husimi_moments(rf, half_width=None, points_per_axis=801, tol=None):
    """``(r, alpha)`` recovered from the same Husimi function by quadrature."""
    tol = resolve_tol(tol)
    axis, beta, q, _ = _husimi_grid(rf, half_width, points_per_axis, tol)
    _check_mass(axis, q)
    r = _integrate(axis, (np.abs(beta) ** 2 - 1.0) * q)
    alpha = _integrate(axis, beta.real * q) + 1j * _integrate(axis, beta.imag * q)
    return float(r), complex(alpha)
