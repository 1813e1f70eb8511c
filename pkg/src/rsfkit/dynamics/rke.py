"""Right-hand side of the reduced kinetic equations."""

from dataclasses import dataclass

import numpy as np

from ..config import HBAR
from ..fields import ReducedField


@dataclass(frozen=True)
class RKEFlowTerms:
    """Arrays of the affine flow on ``(r, alpha)``; broadcast over leading axes.

    ``dr = M r + r M^dag + |zeta><alpha| + |alpha><zeta| + gamma_up + sum_i w_i u_i r u_i^dag``
    with ``M = -i h / hbar + (gamma_up - gamma_down)/2 - (sum_i w_i)/2`` and
    ``dalpha = M_alpha alpha + zeta``.
    """

    M: np.ndarray
    M_alpha: np.ndarray
    source: np.ndarray
    zeta: np.ndarray
    u: np.ndarray
    w: np.ndarray


def flow_terms(gen, hbar=HBAR):
    n = gen.n_modes
    eye = np.eye(n)
    base = -1j / hbar * gen.h + 0.5 * (gen.gamma_up - gen.gamma_down)
    if gen.scattering:
        w = np.array([wi for wi, _ in gen.scattering])
        u = np.stack([ui for _, ui in gen.scattering])
    else:
        w = np.zeros(0)
        u = np.zeros((0, n, n), dtype=complex)
    wsum = w.sum()
    M_alpha = base + np.einsum("m,mij->ij", w, u) - wsum * eye
    return RKEFlowTerms(base - 0.5 * wsum * eye, M_alpha, gen.gamma_up.copy(), gen.zeta.copy(), u, w)


def vector_field(terms, r, alpha):
    Mr = terms.M @ r
    za = terms.zeta[..., :, None] * np.conj(alpha[..., None, :])
    dr = Mr + np.conj(np.swapaxes(Mr, -1, -2)) + za + np.conj(np.swapaxes(za, -1, -2)) + terms.source
    if terms.w.shape[-1]:
        uru = terms.u @ r[..., None, :, :] @ np.conj(np.swapaxes(terms.u, -1, -2))
        dr = dr + np.sum(terms.w[..., :, None, None] * uru, axis=-3)
    dalpha = np.squeeze(terms.M_alpha @ alpha[..., :, None], -1) + terms.zeta
    return dr, dalpha


def rke_rhs(gen, field, hbar=HBAR):
    """Time derivative ``(dr, dalpha)`` of the reduced field under ``gen``."""
    if not isinstance(field, ReducedField):
        field = ReducedField(*field)
    if field.n_modes != gen.n_modes:
        raise ValueError(f"generator has {gen.n_modes} modes, field has {field.n_modes}")
    return vector_field(flow_terms(gen, hbar), field.r, field.alpha)
