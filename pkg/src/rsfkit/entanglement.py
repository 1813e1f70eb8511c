"""Two-mode Gaussian entanglement and what the reduced field can see of it.

In standard form the correlation matrix is
``r_alpha = [[2a - 1, c+ + c-], [c+ + c-, 2b - 1]] / 2``: only the sum
``c+ + c-`` survives, while the entanglement test needs the sign of
``c+ c-``. Picking ``c+ = c- = (r_alpha)_12`` gives a separable state with the
same reduced field.
"""

from dataclasses import dataclass

import numpy as np

from .config import resolve_tol
from .fields import hermitian_part
from .symplectic import (
    QuadratureState,
    StandardFormParams,
    check_heisenberg,
    rotation,
)


@dataclass(frozen=True)
class TwoModeCorrelation:
    r_alpha: np.ndarray

    def __init__(self, r_alpha, tol=None):
        tol = resolve_tol(tol)
        r_alpha = np.asarray(r_alpha, dtype=complex)
        if r_alpha.shape != (2, 2):
            raise ValueError(f"expected a 2x2 correlation matrix, got shape {r_alpha.shape}")
        if np.linalg.norm(r_alpha - r_alpha.conj().T) > tol * max(1.0, np.linalg.norm(r_alpha)):
            raise ValueError("correlation matrix is not Hermitian")
        r_alpha = hermitian_part(r_alpha)
        lam = np.linalg.eigvalsh(r_alpha)[0]
        if lam < -tol:
            raise ValueError(f"correlation matrix is not positive (min eigenvalue {lam:.3e})")
        r_alpha.setflags(write=False)
        object.__setattr__(self, "r_alpha", r_alpha)


def entanglement_necessary_condition(p):
    """True when ``c+ c- < 0``, i.e. the state may be entangled."""
    return bool(p.c_plus * p.c_minus < 0)


def counterpart_params(tc):
    """Standard-form parameters of the separable counterpart, and the phase of
    ``(r_alpha)_12`` that a local rotation of mode 2 restores afterwards."""
    if not isinstance(tc, TwoModeCorrelation):
        tc = TwoModeCorrelation(tc)
    r = tc.r_alpha
    off = complex(r[0, 1])
    if off.imag == 0.0:
        c, phase = off.real, 0.0
    else:
        c, phase = abs(off), float(np.angle(off))
    a = (2.0 * r[0, 0].real + 1.0) / 2.0
    b = (2.0 * r[1, 1].real + 1.0) / 2.0
    return StandardFormParams(float(a), float(b), c, c), phase


def separable_counterpart(tc, alpha=None, tol=None):
    """Separable two-mode state whose reduced field has correlation matrix ``r_alpha``.

    For real ``(r_alpha)_12`` the result is exactly in standard form with
    ``c+ = c- = (r_alpha)_12``. A complex off-diagonal is made real by a phase
    rotation of mode 2, which is undone on the returned state. ``alpha``
    optionally sets the averaged field through the first moments.
    """
    tol = resolve_tol(tol)
    params, phase = counterpart_params(tc)
    S = np.eye(4)
    S[2:, 2:] = rotation(phase)
    V = S @ params.matrix() @ S.T
    xi = np.zeros(4)
    if alpha is not None:
        alpha = np.asarray(alpha, dtype=complex).reshape(2)
        xi = np.sqrt(2.0) * np.array([alpha[0].real, alpha[0].imag, alpha[1].real, alpha[1].imag])
    state = QuadratureState(V + np.outer(xi, xi), xi)
    report = check_heisenberg(state, tol)
    if not report.physical:
        raise ValueError(
            f"separable counterpart fails the Heisenberg check (min eig {report.min_eigenvalue:.3e})"
        )
    return state


def tmsv_state(s):
    """Two-mode squeezed vacuum with squeezing ``s``."""
    ch, sh = np.cosh(2 * s) / 2.0, np.sinh(2 * s) / 2.0
    V = np.block([[ch * np.eye(2), sh * np.diag([1.0, -1.0])], [sh * np.diag([1.0, -1.0]), ch * np.eye(2)]])
    return QuadratureState(V)
