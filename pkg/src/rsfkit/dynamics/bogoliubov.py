"""Bogoliubov evolution of an open system coupled to an N-mode bath.

The 4N x 4N matrix ``X`` acts on ``(a_S, a_E, a_S^dag, a_E^dag)``::

    X = [[X_up, X_down], [conj(X_down), conj(X_up)]],
    X_up/down = [[S, C], [C', E]]          (N x N blocks)

and must satisfy ``X diag(1, -1) X^dag = diag(1, -1)``. The bath starts in
vacuum, uncorrelated with the system.
"""

from dataclasses import dataclass

import numpy as np

from ..config import HBAR, resolve_tol
from ..errors import IncompatibleGeneratorError
from ..fields import ReducedField, hermitian_part
from .generators import RKEGenerator

MAX_CONDITION = 1e8
FD_STEP = 1e-6


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def assemble(x_up, x_down):
    x_up = np.asarray(x_up, dtype=complex)
    x_down = np.asarray(x_down, dtype=complex)
    return np.block([[x_up, x_down], [x_down.conj(), x_up.conj()]])


@dataclass(frozen=True)
class BogoliubovFrame:
    X: np.ndarray
    dX: np.ndarray

    def __init__(self, X, dX):
        X = np.asarray(X, dtype=complex)
        dX = np.asarray(dX, dtype=complex)
        if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 4:
            raise ValueError(f"X must be 4N x 4N, got shape {X.shape}")
        if dX.shape != X.shape:
            raise ValueError(f"dX has shape {dX.shape}, expected {X.shape}")
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "dX", _frozen(dX))

    @classmethod
    def from_blocks(cls, x_up, x_down, dx_up, dx_down):
        return cls(assemble(x_up, x_down), assemble(dx_up, dx_down))

    @classmethod
    def from_path(cls, path, t, step=FD_STEP):
        """Frame at ``t`` of a callable ``path(t) -> X``, with ``dX`` by central difference."""
        X = np.asarray(path(t), dtype=complex)
        dX = (np.asarray(path(t + step)) - np.asarray(path(t - step))) / (2.0 * step)
        return cls(X, dX)

    @property
    def n_modes(self):
        return self.X.shape[0] // 4

    def _block(self, M, arrow, part):
        n = self.n_modes
        col = 0 if arrow == "up" else 2 * n
        rows, cols = {"S": (0, 0), "C": (0, n), "C'": (n, 0), "E": (n, n)}[part]
        return M[rows:rows + n, col + cols:col + cols + n]

    def block(self, arrow, part):
        """Sub-block of ``X``, e.g. ``block("down", "S")``."""
        return self._block(self.X, arrow, part)

    def dblock(self, arrow, part):
        return self._block(self.dX, arrow, part)

    def symplectic_defect(self):
        n = self.n_modes
        S = np.diag(np.concatenate([np.ones(2 * n), -np.ones(2 * n)]))
        return float(np.linalg.norm(self.X @ S @ self.X.conj().T - S))


@dataclass(frozen=True)
class BogoliubovCompatibilityReport:
    X_downS_norm: float
    compatible: bool

    def to_json(self):
        return {
            "compatible": self.compatible,
            "X_downS_norm": self.X_downS_norm,
            "violations": [] if self.compatible else ["X_down_S ≠ 0"],
        }


def _require_symplectic(frame, tol):
    defect = frame.symplectic_defect()
    if defect > tol * max(1.0, np.linalg.norm(frame.X) ** 2):
        raise ValueError(f"frame violates X S X^dag = S (defect {defect:.3e})")


def check_bogoliubov_compatibility(frame, tol=None):
    """The system's annihilators must not pick up its own creators: ``X_down_S = 0``."""
    tol = resolve_tol(tol)
    _require_symplectic(frame, tol)
    norm = float(np.linalg.norm(frame.block("down", "S")))
    return BogoliubovCompatibilityReport(norm, norm <= tol)


def bogoliubov_to_rke(frame, tol=None, hbar=HBAR):
    """Kinetic-equation generator realised by a compatible frame at its time.

    With ``Y = dX_up_S X_up_S^{-1}``, ``D = X_down_C X_down_C^dag`` and
    ``W = dD/dt - Y (D + 1/2) - (D + 1/2) Y^dag`` the result is
    ``h = -hbar Im-part(Y)``, ``gamma_up/down = W +- Re-part(Y)``, no source,
    no scattering.
    """
    tol = resolve_tol(tol)
    report = check_bogoliubov_compatibility(frame, tol)
    if not report.compatible:
        raise IncompatibleGeneratorError(["X_down_S ≠ 0"], f"||X_down_S|| = {report.X_downS_norm:.3e}")
    if not np.all(np.isfinite(frame.dX)):
        raise ValueError("frame derivative is not finite at this time")
    n = frame.n_modes
    xs = frame.block("up", "S")
    # measured against the whole frame so a tiny 1x1 block is caught too
    smin = np.linalg.svd(xs, compute_uv=False).min()
    cond = np.linalg.norm(frame.X, 2) / smin if smin > 0 else np.inf
    if not cond <= MAX_CONDITION:
        raise ValueError(f"X_up_S is singular or ill-conditioned (condition number {cond:.3e})")
    Y = np.linalg.solve(xs.T, frame.dblock("up", "S").T).T
    xc = frame.block("down", "C")
    dxc = frame.dblock("down", "C")
    D = xc @ xc.conj().T
    dD = dxc @ xc.conj().T + xc @ dxc.conj().T
    Dh = D + 0.5 * np.eye(n)
    W = hermitian_part(dD - Y @ Dh - Dh @ Y.conj().T)
    Y_r = 0.5 * (Y + Y.conj().T)
    Y_i = (Y - Y.conj().T) / 2j
    return RKEGenerator(-hbar * Y_i, None, W + Y_r, W - Y_r, tol=max(tol, 1e-9))


def apply_bogoliubov(frame, rf, cf=None):
    """System RSF after the frame's transformation, starting from ``(r, alpha)``
    with conjugate field ``c`` (zero if omitted) and a vacuum bath.

    Exact for any frame; the ``c`` terms drop out only when ``X_down_S = 0``.
    """
    n = frame.n_modes
    if rf.n_modes != n:
        raise ValueError(f"frame has {n} system modes, field has {rf.n_modes}")
    c = np.zeros((n, n), dtype=complex) if cf is None else np.asarray(cf.c)
    alpha_star = rf.alpha.conj() if cf is None else np.asarray(cf.alpha_star)
    us, ds, dc = frame.block("up", "S"), frame.block("down", "S"), frame.block("down", "C")
    r = (
        us @ rf.r @ us.conj().T
        + us @ c @ ds.conj().T
        + ds @ c.conj().T @ us.conj().T
        + ds @ (rf.r.T + np.eye(n)) @ ds.conj().T
        + dc @ dc.conj().T
    )
    return ReducedField(hermitian_part(r), us @ rf.alpha + ds @ alpha_star, tol=1e-8)


def beam_splitter_frame(theta, dtheta, n_modes=1):
    """System-bath beam splitter ``a_S -> cos(theta) a_S + sin(theta) a_E``."""
    c, s = np.cos(theta), np.sin(theta)
    eye = np.eye(n_modes)
    x_up = np.block([[c * eye, s * eye], [-s * eye, c * eye]])
    dx_up = dtheta * np.block([[-s * eye, c * eye], [-c * eye, -s * eye]])
    zero = np.zeros_like(x_up)
    return BogoliubovFrame.from_blocks(x_up, zero, dx_up, zero)


def squeezing_frame(s, ds=0.0, n_modes=1):
    """Single-mode squeezing of the system alone; the bath is untouched."""
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    x_up = np.block([[np.cosh(s) * eye, zero], [zero, eye]])
    x_down = np.block([[np.sinh(s) * eye, zero], [zero, zero]])
    dx_up = np.block([[ds * np.sinh(s) * eye, zero], [zero, zero]])
    dx_down = np.block([[ds * np.cosh(s) * eye, zero], [zero, zero]])
    return BogoliubovFrame.from_blocks(x_up, x_down, dx_up, dx_down)
