"""Fixed-step RK4 trajectories in either picture.

Flows are affine in the state, so many trajectories with the same mode count
are integrated together by stacking their coefficient arrays along a leading
batch axis; a single trajectory is the batch-of-one case.
"""

from dataclasses import dataclass, fields

import numpy as np

from ..config import HBAR
from ..errors import PhysicalityError
from ..fields import ReducedField, correlation_eigenvalues
from ..symplectic import QuadratureState, heisenberg_min_eigenvalue, transfer_matrix
from . import gaussian, rke
from .generators import GaussianGenerator, RKEGenerator

DEFAULT_DT = 1e-3
VALIDATE_TOL = 1e-8


def rk4(f, y0, t0, t1, dt, store_every=1, on_store=None):
    """Classic RK4 on a tuple of arrays.

    The step is ``(t1 - t0) / ceil((t1 - t0) / dt)`` so the grid ends on ``t1``.
    Returns the stored times and, per tuple component, the stacked snapshots.
    ``on_store(t, y)`` runs on every stored state and may raise to abort.
    """
    if not t1 > t0:
        raise ValueError(f"need t1 > t0, got t0={t0}, t1={t1}")
    if not dt > 0:
        raise ValueError(f"need dt > 0, got {dt}")
    n_steps = max(1, int(np.ceil((t1 - t0) / dt - 1e-9)))
    h = (t1 - t0) / n_steps

    times = []
    snaps = [[] for _ in y0]

    def store(t, y):
        if on_store is not None:
            on_store(t, y)
        times.append(t)
        for s, yi in zip(snaps, y):
            s.append(yi)

    y = tuple(y0)
    store(t0, y)
    for step in range(1, n_steps + 1):
        k1 = f(y)
        k2 = f(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k1)))
        k3 = f(tuple(yi + 0.5 * h * ki for yi, ki in zip(y, k2)))
        k4 = f(tuple(yi + h * ki for yi, ki in zip(y, k3)))
        y = tuple(
            yi + (h / 6.0) * (a + 2.0 * b + 2.0 * c + d)
            for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
        )
        if step % store_every == 0 or step == n_steps:
            store(t0 + step * h, y)
    return np.array(times), [np.stack(s) for s in snaps]


@dataclass(frozen=True)
class Trajectory:
    """Snapshots of one run: ``matrices[i]`` is ``V`` or ``r`` at ``times[i]``,
    ``vectors[i]`` the matching ``xi`` or ``alpha``."""

    times: np.ndarray
    picture: str
    matrices: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return len(self.times)

    def state(self, i):
        if self.picture == "symplectic":
            return QuadratureState(self.matrices[i], self.vectors[i], tol=1e-8)
        return ReducedField(self.matrices[i], self.vectors[i], tol=1e-8)

    @property
    def states(self):
        return [self.state(i) for i in range(len(self))]

    @property
    def final(self):
        return self.state(len(self) - 1)

    def rsf_arrays(self):
        """Stacked ``(r, alpha)`` for every snapshot, reducing if needed."""
        if self.picture == "rsf":
            return self.matrices, self.vectors
        n = self.matrices.shape[-1] // 2
        T = transfer_matrix(n)
        r = T @ self.matrices @ T.conj().T - 0.5 * np.eye(n)
        return r, np.squeeze(T @ self.vectors[..., None], -1)


def _stack_terms(terms_list):
    """Stack flow terms along a new leading axis, padding scattering with zero weights."""
    m = max(t.w.shape[0] for t in terms_list)
    cls = type(terms_list[0])
    out = {}
    for fld in fields(cls):
        name = fld.name
        parts = []
        for t in terms_list:
            a = getattr(t, name)
            if name in ("K", "u") and a.shape[0] < m:
                dim = a.shape[-1]
                pad = np.broadcast_to(np.eye(dim, dtype=a.dtype), (m - a.shape[0], dim, dim))
                a = np.concatenate([a, pad]) if a.shape[0] else np.array(pad)
            elif name == "w" and a.shape[0] < m:
                a = np.concatenate([a, np.zeros(m - a.shape[0])])
            parts.append(a)
        out[name] = np.stack(parts)
    return cls(**out)


def _picture_of(gen, initial):
    if isinstance(gen, GaussianGenerator) and isinstance(initial, QuadratureState):
        return "symplectic"
    if isinstance(gen, RKEGenerator) and isinstance(initial, ReducedField):
        return "rsf"
    raise TypeError(
        f"cannot evolve {type(initial).__name__} with {type(gen).__name__}; "
        "pair GaussianGenerator with QuadratureState or RKEGenerator with ReducedField"
    )


def _validator(picture, tol):
    def check(t, y):
        M, v = y
        if picture == "symplectic":
            lam = heisenberg_min_eigenvalue(M, v)
            worst = float(np.min(lam))
            if worst < -tol:
                raise PhysicalityError(
                    f"Heisenberg condition violated at t={t:.6g}: min eig {worst:.3e}", t, worst
                )
        else:
            try:
                correlation_eigenvalues(M, v, tol)
            except ValueError as exc:
                raise PhysicalityError(f"correlation matrix not positive at t={t:.6g}: {exc}", t) from exc

    return check


def evolve_many(generators, initials, t0=0.0, t1=1.0, dt=DEFAULT_DT, *, store_every=1,
                validate_tol=VALIDATE_TOL, hbar=HBAR):
    """Integrate several independent trajectories with one shared time grid.

    All generators must be of one type with equal mode counts. Every stored
    snapshot is checked for physicality; a violation raises
    :class:`PhysicalityError`.
    """
    generators, initials = list(generators), list(initials)
    if len(generators) != len(initials) or not generators:
        raise ValueError("need equally many generators and initial states (at least one)")
    pictures = {_picture_of(g, s) for g, s in zip(generators, initials)}
    if len(pictures) != 1:
        raise ValueError("all runs in a batch must use the same picture")
    picture = pictures.pop()
    n = generators[0].n_modes
    for g, s in zip(generators, initials):
        if g.n_modes != n or s.n_modes != n:
            raise ValueError("all generators and states in a batch need the same mode count")

    if picture == "symplectic":
        terms = _stack_terms([gaussian.flow_terms(g) for g in generators])
        y0 = (np.stack([s.V for s in initials]), np.stack([s.xi for s in initials]))

        def f(y):
            return gaussian.vector_field(terms, *y)
    else:
        terms = _stack_terms([rke.flow_terms(g, hbar) for g in generators])
        y0 = (np.stack([s.r for s in initials]), np.stack([s.alpha for s in initials]))

        def f(y):
            return rke.vector_field(terms, *y)

    check = _validator(picture, validate_tol) if validate_tol is not None else None
    times, (M, v) = rk4(f, y0, t0, t1, dt, store_every, check)
    return [Trajectory(times, picture, M[:, b], v[:, b]) for b in range(len(generators))]


def evolve(generator, initial, t0=0.0, t1=1.0, dt=DEFAULT_DT, *, store_every=1,
           validate_tol=VALIDATE_TOL, hbar=HBAR):
    """RK4 trajectory of ``initial`` under ``generator``.

    A :class:`GaussianGenerator` evolves a :class:`QuadratureState`; an
    :class:`RKEGenerator` evolves a :class:`ReducedField`.
    """
    return evolve_many([generator], [initial], t0, t1, dt, store_every=store_every,
                       validate_tol=validate_tol, hbar=hbar)[0]
