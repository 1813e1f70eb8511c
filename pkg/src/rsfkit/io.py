"""JSON and CSV formats.

Complex matrices travel as ``<name>_re`` / ``<name>_im`` pairs of nested lists;
a purely real matrix may be given under ``<name>`` alone. Every JSON document
written here carries ``"schema": 1``.
"""

import csv

import numpy as np

from .dynamics.bogoliubov import BogoliubovFrame, beam_splitter_frame, squeezing_frame
from .dynamics.generators import GaussianGenerator, RKEGenerator
from .dynamics.integrate import Trajectory
from .entanglement import tmsv_state
from .entropy import von_neumann_from_eigenvalues, wehrl_from_eigenvalues
from .fields import ReducedField, correlation_eigenvalues
from .scenarios import amplification_frame
from .symplectic import QuadratureState, coherent_state, thermal_state, vacuum_state

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    pass


def _get_array(data, name, required=True, default=None):
    if name in data:
        return np.asarray(data[name], dtype=complex)
    re_key, im_key = f"{name}_re", f"{name}_im"
    if re_key in data:
        value = np.asarray(data[re_key], dtype=complex)
        if im_key in data:
            value = value + 1j * np.asarray(data[im_key], dtype=float)
        return value
    if im_key in data:
        return 1j * np.asarray(data[im_key], dtype=float)
    if required:
        raise SchemaError(f"missing field {name!r} (or {re_key!r}/{im_key!r})")
    return default


def _real(value, name):
    value = np.asarray(value)
    if np.iscomplexobj(value):
        if np.any(value.imag != 0):
            raise SchemaError(f"{name} must be real")
        value = value.real
    return value.astype(float)


def _put_complex(out, name, value):
    value = np.asarray(value)
    out[f"{name}_re"] = np.real(value).tolist()
    out[f"{name}_im"] = np.imag(value).tolist()


def _check_schema(data):
    version = data.get("schema", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema version {version!r}")


# generators ------------------------------------------------------------------


def generator_from_json(data, tol=None):
    """Build a :class:`GaussianGenerator`, :class:`RKEGenerator` or
    :class:`BogoliubovFrame` from its JSON description."""
    _check_schema(data)
    kind = data.get("type")
    if kind == "gaussian":
        G = _real(_get_array(data, "G"), "G")
        C = _get_array(data, "C", required=False)
        scattering = [(entry["w"], _real(_get_array(entry, "K"), "K")) for entry in data.get("scattering", [])]
        return GaussianGenerator(G, C, scattering, tol=tol)
    if kind == "rke":
        h = _get_array(data, "h")
        return RKEGenerator(
            h,
            _get_array(data, "zeta", required=False),
            _get_array(data, "gamma_up", required=False),
            _get_array(data, "gamma_down", required=False),
            [(entry["w"], _get_array(entry, "u")) for entry in data.get("scattering", [])],
            tol=tol,
        )
    if kind == "bogoliubov":
        return frame_from_json(data)
    raise SchemaError(f"generator type must be 'gaussian', 'rke' or 'bogoliubov', got {kind!r}")


def frame_from_json(data):
    path = data.get("path")
    if path == "amplification":
        return amplification_frame(data.get("kappa", 1.0), float(data.get("t", 1.0)))
    if path == "beam_splitter":
        theta = float(data["theta"])
        return beam_splitter_frame(theta, float(data.get("dtheta", 1.0)), int(data.get("n_modes", 1)))
    if path == "squeezing":
        return squeezing_frame(float(data["s"]), float(data.get("ds", 0.0)), int(data.get("n_modes", 1)))
    if path is None:
        return BogoliubovFrame(_get_array(data, "X"), _get_array(data, "dX"))
    raise SchemaError(f"unknown built-in Bogoliubov path {path!r}")


def generator_to_json(gen):
    out = {"schema": SCHEMA_VERSION}
    if isinstance(gen, GaussianGenerator):
        out["type"] = "gaussian"
        out["G"] = gen.G.tolist()
        _put_complex(out, "C", gen.C)
        out["scattering"] = [{"w": w, "K": K.tolist()} for w, K in gen.scattering]
    elif isinstance(gen, RKEGenerator):
        out["type"] = "rke"
        out["n_modes"] = gen.n_modes
        for name in ("h", "zeta", "gamma_up", "gamma_down"):
            _put_complex(out, name, getattr(gen, name))
        out["scattering"] = []
        for w, u in gen.scattering:
            entry = {"w": w}
            _put_complex(entry, "u", u)
            out["scattering"].append(entry)
    elif isinstance(gen, BogoliubovFrame):
        out["type"] = "bogoliubov"
        _put_complex(out, "X", gen.X)
        _put_complex(out, "dX", gen.dX)
    else:
        raise TypeError(f"cannot serialise {type(gen).__name__}")
    return out


# states ----------------------------------------------------------------------


def state_from_json(data, tol=None):
    """A :class:`QuadratureState` or :class:`ReducedField`.

    Either explicit moments (``"picture": "symplectic"`` with ``V``/``xi``, or
    ``"picture": "rsf"`` with the reduced-field fields) or a named ``"kind"``:
    ``vacuum``, ``thermal``, ``coherent``, ``tmsv``.
    """
    _check_schema(data)
    kind = data.get("kind")
    if kind == "vacuum":
        return vacuum_state(int(data.get("n_modes", 1)))
    if kind == "thermal":
        return thermal_state(data["nbar"])
    if kind == "coherent":
        return coherent_state(_get_array(data, "alpha"))
    if kind == "tmsv":
        return tmsv_state(float(data["s"]))
    if kind is not None:
        raise SchemaError(f"unknown state kind {kind!r}")
    picture = data.get("picture", "rsf" if "r_re" in data or "r" in data else "symplectic")
    if picture == "symplectic":
        V = _real(_get_array(data, "V"), "V")
        xi = _get_array(data, "xi", required=False)
        return QuadratureState(V, None if xi is None else _real(xi, "xi"), tol=tol)
    if picture == "rsf":
        r = _get_array(data, "r")
        alpha = _get_array(data, "alpha", required=False)
        return ReducedField(r, alpha, tol=tol)
    raise SchemaError(f"picture must be 'symplectic' or 'rsf', got {picture!r}")


def state_to_json(state):
    if isinstance(state, QuadratureState):
        return {
            "schema": SCHEMA_VERSION,
            "picture": "symplectic",
            "n_modes": state.n_modes,
            "V": state.V.tolist(),
            "xi": state.xi.tolist(),
        }
    return {"schema": SCHEMA_VERSION, "picture": "rsf", **state.to_json()}


# trajectories ------------------------------------------------------------------


def _fmt(x):
    return f"{float(x):.17g}"


def trajectory_header(traj):
    dim = traj.matrices.shape[-1]
    idx = [(i, j) for i in range(dim) for j in range(dim)]
    if traj.picture == "symplectic":
        cols = [f"V_{i}_{j}" for i, j in idx] + [f"xi_{k}" for k in range(dim)]
    else:
        cols = [f"r_re_{i}_{j}" for i, j in idx] + [f"r_im_{i}_{j}" for i, j in idx]
        cols += [f"alpha_re_{k}" for k in range(dim)] + [f"alpha_im_{k}" for k in range(dim)]
    return ["t"] + cols + ["s_v", "s_w"]


def trajectory_rows(traj, kB=1.0):
    r, alpha = traj.rsf_arrays()
    lam = correlation_eigenvalues(r, alpha, tol=1e-8)
    s_v = von_neumann_from_eigenvalues(lam, kB)
    s_w = wehrl_from_eigenvalues(lam, kB)
    for i, t in enumerate(traj.times):
        M, v = traj.matrices[i], traj.vectors[i]
        if traj.picture == "symplectic":
            values = list(M.real.ravel()) + list(v.real)
        else:
            values = list(M.real.ravel()) + list(M.imag.ravel()) + list(v.real) + list(v.imag)
        yield [_fmt(t)] + [_fmt(x) for x in values] + [_fmt(s_v[i]), _fmt(s_w[i])]


def write_trajectory_csv(traj, path, kB=1.0):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(trajectory_header(traj))
        writer.writerows(trajectory_rows(traj, kB))


def read_trajectory_csv(path):
    """Inverse of :func:`write_trajectory_csv`; entropy columns are dropped."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        data = np.array([[float(x) for x in row] for row in reader])
    picture = "symplectic" if header[1].startswith("V_") else "rsf"
    n_mat = sum(1 for h in header if h.startswith("V_") or h.startswith("r_re_"))
    dim = int(round(np.sqrt(n_mat)))
    times = data[:, 0]
    body = data[:, 1:-2]
    if picture == "symplectic":
        M = body[:, : dim * dim].reshape(-1, dim, dim)
        v = body[:, dim * dim:]
    else:
        M = (body[:, : dim * dim] + 1j * body[:, dim * dim: 2 * dim * dim]).reshape(-1, dim, dim)
        rest = body[:, 2 * dim * dim:]
        v = rest[:, :dim] + 1j * rest[:, dim:]
    return Trajectory(times, picture, M, v)
