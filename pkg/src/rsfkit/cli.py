"""Command-line front end.

Exit status: 0 on success, 1 when a generator or state fails a validity or
compatibility check (the failed condition is printed to stderr), 2 on I/O
failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import io
from .config import resolve_tol
from .dynamics import (
    BogoliubovFrame,
    GaussianGenerator,
    bogoliubov_to_rke,
    check_bogoliubov_compatibility,
    check_gaussian_compatibility,
    evolve,
    gaussian_to_rke,
)
from .dynamics.integrate import DEFAULT_DT
from .entanglement import (
    entanglement_necessary_condition,
    separable_counterpart,
    tmsv_state,
)
from .entropy import entropy_bounds, reduced_wehrl, wehrl_quadrature_oracle
from .fields import correlation_matrix, reduce
from .scenarios import (
    GTOParams,
    amplification_frame,
    amplification_rke,
    gto_generator,
    stabilizability_suite,
)
from .symplectic import QuadratureState, standard_form

COMMANDS = ("check", "convert", "evolve", "entropy", "demo")
PICTURES = ("symplectic", "rsf")
SCENARIOS = ("tmsv", "gto", "amplification", "stabilizability")


class InputError(Exception):
    """Unreadable input or unwritable output."""


@dataclass
class RunConfig:
    command: str
    picture: str = None
    generator: dict = None
    initial_state: dict = None
    t0: float = 0.0
    t1: float = 1.0
    dt: float = DEFAULT_DT
    output_path: str = None
    scenario: str = None
    params: dict = field(default_factory=dict)
    oracle: bool = False
    tol: float = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.picture is not None and self.picture not in PICTURES:
            raise ValueError(f"picture must be one of {PICTURES}, got {self.picture!r}")
        if self.command in ("check", "convert", "evolve") and self.generator is None:
            raise ValueError(f"'{self.command}' needs a 'generator' in the config")
        if self.command in ("evolve", "entropy") and self.initial_state is None:
            raise ValueError(f"'{self.command}' needs an 'initial_state' in the config")
        if self.command == "evolve":
            if not self.dt > 0:
                raise ValueError(f"dt must be > 0, got {self.dt}")
            if not self.t1 > self.t0:
                raise ValueError(f"t1 must exceed t0, got t0={self.t0}, t1={self.t1}")
        if self.command == "demo" and self.scenario not in SCENARIOS:
            raise ValueError(f"demo scenario must be one of {SCENARIOS}, got {self.scenario!r}")


def _emit(payload, path):
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if path is None:
        print(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from exc


def _check(config, tol):
    gen = io.generator_from_json(config.generator, tol)
    if isinstance(gen, GaussianGenerator):
        out = check_gaussian_compatibility(gen, tol).to_json()
        out["type"] = "gaussian"
    elif isinstance(gen, BogoliubovFrame):
        out = check_bogoliubov_compatibility(gen, tol).to_json()
        out["type"] = "bogoliubov"
    else:
        out = {"type": "rke", "compatible": True, "violations": []}
    return {"schema": io.SCHEMA_VERSION, **out}


def _to_rke(gen, tol):
    if isinstance(gen, GaussianGenerator):
        return gaussian_to_rke(gen, tol)
    if isinstance(gen, BogoliubovFrame):
        return bogoliubov_to_rke(gen, tol)
    return gen


def _evolve(config, tol):
    gen = io.generator_from_json(config.generator, tol)
    state = io.state_from_json(config.initial_state, tol)
    picture = config.picture or ("symplectic" if isinstance(gen, GaussianGenerator) else "rsf")
    if picture == "symplectic":
        if not isinstance(gen, GaussianGenerator):
            raise ValueError("the symplectic picture needs a gaussian generator")
        if not isinstance(state, QuadratureState):
            raise ValueError("the symplectic picture needs a symplectic initial state (V, xi)")
    else:
        gen = _to_rke(gen, tol)
        if isinstance(state, QuadratureState):
            state = reduce(state, tol)
    if state.n_modes != gen.n_modes:
        raise ValueError(f"generator has {gen.n_modes} modes, initial state has {state.n_modes}")
    return evolve(gen, state, config.t0, config.t1, config.dt)


def _entropy(config, tol):
    state = io.state_from_json(config.initial_state, tol)
    rf = reduce(state, tol) if isinstance(state, QuadratureState) else state
    out = {"schema": io.SCHEMA_VERSION, **entropy_bounds(rf, tol=tol).to_json()}
    if config.oracle:
        if rf.n_modes != 1:
            raise ValueError("the Wehrl quadrature oracle is single-mode only")
        value = wehrl_quadrature_oracle(
            rf, config.params.get("half_width"), int(config.params.get("points_per_axis", 801)), tol=tol
        )
        out["oracle"] = {"s_w_quadrature": value, "abs_error": abs(value - reduced_wehrl(rf, tol=tol))}
    return out


def _sf_json(p):
    return {"a": p.a, "b": p.b, "c_plus": p.c_plus, "c_minus": p.c_minus}


def demo_tmsv(s, tol=None):
    tmsv = tmsv_state(s)
    rf = reduce(tmsv, tol)
    counterpart = separable_counterpart(correlation_matrix(rf, tol), rf.alpha, tol)
    rf_sep = reduce(counterpart, tol)
    p_tmsv, p_sep = standard_form(tmsv, tol), standard_form(counterpart, tol)
    deviation = float(max(np.abs(rf.r - rf_sep.r).max(), np.abs(rf.alpha - rf_sep.alpha).max()))
    return {
        "squeezing": s,
        "tmsv": {
            "standard_form": _sf_json(p_tmsv),
            "may_be_entangled": entanglement_necessary_condition(p_tmsv),
            "rsf": rf.to_json(),
        },
        "separable_counterpart": {
            "standard_form": _sf_json(p_sep),
            "may_be_entangled": entanglement_necessary_condition(p_sep),
            "rsf": rf_sep.to_json(),
        },
        "max_rsf_deviation": deviation,
        "erased": bool(
            deviation <= 1e-12
            and entanglement_necessary_condition(p_tmsv)
            and not entanglement_necessary_condition(p_sep)
        ),
    }


def _demo(config, tol):
    name, params = config.scenario, dict(config.params)
    if name == "tmsv":
        out = demo_tmsv(float(params.get("s", params.get("squeezing", 0.5))), tol)
    elif name == "gto":
        p = GTOParams(
            np.asarray(params.get("S", np.eye(2)), dtype=float),
            float(params.get("p", 0.5)),
            float(params.get("dp", -0.5)),
            float(params.get("phi", 0.0)),
            float(params.get("dphi", 1.0)),
            float(params.get("nu", 1.0)),
        )
        out = gto_generator(p, tol).to_json()
    elif name == "amplification":
        kappa = params.get("kappa", 1.0)
        frame = amplification_frame(kappa, float(params.get("t", 1.0)))
        via_frame = bogoliubov_to_rke(frame, tol)
        direct = amplification_rke(kappa, params.get("n_bath", 0.0))
        out = {
            "frame_check": check_bogoliubov_compatibility(frame, tol).to_json(),
            "via_bogoliubov": io.generator_to_json(via_frame),
            "direct": io.generator_to_json(direct),
        }
    else:
        cases = stabilizability_suite(
            float(params.get("omega", 1.0)), float(params.get("squeezing", 1.0)), tol
        )
        out = {"cases": [c.to_json() for c in cases]}
    return {"schema": io.SCHEMA_VERSION, "scenario": name, **out}


def run(config):
    """Execute one configuration; returns the process exit status."""
    try:
        config.validate()
        tol = resolve_tol(config.tol)
        if config.command == "check":
            _emit(_check(config, tol), config.output_path)
        elif config.command == "convert":
            gen = _to_rke(io.generator_from_json(config.generator, tol), tol)
            _emit(io.generator_to_json(gen), config.output_path)
        elif config.command == "evolve":
            traj = _evolve(config, tol)
            if config.output_path is None:
                writer = io.csv.writer(sys.stdout)
                writer.writerow(io.trajectory_header(traj))
                writer.writerows(io.trajectory_rows(traj))
            else:
                try:
                    io.write_trajectory_csv(traj, config.output_path)
                except OSError as exc:
                    raise InputError(f"cannot write {config.output_path}: {exc}") from exc
        elif config.command == "entropy":
            _emit(_entropy(config, tol), config.output_path)
        else:
            _emit(_demo(config, tol), config.output_path)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def _load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="rsfkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        p.add_argument("--config", required=needs_config, help="JSON run configuration")
        p.add_argument("--out", help="output path (default: stdout)")

    common(sub.add_parser("check", help="compatibility report for a generator"))
    common(sub.add_parser("convert", help="convert a generator to kinetic-equation form"))
    p = sub.add_parser("evolve", help="integrate a trajectory and write CSV")
    common(p)
    p.add_argument("--dt", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--picture", choices=PICTURES)
    p = sub.add_parser("entropy", help="reduced entropies of a state")
    common(p)
    p.add_argument("--oracle", action="store_true", help="add the single-mode quadrature check")
    p = sub.add_parser("demo", help="run a built-in scenario")
    common(p, needs_config=False)
    p.add_argument("scenario", choices=SCENARIOS)
    p.add_argument("--squeezing", type=float, help="squeezing for the tmsv demo")
    p.add_argument("--params", help="JSON object of parameter overrides")
    return parser


def config_from_args(args):
    data = _load_config(args.config) if getattr(args, "config", None) else {}
    config = RunConfig(
        command=args.command,
        picture=getattr(args, "picture", None) or data.get("picture"),
        generator=data.get("generator"),
        initial_state=data.get("initial_state"),
        t0=float(data.get("t0", 0.0)),
        t1=float(data.get("t1", 1.0)),
        dt=float(data.get("dt", DEFAULT_DT)),
        output_path=args.out or data.get("output_path"),
        scenario=getattr(args, "scenario", None),
        params=dict(data.get("params", {})),
        oracle=bool(getattr(args, "oracle", False) or data.get("oracle", False)),
    )
    if getattr(args, "dt", None) is not None:
        config.dt = args.dt
    if getattr(args, "t1", None) is not None:
        config.t1 = args.t1
    if getattr(args, "params", None):
        try:
            config.params.update(json.loads(args.params))
        except json.JSONDecodeError as exc:
            raise ValueError(f"--params is not valid JSON: {exc}") from exc
    if getattr(args, "squeezing", None) is not None:
        config.params["s"] = args.squeezing
    return config


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
