import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_compatible_generator, random_state
from rsfkit import io
from rsfkit.dynamics import BogoliubovFrame, GaussianGenerator, RKEGenerator, gaussian_to_rke
from rsfkit.fields import ReducedField, reduce
from rsfkit.symplectic import QuadratureState


def through_json(payload):
    return json.loads(json.dumps(payload))


def test_gaussian_generator_round_trip(rng):
    gen = random_compatible_generator(rng, 2, n_scatter=2)
    back = io.generator_from_json(through_json(io.generator_to_json(gen)))
    assert isinstance(back, GaussianGenerator)
    assert_allclose(back.G, gen.G, rtol=0, atol=0)
    assert_allclose(back.C, gen.C, rtol=0, atol=0)
    for (w1, K1), (w2, K2) in zip(back.scattering, gen.scattering):
        assert w1 == w2
        assert_allclose(K1, K2, rtol=0, atol=0)


def test_rke_generator_round_trip(rng):
    gen = gaussian_to_rke(random_compatible_generator(rng, 3, n_scatter=1))
    back = io.generator_from_json(through_json(io.generator_to_json(gen)))
    assert isinstance(back, RKEGenerator)
    for name in ("h", "zeta", "gamma_up", "gamma_down"):
        assert_allclose(getattr(back, name), getattr(gen, name), rtol=0, atol=0)


def test_bogoliubov_paths():
    for entry in (
        {"path": "amplification", "kappa": [1.0, 0.5], "t": 0.2},
        {"path": "beam_splitter", "theta": 0.3},
        {"path": "squeezing", "s": 0.3},
    ):
        frame = io.generator_from_json({"type": "bogoliubov", **entry})
        assert isinstance(frame, BogoliubovFrame)
        back = io.generator_from_json(through_json(io.generator_to_json(frame)))
        assert_allclose(back.X, frame.X)


def test_unknown_types_rejected():
    with pytest.raises(io.SchemaError):
        io.generator_from_json({"type": "nope"})
    with pytest.raises(io.SchemaError):
        io.generator_from_json({"type": "bogoliubov", "path": "nope"})
    with pytest.raises(io.SchemaError, match="missing field"):
        io.generator_from_json({"type": "gaussian"})
    with pytest.raises(io.SchemaError):
        io.state_from_json({"kind": "cat"})
    with pytest.raises(io.SchemaError, match="real"):
        io.generator_from_json({"type": "gaussian", "G_re": [[1.0]], "G_im": [[1.0]]})


def test_named_states():
    assert_allclose(io.state_from_json({"kind": "vacuum", "n_modes": 2}).V, 0.5 * np.eye(4))
    assert_allclose(io.state_from_json({"kind": "thermal", "nbar": [1.0]}).V, 1.5 * np.eye(2))
    c = io.state_from_json({"kind": "coherent", "alpha_re": [1.0], "alpha_im": [0.0]})
    assert_allclose(reduce(c).alpha, [1.0])
    assert io.state_from_json({"kind": "tmsv", "s": 0.5}).n_modes == 2


def test_state_round_trip(rng):
    state = random_state(rng, 2)
    back = io.state_from_json(through_json(io.state_to_json(state)))
    assert isinstance(back, QuadratureState)
    assert_allclose(back.V, state.V, rtol=0, atol=0)
    rf = reduce(state)
    back = io.state_from_json(through_json(io.state_to_json(rf)))
    assert isinstance(back, ReducedField)
    assert_allclose(back.r, rf.r, rtol=0, atol=0)
