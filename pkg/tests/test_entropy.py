import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import block_diag

from conftest import random_psd, random_unitary
from rsfkit.entropy import (
    entropy_bounds,
    reduced_von_neumann,
    reduced_wehrl,
    von_neumann_from_eigenvalues,
    wehrl_from_eigenvalues,
    wehrl_quadrature_oracle,
)
from rsfkit.fields import ReducedField, reduce
from rsfkit.symplectic import coherent_state, thermal_state


def field(r_alpha, alpha=None):
    r_alpha = np.asarray(r_alpha, dtype=complex)
    alpha = np.zeros(r_alpha.shape[0]) if alpha is None else np.asarray(alpha, dtype=complex)
    return ReducedField(r_alpha + np.outer(alpha, alpha.conj()), alpha)


def bose_entropy(lam):
    # independent closed form, one eigenvalue at a time
    return sum((x + 1) * np.log(x + 1) - (x * np.log(x) if x > 0 else 0.0) for x in lam)


@pytest.mark.parametrize(
    "r_alpha, s_v, s_w",
    [
        ([[0.0]], 0.0, 1.0),
        ([[1.0]], 2 * np.log(2), 1 + np.log(2)),
        (np.diag([1.0, 2.0]), 2 * np.log(2) + 3 * np.log(3) - 2 * np.log(2), np.log(2) + np.log(3) + 2),
    ],
)
def test_closed_form_values(r_alpha, s_v, s_w):
    rf = field(r_alpha)
    assert reduced_von_neumann(rf) == pytest.approx(s_v, abs=1e-12)
    assert reduced_wehrl(rf) == pytest.approx(s_w, abs=1e-12)


def test_example_numbers():
    rf = field(np.diag([1.0, 2.0]))
    assert reduced_von_neumann(rf) == pytest.approx(3.2958, abs=1e-4)
    assert reduced_wehrl(rf) == pytest.approx(3.7917, abs=1e-4)


def test_thermal_report():
    rep = entropy_bounds(reduce(thermal_state(1.0)))
    assert (rep.s_v, rep.s_w) == pytest.approx((1.3863, 1.6931), abs=1e-4)
    assert rep.bound_ok
    assert rep.s_v + 1 == pytest.approx(2.3863, abs=1e-4)


def test_high_occupation_converges():
    rep = entropy_bounds(field([[100.0]]))
    assert rep.s_v == pytest.approx(5.6102, abs=1e-4)
    assert rep.s_w == pytest.approx(5.6152, abs=1e-4)
    assert rep.s_w - rep.s_v == pytest.approx(0.005, abs=1e-4)


def test_zero_three_modes():
    rep = entropy_bounds(field(np.zeros((3, 3))))
    assert (rep.s_v, rep.s_w, rep.bound_ok) == (0.0, 3.0, True)


def test_coherent_has_zero_von_neumann():
    rf = reduce(coherent_state([1.5 - 0.5j]))
    assert reduced_von_neumann(rf) == pytest.approx(0.0, abs=1e-12)
    assert reduced_wehrl(rf) == pytest.approx(1.0, abs=1e-12)


def test_kb_scales():
    rf = field([[1.0]])
    assert reduced_von_neumann(rf, kB=2.5) == pytest.approx(2.5 * reduced_von_neumann(rf))
    assert reduced_wehrl(rf, kB=2.5) == pytest.approx(2.5 * reduced_wehrl(rf))


def test_tiny_negative_eigenvalue_clamped():
    assert np.isfinite(von_neumann_from_eigenvalues(np.array([0.0, 1.0])))
    rf = ReducedField([[1.0 - 5e-11]], [1.0])
    assert reduced_von_neumann(rf) == 0.0


def test_negative_correlation_rejected():
    with pytest.raises(ValueError):
        reduced_wehrl(ReducedField([[0.5]], [1.0]))


def test_sandwich_random(rng):
    worst = np.inf
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        rank = int(rng.integers(1, n + 1))
        rep = entropy_bounds(field(random_psd(rng, n, scale=rng.uniform(0.01, 5.0), rank=rank)))
        assert rep.bound_ok
        worst = min(worst, rep.lower_margin, rep.upper_margin)
    assert worst >= -1e-10


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1e3, allow_nan=False), min_size=1, max_size=6))
def test_eigenvalue_forms(lam):
    lam = np.array(lam)
    s_v, s_w = von_neumann_from_eigenvalues(lam), wehrl_from_eigenvalues(lam)
    assert s_v == pytest.approx(bose_entropy(lam), rel=1e-10, abs=1e-10)
    assert s_v - 1e-9 <= s_w <= s_v + len(lam) + 1e-9


def test_unitary_invariance(rng):
    for n in (1, 2, 3, 4):
        r_alpha = random_psd(rng, n)
        u = random_unitary(rng, n)
        a, b = field(r_alpha), field(u @ r_alpha @ u.conj().T)
        assert reduced_von_neumann(a) == pytest.approx(reduced_von_neumann(b), abs=1e-10)
        assert reduced_wehrl(a) == pytest.approx(reduced_wehrl(b), abs=1e-10)


def test_additivity(rng):
    x, y = random_psd(rng, 2), random_psd(rng, 3)
    for fn in (reduced_von_neumann, reduced_wehrl):
        assert fn(field(block_diag(x, y))) == pytest.approx(fn(field(x)) + fn(field(y)), abs=1e-10)


@pytest.mark.parametrize("nbar", [0.0, 0.5, 1.0, 2.0, 5.0])
def test_quadrature_oracle_thermal(nbar):
    rf = reduce(thermal_state(nbar))
    value = wehrl_quadrature_oracle(rf, half_width=6 * np.sqrt(nbar + 1), points_per_axis=801)
    assert value == pytest.approx(reduced_wehrl(rf), abs=1e-4)


def test_quadrature_oracle_examples():
    assert wehrl_quadrature_oracle(field([[0.0]])) == pytest.approx(1.0, abs=1e-4)
    assert wehrl_quadrature_oracle(reduce(thermal_state(1.0))) == pytest.approx(1.6931, abs=1e-4)
    assert wehrl_quadrature_oracle(field([[0.0]], [2.0])) == pytest.approx(1.0, abs=1e-4)


def test_quadrature_oracle_guards():
    with pytest.raises(ValueError, match="grid too small"):
        wehrl_quadrature_oracle(field([[0.0]], [5.0]), half_width=3.0)
    with pytest.raises(ValueError, match="single-mode"):
        wehrl_quadrature_oracle(field(np.zeros((2, 2))))
