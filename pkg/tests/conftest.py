import numpy as np
import pytest

from rsfkit.dynamics import GaussianGenerator
from rsfkit.scenarios import linear_operator_row
from rsfkit.symplectic import QuadratureState, realify


def random_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, n, scale=1.0):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (z + z.conj().T) / 2


def random_psd(rng, n, scale=1.0, rank=None):
    rank = n if rank is None else rank
    z = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    return scale * z @ z.conj().T / rank


def random_symplectic(rng, n, squeeze=0.5):
    """Passive * local squeezing * passive."""
    s = rng.uniform(-squeeze, squeeze, size=n)
    D = np.diag(np.exp(np.ravel(np.column_stack([s, -s]))))
    return realify(random_unitary(rng, n)) @ D @ realify(random_unitary(rng, n))


def random_state(rng, n, squeeze=0.5, max_nbar=1.0, displacement=1.0):
    """Random physical Gaussian state: symplectic image of a thermal product, displaced."""
    nu = 0.5 + rng.uniform(0, max_nbar, size=n)
    S = random_symplectic(rng, n, squeeze)
    V_cov = S @ np.diag(np.repeat(nu, 2)) @ S.T
    xi = displacement * rng.normal(size=2 * n)
    return QuadratureState(V_cov + np.outer(xi, xi), xi)


def random_compatible_generator(rng, n, n_scatter=None):
    """Passive Hamiltonian, per-mode loss and gain, passive scattering."""
    G = realify(random_hermitian(rng, n))
    rows = []
    for k in range(n):
        e = np.zeros(n)
        e[k] = 1.0
        loss, gain = rng.uniform(0, 1.0), rng.uniform(0, 0.3)
        rows.append(np.sqrt(loss) * linear_operator_row(e, np.zeros(n)))
        rows.append(np.sqrt(gain) * linear_operator_row(np.zeros(n), e))
    n_scatter = rng.integers(0, 3) if n_scatter is None else n_scatter
    scattering = [(rng.uniform(0, 0.5), realify(random_unitary(rng, n))) for _ in range(n_scatter)]
    return GaussianGenerator(G, np.array(rows), scattering)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: int(k.split()[0][1:])):
        terminalreporter.write_line(mod.RESULTS[key])
