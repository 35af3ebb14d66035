import numpy as np
import pytest
from scipy.linalg import expm
from scipy.optimize import minimize


def _hermitian_from_params(theta, d):
    h = np.zeros((d, d), dtype=complex)
    h[np.diag_indices(d)] = theta[:d]
    idx = d
    for j in range(d):
        for k in range(j + 1, d):
            h[j, k] = theta[idx] + 1j * theta[idx + 1]
            h[k, j] = np.conj(h[j, k])
            idx += 2
    return h


def brute_force_fef(mat, d, starts=30, seed=0):
    """Multi-start BFGS over U = expm(iH) with an explicit (U x I)|psi+>.

    Independent of the package: scipy's expm, its own |psi+> and Kronecker
    product, and a black-box optimizer.
    """
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        psi[i * d + i] = 1 / np.sqrt(d)

    def neg(theta):
        u = expm(1j * _hermitian_from_params(theta, d))
        phi = np.kron(u, np.eye(d)) @ psi
        return -np.vdot(phi, mat @ phi).real

    rng = np.random.default_rng(seed)
    best = -np.inf
    for _ in range(starts):
        res = minimize(neg, rng.uniform(-np.pi, np.pi, d * d), method="BFGS", options={"gtol": 1e-10})
        best = max(best, -res.fun)
    return best


@pytest.fixture
def brute_fef():
    return brute_force_fef


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(number, title, passed, detail)."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    def record(number, title, passed, detail):
        lines.append(f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {title}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(".")[0].split("]")[1])):
            terminalreporter.write_line(line)
