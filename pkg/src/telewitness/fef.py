"""Fully entangled fraction of a d x d state.

    F(rho) = max_U <psi+| (U^dagger x I) rho (U x I) |psi+>

Three routes are provided: an exact eigenvalue formula for two qubits, a
restarted gradient ascent over the unitary group for any d, and a Haar
sampling lower bound used as an independent check on the ascent.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .linalg import ShapeError, as_matrix, expm_hermitian, random_haar_unitary, unitarity_defect
from .states import as_density

UNITARY_TOL = 1e-8
IMAG_TOL = 1e-10

# columns are e1..e4; maximally entangled two-qubit states are exactly the
# real unit vectors in this basis, up to a global phase
_S = 1.0 / math.sqrt(2.0)
MAGIC_BASIS = np.array(
    [
        [_S, 1j * _S, 0, 0],
        [0, 0, 1j * _S, _S],
        [0, 0, 1j * _S, -_S],
        [_S, -1j * _S, 0, 0],
    ],
    dtype=np.complex128,
)


class FefMethod(str, enum.Enum):
    EXACT_2X2 = "exact-2x2"
    UNITARY_ASCENT = "unitary-ascent"
    SAMPLING = "sampling"


@dataclass(frozen=True)
class FefEstimate:
    value: float
    method: FefMethod
    best_unitary: np.ndarray
    d: int
    restarts_used: int = 0
    iterations: int = 0
    converged: bool = True
    # best-so-far value after each restart (ascent) or sample (sampling)
    trace: tuple = ()

    @property
    def is_lower_bound(self):
        """True unless the value is exact (two-qubit eigenvalue method)."""
        return self.method is not FefMethod.EXACT_2X2

    def as_dict(self):
        return {
            "value": self.value,
            "method": self.method.value,
            "d": self.d,
            "restarts_used": self.restarts_used,
            "iterations": self.iterations,
            "converged": self.converged,
            "lower_bound": self.is_lower_bound,
            "best_unitary": [[[z.real, z.imag] for z in row] for row in self.best_unitary],
        }


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 20
    max_iterations: int = 500
    gradient_step: float = 0.1
    convergence_tol: float = 1e-9
    seed: int = 0
    # "analytic" or "finite-difference"
    gradient: str = "analytic"
    fd_step: float = 1e-5

    def __post_init__(self):
        for name in ("restarts", "max_iterations"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        for name in ("gradient_step", "convergence_tol", "fd_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.gradient not in ("analytic", "finite-difference"):
            raise ValueError(f"unknown gradient mode {self.gradient!r}")


def _overlap(mat, u, d):
    # (U x I)|psi+> has coefficient matrix U / sqrt(d)
    phi = u.reshape(-1) / math.sqrt(d)
    return np.vdot(phi, mat @ phi)


def fef_overlap(rho, u):
    """<psi+| (U^dagger x I) rho (U x I) |psi+> for a d x d unitary ``u``."""
    rho = as_density(rho)
    u = as_matrix(u, "u")
    if u.shape != (rho.d, rho.d):
        raise ShapeError(f"u must be {rho.d}x{rho.d}, got {u.shape}")
    defect = unitarity_defect(u)
    if defect > UNITARY_TOL:
        raise ValueError(f"u is not unitary: ||u^dagger u - I|| = {defect:.3e}")
    val = _overlap(rho.mat, u, rho.d)
    if abs(val.imag) > IMAG_TOL:
        raise ArithmeticError(f"overlap has imaginary part {val.imag:.3e}")
    return float(val.real)


def fef_exact_2x2(rho):
    """Exact two-qubit FEF: largest eigenvalue of Re(B^dagger rho B), B the magic basis."""
    rho = as_density(rho)
    if rho.d != 2:
        raise ValueError(f"exact method needs d=2, got d={rho.d}")
    m = MAGIC_BASIS.conj().T @ rho.mat @ MAGIC_BASIS
    w, v = np.linalg.eigh(m.real)
    x = v[:, -1]
    phi = MAGIC_BASIS @ x
    u = math.sqrt(2.0) * phi.reshape(2, 2)
    return FefEstimate(
        value=float(w[-1]),
        method=FefMethod.EXACT_2X2,
        best_unitary=u,
        d=2,
    )


def _hermitian_basis(d):
    """Orthonormal (Hilbert-Schmidt) basis of d x d Hermitian matrices."""
    basis = []
    for j in range(d):
        e = np.zeros((d, d), dtype=np.complex128)
        e[j, j] = 1.0
        basis.append(e)
    s = 1.0 / math.sqrt(2.0)
    for j in range(d):
        for k in range(j + 1, d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[j, k] = e[k, j] = s
            basis.append(e)
            e = np.zeros((d, d), dtype=np.complex128)
            e[j, k] = -1j * s
            e[k, j] = 1j * s
            basis.append(e)
    return basis


def _ascent_direction(mat, u, d):
    """Hermitian H maximizing the first-order gain of t -> f(U exp(itH)).

    With G = reshape(rho vec U) and M = U^dagger G, df/dt = (2/d) Re Tr(-i H M),
    so the Frobenius-steepest H is -i (M - M^dagger) / 2 (up to the 2/d scale).
    """
    g = (mat @ u.reshape(-1)).reshape(d, d)
    m = u.conj().T @ g
    return (-1j * (m - m.conj().T) / 2.0) * (2.0 / d)


def _fd_direction(mat, u, d, h, basis):
    grad = np.empty(len(basis))
    for k, b in enumerate(basis):
        up = u @ expm_hermitian(b, h)
        dn = u @ expm_hermitian(b, -h)
        grad[k] = (_overlap(mat, up, d).real - _overlap(mat, dn, d).real) / (2.0 * h)
    return sum(g * b for g, b in zip(grad, basis))


def _ascend(mat, u, d, config, basis):
    f = _overlap(mat, u, d).real
    step = config.gradient_step
    converged = False
    it = 0
    for it in range(1, config.max_iterations + 1):
        if basis is None:
            hdir = _ascent_direction(mat, u, d)
        else:
            hdir = _fd_direction(mat, u, d, config.fd_step, basis)
        slope = float(np.vdot(hdir, hdir).real)
        if slope < 1e-30:
            converged = True
            break
        t = step
        while True:
            cand = u @ expm_hermitian(hdir, t)
            fc = _overlap(mat, cand, d).real
            if fc >= f + 1e-4 * t * slope:
                break
            t *= 0.5
            if t < 1e-14:
                cand = None
                break
        if cand is None:
            converged = True
            break
        gain = fc - f
        u, f = cand, fc
        step = min(2.0 * t, 1e3)
        if gain < config.convergence_tol:
            converged = True
            break
    # re-orthonormalize to wash out drift from repeated products
    q, r = np.linalg.qr(u)
    u = q * (np.diag(r) / np.abs(np.diag(r)))
    return _overlap(mat, u, d).real, u, it, converged


def fef_optimize(rho, config=None):
    """Lower bound on F(rho) by restarted ascent over U(d).

    Restart 0 starts at the identity; restart k > 0 starts at a Haar-random
    unitary seeded from ``(config.seed, k)``, so the result does not depend
    on the order in which restarts are run.
    """
    rho = as_density(rho)
    config = config or OptimizerConfig()
    d = rho.d
    mat = rho.mat
    basis = _hermitian_basis(d) if config.gradient == "finite-difference" else None

    best = None
    trace = []
    for k in range(config.restarts):
        if k == 0:
            u0 = np.eye(d, dtype=np.complex128)
        else:
            u0 = random_haar_unitary(d, np.random.default_rng([config.seed, k]))
        run = _ascend(mat, u0, d, config, basis)
        if best is None or run[0] > best[0]:
            best = run
        trace.append(best[0])

    value, u, iterations, converged = best
    return FefEstimate(
        value=float(value),
        method=FefMethod.UNITARY_ASCENT,
        best_unitary=u,
        d=d,
        restarts_used=config.restarts,
        iterations=iterations,
        converged=converged,
        trace=tuple(trace),
    )


def fef_sample(rho, n_samples=1000, seed=None):
    """Max of the overlap over ``n_samples`` Haar-random unitaries."""
    rho = as_density(rho)
    n_samples = int(n_samples)
    if n_samples < 1:
        raise ValueError(f"n_samples must be >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    d = rho.d
    best_val, best_u = -np.inf, None
    trace = []
    for _ in range(n_samples):
        u = random_haar_unitary(d, rng)
        val = _overlap(rho.mat, u, d).real
        if val > best_val:
            best_val, best_u = val, u
        trace.append(best_val)
    return FefEstimate(
        value=float(best_val),
        method=FefMethod.SAMPLING,
        best_unitary=best_u,
        d=d,
        restarts_used=n_samples,
        iterations=n_samples,
        converged=False,
        trace=tuple(trace),
    )


def fef(rho, config=None):
    """Exact value for two qubits, ascent lower bound otherwise."""
    rho = as_density(rho)
    if rho.d == 2:
        return fef_exact_2x2(rho)
    return fef_optimize(rho, config)


def continuity_bound(d):
    """Lipschitz constant of F under the Frobenius norm.

    With ||<psi+|||=1 and ||U x I||_F = d for every unitary U, the bound
    |F(a) - F(b)| <= C^2 K^2 ||a - b|| holds with C^2 K^2 = d^2.
    """
    if int(d) != d or d < 2:
        raise ValueError(f"d must be an integer >= 2, got {d}")
    return float(d * d)
