"""Bipartite d x d density matrices and the state families used in the examples."""

import math

import numpy as np

from .linalg import HERMITIAN_TOL, as_matrix, hermitian_defect, random_haar_unitary

TRACE_TOL = 1e-10
PSD_TOL = 1e-10


class StateValidationError(ValueError):
    """A matrix failed density-matrix validation.

    ``reason`` is one of ``"shape"``, ``"non-hermitian"``, ``"trace"`` or
    ``"not-psd"``.
    """

    def __init__(self, reason, message):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class DensityMatrix:
    """A validated state on a d x d bipartite system.

    The underlying array is stored read-only; build a new instance rather
    than mutating ``mat``.
    """

    __slots__ = ("d", "mat")

    def __init__(self, mat, d=None):
        try:
            arr = as_matrix(mat, "density matrix")
        except ValueError as exc:
            raise StateValidationError("shape", str(exc)) from exc
        n = arr.shape[0]
        if arr.shape[1] != n:
            raise StateValidationError("shape", f"matrix must be square, got {arr.shape}")
        if d is None:
            d = math.isqrt(n)
        d = int(d)
        if d < 1 or d * d != n:
            raise StateValidationError("shape", f"size {n} is not d^2 for local dimension d={d}")

        defect = hermitian_defect(arr)
        if defect > HERMITIAN_TOL:
            raise StateValidationError("non-hermitian", f"max |rho - rho^dagger| = {defect:.3e}")
        arr = 0.5 * (arr + arr.conj().T)
        tr = float(np.trace(arr).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateValidationError("trace", f"trace is {tr:.12g}, expected 1")
        lam_min = float(np.linalg.eigvalsh(arr)[0])
        if lam_min < -PSD_TOL:
            raise StateValidationError("not-psd", f"smallest eigenvalue {lam_min:.3e} < 0")

        arr.setflags(write=False)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "mat", arr)

    def __setattr__(self, name, value):
        raise AttributeError("DensityMatrix is immutable")

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.mat
        return self.mat.astype(dtype)

    def __repr__(self):
        return f"DensityMatrix(d={self.d})"

    @property
    def dim(self):
        return self.d * self.d

    def eigvalsh(self):
        return np.linalg.eigvalsh(self.mat)

    def purity(self):
        return float(np.real(np.vdot(self.mat, self.mat)))


def as_density(rho, d=None):
    """Coerce an array or ``DensityMatrix`` to a ``DensityMatrix``."""
    if isinstance(rho, DensityMatrix):
        if d is not None and rho.d != d:
            raise StateValidationError("shape", f"expected d={d}, got d={rho.d}")
        return rho
    return DensityMatrix(rho, d=d)


def _check_d(d):
    if int(d) != d or d < 2:
        raise ValueError(f"local dimension d must be an integer >= 2, got {d}")
    return int(d)


def max_entangled_state(d):
    """|psi+> = (1/sqrt d) sum_i |ii> as a length d^2 vector."""
    d = _check_d(d)
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[np.arange(d) * (d + 1)] = 1.0 / math.sqrt(d)
    return psi


def _projector(psi):
    return np.outer(psi, psi.conj())


def isotropic(d, beta):
    d = _check_d(d)
    lo = -1.0 / (d * d - 1)
    if not lo <= beta <= 1.0:
        raise ValueError(f"beta={beta} outside the admissible interval [{lo:.6g}, 1]")
    psi = max_entangled_state(d)
    mat = beta * _projector(psi) + (1.0 - beta) / (d * d) * np.eye(d * d)
    return DensityMatrix(mat, d)


def generalized_werner(d, v, alphas):
    """(1 - v) I/d^2 + v |psi_d><psi_d| with |psi_d> = sum_i alpha_i |ii>.

    ``alphas`` must be real and normalized.
    """
    d = _check_d(d)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"v={v} outside [0, 1]")
    alphas = np.asarray(alphas)
    if np.iscomplexobj(alphas):
        raise ValueError("alphas must be real")
    alphas = alphas.astype(float)
    if alphas.shape != (d,):
        raise ValueError(f"expected {d} Schmidt amplitudes, got shape {alphas.shape}")
    norm2 = float(np.sum(alphas**2))
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"alphas are not normalized: sum alpha_i^2 - 1 = {norm2 - 1.0:.3e}")
    psi = np.zeros(d * d, dtype=np.complex128)
    psi[np.arange(d) * (d + 1)] = alphas
    mat = (1.0 - v) / (d * d) * np.eye(d * d) + v * _projector(psi)
    return DensityMatrix(mat, d)


def mems_h(concurrence):
    return concurrence / 2.0 if concurrence >= 2.0 / 3.0 else 1.0 / 3.0


def mems(concurrence):
    """Two-qubit maximally entangled mixed state with the given concurrence."""
    c = float(concurrence)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence={c} outside [0, 1]")
    h = mems_h(c)
    mat = np.zeros((4, 4), dtype=np.complex128)
    mat[0, 0] = mat[3, 3] = h
    mat[1, 1] = 1.0 - 2.0 * h
    mat[0, 3] = mat[3, 0] = c / 2.0
    return DensityMatrix(mat, 2)


def discord_state(a):
    """a |phi><phi| + (1 - a) |11><11| with |phi> = (|01> + |10>)/sqrt 2."""
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a={a} outside [0, 1]")
    phi = np.array([0, 1, 1, 0], dtype=np.complex128) / math.sqrt(2.0)
    mat = a * _projector(phi)
    mat[3, 3] += 1.0 - a
    return DensityMatrix(mat, 2)


def random_density(d, rank=None, seed=None):
    """G G^dagger / Tr(G G^dagger) for a d^2 x rank complex Ginibre matrix G."""
    d = _check_d(d)
    n = d * d
    rank = n if rank is None else int(rank)
    if not 1 <= rank <= n:
        raise ValueError(f"rank must be in [1, {n}], got {rank}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real, d)


def random_separable(d, terms=1, seed=None):
    """Convex mixture of ``terms`` Haar-random product pure states.

    Weights are uniform on the simplex (normalized unit exponentials).
    """
    d = _check_d(d)
    terms = int(terms)
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.exponential(size=terms)
    weights /= weights.sum()
    mat = np.zeros((d * d, d * d), dtype=np.complex128)
    for p in weights:
        x = random_haar_unitary(d, rng)[:, 0]
        y = random_haar_unitary(d, rng)[:, 0]
        xy = np.kron(x, y)
        mat += p * _projector(xy)
    return DensityMatrix(mat, d)


def mix(rho1, rho2, lam):
    """lam * rho1 + (1 - lam) * rho2."""
    rho1 = as_density(rho1)
    rho2 = as_density(rho2)
    if rho1.d != rho2.d:
        raise ValueError(f"cannot mix states with d={rho1.d} and d={rho2.d}")
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda={lam} outside [0, 1]")
    return DensityMatrix(lam * rho1.mat + (1.0 - lam) * rho2.mat, rho1.d)


def local_rotate(rho, v):
    """(V x I) rho (V^dagger x I)."""
    rho = as_density(rho)
    big = np.kron(as_matrix(v), np.eye(rho.d))
    return DensityMatrix(big @ rho.mat @ big.conj().T, rho.d)
