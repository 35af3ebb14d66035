"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
helpers here add the shape and finiteness checks the rest of the package
relies on, and keep the Haar sampler in one place.
"""

import numpy as np

HERMITIAN_TOL = 1e-10


class ShapeError(ValueError):
    """Raised when operand shapes are incompatible."""


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex128 array."""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_vector(v, name="vector"):
    arr = np.asarray(v, dtype=np.complex128)
    if arr.ndim != 1 or arr.size < 1:
        raise ShapeError(f"{name} must be a non-empty 1-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def matmul(a, b):
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b):
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def dagger(a):
    return as_matrix(a).conj().T


def frobenius_norm(a):
    """sqrt(Tr A^dagger A), i.e. the 2-norm of the flattened entries."""
    return float(np.linalg.norm(as_matrix(a), "fro"))


def hermitian_defect(a):
    """Largest entrywise deviation |a - a^dagger|."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a, tol=HERMITIAN_TOL):
    return hermitian_defect(a) <= tol


def hermitian_eig(a, tol=HERMITIAN_TOL):
    """Eigen-decomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` in ascending order and the
    corresponding orthonormal eigenvectors as the columns of ``v``.
    """
    a = as_matrix(a)
    defect = hermitian_defect(a)
    if defect > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |a - a^dagger| = {defect:.3e} > {tol:g}"
        )
    # symmetrize so the solver sees an exactly Hermitian input
    h = 0.5 * (a + a.conj().T)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"Hermitian eigensolver did not converge: {exc}") from exc
    return w, v


def expm_hermitian(h, t=1.0):
    """exp(i t H) for Hermitian ``h``, via its eigendecomposition."""
    w, v = hermitian_eig(h)
    return (v * np.exp(1j * t * w)) @ v.conj().T


def random_haar_unitary(d, seed=None):
    """Sample a d x d unitary from the Haar measure.

    A complex Ginibre matrix is QR-factorized and the phases of R's diagonal
    are pushed into Q; without that correction Q is not Haar distributed.
    ``seed`` may be an int, ``None`` or a ``numpy.random.Generator``.
    """
    if int(d) < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    phases = diag / np.abs(diag)
    return q * phases


def unitarity_defect(u):
    u = as_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {u.shape}")
    return frobenius_norm(u.conj().T @ u - np.eye(u.shape[0]))
