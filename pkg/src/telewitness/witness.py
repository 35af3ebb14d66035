"""The teleportation witness W = I/d - |psi+><psi+| and its local decompositions."""

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .fef import FefEstimate, OptimizerConfig, fef_exact_2x2, fef_optimize
from .states import as_density, max_entangled_state, mems_h

# |Tr(W rho)| below this is treated as zero when deciding the verdict;
# states exactly on a threshold evaluate to +-1e-16 in floating point
DETECTION_TOL = 1e-12


class Verdict(str, enum.Enum):
    USEFUL_DETECTED = "useful-detected"
    NOT_DETECTED = "not-detected"


@dataclass(frozen=True)
class WitnessReport:
    expectation: float
    verdict: Verdict
    d: int
    fef_hint: Optional[FefEstimate] = None

    @property
    def detected(self):
        return self.verdict is Verdict.USEFUL_DETECTED

    def as_dict(self):
        out = {"d": self.d, "expectation": self.expectation, "verdict": self.verdict.value}
        if self.fef_hint is not None:
            out["fef"] = self.fef_hint.as_dict()
        return out


def witness_operator(d):
    psi = max_entangled_state(d)
    return np.eye(d * d, dtype=np.complex128) / d - np.outer(psi, psi.conj())


def witness_expectation(rho):
    """Tr(W rho) = 1/d - <psi+|rho|psi+>."""
    rho = as_density(rho)
    psi = max_entangled_state(rho.d)
    return 1.0 / rho.d - float(np.vdot(psi, rho.mat @ psi).real)


def verdict_for(expectation, tol=DETECTION_TOL):
    # a zero expectation is not a detection: the witness needs Tr(W chi) < 0
    return Verdict.USEFUL_DETECTED if expectation < -tol else Verdict.NOT_DETECTED


def classify(rho, with_fef=False, config=None):
    """Evaluate the witness on ``rho``.

    NOT_DETECTED does not mean the state is useless for teleportation; the
    witness is one-sided.  With ``with_fef`` the report also carries the FEF
    (exact for two qubits, an ascent lower bound otherwise).
    """
    rho = as_density(rho)
    e = witness_expectation(rho)
    hint = None
    if with_fef:
        hint = fef_exact_2x2(rho) if rho.d == 2 else fef_optimize(rho, config or OptimizerConfig())
    return WitnessReport(expectation=e, verdict=verdict_for(e), d=rho.d, fef_hint=hint)


# closed forms -----------------------------------------------------------


def isotropic_expectation(d, beta):
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    lo = -1.0 / (d * d - 1)
    if not lo <= beta <= 1.0:
        raise ValueError(f"beta={beta} outside the admissible interval [{lo:.6g}, 1]")
    return (d - 1) * (1 - beta * (d + 1)) / d**2


def werner_expectation(d, v, alphas):
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"v={v} outside [0, 1]")
    alphas = np.asarray(alphas, dtype=float)
    if alphas.shape != (d,):
        raise ValueError(f"expected {d} Schmidt amplitudes, got shape {alphas.shape}")
    norm2 = float(np.sum(alphas**2))
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"alphas are not normalized: sum alpha_i^2 - 1 = {norm2 - 1.0:.3e}")
    s = float(np.sum(alphas))
    return 1.0 / d - (1.0 - v) / d**2 - (v / d) * s * s


def mems_expectation(concurrence):
    c = float(concurrence)
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence={c} outside [0, 1]")
    return 0.5 - mems_h(c) - c / 2.0


def discord_expectation(a):
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"a={a} outside [0, 1]")
    return a / 2.0


# local decompositions ----------------------------------------------------


@dataclass(frozen=True)
class DecompositionTerm:
    coefficient: float
    label_a: str
    label_b: str
    op_a: np.ndarray
    op_b: np.ndarray


# projectors measured in the same local basis share a setting
_POLARIZATION_BASIS = {"H": "Z", "V": "Z", "D": "X", "F": "X", "L": "Y", "R": "Y"}


@dataclass(frozen=True)
class LocalDecomposition:
    terms: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def reconstruct(self):
        out = None
        for t in self.terms:
            block = t.coefficient * np.kron(t.op_a, t.op_b)
            out = block if out is None else out + block
        return out

    def expectation(self, rho):
        """sum_i c_i Tr((A_i x B_i) rho), evaluated term by term."""
        mat = as_density(rho).mat
        return float(
            sum(t.coefficient * np.trace(np.kron(t.op_a, t.op_b) @ mat).real for t in self.terms)
        )

    def measurement_settings(self):
        """Distinct local measurement settings, identity factors excluded."""
        settings = set()
        for t in self.terms:
            a = _POLARIZATION_BASIS.get(t.label_a, t.label_a)
            b = _POLARIZATION_BASIS.get(t.label_b, t.label_b)
            if a == "I" and b == "I":
                continue
            settings.add((a, b))
        return sorted(settings)


PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli_decomposition():
    """W = (II - XX + YY - ZZ)/4 for two qubits."""
    coeffs = (("I", 0.25), ("X", -0.25), ("Y", 0.25), ("Z", -0.25))
    return LocalDecomposition(
        tuple(DecompositionTerm(c, p, p, PAULI[p], PAULI[p]) for p, c in coeffs)
    )


def polarization_states():
    s = 1.0 / math.sqrt(2.0)
    return {
        "H": np.array([1, 0], dtype=np.complex128),
        "V": np.array([0, 1], dtype=np.complex128),
        "D": np.array([s, s], dtype=np.complex128),
        "F": np.array([s, -s], dtype=np.complex128),
        "L": np.array([s, 1j * s], dtype=np.complex128),
        "R": np.array([s, -1j * s], dtype=np.complex128),
    }


def projector_decomposition():
    """W as six weighted product projectors in the H/V, D/F, L/R bases."""
    pol = {k: np.outer(v, v.conj()) for k, v in polarization_states().items()}
    layout = (("H", "V", 0.5), ("V", "H", 0.5), ("D", "D", -0.5),
              ("F", "F", -0.5), ("L", "L", 0.5), ("R", "R", 0.5))
    return LocalDecomposition(
        tuple(DecompositionTerm(c, a, b, pol[a], pol[b]) for a, b, c in layout)
    )


def gellmann_matrices(d):
    """Identity followed by the d^2 - 1 generalized Gell-Mann matrices.

    Returns ``(labels, mats)``.  Non-identity matrices satisfy
    Tr(G_j G_k) = 2 delta_jk.
    """
    labels, mats = ["I"], [np.eye(d, dtype=np.complex128)]
    for j in range(d):
        for k in range(j + 1, d):
            s = np.zeros((d, d), dtype=np.complex128)
            s[j, k] = s[k, j] = 1.0
            labels.append(f"S{j}{k}")
            mats.append(s)
            a = np.zeros((d, d), dtype=np.complex128)
            a[j, k] = -1j
            a[k, j] = 1j
            labels.append(f"A{j}{k}")
            mats.append(a)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1.0
        diag[l] = -l
        labels.append(f"D{l}")
        mats.append(np.diag(diag * math.sqrt(2.0 / (l * (l + 1)))).astype(np.complex128))
    return labels, mats


def gellmann_decomposition(d, drop_tol=1e-15):
    """Hilbert-Schmidt projection of W(d) on products of Gell-Mann matrices.

    Terms with |coefficient| <= ``drop_tol`` are omitted.
    """
    w = witness_operator(d)
    labels, mats = gellmann_matrices(d)
    norms = [np.trace(m @ m).real for m in mats]
    terms = []
    for la, ga, na in zip(labels, mats, norms):
        for lb, gb, nb in zip(labels, mats, norms):
            c = np.trace(w @ np.kron(ga, gb)).real / (na * nb)
            if abs(c) > drop_tol:
                terms.append(DecompositionTerm(float(c), la, lb, ga, gb))
    return LocalDecomposition(tuple(terms))
