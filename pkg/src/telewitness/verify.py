"""Randomized self-checks of the FEF and witness identities.

Each suite returns a ``SuiteResult``; ``margin`` is the slack of the checked
inequality (negative means violated), so ``worst_margin`` is the closest call.
"""

from dataclasses import dataclass

import numpy as np

from .fef import OptimizerConfig, continuity_bound, fef_exact_2x2, fef_optimize
from .states import mix, random_density, random_separable
from .witness import (
    gellmann_decomposition,
    pauli_decomposition,
    projector_decomposition,
    witness_expectation,
    witness_operator,
)

SUITES = ("convexity", "lipschitz", "separable-nonneg", "decompositions", "oracle-agreement")
LAMBDAS = tuple(k / 10 for k in range(1, 10))


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    violations: int = 0
    worst_margin: float = np.inf

    def record(self, margin):
        self.checks += 1
        if margin < 0:
            self.violations += 1
        self.worst_margin = min(self.worst_margin, float(margin))

    @property
    def passed(self):
        return self.checks > 0 and self.violations == 0

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{self.name}: {status} checks={self.checks} "
            f"violations={self.violations} worst_margin={self.worst_margin:.3e}"
        )


def _rngs(seed, n):
    return [np.random.default_rng([seed, k]) for k in range(n)]


def _random_rank(rng, d):
    return int(rng.integers(1, d * d + 1))


def check_convexity(samples=200, seed=0, atol=1e-9):
    res = SuiteResult("convexity")
    for rng in _rngs(seed, samples):
        r1 = random_density(2, _random_rank(rng, 2), rng)
        r2 = random_density(2, _random_rank(rng, 2), rng)
        f1, f2 = fef_exact_2x2(r1).value, fef_exact_2x2(r2).value
        for lam in LAMBDAS:
            fc = fef_exact_2x2(mix(r1, r2, lam)).value
            res.record(lam * f1 + (1 - lam) * f2 + atol - fc)
    return res


def check_lipschitz(samples=200, seed=0, atol=1e-9):
    res = SuiteResult("lipschitz")
    k = continuity_bound(2)
    for rng in _rngs(seed, samples):
        ra = random_density(2, _random_rank(rng, 2), rng)
        rb = random_density(2, _random_rank(rng, 2), rng)
        gap = abs(fef_exact_2x2(ra).value - fef_exact_2x2(rb).value)
        res.record(k * np.linalg.norm(ra.mat - rb.mat) + atol - gap)
    return res


def check_separable_nonneg(samples=500, seed=0, dims=(2, 3), atol=1e-10):
    res = SuiteResult("separable-nonneg")
    for d in dims:
        for rng in _rngs(seed + 7919 * d, samples):
            sigma = random_separable(d, int(rng.integers(1, 9)), rng)
            res.record(witness_expectation(sigma) + atol)
    return res


def check_decompositions(atol_qubit=1e-14, atol_gellmann=1e-12):
    res = SuiteResult("decompositions")
    w2 = witness_operator(2)
    for dec in (pauli_decomposition(), projector_decomposition()):
        res.record(atol_qubit - np.abs(dec.reconstruct() - w2).max())
    for d in (3, 4):
        dec = gellmann_decomposition(d)
        res.record(atol_gellmann - np.abs(dec.reconstruct() - witness_operator(d)).max())
    return res


def check_oracle_agreement(samples=50, seed=0, atol=1e-6, config=None):
    res = SuiteResult("oracle-agreement")
    config = config or OptimizerConfig(seed=seed)
    for rng in _rngs(seed, samples):
        rho = random_density(2, _random_rank(rng, 2), rng)
        gap = abs(fef_optimize(rho, config).value - fef_exact_2x2(rho).value)
        res.record(atol - gap)
    return res


def run_suite(name, samples=None, seed=0):
    if name == "convexity":
        return check_convexity(samples or 200, seed)
    if name == "lipschitz":
        return check_lipschitz(samples or 200, seed)
    if name == "separable-nonneg":
        return check_separable_nonneg(samples or 500, seed)
    if name == "decompositions":
        return check_decompositions()
    if name == "oracle-agreement":
        return check_oracle_agreement(samples or 50, seed)
    raise ValueError(f"unknown suite {name!r}")
