"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line (printed in the terminal summary) and then
asserts it.  Expected values are computed here from the closed forms, not
taken from the package's own closed-form helpers.
"""

import math
import time

import numpy as np

from telewitness.cli import scan_rows
from telewitness.fef import OptimizerConfig, continuity_bound, fef_exact_2x2, fef_optimize
from telewitness.linalg import frobenius_norm, matmul
from telewitness.states import (
    discord_state,
    generalized_werner,
    max_entangled_state,
    mems,
    mix,
    random_density,
    random_separable,
)
from telewitness.witness import (
    Verdict,
    classify,
    gellmann_decomposition,
    pauli_decomposition,
    projector_decomposition,
    witness_expectation,
    witness_operator,
)

GRID = [round(k * 0.01, 12) for k in range(101)]
LAMBDAS = [k / 10 for k in range(1, 10)]


def rng_for(seed, k):
    return np.random.default_rng([seed, k])


def random_two_qubit(rng):
    return random_density(2, int(rng.integers(1, 5)), rng)


def test_01_isotropic_threshold(criterion):
    t0 = time.perf_counter()
    worst, brackets = 0.0, {}
    for d in (2, 3, 4):
        rows = scan_rows("isotropic", d, 0.0, 1.0, 0.01)
        for r in rows:
            beta = r["parameter_value"]
            expected = (d - 1) * (1 - beta * (d + 1)) / d**2
            worst = max(worst, abs(r["witness_expectation"] - expected))
        flags = [r["verdict"] == "useful-detected" for r in rows]
        first = flags.index(True)
        assert all(flags[first:]) and not any(flags[:first])
        brackets[d] = (rows[first - 1]["parameter_value"], rows[first]["parameter_value"])
    elapsed = time.perf_counter() - t0
    ok = (
        worst <= 1e-12
        and all(lo <= 1 / (d + 1) < hi for d, (lo, hi) in brackets.items())
        and elapsed < 1.0
    )
    criterion(1, "isotropic threshold", ok, f"max err {worst:.1e}, brackets {brackets}, {elapsed:.2f}s")
    assert ok


def test_02_werner_threshold(criterion):
    t0 = time.perf_counter()
    s = 1 / math.sqrt(2)
    worst, wrong = 0.0, []
    for v in GRID + [1 / 3]:
        rep = classify(generalized_werner(2, v, [s, s]))
        worst = max(worst, abs(rep.expectation - (1 - 3 * v) / 4))
        if rep.detected != (v > 1 / 3):
            wrong.append(v)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and not wrong and elapsed < 1.0
    criterion(2, "werner threshold", ok, f"max err {worst:.1e}, misclassified {wrong}, {elapsed:.2f}s")
    assert ok


def test_03_mems_threshold(criterion):
    t0 = time.perf_counter()
    worst, wrong = 0.0, []
    for c in GRID + [1 / 3, 2 / 3]:
        h = c / 2 if c >= 2 / 3 else 1 / 3
        rep = classify(mems(c))
        worst = max(worst, abs(rep.expectation - (0.5 - h - c / 2)))
        if rep.detected != (c > 1 / 3):
            wrong.append(c)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and not wrong and elapsed < 1.0
    criterion(3, "MEMS threshold", ok, f"max err {worst:.1e}, misclassified {wrong}, {elapsed:.2f}s")
    assert ok


def test_04_discord_not_detected(criterion):
    t0 = time.perf_counter()
    worst, detected = 0.0, []
    for a in GRID:
        rep = classify(discord_state(a))
        worst = max(worst, abs(rep.expectation - a / 2))
        if rep.verdict is not Verdict.NOT_DETECTED:
            detected.append(a)
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and not detected and elapsed < 1.0
    criterion(4, "discord-state non-detection", ok, f"max err {worst:.1e}, detected {detected}, {elapsed:.2f}s")
    assert ok


def test_05_witness_spectrum(criterion):
    t0 = time.perf_counter()
    worst, counts = 0.0, {}
    for d in range(2, 6):
        lam = np.linalg.eigvalsh(witness_operator(d))
        counts[d] = int(np.sum(lam < 0))
        expected = np.array([1 / d - 1] + [1 / d] * (d * d - 1))
        worst = max(worst, np.abs(lam - expected).max())
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and all(n == 1 for n in counts.values()) and elapsed < 1.0
    criterion(5, "witness spectrum", ok, f"max eig err {worst:.1e}, negative counts {counts}, {elapsed:.2f}s")
    assert ok


def test_06_decompositions(criterion):
    t0 = time.perf_counter()
    w2 = witness_operator(2)
    qubit = max(np.abs(dec.reconstruct() - w2).max() for dec in (pauli_decomposition(), projector_decomposition()))
    gm = max(np.abs(gellmann_decomposition(d).reconstruct() - witness_operator(d)).max() for d in (3, 4))
    elapsed = time.perf_counter() - t0
    ok = qubit <= 1e-14 and gm <= 1e-12 and elapsed < 1.0
    criterion(6, "decomposition reconstruction", ok, f"qubit {qubit:.1e}, gell-mann {gm:.1e}, {elapsed:.2f}s")
    assert ok


def test_07_fef_oracle_agreement(criterion):
    t0 = time.perf_counter()
    gaps = []
    for k in range(50):
        rho = random_two_qubit(rng_for(7, k))
        gaps.append(abs(fef_optimize(rho, OptimizerConfig()).value - fef_exact_2x2(rho).value))
    elapsed = time.perf_counter() - t0
    failures = sum(g >= 1e-6 for g in gaps)
    ok = failures == 0 and elapsed < 60.0
    criterion(7, "FEF oracle agreement", ok, f"max gap {max(gaps):.1e}, failures {failures}/50, {elapsed:.2f}s")
    assert ok


def test_08_fef_endpoints(criterion):
    t0 = time.perf_counter()
    psi = max_entangled_state(2)
    bell = np.outer(psi, psi.conj())
    opt_bell = abs(fef_optimize(bell).value - 1)
    exact_bell = abs(fef_exact_2x2(bell).value - 1)
    mixed = {
        2: abs(fef_exact_2x2(np.eye(4) / 4).value - 1 / 4),
        3: abs(fef_optimize(np.eye(9) / 9).value - 1 / 9),
    }
    mixed_opt2 = abs(fef_optimize(np.eye(4) / 4).value - 1 / 4)
    elapsed = time.perf_counter() - t0
    ok = (
        opt_bell <= 1e-7
        and exact_bell <= 1e-12
        and max(mixed.values()) <= 1e-9
        and mixed_opt2 <= 1e-9
        and elapsed < 10.0
    )
    criterion(
        8, "FEF endpoints", ok,
        f"bell opt {opt_bell:.1e} exact {exact_bell:.1e}, mixed {max(max(mixed.values()), mixed_opt2):.1e}, {elapsed:.2f}s",
    )
    assert ok


def test_09_convexity(criterion):
    t0 = time.perf_counter()
    violations, worst = 0, np.inf
    for k in range(200):
        rng = rng_for(9, k)
        r1, r2 = random_two_qubit(rng), random_two_qubit(rng)
        f1, f2 = fef_exact_2x2(r1).value, fef_exact_2x2(r2).value
        for lam in LAMBDAS:
            slack = lam * f1 + (1 - lam) * f2 + 1e-9 - fef_exact_2x2(mix(r1, r2, lam)).value
            worst = min(worst, slack)
            violations += slack < 0
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 30.0
    criterion(9, "convexity", ok, f"violations {violations}/1800, min slack {worst:.1e}, {elapsed:.2f}s")
    assert ok


def test_10_lipschitz(criterion):
    t0 = time.perf_counter()
    assert continuity_bound(2) == 4
    violations, worst_ratio = 0, 0.0
    for k in range(200):
        rng = rng_for(10, k)
        ra, rb = random_two_qubit(rng), random_two_qubit(rng)
        gap = abs(fef_exact_2x2(ra).value - fef_exact_2x2(rb).value)
        dist = np.linalg.norm(ra.mat - rb.mat)
        violations += gap > 4 * dist + 1e-9
        worst_ratio = max(worst_ratio, gap / dist)
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 30.0
    criterion(10, "Lipschitz", ok, f"violations {violations}/200, max |dF|/||drho|| {worst_ratio:.3f}, {elapsed:.2f}s")
    assert ok


def test_11_separable_nonnegative(criterion):
    t0 = time.perf_counter()
    violations, worst = 0, np.inf
    for d in (2, 3):
        for k in range(500):
            rng = rng_for(11 + d, k)
            e = witness_expectation(random_separable(d, int(rng.integers(1, 9)), rng))
            worst = min(worst, e)
            violations += e < -1e-10
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 30.0
    criterion(11, "separable non-negativity", ok, f"violations {violations}/1000, min Tr(W sigma) {worst:.2e}, {elapsed:.2f}s")
    assert ok


def test_12_norm_lemma(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(12)
    violations = 0
    for _ in range(200):
        m, n, r = (int(x) for x in rng.integers(1, 7, size=3))
        a = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        b = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
        violations += frobenius_norm(matmul(a, b)) > frobenius_norm(a) * frobenius_norm(b) + 1e-12
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 1.0
    criterion(12, "norm lemma", ok, f"violations {violations}/200, {elapsed:.2f}s")
    assert ok
