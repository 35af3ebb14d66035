"""scikit-learn compatible wrappers.

Both estimators take ``X`` as a batch of density matrices, i.e. an array of
shape ``(n_samples, d*d, d*d)`` or a sequence of ``DensityMatrix``.  Neither
learns anything from data; ``fit`` only validates input and records ``d_``,
so they can sit inside pipelines and grid searches.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fef import OptimizerConfig, fef_exact_2x2, fef_optimize, fef_sample
from .states import DensityMatrix, as_density
from .witness import DETECTION_TOL, witness_expectation, witness_operator


def check_states(X, d=None):
    """Validate a batch of states and return a list of ``DensityMatrix``."""
    if isinstance(X, DensityMatrix):
        X = [X]
    elif not isinstance(X, (list, tuple)):
        arr = np.asarray(X)
        if arr.ndim == 2:
            arr = arr[None]
        if arr.ndim != 3:
            raise ValueError(
                f"expected an array of shape (n_samples, d*d, d*d), got shape {arr.shape}"
            )
        X = list(arr)
    if len(X) == 0:
        raise ValueError("X contains no states")
    states = [as_density(x) for x in X]
    dims = {s.d for s in states}
    if len(dims) != 1:
        raise ValueError(f"all states must share one local dimension, got {sorted(dims)}")
    if d is not None and dims != {d}:
        raise ValueError(f"expected states with d={d}, got d={dims.pop()}")
    return states


class TeleportationWitness(ClassifierMixin, BaseEstimator):
    """Linear classifier given by the teleportation witness.

    ``predict`` returns 1 where the witness detects a state useful for
    teleportation and 0 otherwise; ``decision_function`` is -Tr(W rho), so
    positive scores are detections.
    """

    def __init__(self, tol=DETECTION_TOL):
        self.tol = tol

    def fit(self, X, y=None):
        states = check_states(X)
        self.d_ = states[0].d
        self.witness_ = witness_operator(self.d_)
        self.classes_ = np.array([0, 1])
        return self

    def expectation(self, X):
        check_is_fitted(self)
        return np.array([witness_expectation(s) for s in check_states(X, self.d_)])

    def decision_function(self, X):
        return -self.expectation(X)

    def predict(self, X):
        return (self.decision_function(X) > self.tol).astype(int)


class FullyEntangledFraction(TransformerMixin, BaseEstimator):
    """Map each state to its fully entangled fraction.

    method : "auto" uses the exact formula for two qubits and the restarted
        ascent otherwise; "exact", "ascent" and "sampling" force one route.
    """

    def __init__(self, method="auto", restarts=20, max_iterations=500, n_samples=1000, seed=0):
        self.method = method
        self.restarts = restarts
        self.max_iterations = max_iterations
        self.n_samples = n_samples
        self.seed = seed

    def fit(self, X, y=None):
        if self.method not in ("auto", "exact", "ascent", "sampling"):
            raise ValueError(f"unknown method {self.method!r}")
        states = check_states(X)
        self.d_ = states[0].d
        if self.method == "exact" and self.d_ != 2:
            raise ValueError("the exact method is only available for d=2")
        return self

    def _estimate(self, rho):
        method = self.method
        if method == "auto":
            method = "exact" if rho.d == 2 else "ascent"
        if method == "exact":
            return fef_exact_2x2(rho)
        if method == "sampling":
            return fef_sample(rho, self.n_samples, self.seed)
        config = OptimizerConfig(
            restarts=self.restarts, max_iterations=self.max_iterations, seed=self.seed
        )
        return fef_optimize(rho, config)

    def transform(self, X):
        check_is_fitted(self)
        states = check_states(X, self.d_)
        return np.array([[self._estimate(s).value] for s in states])
