"""scikit-learn compatible wrappers around the circuit passes and models.

These let the passes sit in a :class:`sklearn.pipeline.Pipeline`::

    Pipeline([("decompose", ToffoliDecomposer("qutrit")),
              ("count", GateCounter())]).fit_transform(circuits)

Circuit-valued ``X`` is a single :class:`Circuit` or a sequence of them.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .circuit import Circuit, CountReport, check_circuit, gate_counts
from .decompose import DecompositionVariant, decompose_toffoli
from .estimator import OperationKind, Route, check_domain, estimate, success_probability
from .sim import NoiseParams

COUNT_FEATURES = tuple(CountReport().as_dict())


def check_circuits(X: Circuit | Iterable[Circuit]) -> list[Circuit]:
    """Normalise ``X`` to a list of validated circuits."""
    circuits = [X] if isinstance(X, Circuit) else list(X)
    for i, c in enumerate(circuits):
        if not isinstance(c, Circuit):
            raise TypeError(f"X[{i}] is {type(c).__name__}, expected Circuit")
        check_circuit(c)
    return circuits


class ToffoliDecomposer(TransformerMixin, BaseEstimator):
    """Replace every CCX using one of the decomposition variants.

    Parameters
    ----------
    variant : str, default="clifford_t_C"
        ``"clifford_t_A"``, ``"clifford_t_B"``, ``"clifford_t_C"`` (or the
        short forms ``"A"``/``"B"``/``"C"``) or ``"qutrit"``.
    """

    def __init__(self, variant: str = "clifford_t_C"):
        self.variant = variant

    def fit(self, X, y=None):
        check_circuits(X)
        self.variant_ = DecompositionVariant.parse(self.variant)
        return self

    def transform(self, X):
        check_is_fitted(self, "variant_")
        single = isinstance(X, Circuit)
        out = [decompose_toffoli(c, self.variant_) for c in check_circuits(X)]
        return out[0] if single else out


class GateCounter(TransformerMixin, BaseEstimator):
    """Map circuits to a ``(n_circuits, 8)`` integer array of gate tallies."""

    def fit(self, X, y=None):
        check_circuits(X)
        self.n_features_out_ = len(COUNT_FEATURES)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_out_")
        rows = [list(gate_counts(c).as_dict().values()) for c in check_circuits(X)]
        return np.asarray(rows, dtype=np.int64).reshape(-1, len(COUNT_FEATURES))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(COUNT_FEATURES, dtype=object)


class SuccessProbabilityModel(BaseEstimator):
    """Closed-form success probability as a function of register size.

    ``predict`` takes register sizes ``n`` (shape ``(m,)`` or ``(m, 1)``) and
    returns the probability that an ``kind`` circuit of that size runs
    without a gate or relaxation error on ``route``.
    """

    def __init__(
        self,
        kind: str = "add_sub",
        route: str = "qutrit",
        eps1: float = 1e-4,
        eps2: float = 1e-2,
        t1_qubit: float = 100.0,
        t1_qutrit: float = 30.0,
        gate_time: float = 1.0,
        floor_log: bool = False,
    ):
        self.kind = kind
        self.route = route
        self.eps1 = eps1
        self.eps2 = eps2
        self.t1_qubit = t1_qubit
        self.t1_qutrit = t1_qutrit
        self.gate_time = gate_time
        self.floor_log = floor_log

    def _sizes(self, X) -> np.ndarray:
        arr = check_array(np.asarray(X).reshape(-1, 1), dtype=np.float64, ensure_2d=True)
        sizes = arr[:, 0]
        for n in sizes:
            check_domain(self.kind_, n)
        return sizes.astype(int)

    def fit(self, X=None, y=None):
        self.kind_ = OperationKind.parse(self.kind)
        self.route_ = Route.parse(self.route)
        self.noise_ = NoiseParams(self.eps1, self.eps2, self.t1_qubit, self.t1_qutrit, self.gate_time)
        if X is not None:
            self._sizes(X)
        return self

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "noise_")
        return np.array(
            [
                success_probability(estimate(self.kind_, n, self.route_, self.floor_log), self.noise_).p_success
                for n in self._sizes(X)
            ]
        )

    def predict_error(self, X) -> np.ndarray:
        return 1.0 - self.predict(X)
