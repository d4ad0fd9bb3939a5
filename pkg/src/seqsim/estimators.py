"""scikit-learn compatible front ends.

``WalshHadamardTransformer`` drops into a ``Pipeline`` like any other
transformer; ``ZeroCrossingCounter`` maps secret bit patterns to counts.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import transforms
from .classical import brute_force_zero_crossings, generate_sequence, zero_crossings_closed_form, \
    zero_crossings_recurrence
from .core import BitString
from .simulator import count_zero_crossings, sequency_wht_via_circuit

ORDERS = ("natural", "sequency")
VIAS = ("fast", "matrix", "circuit")
METHODS = ("quantum", "brute", "recurrence", "closed")


def check_power_of_two_features(X, estimator=None):
    """``check_array`` plus a power-of-two column count; returns (X, n)."""
    X = check_array(X, dtype=np.float64, ensure_min_features=2, estimator=estimator)
    size = X.shape[1]
    if size & (size - 1):
        raise ValueError(f"number of features must be a power of two, got {size}")
    return X, size.bit_length() - 1


class WalshHadamardTransformer(TransformerMixin, BaseEstimator):
    """Row-wise orthonormal Walsh-Hadamard transform.

    Parameters
    ----------
    order : {"sequency", "natural"}
        Row ordering of the transform matrix.
    via : {"fast", "matrix", "circuit"}
        ``fast`` uses the O(N log N) butterfly, ``matrix`` a dense product,
        ``circuit`` simulates the sequency circuit (sequency order only,
        rows must have unit norm).
    """

    def __init__(self, order="sequency", via="fast"):
        self.order = order
        self.via = via

    def _validate_params(self):
        if self.order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {self.order!r}")
        if self.via not in VIAS:
            raise ValueError(f"via must be one of {VIAS}, got {self.via!r}")
        if self.via == "circuit" and self.order != "sequency":
            raise ValueError("via='circuit' implements the sequency order only")

    def fit(self, X, y=None):
        self._validate_params()
        X, n = check_power_of_two_features(X, self)
        self.n_features_in_ = X.shape[1]
        self.n_qubits_ = n
        return self

    def _check_input(self, X):
        check_is_fitted(self)
        X, _ = check_power_of_two_features(X, self)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, transformer was fitted with {self.n_features_in_}")
        return X

    def transform(self, X):
        X = self._check_input(X)
        n = self.n_qubits_
        if self.via == "circuit":
            return sequency_wht_via_circuit(X)
        if self.via == "matrix":
            m = transforms.sequency_matrix(n) if self.order == "sequency" else transforms.natural_matrix(n)
            return X @ m.T
        fn = transforms.fwht_sequency if self.order == "sequency" else transforms.fwht_natural
        return np.vstack([fn(row) for row in X])

    def inverse_transform(self, X):
        X = self._check_input(X)
        if self.order == "natural":
            return np.vstack([transforms.fwht_natural(row) for row in X])
        return np.vstack([transforms.ifwht_sequency(row) for row in X])


def _secrets_from_input(X):
    """Accept MSB-first strings or a 0/1 matrix whose first column is the most significant bit."""
    arr = np.asarray(X)
    if arr.ndim == 1 and arr.dtype.kind in "US":
        return [BitString.parse(str(s)) for s in arr]
    bits = check_array(X, dtype=np.int64)
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("bit matrix entries must be 0 or 1")
    return [BitString.from_bits(row[::-1].tolist()) for row in bits]


class ZeroCrossingCounter(BaseEstimator):
    """Predict the number of sign changes of ``(-1)^(s.x)`` for each secret ``s``.

    Parameters
    ----------
    method : {"quantum", "brute", "recurrence", "closed"}
    include_swaps : bool
        Only used by the quantum route. Without swaps the measured register
        is read in reverse bit order.
    """

    def __init__(self, method="quantum", include_swaps=True):
        self.method = method
        self.include_swaps = include_swaps

    def fit(self, X, y=None):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        secrets = _secrets_from_input(X)
        self.n_features_in_ = secrets[0].width
        self.oracle_queries_ = 0
        return self

    def _count(self, s: BitString) -> int:
        if self.method == "quantum":
            run = count_zero_crossings(s, self.include_swaps)
            self.oracle_queries_ += run.oracle_queries
            return run.count
        if self.method == "brute":
            return brute_force_zero_crossings(generate_sequence(s))
        if self.method == "recurrence":
            return zero_crossings_recurrence(s)
        return zero_crossings_closed_form(s)

    def predict(self, X):
        check_is_fitted(self)
        return np.array([self._count(s) for s in _secrets_from_input(X)], dtype=np.int64)
