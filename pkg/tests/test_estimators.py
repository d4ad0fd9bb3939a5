import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import Normalizer

from seqsim.estimators import WalshHadamardTransformer, ZeroCrossingCounter, check_power_of_two_features
from seqsim.transforms import natural_matrix, sequency_matrix

from conftest import TABLE1_COUNTS


@pytest.fixture
def X(rng):
    return rng.normal(size=(12, 16))


class TestWalshHadamardTransformer:
    def test_params(self):
        t = WalshHadamardTransformer(order="natural", via="matrix")
        assert t.get_params() == {"order": "natural", "via": "matrix"}
        assert clone(t).set_params(via="fast").via == "fast"

    @pytest.mark.parametrize("order,matrix", [("sequency", sequency_matrix), ("natural", natural_matrix)])
    @pytest.mark.parametrize("via", ["fast", "matrix"])
    def test_matches_dense(self, X, order, matrix, via):
        out = WalshHadamardTransformer(order=order, via=via).fit_transform(X)
        assert np.allclose(out, X @ matrix(4).T, atol=1e-12)

    def test_circuit_route(self, X):
        Xn = X / np.linalg.norm(X, axis=1, keepdims=True)
        via_circuit = WalshHadamardTransformer(via="circuit").fit_transform(Xn)
        via_fast = WalshHadamardTransformer().fit_transform(Xn)
        assert np.abs(via_circuit - via_fast).max() < 1e-9

    def test_circuit_route_needs_unit_rows(self, X):
        with pytest.raises(ValueError, match="unit-norm"):
            WalshHadamardTransformer(via="circuit").fit_transform(X)

    @pytest.mark.parametrize("order", ["sequency", "natural"])
    def test_inverse(self, X, order):
        t = WalshHadamardTransformer(order=order).fit(X)
        assert np.allclose(t.inverse_transform(t.transform(X)), X, atol=1e-12)

    def test_in_pipeline(self, X):
        pipe = make_pipeline(Normalizer(), WalshHadamardTransformer(via="circuit"))
        out = pipe.fit_transform(X)
        assert np.allclose(np.linalg.norm(out, axis=1), 1)

    def test_not_fitted(self, X):
        with pytest.raises(NotFittedError):
            WalshHadamardTransformer().transform(X)

    def test_feature_count_checked(self, X):
        t = WalshHadamardTransformer().fit(X)
        with pytest.raises(ValueError):
            t.transform(X[:, :8])

    @pytest.mark.parametrize("params", [{"order": "dyadic"}, {"via": "gpu"},
                                        {"order": "natural", "via": "circuit"}])
    def test_bad_params(self, X, params):
        with pytest.raises(ValueError):
            WalshHadamardTransformer(**params).fit(X)

    def test_non_power_of_two(self):
        with pytest.raises(ValueError, match="power of two"):
            WalshHadamardTransformer().fit(np.zeros((2, 6)))

    def test_validation_helper(self):
        X, n = check_power_of_two_features([[1, 2, 3, 4]])
        assert n == 2 and X.dtype == np.float64


class TestZeroCrossingCounter:
    SECRETS = ["000", "001", "010", "011", "100", "101", "110", "111"]

    @pytest.mark.parametrize("method", ["quantum", "brute", "recurrence", "closed"])
    def test_table1_from_strings(self, method):
        model = ZeroCrossingCounter(method=method).fit(self.SECRETS)
        assert tuple(model.predict(self.SECRETS)) == TABLE1_COUNTS

    def test_bit_matrix_is_msb_first(self):
        bits = np.array([[int(c) for c in s] for s in self.SECRETS])
        model = ZeroCrossingCounter().fit(bits)
        assert tuple(model.predict(bits)) == TABLE1_COUNTS
        assert model.n_features_in_ == 3

    def test_quantum_query_accounting(self):
        model = ZeroCrossingCounter().fit(self.SECRETS)
        model.predict(self.SECRETS)
        assert model.oracle_queries_ == 8

    def test_without_swaps(self):
        model = ZeroCrossingCounter(include_swaps=False).fit(self.SECRETS)
        assert tuple(model.predict(self.SECRETS)) == TABLE1_COUNTS

    def test_errors(self):
        with pytest.raises(ValueError):
            ZeroCrossingCounter(method="guess").fit(self.SECRETS)
        with pytest.raises(ValueError):
            ZeroCrossingCounter().fit(np.array([[0, 2]]))
        with pytest.raises(NotFittedError):
            ZeroCrossingCounter().predict(self.SECRETS)
