"""scikit-learn style wrappers around the forward map and the membership test.

Rows of four increasing roots map to rows of three ratios; rows of three
ratios are classified as ratio vectors or not. Everything here is float.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .characterization import BOUNDARY_TOL, R_TOL, eval_R, is_ratio_vector
from .errors import RatvecError
from .quartic import DEFAULT_TOL, forward_ratio_vector, normalize_roots
from .reconstruction import reconstruct


def _check_width(X: np.ndarray, width: int, fitted_width=None) -> None:
    if X.shape[1] != width:
        raise ValueError(f"expected {width} columns, got {X.shape[1]}")
    if fitted_width is not None and X.shape[1] != fitted_width:
        raise ValueError(f"X has {X.shape[1]} features, estimator was fitted with {fitted_width}")


class RatioVectorTransformer(TransformerMixin, BaseEstimator):
    """Map rows ``(r1, r2, r3, r4)`` of distinct increasing roots to ``(u, v, w)``.

    ``inverse_transform`` returns the canonical roots ``(-1, 0, r, s)``
    reconstructed from each ratio vector.
    """

    def __init__(self, tol: float = DEFAULT_TOL):
        self.tol = tol

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        _check_width(X, 4)
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        _check_width(X, 4, self.n_features_in_)
        out = np.empty((X.shape[0], 3))
        for i, row in enumerate(X):
            out[i] = [float(x) for x in forward_ratio_vector(tuple(row), self.tol)]
        return out

    def inverse_transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        _check_width(X, 3)
        out = np.empty((X.shape[0], 4))
        for i, (u, v, w) in enumerate(X):
            rec = reconstruct(u, v, w)
            out[i] = [-1.0, 0.0, float(rec.r), float(rec.s)]
        return out

    def canonical_roots(self, X):
        """Normalized ``(r, s)`` for each root row, for comparison with ``inverse_transform``."""
        X = check_array(X, dtype=np.float64)
        _check_width(X, 4)
        return np.array([[float(c.r), float(c.s)] for c, _ in map(normalize_roots, map(tuple, X))])

    def get_feature_names_out(self, input_features=None):
        return np.array(["u", "v", "w"], dtype=object)


class RatioVectorClassifier(ClassifierMixin, BaseEstimator):
    """Predict whether rows ``(u, v, w)`` are ratio vectors of real-rooted quartics.

    The decision rule is fixed, so ``fit`` only validates inputs and records
    the classes. ``y`` is optional.
    """

    def __init__(self, R_tol: float = R_TOL, boundary_tol: float = BOUNDARY_TOL):
        self.R_tol = R_tol
        self.boundary_tol = boundary_tol

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        _check_width(X, 3)
        if not (self.R_tol >= 0 and self.boundary_tol >= 0):
            raise ValueError("tolerances must be nonnegative")
        self.n_features_in_ = 3
        self.classes_ = np.array([False, True])
        return self

    def _verdicts(self, X):
        check_is_fitted(self, "classes_")
        X = check_array(X, dtype=np.float64)
        _check_width(X, 3, self.n_features_in_)
        return [is_ratio_vector(u, v, w, R_tol=self.R_tol, boundary_tol=self.boundary_tol)
                for u, v, w in X]

    def predict(self, X):
        return np.array([vd.is_ratio_vector for vd in self._verdicts(X)], dtype=bool)

    def predict_region(self, X):
        return np.array([str(vd.region) for vd in self._verdicts(X)], dtype=object)

    def score_samples(self, X):
        """``-|R(u, v, w)|``: zero on the surface, more negative further off it."""
        check_is_fitted(self, "classes_")
        X = check_array(X, dtype=np.float64)
        _check_width(X, 3, self.n_features_in_)
        return np.array([-abs(float(eval_R(u, v, w))) for u, v, w in X])
