"""scikit-learn style front ends.

Each estimator is configured by constructor parameters (``get_params`` /
``set_params`` work as usual), ``fit`` takes a cover scenario (or anything
:func:`check_scenario` accepts) and the fitted state lives in attributes with
a trailing underscore.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_positive_int, check_scenario, check_target_names
from .asymptotics import omega_sum, ultralimit
from .exceptions import ValidationError
from .measure import closed_form, measure_at, measure_split_at
from .montecarlo import sample_measure
from .prop import prop_measure_at


class PACMeasure(BaseEstimator):
    """Exact measure of every target at a fixed rank ``e``.

    scheme : "count" (tuples of ``G``), "split" (``sigma0 * G0^e``) or
        "pro-p" (inside a Sylow ``prime``-subgroup).
    """

    def __init__(self, e=1, scheme="count", sigma0=None, prime=None):
        self.e = e
        self.scheme = scheme
        self.sigma0 = sigma0
        self.prime = prime

    def fit(self, X, y=None):
        e = check_positive_int(self.e, "e")
        s = check_scenario(X)
        if self.scheme == "count":
            report = measure_at(s, e)
        elif self.scheme == "split":
            report = measure_split_at(s, e, self.sigma0)
        elif self.scheme == "pro-p":
            if self.prime is None:
                raise ValidationError("scheme 'pro-p' needs prime")
            report = prop_measure_at(s, self.prime, e)
        else:
            raise ValidationError(f"unknown scheme {self.scheme!r}")
        self.scenario_ = s
        self.report_ = report
        self.target_names_ = list(s.targets)
        return self

    def predict(self, X=None):
        """Measures (as Fractions, object array) of the given targets, or of all of them."""
        check_is_fitted(self)
        names = check_target_names(self.scenario_, X)
        return np.array([self.report_.value(n) for n in names], dtype=object)


class ClosedFormMeasure(TransformerMixin, BaseEstimator):
    """Signed power sums per target; ``transform`` evaluates them at a list of ranks."""

    def __init__(self, start=1):
        self.start = start

    def fit(self, X, y=None):
        s = check_scenario(X)
        self.scenario_ = s
        self.target_names_ = list(s.targets)
        self.forms_ = {n: closed_form(s, n) for n in s.targets}
        return self

    def transform(self, X):
        """Rows are the ranks in ``X``, columns the targets in declaration order."""
        check_is_fitted(self)
        es = [check_positive_int(int(e), "e") for e in np.asarray(X, dtype=object).ravel()]
        return np.array([[self.forms_[n](e) for n in self.target_names_] for e in es], dtype=object)

    def limits(self) -> dict:
        check_is_fitted(self)
        return {n: ultralimit(f).value for n, f in self.forms_.items()}

    def series(self) -> dict:
        check_is_fitted(self)
        start = check_positive_int(self.start, "start")
        return {n: omega_sum(f, start) for n, f in self.forms_.items()}


class MonteCarloMeasure(BaseEstimator):
    """Sampled estimate of every target's measure."""

    def __init__(self, e=1, samples=10_000, seed=0):
        self.e = e
        self.samples = samples
        self.seed = seed

    def fit(self, X, y=None):
        e = check_positive_int(self.e, "e")
        samples = check_positive_int(self.samples, "samples")
        s = check_scenario(X)
        self.scenario_ = s
        self.reports_ = {n: sample_measure(s, n, e, samples, self.seed) for n in s.targets}
        return self

    def predict(self, X=None):
        check_is_fitted(self)
        names = check_target_names(self.scenario_, X)
        return np.array([self.reports_[n].estimate for n in names], dtype=object)
