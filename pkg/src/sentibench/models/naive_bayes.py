"""Multinomial naive Bayes over non-negative term weights.

Works on counts (bag-of-words) and on fractional weights (tf-idf) alike:
class-conditional term totals are Laplace-smoothed and normalized, so
the likelihood of term t in class c is

    (sum of t's weights in c + alpha) / (sum of all weights in c + alpha * V).

Posteriors come from the joint log-likelihood normalized with
log-sum-exp, so predict_scores returns true probabilities.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from ..errors import TrainingError
from .base import BaseClassifier, check_X_y


class MultinomialNaiveBayes(BaseClassifier):
    variant = "mnb"

    def __init__(self, alpha: float = 1.0, seed: int = 0):
        super().__init__()
        if alpha <= 0:
            raise ValueError(f"alpha must be strictly positive, got {alpha}")
        self.alpha = alpha
        self.seed = seed  # unused: training is deterministic; kept for API symmetry

    def fit(self, X, y) -> "MultinomialNaiveBayes":
        csr, y_idx = check_X_y(X, y)
        if csr.nnz and csr.data.min() < 0:
            raise TrainingError("multinomial naive bayes requires non-negative weights")

        n_classes = 3
        n_samples, n_features = csr.shape
        class_counts = np.bincount(y_idx, minlength=n_classes).astype(np.float64)

        term_totals = np.zeros((n_classes, n_features))
        for c in range(n_classes):
            members = np.flatnonzero(y_idx == c)
            if members.size:
                term_totals[c] = np.asarray(csr[members].sum(axis=0)).ravel()

        with np.errstate(divide="ignore"):
            self.class_log_prior_ = np.log(class_counts / n_samples)
        smoothed = term_totals + self.alpha
        self.feature_log_likelihood_ = np.log(
            smoothed / smoothed.sum(axis=1, keepdims=True)
        )
        self.n_features_ = n_features
        return self

    def _joint_log_likelihood(self, csr) -> np.ndarray:
        return csr @ self.feature_log_likelihood_.T + self.class_log_prior_

    def _score_matrix(self, csr) -> np.ndarray:
        jll = self._joint_log_likelihood(csr)
        return np.exp(jll - logsumexp(jll, axis=1, keepdims=True))
