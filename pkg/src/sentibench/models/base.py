"""Shared classifier interface and input-validation helpers.

Classifiers are fitted once and immutable afterwards: predict and
predict_scores are pure functions of (fitted state, input vectors).
Score matrices keep columns in the fixed polarity order, and argmax
resolves ties toward the earlier class, which pins the documented
tie-break [negative, neutral, positive].
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy import sparse

from ..base import ParamsMixin, check_fitted
from ..corpus import POLARITIES, POLARITY_INDEX
from ..errors import DimensionMismatchError, TrainingError
from ..vectorize import SparseVector, vectors_to_csr


def check_vectors(X, dims: int | None = None):
    """Coerce a vector collection to CSR, verifying dimensionality.

    Accepts a sequence of SparseVector or any scipy sparse / dense 2-d
    matrix. When ``dims`` is given the width must match exactly.
    """
    if sparse.issparse(X):
        csr = X.tocsr()
    elif isinstance(X, np.ndarray):
        csr = sparse.csr_matrix(np.atleast_2d(X))
    else:
        vectors: Sequence[SparseVector] = X
        csr = vectors_to_csr(vectors, dims=dims if dims is not None else None)
    if dims is not None and csr.shape[1] != dims:
        raise DimensionMismatchError(
            f"input has {csr.shape[1]} dims, model expects {dims}"
        )
    return csr


def check_X_y(X, y):
    """Validate a training set: equal non-zero lengths, known labels.

    Returns (csr matrix, int class indices).
    """
    labels = list(y)
    if len(labels) == 0:
        raise TrainingError("training data is empty")
    csr = check_vectors(X)
    if csr.shape[0] != len(labels):
        raise TrainingError(
            f"{csr.shape[0]} vectors but {len(labels)} labels"
        )
    try:
        y_idx = np.array([POLARITY_INDEX[label] for label in labels], dtype=np.int64)
    except KeyError as exc:
        raise TrainingError(f"unknown label {exc.args[0]!r}") from None
    return csr, y_idx


class LabeledMatrix:
    """Validated (vectors, labels) pair with uniform dimensionality."""

    def __init__(self, vectors: Sequence[SparseVector], labels: Sequence[str]):
        self.X, self.y_idx = check_X_y(vectors, labels)
        self.labels = list(labels)

    @property
    def dims(self) -> int:
        return self.X.shape[1]

    def __len__(self) -> int:
        return self.X.shape[0]


class BaseClassifier(ParamsMixin):
    """fit / predict / predict_scores over polarity classes."""

    variant = "base"

    def __init__(self):
        self.n_features_: int | None = None

    @property
    def dims(self) -> int:
        check_fitted(self, "n_features_")
        return self.n_features_

    def fit(self, X, y):
        raise NotImplementedError

    def _score_matrix(self, csr) -> np.ndarray:
        """(n_samples, 3) class scores; semantics depend on the variant."""
        raise NotImplementedError

    def predict(self, X) -> list[str]:
        csr = check_vectors(X, dims=self.dims)
        scores = self._score_matrix(csr)
        return [POLARITIES[i] for i in np.argmax(scores, axis=1)]

    def predict_one(self, vector: SparseVector) -> str:
        return self.predict([vector])[0]

    def predict_scores(self, X) -> list[dict[str, float]]:
        csr = check_vectors(X, dims=self.dims)
        scores = self._score_matrix(csr)
        return [
            {label: float(row[i]) for i, label in enumerate(POLARITIES)}
            for row in scores
        ]

    def predict_scores_one(self, vector: SparseVector) -> dict[str, float]:
        return self.predict_scores([vector])[0]
