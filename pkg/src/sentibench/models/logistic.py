"""Multinomial (softmax) logistic regression via mini-batch SGD.

Weights start at zero, so an untrained model scores every class at
exactly 1/3. The objective is the mean cross-entropy plus an L2 penalty
on the weights (biases are not penalized). Shuffling is seeded, which
makes training fully reproducible.
"""

from __future__ import annotations

import numpy as np

from ..errors import TrainingError
from .base import BaseClassifier, check_X_y

_STREAM = 1  # keeps this model's RNG stream distinct from other variants


def softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=1, keepdims=True)


def softmax_loss_and_grad(W, b, X, y_idx, l2):
    """Regularized cross-entropy and its analytic gradient.

    X is a scipy CSR batch; returns (loss, grad_W, grad_b) where the loss
    is mean cross-entropy + 0.5 * l2 * ||W||^2.
    """
    n = X.shape[0]
    probs = softmax(X @ W.T + b)
    picked = probs[np.arange(n), y_idx]
    with np.errstate(over="ignore"):  # inf here is caught as divergence upstream
        penalty = 0.5 * l2 * float((W * W).sum())
    loss = -np.mean(np.log(np.maximum(picked, 1e-300))) + penalty
    delta = probs
    delta[np.arange(n), y_idx] -= 1.0
    grad_W = (X.T @ delta).T / n + l2 * W
    grad_b = delta.mean(axis=0)
    return loss, grad_W, grad_b


class SoftmaxRegression(BaseClassifier):
    variant = "logreg"

    def __init__(
        self,
        learning_rate: float = 0.1,
        epochs: int = 50,
        batch_size: int = 64,
        l2: float = 1e-4,
        seed: int = 0,
    ):
        super().__init__()
        if learning_rate <= 0:
            raise ValueError("learning_rate must be strictly positive")
        if epochs < 1 or batch_size < 1:
            raise ValueError("epochs and batch_size must be >= 1")
        if l2 < 0:
            raise ValueError("l2 must be non-negative")
        self.learning_rate = learning_rate
        self.epochs = epochs
        self.batch_size = batch_size
        self.l2 = l2
        self.seed = seed

    def fit(self, X, y) -> "SoftmaxRegression":
        csr, y_idx = check_X_y(X, y)
        n, dims = csr.shape
        W = np.zeros((3, dims))
        b = np.zeros(3)
        rng = np.random.default_rng([self.seed, _STREAM])

        self.epoch_losses_: list[float] = []
        for _ in range(self.epochs):
            order = rng.permutation(n)
            batch_losses = []
            for start in range(0, n, self.batch_size):
                batch = order[start : start + self.batch_size]
                loss, grad_W, grad_b = softmax_loss_and_grad(
                    W, b, csr[batch], y_idx[batch], self.l2
                )
                if not np.isfinite(loss):
                    raise TrainingError(
                        "non-finite training loss; lower the learning rate"
                    )
                W -= self.learning_rate * grad_W
                b -= self.learning_rate * grad_b
                batch_losses.append(loss)
            self.epoch_losses_.append(float(np.mean(batch_losses)))

        self.weights_ = W
        self.bias_ = b
        self.n_features_ = dims
        return self

    def _score_matrix(self, csr) -> np.ndarray:
        return softmax(csr @ self.weights_.T + self.bias_)
