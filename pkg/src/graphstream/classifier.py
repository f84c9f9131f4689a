"""Fully connected softmax classifier trained incrementally with Adam.

A small NumPy network: He-normal weights, Leaky ReLU hidden layers, softmax
output, categorical cross-entropy plus an L2 penalty on the weight matrices.
:meth:`IncrementalMLPClassifier.partial_fit` runs ``epochs`` shuffled
minibatch passes and never re-initialises the weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from graphstream.exceptions import TrainingDivergedError
from graphstream.validation import check_is_fitted


@dataclass
class ClassifierConfig:
    hidden_layers: list[int] = field(default_factory=lambda: [128, 64])
    learning_rate: float = 0.001
    l2: float = 0.0001
    batch_size: int = 128
    epochs: int = 1
    leaky_relu_slope: float = 0.01

    def estimator_params(self) -> dict:
        return dict(
            hidden_layer_sizes=tuple(self.hidden_layers),
            learning_rate=self.learning_rate,
            l2=self.l2,
            batch_size=self.batch_size,
            epochs=self.epochs,
            leaky_relu_slope=self.leaky_relu_slope,
        )


def softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


class IncrementalMLPClassifier(BaseEstimator, ClassifierMixin):
    """Incremental multilayer perceptron.

    Parameters
    ----------
    hidden_layer_sizes : tuple of int
    learning_rate : float
        Adam step size.
    l2 : float
        Coefficient of ``sum(W**2)`` over all weight matrices (biases excluded).
    batch_size : int
        Minibatch size; capped at the size of the training set.
    epochs : int
        Passes over the training set per :meth:`partial_fit` call.
    leaky_relu_slope : float
    beta_1, beta_2, epsilon : float
        Adam constants.
    random_state : int or None
        Seeds both the initialiser and the per-epoch shuffles.
    """

    def __init__(self, hidden_layer_sizes=(128, 64), learning_rate=0.001, l2=0.0001, batch_size=128, epochs=1,
                 leaky_relu_slope=0.01, beta_1=0.9, beta_2=0.999, epsilon=1e-8, random_state=None):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.learning_rate = learning_rate
        self.l2 = l2
        self.batch_size = batch_size
        self.epochs = epochs
        self.leaky_relu_slope = leaky_relu_slope
        self.beta_1 = beta_1
        self.beta_2 = beta_2
        self.epsilon = epsilon
        self.random_state = random_state

    def initialize(self, n_features: int, classes) -> "IncrementalMLPClassifier":
        """Draw fresh He-normal weights and zero biases and Adam moments."""
        sizes = [int(n_features), *map(int, self.hidden_layer_sizes), len(classes)]
        if min(sizes) < 1:
            raise ValueError(f"every layer needs at least one unit, got {sizes}")
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be non-negative")
        if len(classes) < 2:
            raise ValueError("need at least two classes")
        self.classes_ = np.asarray(classes)
        self.n_features_in_ = int(n_features)
        self._rng = np.random.default_rng(self.random_state)
        self.coefs_ = [self._rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out))
                       for fan_in, fan_out in zip(sizes[:-1], sizes[1:])]
        self.intercepts_ = [np.zeros(fan_out) for fan_out in sizes[1:]]
        self._m = [np.zeros_like(p) for p in self._params()]
        self._v = [np.zeros_like(p) for p in self._params()]
        self.n_iter_ = 0
        self.loss_ = None
        return self

    def _params(self):
        return [*self.coefs_, *self.intercepts_]

    def _forward(self, X):
        slope = self.leaky_relu_slope
        activations = [X]
        pre = []
        h = X
        for k, (w, b) in enumerate(zip(self.coefs_, self.intercepts_)):
            z = h @ w + b
            pre.append(z)
            if k < len(self.coefs_) - 1:
                h = np.where(z > 0, z, slope * z)
                activations.append(h)
        return activations, pre

    def decision_function(self, X):
        check_is_fitted(self, "coefs_")
        X = self._check_X(X)
        _, pre = self._forward(X)
        return pre[-1]

    def predict_proba(self, X):
        return softmax(self.decision_function(X))

    def predict(self, X):
        # argmax resolves ties to the lowest class index
        return self.classes_[np.argmax(self.predict_proba(X), axis=1)]

    def _check_X(self, X):
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} features, got {X.shape[1]}")
        return X

    def _encode(self, y):
        y = np.asarray(y)
        lookup = {c: i for i, c in enumerate(self.classes_.tolist())}
        try:
            return np.array([lookup[v] for v in y.tolist()], dtype=int)
        except KeyError as exc:
            raise ValueError(f"unknown class label {exc.args[0]!r}") from None

    def loss_and_gradients(self, X, y):
        """Mean cross-entropy + L2 penalty and its gradient for every parameter.

        Gradients come back in the order of ``coefs_`` followed by ``intercepts_``.
        """
        X = self._check_X(X)
        idx = self._encode(y)
        n = X.shape[0]
        activations, pre = self._forward(X)
        logits = pre[-1]
        shifted = logits - logits.max(axis=1, keepdims=True)
        log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
        penalty = self.l2 * sum(float(np.sum(w * w)) for w in self.coefs_)
        loss = -float(log_probs[np.arange(n), idx].mean()) + penalty

        delta = np.exp(log_probs)
        delta[np.arange(n), idx] -= 1.0
        delta /= n
        grad_w = [None] * len(self.coefs_)
        grad_b = [None] * len(self.coefs_)
        for k in range(len(self.coefs_) - 1, -1, -1):
            grad_w[k] = activations[k].T @ delta + 2.0 * self.l2 * self.coefs_[k]
            grad_b[k] = delta.sum(axis=0)
            if k:
                delta = (delta @ self.coefs_[k].T) * np.where(pre[k - 1] > 0, 1.0, self.leaky_relu_slope)
        return loss, [*grad_w, *grad_b]

    def _adam_step(self, grads):
        self.n_iter_ += 1
        t = self.n_iter_
        lr = self.learning_rate
        b1, b2 = self.beta_1, self.beta_2
        params = self._params()
        for p, g, m, v in zip(params, grads, self._m, self._v):
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * g * g
            m_hat = m / (1.0 - b1**t)
            v_hat = v / (1.0 - b2**t)
            p -= lr * m_hat / (np.sqrt(v_hat) + self.epsilon)

    def train_step(self, X, y) -> float:
        """One incremental update of ``epochs`` shuffled minibatch passes; returns the mean batch loss."""
        check_is_fitted(self, "coefs_")
        X = self._check_X(X)
        y = np.asarray(y)
        n = X.shape[0]
        if n == 0:
            raise ValueError("train_step needs at least one sample")
        batch = min(int(self.batch_size), n)
        losses = []
        for _ in range(int(self.epochs)):
            order = self._rng.permutation(n)
            for start in range(0, n, batch):
                sel = order[start:start + batch]
                loss, grads = self.loss_and_gradients(X[sel], y[sel])
                if not np.isfinite(loss):
                    raise TrainingDivergedError(
                        f"non-finite loss {loss} at Adam step {self.n_iter_ + 1}; "
                        f"max |w| = {max(float(np.abs(w).max()) for w in self.coefs_):.3g}"
                    )
                self._adam_step(grads)
                losses.append(loss)
        for p in self._params():
            if not np.all(np.isfinite(p)):
                raise TrainingDivergedError(f"non-finite parameters after Adam step {self.n_iter_}")
        self.loss_ = float(np.mean(losses))
        return self.loss_

    def partial_fit(self, X, y, classes=None):
        if not hasattr(self, "coefs_"):
            if classes is None:
                raise ValueError("classes must be passed on the first call to partial_fit")
            X = np.asarray(X, dtype=float)
            self.initialize(X.shape[1] if X.ndim == 2 else X.shape[0], classes)
        self.train_step(X, y)
        return self

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        self.initialize(X.shape[1], np.unique(y))
        self.train_step(X, y)
        return self
