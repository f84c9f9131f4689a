"""Loss-based drift detection on 0/1 prediction scores.

Two adjacent windows of scores are kept: the moving window holds the ``W``
most recent scores and the reference window the ``W`` scores before them.
Each window is modelled as a Binomial proportion; drift is flagged when the
moving mean falls strictly below ``mu_ref - beta * sigma_ref``.
"""

from __future__ import annotations

import math
from collections import deque

from sklearn.base import BaseEstimator


def window_stats(queue) -> tuple[float, float]:
    """Mean and Binomial standard deviation ``sqrt(p(1-p)/W)`` of a score window."""
    w = len(queue)
    if w == 0:
        raise ValueError("window_stats needs a non-empty window")
    p = sum(queue) / w
    return p, math.sqrt(p * (1.0 - p) / w)


class BinomialDriftDetector(BaseEstimator):
    """Reference/moving window detector.

    Parameters
    ----------
    window_size : int
        Capacity ``W`` of both windows.
    beta : float
        Sensitivity; larger values need a larger drop before alarming.

    Attributes
    ----------
    alarms_raised_ : int
        Number of alarms since construction (kept across :meth:`reset`).
    """

    def __init__(self, window_size=50, beta=4.5):
        self.window_size = window_size
        self.beta = beta
        self.alarms_raised_ = 0
        self._clear()

    def _clear(self):
        if self.window_size < 1:
            raise ValueError("window_size must be >= 1")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        self.reference_ = deque(maxlen=self.window_size)
        self.moving_ = deque()

    def push_score(self, score) -> "BinomialDriftDetector":
        if score not in (0, 1):
            raise ValueError(f"scores must be 0 or 1, got {score!r}")
        self.moving_.append(int(score))
        if len(self.moving_) > self.window_size:
            self.reference_.append(self.moving_.popleft())
        return self

    @property
    def threshold(self) -> float | None:
        """Current ``mu_ref - beta * sigma_ref``, or ``None`` while the reference window is empty."""
        if not self.reference_:
            return None
        mu, sigma = window_stats(self.reference_)
        return mu - self.beta * sigma

    def check(self) -> bool:
        w = self.window_size
        if len(self.reference_) < w or len(self.moving_) < w:
            return False
        mu_mov, _ = window_stats(self.moving_)
        drift = mu_mov < self.threshold
        if drift:
            self.alarms_raised_ += 1
        return drift

    def update(self, score) -> bool:
        """Push one score and check for drift."""
        return self.push_score(score).check()

    def reset(self) -> "BinomialDriftDetector":
        self._clear()
        return self
