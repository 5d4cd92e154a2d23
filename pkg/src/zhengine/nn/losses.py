"""Policy and value losses, used here as evaluation metrics."""

from __future__ import annotations

import numpy as np

from ..encoding import PolicyTarget
from ..errors import DomainError

LOG_FLOOR = 1e-9


def poisson_nll(pred, target: PolicyTarget) -> float:
    """Mean over entries of ``pred - t * ln(pred)`` for the scaled one-hot target ``t``."""
    pred = np.asarray(pred, dtype=np.float64)
    if not np.all(pred > 0):
        raise DomainError("Poisson NLL needs strictly positive predictions")
    t = target.dense()
    if t.shape != pred.shape:
        raise DomainError(f"prediction has shape {pred.shape}, target {t.shape}")
    return float(np.mean(pred - t * np.log(np.maximum(pred, LOG_FLOOR))))


def mse(pred_value: float, target: float) -> float:
    return (float(pred_value) - float(target)) ** 2
