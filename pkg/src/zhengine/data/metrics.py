"""Evaluation metrics over training examples: policy accuracy and losses."""

from __future__ import annotations

import random
from collections.abc import Sequence

import numpy as np

from ..encoding import legal_move_mask
from ..nn.evaluators import Evaluator
from ..nn.losses import LOG_FLOOR, mse, poisson_nll
from .dataset import TrainingExample
from .selfplay import game_length_stats

__all__ = ["evaluate_losses", "evaluate_policy_accuracy", "game_length_stats", "masked_top1"]


def masked_top1(policy: np.ndarray, mask: np.ndarray, rng: random.Random | None = None) -> int:
    """Highest-probability legal action; ties go to a random candidate when
    ``rng`` is given, else to the lowest index."""
    scores = np.where(mask, np.asarray(policy, dtype=np.float64), -np.inf)
    best = np.flatnonzero(scores == scores.max())
    if rng is None or len(best) == 1:
        return int(best[0])
    return int(best[rng.randrange(len(best))])


def evaluate_policy_accuracy(evaluator: Evaluator, dataset: Sequence[TrainingExample],
                             seed: int = 0) -> float:
    """Fraction of examples whose masked top-1 action equals the recorded one.

    Exact ties are broken uniformly at random (seeded), so an evaluator with
    a flat policy scores 1/L in expectation rather than favouring low indices.
    """
    if not dataset:
        raise ValueError("dataset is empty")
    rng = random.Random(seed)
    hits = 0
    for ex in dataset:
        pos = ex.get_position()
        out = evaluator.evaluate(pos)
        if masked_top1(out.policy, legal_move_mask(pos), rng) == ex.policy.index:
            hits += 1
    return hits / len(dataset)


def evaluate_losses(evaluator: Evaluator,
                    dataset: Sequence[TrainingExample]) -> tuple[float, float]:
    """Mean Poisson policy loss and mean squared value error.

    Predictions are floored at ``LOG_FLOOR`` before the Poisson loss so that
    one-hot outputs stay finite.
    """
    if not dataset:
        raise ValueError("dataset is empty")
    policy_total = value_total = 0.0
    for ex in dataset:
        out = evaluator.evaluate(ex.get_position())
        pred = np.maximum(np.asarray(out.policy, dtype=np.float64), LOG_FLOOR)
        policy_total += poisson_nll(pred, ex.policy)
        value_total += mse(out.value, ex.value)
    return policy_total / len(dataset), value_total / len(dataset)
