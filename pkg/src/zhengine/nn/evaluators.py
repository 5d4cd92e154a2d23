"""Position evaluators used by search, play and metrics."""

from __future__ import annotations

import math
from typing import Protocol

import numpy as np

from ..encoding import N_ACTIONS, encode_position, legal_move_mask
from ..rules.position import Position
from .network import EvalResult, NetworkConfig, NetworkWeights, forward_batch


class Evaluator(Protocol):
    def evaluate(self, pos: Position) -> EvalResult: ...


def _uniform_over_legal(pos: Position) -> np.ndarray:
    mask = legal_move_mask(pos)
    n = int(mask.sum())
    if n == 0:
        return np.full(N_ACTIONS, 1.0 / N_ACTIONS)
    return mask / n


class UniformEvaluator:
    """Uniform policy over the legal moves and an even value."""

    def evaluate(self, pos: Position) -> EvalResult:
        return EvalResult(_uniform_over_legal(pos), 0.5)


# pawn, knight, bishop, rook, queen; kings carry no material
PIECE_VALUES = (1.0, 3.0, 3.0, 5.0, 9.0, 0.0)


def material_balance(pos: Position) -> float:
    """Board plus pocket material of the side to move minus the opponent's."""
    us = int(pos.turn)
    score = 0.0
    for pc in pos.board:
        if pc >= 0:
            v = PIECE_VALUES[pc % 6]
            score += v if pc // 6 == us else -v
    for kind in range(5):
        score += PIECE_VALUES[kind] * (pos.pockets[us][kind] - pos.pockets[1 - us][kind])
    return score


class MaterialEvaluator:
    """Logistic of the material balance with a uniform legal policy."""

    def __init__(self, scale: float = 4.0):
        self.scale = scale

    def evaluate(self, pos: Position) -> EvalResult:
        value = 1.0 / (1.0 + math.exp(-material_balance(pos) / self.scale))
        return EvalResult(_uniform_over_legal(pos), value)


class NetworkEvaluator:
    def __init__(self, config: NetworkConfig, weights: NetworkWeights):
        weights.validate(config)
        self.config = config
        self.weights = NetworkWeights({k: v.astype(np.float64)
                                       for k, v in weights.tensors.items()})

    @classmethod
    def from_file(cls, path) -> NetworkEvaluator:
        from .weights_io import load_weights

        return cls(*load_weights(path))

    def evaluate(self, pos: Position) -> EvalResult:
        return self.evaluate_tensors(encode_position(pos)[None])[0]

    def evaluate_tensors(self, tensors: np.ndarray) -> list[EvalResult]:
        policy, value = forward_batch(self.config, self.weights, tensors)
        return [EvalResult(p, float(v)) for p, v in zip(policy, value)]
