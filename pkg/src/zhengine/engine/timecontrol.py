"""Clock handling: per-move time budget, playout depth by clock, move choice."""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace

import numpy as np

from ..encoding import legal_move_indices
from ..errors import NoLegalMoves
from ..nn.evaluators import Evaluator
from ..rules.position import Color, Move, Position
from ..search import SearchParams, search

OPENING_PLIES = 15
OPENING_FRACTION = 0.10
LATER_FRACTION = 2.0 / 15.0
SAFETY_MARGIN_MS = 50.0

# (minimum seconds on the clock, playout depth); a boundary value falls in
# the higher-time bucket
DEPTH_SCHEDULE = ((750, 20), (300, 15), (120, 12), (60, 10), (10, 4))


@dataclass(frozen=True)
class ClockState:
    remaining_ms: tuple[float, float]
    increment_ms: tuple[float, float] = (0.0, 0.0)
    ply: int = 1
    side: Color = Color.WHITE

    def __post_init__(self):
        if min(self.remaining_ms) < 0:
            raise ValueError("remaining time cannot be negative")

    @classmethod
    def for_position(cls, pos: Position, remaining_ms, increment_ms=(0.0, 0.0)) -> ClockState:
        ply = 2 * (pos.fullmove_number - 1) + (1 if pos.turn == Color.WHITE else 2)
        return cls(tuple(remaining_ms), tuple(increment_ms), ply, pos.turn)

    @property
    def own_ms(self) -> float:
        return self.remaining_ms[int(self.side)]


def time_allocation(clock: ClockState, margin_ms: float = SAFETY_MARGIN_MS) -> float:
    """Milliseconds to spend on this move: 10% of the remaining time for the
    first fifteen plies, 2/15 afterwards, less a safety margin."""
    fraction = OPENING_FRACTION if clock.ply <= OPENING_PLIES else LATER_FRACTION
    return max(0.0, fraction * clock.own_ms - margin_ms)


def depth_for_time(remaining_seconds: float) -> int:
    for threshold, depth in DEPTH_SCHEDULE:
        if remaining_seconds >= threshold:
            return depth
    return 0


def top_policy_move(pos: Position, evaluator: Evaluator) -> Move:
    """The legal move with the highest policy weight; ties go to the lowest index."""
    legal = legal_move_indices(pos)
    if not legal:
        raise NoLegalMoves("no legal moves")
    policy = evaluator.evaluate(pos).policy
    weights = np.array([policy[i] for i, _ in legal])
    return legal[int(np.argmax(weights))][1]


def choose_move(pos: Position, clock: ClockState, evaluator: Evaluator, params: SearchParams,
                stop: threading.Event | None = None) -> Move:
    if pos.game_result() is not None:
        raise NoLegalMoves("position is terminal")
    depth = depth_for_time(clock.own_ms / 1000.0)
    if depth == 0:
        return top_policy_move(pos, evaluator)
    budget = max(1.0, time_allocation(clock))
    run = replace(params, playout_depth=depth, movetime_ms=budget, playouts=None)
    return search(pos, evaluator, run, stop=stop).best_move
