"""Self-play game generation from book openings."""

from __future__ import annotations

import random
from dataclasses import replace

from ..engine.timecontrol import top_policy_move
from ..nn.evaluators import Evaluator
from ..rules.notation import parse_uci_move
from ..rules.position import GameResult, initial_position
from ..search import SearchParams, search
from .book import OpeningBook
from .records import GameRecord, termination_of

DEFAULT_MAX_PLIES = 300


def play_game(evaluator: Evaluator, params: SearchParams, opening: list[str],
              rng: random.Random, max_plies: int = DEFAULT_MAX_PLIES) -> GameRecord:
    pos = initial_position()
    moves = []
    for text in opening:
        move = parse_uci_move(pos, text)
        moves.append(move)
        pos = pos.play(move)
    while True:
        result = pos.game_result()
        if result is not None:
            return GameRecord(moves, result, " ".join(opening), termination=termination_of(pos))
        if len(moves) >= max_plies:
            return GameRecord(moves, GameResult.DRAW, " ".join(opening), termination="adjudicated")
        if params.playout_depth == 0:
            move = top_policy_move(pos, evaluator)
        else:
            run = replace(params, seed=rng.randrange(2 ** 31), movetime_ms=None)
            move = search(pos, evaluator, run).best_move
        moves.append(move)
        pos = pos.play(move)


def selfplay(n_games: int, evaluator: Evaluator, params: SearchParams,
             book: OpeningBook | None = None, seed: int = 0,
             max_plies: int = DEFAULT_MAX_PLIES) -> list[GameRecord]:
    """Play ``n_games`` games; game ``i`` draws its opening and search seeds
    from ``random.Random(seed + i)``.

    Every move is searched with ``params.playouts`` playouts (a fixed budget,
    not a clock). Games reaching ``max_plies`` are adjudicated drawn.
    """
    if n_games < 1:
        raise ValueError("n_games must be at least 1")
    if max_plies < 1:
        raise ValueError("max_plies must be at least 1")
    if params.playouts is None:
        raise ValueError("self-play needs a fixed playout count per move")
    games = []
    for i in range(n_games):
        rng = random.Random(seed + i)
        opening = rng.choice(book.lines) if book is not None and book.lines else []
        games.append(play_game(evaluator, params, opening, rng, max_plies))
    return games


def game_length_stats(games: list[GameRecord]) -> dict[str, float]:
    lengths = sorted(len(g) for g in games)
    n = len(lengths)
    if n == 0:
        return {"games": 0, "mean_plies": 0.0, "median_plies": 0.0, "min_plies": 0, "max_plies": 0}
    mid = n // 2
    median = lengths[mid] if n % 2 else (lengths[mid - 1] + lengths[mid]) / 2
    return {"games": n, "mean_plies": sum(lengths) / n, "median_plies": float(median),
            "min_plies": lengths[0], "max_plies": lengths[-1]}
