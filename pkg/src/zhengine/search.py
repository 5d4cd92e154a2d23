"""Monte Carlo tree search with a prior-weighted PUCT variant.

Child score::

    V = (c * (prior + noise) + mean_score) / 2 + gamma * sqrt(N_parent) / (1 + n_child)

where ``c = 1 / max(sibling priors)``, ``mean_score = win_sum / max(1, n_child)``
and ``noise`` is uniform on ``[-alpha / (x * beta), alpha / (x * beta)]`` for
the game's move number ``x`` at the root.

A node's ``win_sum`` is kept from the point of view of the player who made the
move leading to it, so parents pick the child with the highest score.
Checkmate leaves score ``mate_score`` (1.5) for the mating side, draws 0.5,
other leaves ``1 - evaluator value``. One ply up, a score ``v`` becomes
``max(0, 1 - v)``.
"""

from __future__ import annotations

import math
import random
import threading
import time
from dataclasses import dataclass, field
from typing import Callable

from .encoding import legal_move_indices
from .errors import NoLegalMoves
from .nn.evaluators import Evaluator
from .rules.position import GameResult, Move, Position


@dataclass(frozen=True)
class SearchParams:
    alpha: float = 0.3
    beta: float = 6.0
    gamma: float = 0.5
    mate_score: float = 1.5
    playout_depth: int = 8
    playouts: int | None = 400
    movetime_ms: float | None = None
    seed: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "mate_score"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.alpha < 0 or self.gamma < 0:
            raise ValueError("alpha and gamma must be non-negative")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.playout_depth < 0:
            raise ValueError("playout_depth must be non-negative")
        if self.playouts is None and self.movetime_ms is None:
            raise ValueError("need a playout count or a movetime budget")
        if self.playouts is not None and self.playouts < 1:
            raise ValueError("playouts must be at least 1")


class SearchNode:
    __slots__ = ("move", "index", "prior", "visits", "win_sum", "children", "expanded",
                 "position", "terminal_value", "eval_value")

    def __init__(self, move: Move | None = None, index: int = -1, prior: float = 1.0,
                 position: Position | None = None):
        self.move = move
        self.index = index
        self.prior = prior
        self.visits = 0
        self.win_sum = 0.0
        self.children: list[SearchNode] = []
        self.expanded = False
        self.position = position
        self.terminal_value: float | None = None
        self.eval_value = 0.5

    @property
    def mean_score(self) -> float:
        return self.win_sum / max(1, self.visits)

    @property
    def is_terminal(self) -> bool:
        return self.terminal_value is not None

    def __repr__(self):
        return (f"SearchNode({self.move}, prior={self.prior:.3f}, visits={self.visits}, "
                f"win_sum={self.win_sum:.3f})")


@dataclass
class SearchResult:
    best_move: Move
    visit_distribution: dict[Move, int]
    root_value: float
    playouts: int
    root: SearchNode = field(repr=False)


def noise(params: SearchParams, x: int, rng: random.Random) -> float:
    bound = params.alpha / (x * params.beta)
    if bound == 0.0:
        return 0.0
    return rng.uniform(-bound, bound)


def node_score(child: SearchNode, parent_visits: int, max_sibling_prior: float,
               params: SearchParams, x: int, rng: random.Random) -> float:
    c = 1.0 / max_sibling_prior
    exploit = (c * (child.prior + noise(params, x, rng)) + child.mean_score) / 2.0
    return exploit + params.gamma * math.sqrt(parent_visits) / (1 + child.visits)


def _pick_child(node: SearchNode, params: SearchParams, x: int, rng: random.Random) -> SearchNode:
    children = node.children
    max_prior = max(ch.prior for ch in children)
    if max_prior <= 0.0:
        max_prior = 1.0
    best, best_score = children[0], -math.inf
    for ch in children:
        s = node_score(ch, node.visits, max_prior, params, x, rng)
        if s > best_score:
            best, best_score = ch, s
    return best


def select_path(root: SearchNode, params: SearchParams, x: int,
                rng: random.Random) -> list[SearchNode]:
    path = [root]
    node = root
    while node.expanded and not node.is_terminal and len(path) - 1 < params.playout_depth:
        child = _pick_child(node, params, x, rng)
        if child.position is None:
            child.position = node.position.successor(child.move)
        path.append(child)
        node = child
    return path


def expand_and_evaluate(node: SearchNode, evaluator: Evaluator, params: SearchParams) -> float:
    """Expand ``node`` and return its score for the player who moved into it."""
    pos = node.position
    result = pos.game_result()
    if result is not None:
        if result == GameResult.DRAW:
            node.terminal_value = 0.5
        else:
            # the side to move is mated; credit the side that delivered it
            node.terminal_value = params.mate_score
        node.expanded = True
        return node.terminal_value
    ev = evaluator.evaluate(pos)
    legal = legal_move_indices(pos)
    priors = [max(float(ev.policy[i]), 0.0) for i, _ in legal]
    total = sum(priors)
    if total > 0.0:
        priors = [p / total for p in priors]
    else:
        priors = [1.0 / len(legal)] * len(legal)
    node.children = [SearchNode(m, i, p) for (i, m), p in zip(legal, priors)]
    node.expanded = True
    node.eval_value = 1.0 - float(ev.value)
    return node.eval_value


def backpropagate(path: list[SearchNode], leaf_value: float) -> None:
    v = leaf_value
    for node in reversed(path):
        node.visits += 1
        node.win_sum += v
        v = max(0.0, 1.0 - v)


def _playout(root: SearchNode, evaluator: Evaluator, params: SearchParams, x: int,
             rng: random.Random) -> tuple[list[SearchNode], float]:
    path = select_path(root, params, x, rng)
    leaf = path[-1]
    if leaf.is_terminal:
        value = leaf.terminal_value
    elif not leaf.expanded:
        value = expand_and_evaluate(leaf, evaluator, params)
    else:
        value = leaf.eval_value
    backpropagate(path, value)
    return path, value


def _best_child(root: SearchNode) -> SearchNode:
    return max(root.children, key=lambda ch: (ch.visits, ch.mean_score, -ch.index))


def search(pos: Position, evaluator: Evaluator, params: SearchParams,
           stop: threading.Event | None = None,
           trace: Callable[[str], None] | None = None) -> SearchResult:
    """Run playouts from ``pos`` until the budget is spent or ``stop`` is set.

    At least one playout always runs. The best move is the most visited child,
    ties going to the higher mean score, then the lower action index.
    """
    if pos.game_result() is not None:
        raise NoLegalMoves("search needs a non-terminal position")
    rng = random.Random(params.seed)
    x = max(1, pos.fullmove_number)
    root = SearchNode(position=pos)
    expand_and_evaluate(root, evaluator, params)
    deadline = None
    if params.movetime_ms is not None:
        deadline = time.monotonic() + params.movetime_ms / 1000.0
    n = 0
    while True:
        path, value = _playout(root, evaluator, params, x, rng)
        n += 1
        if trace is not None:
            line = " ".join(str(node.move) for node in path[1:]) or "(root)"
            trace(f"playout {n} {line} value {value:.4f}")
        if params.playouts is not None and n >= params.playouts:
            break
        if deadline is not None and time.monotonic() >= deadline:
            break
        if stop is not None and stop.is_set():
            break
    best = _best_child(root)
    visits = {ch.move: ch.visits for ch in root.children}
    total = sum(ch.visits for ch in root.children)
    root_value = sum(ch.win_sum for ch in root.children) / total if total else 0.5
    return SearchResult(best.move, visits, root_value, n, root)


def check_invariants(node: SearchNode, mate_score: float = 1.5, is_root: bool = True) -> None:
    """Assert visit conservation and score bounds throughout a tree."""
    child_visits = sum(ch.visits for ch in node.children)
    own = 0 if is_root else (1 if node.visits else 0)
    if node.is_terminal:
        assert not node.children
    elif node.children:
        # a non-root node takes one playout to expand; later depth-cutoff
        # playouts also stop there without reaching a child
        assert node.visits >= child_visits + own, node
    assert node.win_sum <= mate_score * node.visits + 1e-9, node
    assert 0.0 <= node.prior <= 1.0 + 1e-12, node
    for ch in node.children:
        check_invariants(ch, mate_score, is_root=False)
