from __future__ import annotations

from dataclasses import dataclass, field

from ..rules.notation import STARTING_FEN, parse_fen
from ..rules.position import Color, GameResult, Move, Position


@dataclass
class GameRecord:
    """A finished game: starting point, moves in order, and the result.

    ``termination`` is ``"checkmate"``, ``"stalemate"``, ``"repetition"``,
    ``"adjudicated"`` (ply cap reached) or ``"unterminated"`` for imported
    games that stop before a rules ending (e.g. resignation).
    """

    moves: list[Move]
    result: GameResult
    opening: str = ""
    start_fen: str = STARTING_FEN
    termination: str = "unterminated"
    tags: dict[str, str] = field(default_factory=dict)

    def start(self) -> Position:
        return parse_fen(self.start_fen)

    def positions(self):
        """Yield ``(ply, side, position, move)`` for each move; ply starts at 1."""
        pos = self.start()
        for ply, move in enumerate(self.moves, start=1):
            side = pos.turn
            yield ply, side, pos, move
            pos = pos.play(move)

    def final_position(self) -> Position:
        pos = self.start()
        for move in self.moves:
            pos = pos.play(move)
        return pos

    def metadata(self) -> list[tuple[int, Color]]:
        return [(ply, side) for ply, side, _, _ in self.positions()]

    def __len__(self) -> int:
        return len(self.moves)


def termination_of(pos: Position) -> str:
    if pos.is_checkmate():
        return "checkmate"
    if pos.is_stalemate():
        return "stalemate"
    if pos.repetition_count() >= 2:
        return "repetition"
    return "unterminated"
