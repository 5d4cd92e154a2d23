"""Opening books: one line per opening, space-separated UCI moves, ``#`` comments."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import ParseError
from ..rules.notation import parse_uci_move
from ..rules.position import initial_position


@dataclass
class OpeningBook:
    lines: list[list[str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.lines)


def parse_opening_book(text: str) -> OpeningBook:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        moves = content.split()
        pos = initial_position()
        for ply, move in enumerate(moves, start=1):
            try:
                pos = pos.play(parse_uci_move(pos, move))
            except ParseError:
                raise ParseError(f"line {lineno}: illegal move {move!r} at ply {ply}", lineno) from None
        lines.append(moves)
    return OpeningBook(lines)


def load_opening_book(path) -> OpeningBook:
    return parse_opening_book(Path(path).read_text(encoding="utf-8"))


def sample_book() -> OpeningBook:
    """The twenty-line book shipped with the package."""
    text = resources.files("zhengine.data").joinpath("openings.txt").read_text(encoding="utf-8")
    return parse_opening_book(text)
