"""PGN export and import with SAN drop moves (``N@e4``)."""

from __future__ import annotations

import re
import textwrap
from pathlib import Path

from ..errors import ParseError
from ..rules.notation import STARTING_FEN, parse_fen, parse_san, to_fen, to_san
from ..rules.position import Color, GameResult
from .records import GameRecord, termination_of

_RESULTS = {r.value: r for r in GameResult}
_TAG_RE = re.compile(r'^\[(\w+)\s+"((?:[^"\\]|\\.)*)"\]\s*$')
_MOVE_NUMBER_RE = re.compile(r"^\d+\.+$")


def game_to_pgn(game: GameRecord, headers: dict[str, str] | None = None) -> str:
    tags = {"Event": "?", "Site": "?", "Date": "????.??.??", "Round": "?",
            "White": "?", "Black": "?"}
    tags.update(game.tags)
    tags.update(headers or {})
    tags["Result"] = game.result.value
    tags["Variant"] = "Crazyhouse"
    if game.start_fen != STARTING_FEN:
        tags["FEN"] = game.start_fen
        tags["SetUp"] = "1"
    if game.opening:
        tags.setdefault("Opening", game.opening)
    if game.termination != "unterminated":
        tags.setdefault("Termination", game.termination)

    tokens = []
    pos = game.start()
    for move in game.moves:
        if pos.turn == Color.WHITE:
            tokens.append(f"{pos.fullmove_number}.")
        elif not tokens:
            tokens.append(f"{pos.fullmove_number}...")
        tokens.append(to_san(pos, move))
        pos = pos.play(move)
    tokens.append(game.result.value)
    header = "".join(f'[{k} "{v}"]\n' for k, v in tags.items())
    return header + "\n" + textwrap.fill(" ".join(tokens), 79) + "\n"


def export_pgn(games, path) -> None:
    Path(path).write_text("\n".join(game_to_pgn(g) for g in games), encoding="utf-8")


def _strip_comments(text: str) -> str:
    text = re.sub(r"\{[^}]*\}", " ", text)
    text = re.sub(r";[^\n]*", " ", text)
    # drop variations, innermost first
    while True:
        stripped = re.sub(r"\([^()]*\)", " ", text)
        if stripped == text:
            return text
        text = stripped


def parse_pgn(text: str) -> list[GameRecord]:
    """Parse every game in ``text``, replaying the SAN to validate it."""
    games = []
    tags: dict[str, str] = {}
    movetext: list[str] = []
    start_line = 1

    def flush():
        if tags or any(s.strip() for s in movetext):
            games.append(_build_game(tags, "\n".join(movetext), start_line))

    in_moves = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        m = _TAG_RE.match(stripped)
        if m:
            if in_moves:
                flush()
                tags, movetext, in_moves = {}, [], False
            if not tags:
                start_line = lineno
            tags[m.group(1)] = m.group(2)
        elif stripped:
            in_moves = True
            movetext.append(stripped)
    flush()
    return games


def _build_game(tags: dict[str, str], movetext: str, line: int) -> GameRecord:
    start_fen = tags.get("FEN", STARTING_FEN)
    try:
        pos = game_start = parse_fen(start_fen)
    except ParseError as exc:
        raise ParseError(f"bad FEN tag: {exc}", line) from None
    moves = []
    result = None
    for token in _strip_comments(movetext).split():
        if _MOVE_NUMBER_RE.match(token) or token.startswith("$"):
            continue
        if token in _RESULTS or token == "*":
            result = _RESULTS.get(token)
            break
        token = re.sub(r"^\d+\.+", "", token)
        try:
            move = parse_san(pos, token)
        except ParseError as exc:
            raise ParseError(f"move {len(moves) + 1} {token!r}: {exc}", line) from None
        moves.append(move)
        pos = pos.play(move)
    if result is None:
        result = _RESULTS.get(tags.get("Result", ""))
    if result is None:
        result = pos.game_result() or GameResult.DRAW
    termination = termination_of(pos)
    if termination == "unterminated":
        termination = tags.get("Termination", termination)
    return GameRecord(moves, result, opening=tags.get("Opening", ""),
                      start_fen=to_fen(game_start) if "FEN" in tags else STARTING_FEN,
                      termination=termination, tags=dict(tags))


def read_pgn(path) -> list[GameRecord]:
    return parse_pgn(Path(path).read_text(encoding="utf-8"))
