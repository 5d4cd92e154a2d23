"""Crazyhouse FEN, SAN and UCI move text."""

from __future__ import annotations

import re

from ..errors import AmbiguousMove, IllegalMove, ParseError
from .position import (
    BLACK_KINGSIDE, BLACK_QUEENSIDE, EMPTY, FILE_NAMES, KING, PAWN, WHITE_KINGSIDE,
    WHITE_QUEENSIDE, BoardMove, Color, Drop, Move, PieceKind, Position, _apply,
    parse_square, square_file, square_name, square_rank,
)

STARTING_FEN = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR[] w KQkq - 0 1"

_LETTER_KIND = {"p": PieceKind.PAWN, "n": PieceKind.KNIGHT, "b": PieceKind.BISHOP,
                "r": PieceKind.ROOK, "q": PieceKind.QUEEN, "k": PieceKind.KING}
_CASTLE_CHARS = (("K", WHITE_KINGSIDE), ("Q", WHITE_QUEENSIDE),
                 ("k", BLACK_KINGSIDE), ("q", BLACK_QUEENSIDE))


# -- FEN -------------------------------------------------------------------

def parse_fen(text: str) -> Position:
    """Parse Crazyhouse FEN: ``<board>[<pocket>] <turn> <castling> <ep> [<half> <full>]``.

    Pocket letters are uppercase for White; a ``~`` after a piece letter marks
    it as promoted. The bracketed pocket may be omitted for empty pockets.
    """
    text = text.strip()
    fields = text.split()
    if len(fields) not in (4, 6):
        raise ParseError("FEN needs 4 or 6 space-separated fields", 0)
    board_field = fields[0]
    pocket_field = ""
    bracket = board_field.find("[")
    if bracket >= 0:
        if not board_field.endswith("]"):
            raise ParseError("unterminated pocket", len(board_field) - 1)
        pocket_field = board_field[bracket + 1:-1]
        board_field = board_field[:bracket]

    board = [EMPTY] * 64
    promoted = 0
    rows = board_field.split("/")
    if len(rows) != 8:
        raise ParseError("board must have 8 ranks", 0)
    offset = 0
    for i, row in enumerate(rows):
        rank = 7 - i
        file = 0
        last = None
        for ch in row:
            if ch.isdigit():
                file += int(ch)
                last = None
            elif ch == "~":
                if last is None:
                    raise ParseError("'~' must follow a piece letter", offset)
                promoted |= 1 << last
                last = None
            elif ch.lower() in _LETTER_KIND:
                if file > 7:
                    raise ParseError("rank overflows 8 files", offset)
                color = 0 if ch.isupper() else 1
                sq = rank * 8 + file
                board[sq] = color * 6 + _LETTER_KIND[ch.lower()]
                last = sq
                file += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", offset)
            offset += 1
        if file != 8:
            raise ParseError(f"rank {rank + 1} does not have 8 files", offset)
        offset += 1

    pockets = [[0] * 5, [0] * 5]
    for j, ch in enumerate(pocket_field):
        kind = _LETTER_KIND.get(ch.lower())
        if kind is None or kind == KING:
            raise ParseError(f"bad pocket letter {ch!r}", bracket + 1 + j)
        pockets[0 if ch.isupper() else 1][kind] += 1

    pos_turn = len(fields[0]) + 1
    if fields[1] not in ("w", "b"):
        raise ParseError("side to move must be 'w' or 'b'", pos_turn)
    turn = Color.WHITE if fields[1] == "w" else Color.BLACK

    castling = 0
    if fields[2] != "-":
        for j, ch in enumerate(fields[2]):
            flag = dict(_CASTLE_CHARS).get(ch)
            if flag is None:
                raise ParseError(f"bad castling flag {ch!r}", pos_turn + 2 + j)
            castling |= flag

    ep = None
    if fields[3] != "-":
        try:
            ep = parse_square(fields[3])
        except ValueError:
            raise ParseError(f"bad en-passant square {fields[3]!r}",
                             pos_turn + 3 + len(fields[2])) from None

    halfmove, fullmove = 0, 1
    if len(fields) == 6:
        try:
            halfmove, fullmove = int(fields[4]), int(fields[5])
        except ValueError:
            raise ParseError("move counters must be integers", len(text) - len(fields[5])) from None
        if halfmove < 0 or fullmove < 1:
            raise ParseError("move counters out of range", len(text) - len(fields[5]))

    for color in (0, 1):
        kings = sum(1 for pc in board if pc == color * 6 + KING)
        if kings != 1:
            raise ParseError("each side needs exactly one king", 0)
    if any(board[sq] % 6 == PAWN for sq in list(range(8)) + list(range(56, 64)) if board[sq] >= 0):
        raise ParseError("pawn on first or last rank", 0)
    for sq in range(64):
        if promoted >> sq & 1 and board[sq] % 6 in (PAWN, KING):
            raise ParseError("only non-pawn, non-king pieces can be marked promoted", 0)

    pos = Position(board, promoted, pockets, turn, castling, ep, halfmove, fullmove)
    them = 1 - turn
    if pos.is_attacked(pos.king_square(them), turn):
        raise ParseError("side not to move is in check", 0)
    return pos


def to_fen(pos: Position) -> str:
    rows = []
    for rank in range(7, -1, -1):
        row = ""
        empty = 0
        for file in range(8):
            sq = rank * 8 + file
            pc = pos.board[sq]
            if pc < 0:
                empty += 1
                continue
            if empty:
                row += str(empty)
                empty = 0
            letter = "pnbrqk"[pc % 6]
            row += letter.upper() if pc < 6 else letter
            if pos.promoted >> sq & 1:
                row += "~"
        if empty:
            row += str(empty)
        rows.append(row)
    pocket = ""
    for color in (0, 1):
        for kind in (4, 3, 2, 1, 0):
            letter = "pnbrq"[kind]
            pocket += (letter.upper() if color == 0 else letter) * pos.pockets[color][kind]
    castling = "".join(ch for ch, flag in _CASTLE_CHARS if pos.castling & flag) or "-"
    ep = square_name(pos.ep_square) if pos.ep_square is not None else "-"
    turn = "w" if pos.turn == Color.WHITE else "b"
    return (f"{'/'.join(rows)}[{pocket}] {turn} {castling} {ep} "
            f"{pos.halfmove_clock} {pos.fullmove_number}")


# -- UCI -------------------------------------------------------------------

def to_uci(move: Move) -> str:
    return str(move)


_UCI_RE = re.compile(r"^(?:([a-h][1-8])([a-h][1-8])([nbrq])?|([PNBRQpnbrq])@([a-h][1-8]))$")


def parse_uci_move(pos: Position, text: str) -> Move:
    """Parse long algebraic move text and check it is legal in ``pos``."""
    m = _UCI_RE.match(text.strip())
    if m is None:
        raise ParseError(f"malformed move {text!r}", 0)
    if m.group(4):
        move: Move = Drop(_LETTER_KIND[m.group(4).lower()], parse_square(m.group(5)))
    else:
        promo = _LETTER_KIND[m.group(3)] if m.group(3) else None
        move = BoardMove(parse_square(m.group(1)), parse_square(m.group(2)), promo)
    if not pos.is_legal(move):
        raise ParseError(f"illegal move {text!r}", 0)
    return move


# -- SAN -------------------------------------------------------------------

def _san_body(pos: Position, move: Move) -> str:
    if isinstance(move, Drop):
        return move.kind.letter.upper() + "@" + square_name(move.to_square)
    frm, to = move.from_square, move.to_square
    kind = pos.board[frm] % 6
    if kind == KING and abs(to - frm) == 2:
        return "O-O" if to > frm else "O-O-O"
    capture = pos.is_capture(move)
    if kind == PAWN:
        san = FILE_NAMES[square_file(frm)] + "x" if capture else ""
        san += square_name(to)
        if move.promotion is not None:
            san += "=" + move.promotion.letter.upper()
        return san
    san = "NBRQK"[kind - 1]
    rivals = [m for m in pos.legal_moves()
              if isinstance(m, BoardMove) and m.to_square == to and m.from_square != frm
              and pos.board[m.from_square] % 6 == kind]
    if rivals:
        same_file = any(square_file(m.from_square) == square_file(frm) for m in rivals)
        same_rank = any(square_rank(m.from_square) == square_rank(frm) for m in rivals)
        if not same_file:
            san += FILE_NAMES[square_file(frm)]
        elif not same_rank:
            san += str(square_rank(frm) + 1)
        else:
            san += square_name(frm)
    if capture:
        san += "x"
    return san + square_name(to)


def to_san(pos: Position, move: Move) -> str:
    """SAN with ``@`` drops, ``=`` promotions and ``+``/``#`` suffixes."""
    if not pos.is_legal(move):
        raise IllegalMove(f"{move} is not legal in this position")
    san = _san_body(pos, move)
    after = _apply(pos, move)
    if after.is_check():
        san += "#" if not after.legal_moves() else "+"
    return san


_SAN_RE = re.compile(
    r"^(?:"
    r"(?P<drop>[PNBRQ]?)@(?P<dto>[a-h][1-8])"
    r"|(?P<piece>[NBRQK])(?P<dfile>[a-h])?(?P<drank>[1-8])?x?(?P<to>[a-h][1-8])"
    r"|(?P<pfile>[a-h])(?:(?P<prank>[1-8])?x(?P<pto>[a-h][1-8])|(?P<push>[1-8]))"
    r"(?:=?(?P<promo>[NBRQ]))?"
    r")$"
)


def parse_san(pos: Position, text: str) -> Move:
    """Resolve SAN text against the legal moves of ``pos``."""
    raw = text
    text = text.strip().rstrip("+#!?")
    if text in ("O-O", "0-0", "O-O-O", "0-0-0"):
        long = text.count("-") == 2
        frm = pos.king_square(pos.turn)
        for m in pos.legal_moves():
            if (isinstance(m, BoardMove) and m.from_square == frm
                    and pos.board[frm] % 6 == KING and m.to_square == frm + (-2 if long else 2)):
                return m
        raise ParseError(f"castling not legal: {raw!r}", 0)

    m = _SAN_RE.match(text)
    if m is None:
        raise ParseError(f"malformed SAN {raw!r}", 0)

    if m.group("dto"):
        kind = _LETTER_KIND[(m.group("drop") or "P").lower()]
        move = Drop(kind, parse_square(m.group("dto")))
        if not pos.is_legal(move):
            raise ParseError(f"illegal drop {raw!r}", 0)
        return move

    if m.group("piece"):
        kind = _LETTER_KIND[m.group("piece").lower()]
        to = parse_square(m.group("to"))
        dfile = FILE_NAMES.index(m.group("dfile")) if m.group("dfile") else None
        drank = int(m.group("drank")) - 1 if m.group("drank") else None
        promo = None
    else:
        kind = PieceKind.PAWN
        dfile = FILE_NAMES.index(m.group("pfile"))
        drank = int(m.group("prank")) - 1 if m.group("prank") else None
        if m.group("pto"):
            to = parse_square(m.group("pto"))
        else:
            to = parse_square(m.group("pfile") + m.group("push"))
        promo = _LETTER_KIND[m.group("promo").lower()] if m.group("promo") else None

    candidates = []
    for mv in pos.legal_moves():
        if not isinstance(mv, BoardMove) or mv.to_square != to:
            continue
        if pos.board[mv.from_square] % 6 != kind:
            continue
        if dfile is not None and square_file(mv.from_square) != dfile:
            continue
        if drank is not None and square_rank(mv.from_square) != drank:
            continue
        if mv.promotion != promo:
            continue
        if kind == PieceKind.KING and abs(mv.to_square - mv.from_square) == 2:
            continue
        candidates.append(mv)
    if not candidates:
        raise ParseError(f"illegal or impossible move {raw!r}", 0)
    if len(candidates) > 1:
        raise AmbiguousMove(f"ambiguous move {raw!r}", 0)
    return candidates[0]
