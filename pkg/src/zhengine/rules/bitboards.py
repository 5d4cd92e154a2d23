"""Precomputed attack tables over 64-bit boards stored as Python ints.

Square index is ``rank * 8 + file`` with a1 = 0 and h8 = 63.
"""

ALL = (1 << 64) - 1
RANK_1 = 0xFF
RANK_8 = 0xFF << 56
BACK_RANKS = RANK_1 | RANK_8

# (dfile, drank); order N, NE, E, SE, S, SW, W, NW
DIRECTIONS = ((0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1))
ROOK_DIRS = (0, 2, 4, 6)
BISHOP_DIRS = (1, 3, 5, 7)
# rays that run toward higher square indices: the nearest blocker is the lowest bit
POSITIVE = tuple(dr > 0 or (dr == 0 and df > 0) for df, dr in DIRECTIONS)

KNIGHT_DELTAS = ((1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2))


def _on_board(f: int, r: int) -> bool:
    return 0 <= f < 8 and 0 <= r < 8


def _step_table(deltas) -> list[int]:
    table = []
    for sq in range(64):
        f, r = sq & 7, sq >> 3
        bb = 0
        for df, dr in deltas:
            if _on_board(f + df, r + dr):
                bb |= 1 << ((r + dr) * 8 + f + df)
        table.append(bb)
    return table


KNIGHT_ATTACKS = _step_table(KNIGHT_DELTAS)
KING_ATTACKS = _step_table(DIRECTIONS)
# PAWN_ATTACKS[color][sq]: squares a pawn of `color` on sq attacks
PAWN_ATTACKS = (_step_table(((-1, 1), (1, 1))), _step_table(((-1, -1), (1, -1))))

RAYS: list[list[int]] = []
for _df, _dr in DIRECTIONS:
    _table = []
    for _sq in range(64):
        _f, _r = _sq & 7, _sq >> 3
        _bb = 0
        _f, _r = _f + _df, _r + _dr
        while _on_board(_f, _r):
            _bb |= 1 << (_r * 8 + _f)
            _f, _r = _f + _df, _r + _dr
        _table.append(_bb)
    RAYS.append(_table)

# BETWEEN[a][b]: squares strictly between two aligned squares, else 0
# LINE[a][b]: the full line through two aligned squares, else 0
BETWEEN = [[0] * 64 for _ in range(64)]
LINE = [[0] * 64 for _ in range(64)]
for _d in range(8):
    _opp = (_d + 4) % 8
    for _a in range(64):
        _ray = RAYS[_d][_a]
        _bb = _ray
        while _bb:
            _low = _bb & -_bb
            _b = _low.bit_length() - 1
            BETWEEN[_a][_b] = _ray & RAYS[_opp][_b]
            LINE[_a][_b] = _ray | RAYS[_opp][_a] | (1 << _a)
            _bb ^= _low


def bits(bb: int):
    """Yield the set square indices of a bitboard, lowest first."""
    while bb:
        low = bb & -bb
        yield low.bit_length() - 1
        bb ^= low


def popcount(bb: int) -> int:
    return bin(bb).count("1")


def slider_attacks(sq: int, occ: int, dirs) -> int:
    att = 0
    for d in dirs:
        ray = RAYS[d][sq]
        blockers = ray & occ
        if blockers:
            if POSITIVE[d]:
                b = (blockers & -blockers).bit_length() - 1
            else:
                b = blockers.bit_length() - 1
            ray ^= RAYS[d][b]
        att |= ray
    return att


def rook_attacks(sq: int, occ: int) -> int:
    return slider_attacks(sq, occ, ROOK_DIRS)


def bishop_attacks(sq: int, occ: int) -> int:
    return slider_attacks(sq, occ, BISHOP_DIRS)


ROOK_EMPTY = [rook_attacks(sq, 0) for sq in range(64)]
BISHOP_EMPTY = [bishop_attacks(sq, 0) for sq in range(64)]
