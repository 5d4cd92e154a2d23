"""Crazyhouse rules: state, move generation, termination and notation."""

from .position import (
    BoardMove, Color, Drop, GameResult, Move, PieceKind, Position, apply_move, game_result,
    initial_position, legal_moves, parse_square, perft, repetition_count, square,
    square_file, square_name, square_rank, state_key,
)
from .notation import STARTING_FEN, parse_fen, parse_san, parse_uci_move, to_fen, to_san, to_uci

__all__ = [
    "BoardMove", "Color", "Drop", "GameResult", "Move", "PieceKind", "Position",
    "STARTING_FEN", "apply_move", "game_result", "initial_position", "legal_moves",
    "parse_fen", "parse_san", "parse_square", "parse_uci_move", "perft", "repetition_count",
    "square", "square_file", "square_name", "square_rank", "state_key", "to_fen", "to_san",
    "to_uci",
]
