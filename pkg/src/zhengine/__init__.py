"""Crazyhouse engine: rules, encodings, network inference, search and tooling."""

from .encoding import decode_position, encode_position, index_to_move, move_to_index
from .rules import STARTING_FEN, Position, initial_position, parse_fen, to_fen
from .search import SearchParams, SearchResult, search

__version__ = "0.1.0"

__all__ = [
    "STARTING_FEN", "Position", "SearchParams", "SearchResult", "decode_position",
    "encode_position", "index_to_move", "initial_position", "move_to_index", "parse_fen",
    "search", "to_fen",
]
