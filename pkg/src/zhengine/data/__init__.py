from .book import OpeningBook, load_opening_book, parse_opening_book, sample_book
from .dataset import (
    TrainingExample, en_passant_hint, examples_from_game, export_dataset, load_dataset,
    write_examples,
)
from .metrics import evaluate_losses, evaluate_policy_accuracy, masked_top1
from .pgn import export_pgn, game_to_pgn, parse_pgn, read_pgn
from .records import GameRecord, termination_of
from .selfplay import DEFAULT_MAX_PLIES, game_length_stats, play_game, selfplay

__all__ = [
    "OpeningBook", "load_opening_book", "parse_opening_book", "sample_book",
    "TrainingExample", "en_passant_hint", "examples_from_game", "export_dataset",
    "load_dataset", "write_examples",
    "evaluate_losses", "evaluate_policy_accuracy", "masked_top1",
    "export_pgn", "game_to_pgn", "parse_pgn", "read_pgn",
    "GameRecord", "termination_of",
    "DEFAULT_MAX_PLIES", "game_length_stats", "play_game", "selfplay",
]
