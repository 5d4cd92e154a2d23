"""Command-line entry point: ``zh-engine <command> [options]``."""

from __future__ import annotations

import argparse
import sys
import time

from .encoding import action_table
from .engine.protocol import EngineConfig, make_evaluator, protocol_loop
from .errors import NoLegalMoves, ParseError
from .rules.notation import STARTING_FEN, parse_fen
from .rules.position import perft
from .search import SearchParams, search


def _add_engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weights", help="ZHNN weights file (implies --evaluator network)")
    p.add_argument("--evaluator", choices=("network", "uniform", "material"),
                   help="position evaluator (default: network with --weights, else uniform)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.3, help="noise amplitude")
    p.add_argument("--beta", type=float, default=6.0, help="noise decay")
    p.add_argument("--gamma", type=float, default=0.5, help="exploration weight")
    p.add_argument("--depth", type=int, default=8, help="maximum playout depth")


def _config(args, playouts: int | None = 400, movetime_ms: float | None = None) -> EngineConfig:
    evaluator = args.evaluator or ("network" if args.weights else "uniform")
    params = SearchParams(alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                          playout_depth=args.depth, playouts=playouts,
                          movetime_ms=movetime_ms, seed=args.seed)
    return EngineConfig(weights=args.weights, evaluator=evaluator, params=params)


def cmd_serve(args) -> int:
    protocol_loop(sys.stdin, _config(args))
    return 0


def cmd_bestmove(args) -> int:
    pos = parse_fen(args.fen)
    config = _config(args, playouts=args.playouts, movetime_ms=args.movetime)
    try:
        result = search(pos, make_evaluator(config), config.params)
    except NoLegalMoves:
        print("bestmove (none)")
        return 0
    print(f"info playouts {result.playouts} value {result.root_value:.4f}")
    print(f"bestmove {result.best_move}")
    return 0


def cmd_perft(args) -> int:
    pos = parse_fen(args.fen)
    start = time.perf_counter()
    nodes = perft(pos, args.depth)
    elapsed = time.perf_counter() - start
    print(nodes)
    print(f"# depth {args.depth} in {elapsed:.3f}s", file=sys.stderr)
    return 0


def cmd_dump_actions(args) -> int:
    table = action_table()
    sys.stdout.write(table.dump())
    sizes = table.section_sizes()
    print(" + ".join(str(v) for v in sizes.values()) + f" = {len(table)}", file=sys.stderr)
    return 0


def cmd_selfplay(args) -> int:
    from .data.book import load_opening_book, sample_book
    from .data.dataset import export_dataset
    from .data.pgn import export_pgn
    from .data.selfplay import game_length_stats, selfplay

    book = load_opening_book(args.book) if args.book else sample_book()
    config = _config(args, playouts=args.playouts)
    games = selfplay(args.games, make_evaluator(config), config.params, book, args.seed,
                     args.max_plies)
    examples = export_dataset(games, args.out)
    if args.pgn:
        export_pgn(games, args.pgn)
    stats = game_length_stats(games)
    print(f"games {stats['games']} examples {len(examples)} "
          f"mean_plies {stats['mean_plies']:.2f} max_plies {stats['max_plies']}")
    return 0


def cmd_eval_accuracy(args) -> int:
    from .data.dataset import load_dataset
    from .data.metrics import evaluate_losses, evaluate_policy_accuracy

    data = load_dataset(args.data)
    if not data:
        print("dataset is empty", file=sys.stderr)
        return 1
    evaluator = make_evaluator(_config(args))
    accuracy = evaluate_policy_accuracy(evaluator, data, seed=args.seed)
    policy_loss, value_loss = evaluate_losses(evaluator, data)
    print(f"examples {len(data)}")
    print(f"accuracy {accuracy:.4f}")
    print(f"policy_loss {policy_loss:.6f}")
    print(f"value_loss {value_loss:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zh-engine", description="Crazyhouse engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="speak the line protocol on stdin/stdout")
    _add_engine_flags(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("bestmove", help="search one position")
    _add_engine_flags(p)
    p.add_argument("--fen", default=STARTING_FEN)
    p.add_argument("--movetime", type=float, default=None, help="budget in milliseconds")
    p.add_argument("--playouts", type=int, default=None)
    p.set_defaults(func=cmd_bestmove)

    p = sub.add_parser("perft", help="count legal move sequences")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--fen", default=STARTING_FEN)
    p.set_defaults(func=cmd_perft)

    p = sub.add_parser("dump-actions", help="print the action table")
    p.set_defaults(func=cmd_dump_actions)

    p = sub.add_parser("selfplay", help="generate games and a ZHDS dataset")
    _add_engine_flags(p)
    p.add_argument("--games", type=int, default=1)
    p.add_argument("--book", help="opening book (default: bundled sample)")
    p.add_argument("--out", required=True, help="dataset output path")
    p.add_argument("--pgn", help="also write the games as PGN")
    p.add_argument("--playouts", type=int, default=100, help="playouts per move")
    p.add_argument("--max-plies", type=int, default=300)
    p.set_defaults(func=cmd_selfplay)

    p = sub.add_parser("eval-accuracy", help="policy accuracy and losses on a dataset")
    _add_engine_flags(p)
    p.add_argument("--data", required=True)
    p.set_defaults(func=cmd_eval_accuracy)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bestmove" and args.movetime is None and args.playouts is None:
        args.playouts = 400
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
