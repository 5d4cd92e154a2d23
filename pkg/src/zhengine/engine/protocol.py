"""UCI-style line protocol with the crazyhouse variant.

Supported commands: ``uci``, ``isready``, ``ucinewgame``, ``setoption``,
``position [startpos | fen <fen>] [moves ...]``, ``go``, ``stop``, ``d``
and ``quit``. ``go`` accepts ``wtime btime winc binc movetime nodes depth
infinite``. Anything malformed is answered with an ``info string error``
line.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field, replace
from typing import Callable, TextIO

from ..errors import NoLegalMoves, ParseError
from ..nn.evaluators import Evaluator, MaterialEvaluator, NetworkEvaluator, UniformEvaluator
from ..rules.notation import STARTING_FEN, parse_fen, parse_uci_move, to_fen, to_uci
from ..rules.position import Color, Position, initial_position
from ..search import SearchParams, search
from .timecontrol import ClockState, choose_move, top_policy_move

ENGINE_NAME = "zhengine 0.1"
ENGINE_AUTHOR = "zhengine developers"
INFINITE_PLAYOUTS = 10 ** 12


@dataclass
class EngineConfig:
    weights: str | None = None
    evaluator: str = "uniform"
    params: SearchParams = field(default_factory=SearchParams)
    verbose: bool = False

    def __post_init__(self):
        if self.evaluator not in ("network", "uniform", "material"):
            raise ValueError(f"unknown evaluator {self.evaluator!r}")
        if self.evaluator == "network" and not self.weights:
            raise ValueError("the network evaluator needs a weights file")


def make_evaluator(config: EngineConfig) -> Evaluator:
    if config.evaluator == "network":
        return NetworkEvaluator.from_file(config.weights)
    if config.evaluator == "material":
        return MaterialEvaluator()
    return UniformEvaluator()


_GO_INT_ARGS = {"wtime", "btime", "winc", "binc", "movestogo", "movetime", "nodes", "depth"}
_FLOAT_OPTIONS = {"alpha": "alpha", "beta": "beta", "gamma": "gamma"}


class ProtocolSession:
    """One protocol dialogue. Feed lines to :meth:`handle`; output goes to ``write``."""

    def __init__(self, config: EngineConfig | None = None,
                 write: Callable[[str], None] | None = None,
                 evaluator: Evaluator | None = None):
        self.config = config or EngineConfig()
        self.params = self.config.params
        self.evaluator = evaluator or make_evaluator(self.config)
        self._write = write or (lambda line: (sys.stdout.write(line + "\n"), sys.stdout.flush()))
        self._out_lock = threading.Lock()
        self.position = initial_position()
        self._thread: threading.Thread | None = None
        self._stop = threading.Event()
        self.searching_position: Position | None = None

    def send(self, line: str) -> None:
        with self._out_lock:
            self._write(line)

    def error(self, message: str) -> None:
        self.send(f"info string error: {message}")

    # -- command dispatch --------------------------------------------------

    def handle(self, line: str) -> bool:
        """Process one command line; returns False once ``quit`` is received."""
        tokens = line.strip().split()
        if not tokens:
            return True
        cmd, args = tokens[0], tokens[1:]
        try:
            if cmd == "quit":
                self.stop_search()
                return False
            handler = getattr(self, f"_cmd_{cmd}", None)
            if handler is None:
                self.error(f"unknown command {cmd!r}")
            else:
                handler(args)
        except Exception as exc:  # never let one bad line end the session
            self.error(f"{cmd}: {exc}")
        return True

    def run(self, stream: TextIO) -> None:
        for line in stream:
            if not self.handle(line):
                break
        self.stop_search()

    def _cmd_uci(self, args):
        self.send(f"id name {ENGINE_NAME}")
        self.send(f"id author {ENGINE_AUTHOR}")
        self.send("option name UCI_Variant type combo default crazyhouse var crazyhouse")
        self.send("option name Seed type spin default 0 min 0 max 2147483647")
        self.send("option name PlayoutDepth type spin default 8 min 0 max 64")
        self.send("option name Alpha type string default 0.3")
        self.send("option name Beta type string default 6")
        self.send("option name Gamma type string default 0.5")
        self.send("uciok")

    def _cmd_isready(self, args):
        self.send("readyok")

    def _cmd_ucinewgame(self, args):
        self.stop_search()
        self.position = initial_position()

    def _cmd_setoption(self, args):
        if len(args) < 4 or args[0] != "name" or "value" not in args:
            raise ParseError("expected: setoption name <name> value <value>")
        v = args.index("value")
        name = " ".join(args[1:v]).lower()
        value = " ".join(args[v + 1:])
        if name == "uci_variant":
            if value.lower() != "crazyhouse":
                raise ValueError(f"unsupported variant {value!r}")
        elif name == "seed":
            self.params = replace(self.params, seed=int(value))
        elif name == "playoutdepth":
            self.params = replace(self.params, playout_depth=int(value))
        elif name in _FLOAT_OPTIONS:
            self.params = replace(self.params, **{_FLOAT_OPTIONS[name]: float(value)})
        else:
            raise ValueError(f"unknown option {name!r}")

    def _cmd_position(self, args):
        self.stop_search()
        if not args:
            raise ParseError("expected startpos or fen")
        if "moves" in args:
            k = args.index("moves")
            setup, moves = args[:k], args[k + 1:]
        else:
            setup, moves = args, []
        if setup == ["startpos"]:
            pos = parse_fen(STARTING_FEN)
        elif setup and setup[0] == "fen":
            pos = parse_fen(" ".join(setup[1:]))
        else:
            raise ParseError(f"bad position setup {' '.join(setup)!r}")
        for text in moves:
            pos = pos.play(parse_uci_move(pos, text))
        self.position = pos

    def _cmd_d(self, args):
        self.send(f"info string fen {to_fen(self.position)}")

    def _cmd_stop(self, args):
        self.stop_search()

    def _cmd_go(self, args):
        self.stop_search()
        opts: dict[str, int] = {}
        infinite = False
        i = 0
        while i < len(args):
            key = args[i]
            if key == "infinite":
                infinite = True
                i += 1
            elif key in _GO_INT_ARGS and i + 1 < len(args):
                opts[key] = int(args[i + 1])
                if opts[key] < 0:
                    raise ValueError(f"{key} must be non-negative")
                i += 2
            else:
                raise ParseError(f"bad go argument {key!r}")
        pos = self.position
        self.searching_position = pos  # the position the next bestmove answers
        if pos.game_result() is not None:
            self.send("info string position is terminal")
            self.send("bestmove (none)")
            return
        self._stop = threading.Event()
        self._thread = threading.Thread(target=self._search_worker,
                                        args=(pos, opts, infinite, self._stop), daemon=True)
        self._thread.start()

    # -- search task -------------------------------------------------------

    def _search_worker(self, pos: Position, opts: dict, infinite: bool, stop: threading.Event):
        try:
            move = self._pick(pos, opts, infinite, stop)
            self.send(f"bestmove {to_uci(move)}")
        except NoLegalMoves:
            self.send("bestmove (none)")
        except Exception as exc:
            self.error(f"search failed: {exc}")
            self.send("bestmove (none)")

    def _pick(self, pos: Position, opts: dict, infinite: bool, stop: threading.Event):
        params = self.params
        side_key = "wtime" if pos.turn == Color.WHITE else "btime"
        trace = self.send if self.config.verbose else None
        if "depth" in opts:
            params = replace(params, playout_depth=opts["depth"])
        if params.playout_depth == 0 and side_key not in opts:
            # depth-0 playouts never leave the root; answer from the policy
            return top_policy_move(pos, self.evaluator)
        if infinite:
            run = replace(params, playouts=INFINITE_PLAYOUTS, movetime_ms=None)
            return search(pos, self.evaluator, run, stop=stop, trace=trace).best_move
        if "nodes" in opts:
            run = replace(params, playouts=max(1, opts["nodes"]), movetime_ms=None)
            return search(pos, self.evaluator, run, stop=stop, trace=trace).best_move
        if "movetime" in opts:
            run = replace(params, playouts=None, movetime_ms=max(1, opts["movetime"]))
            return search(pos, self.evaluator, run, stop=stop, trace=trace).best_move
        if side_key in opts:
            remaining = (opts.get("wtime", opts[side_key]), opts.get("btime", opts[side_key]))
            clock = ClockState.for_position(pos, remaining,
                                            (opts.get("winc", 0), opts.get("binc", 0)))
            return choose_move(pos, clock, self.evaluator, params, stop=stop)
        return search(pos, self.evaluator, params, stop=stop, trace=trace).best_move

    def stop_search(self, timeout: float | None = None) -> None:
        """Signal the running search (if any) and wait for its bestmove."""
        thread = self._thread
        if thread is None:
            return
        self._stop.set()
        thread.join(timeout)
        if not thread.is_alive():
            self._thread = None

    def wait(self, timeout: float | None = None) -> None:
        """Block until the current search finishes by itself."""
        thread = self._thread
        if thread is not None:
            thread.join(timeout)
            if not thread.is_alive():
                self._thread = None

    @property
    def searching(self) -> bool:
        return self._thread is not None and self._thread.is_alive()


def protocol_loop(stream: TextIO, config: EngineConfig, out: TextIO | None = None) -> None:
    out = out or sys.stdout

    def write(line: str) -> None:
        out.write(line + "\n")
        out.flush()

    ProtocolSession(config, write).run(stream)


__all__ = ["EngineConfig", "ProtocolSession", "make_evaluator", "protocol_loop"]
