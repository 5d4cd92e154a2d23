"""Shared helpers for the test suite."""

import random
from pathlib import Path

from zhengine.rules import initial_position, parse_uci_move, to_fen

DATA = Path(__file__).parent / "data"


def random_game(seed, max_plies=120, start=None):
    """Positions of one uniformly random game, start position included."""
    rng = random.Random(seed)
    pos = start or initial_position()
    out = [pos]
    for _ in range(max_plies):
        moves = pos.legal_moves()
        if not moves or pos.game_result() is not None:
            break
        pos = pos.play(rng.choice(moves))
        out.append(pos)
    return out


def random_positions(n, seed=0, max_plies=120):
    out = []
    game = 0
    while len(out) < n:
        out.extend(random_game(seed * 100003 + game, max_plies))
        game += 1
    return out[:n]


def mate_in_one_fens():
    lines = (DATA / "mate_in_one.txt").read_text().splitlines()
    return [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]



# pocket bit groups in plane 13: (color, kind, width), independent of the package table
POCKET_LAYOUT = [(0, 0, 16), (1, 0, 16), (0, 1, 4), (1, 1, 4), (0, 2, 4), (1, 2, 4),
                 (0, 3, 4), (1, 3, 4), (0, 4, 2), (1, 4, 2)]


def input_tensor_violations(t, pos):
    """List every way ``t`` breaks the input-tensor invariants for ``pos``."""
    import numpy as np

    bad = []
    if t.shape != (15, 8, 8):
        return [f"shape {t.shape}"]
    if not np.isin(t, (0, 1)).all():
        bad.append("non-binary entries")
    flat = t.reshape(15, 64)
    for sq in range(64):
        pc = pos.board[sq]
        col = flat[:12, sq]
        if pc < 0 and col.any():
            bad.append(f"empty square {sq} has a piece bit")
        if pc >= 0 and (col.sum() != 1 or col[pc] != 1):
            bad.append(f"square {sq} piece bits wrong")
        promoted = bool(pos.promoted >> sq & 1)
        if flat[12, sq] != promoted:
            bad.append(f"promoted bit {sq}")
    j = 0
    for color, kind, width in POCKET_LAYOUT:
        group = flat[13, j:j + width]
        n = min(pos.pockets[color][kind], width)
        if list(group) != [1] * n + [0] * (width - n):
            bad.append(f"pocket group {color}/{kind} = {list(group)}")
        j += width
    if flat[13, 60] + flat[13, 61] != 1 or flat[13, 60] != (pos.turn == 0):
        bad.append("turn bits")
    if flat[13, 62:].any():
        bad.append("plane 13 padding not zero")
    rights = [pos.castling & 1, pos.castling & 4, pos.castling & 2, pos.castling & 8]
    if [int(bool(r)) for r in rights] != list(flat[14, :4]):
        bad.append("castling bits")
    reps = pos.repetition_count()
    if (flat[14, 4], flat[14, 5]) != (int(reps == 1), int(reps >= 2)):
        bad.append("repetition bits")
    if flat[14, 6:].any():
        bad.append("plane 14 padding not zero")
    return bad


# -- protocol fuzzing -------------------------------------------------------

FUZZ_GARBAGE = ["", "   ", "foo", "go nodes", "go nodes -3", "go wtime abc", "position",
                "position fen", "position fen 8/8/8/8 w - - 0 1", "position startpos moves e2e5",
                "position startpos moves P@e4", "setoption", "setoption name Nope value 1",
                "setoption name UCI_Variant value atomic", "setoption name Alpha value x",
                "\x00\x01", "go movetime 1e9", "position fen rnbqkbnr/pppppppp[] w"]


def fuzz_session(seed, n_commands=12):
    """Run one randomized protocol session; returns (lines, problems)."""
    from zhengine.engine import EngineConfig, ProtocolSession
    from zhengine.search import SearchParams

    rng = random.Random(seed)
    lines, problems = [], []
    session = None

    def write(line):
        lines.append(line)
        if line.startswith("bestmove"):
            text = line.split()[1]
            pos = session.searching_position
            if text == "(none)":
                if pos is not None and pos.game_result() is None:
                    problems.append(f"(none) in a live position: {line}")
                return
            try:
                parse_uci_move(pos, text)
            except Exception as exc:  # noqa: BLE001 - report, don't raise in the worker
                problems.append(f"illegal bestmove {text}: {exc}")

    config = EngineConfig(evaluator=rng.choice(["uniform", "material"]),
                          params=SearchParams(playouts=30, seed=seed))
    session = ProtocolSession(config, write)
    for _ in range(n_commands):
        roll = rng.random()
        if roll < 0.15:
            cmd = rng.choice(FUZZ_GARBAGE)
        elif roll < 0.45:
            pos = random_game(rng.randrange(10 ** 6), max_plies=rng.randrange(0, 60))[-1]
            cmd = f"position fen {to_fen(pos)}"
            if pos.game_result() is None and rng.random() < 0.5:
                cmd += " moves " + str(rng.choice(pos.legal_moves()))
        elif roll < 0.75:
            cmd = rng.choice(["go nodes 5", "go movetime 5", "go wtime 5000 btime 5000",
                              "go wtime 20000 btime 20000 winc 0 binc 0", "go depth 2 nodes 8",
                              "go infinite", "go"])
        else:
            cmd = rng.choice(["isready", "uci", "stop", "d", "ucinewgame",
                              "setoption name Seed value 7", "setoption name PlayoutDepth value 3",
                              "position startpos moves e2e4 e7e5 g1f3"])
        try:
            session.handle(cmd)
        except Exception as exc:  # noqa: BLE001
            problems.append(f"crash on {cmd!r}: {exc!r}")
    session.handle("stop")
    session.handle("quit")
    if session.searching:
        problems.append("search still running after quit")
    return lines, problems


# -- games and evaluators for the data pipeline ------------------------------

def random_playout_games(n, seed=0, max_plies=150):
    """Uniformly random games as records; unfinished games are adjudicated drawn."""
    from zhengine.data import GameRecord, termination_of
    from zhengine.rules import GameResult

    games = []
    for g in range(n):
        rng = random.Random(seed * 7919 + g)
        pos = initial_position()
        moves = []
        while pos.game_result() is None and len(moves) < max_plies:
            move = rng.choice(pos.legal_moves())
            moves.append(move)
            pos = pos.play(move)
        result = pos.game_result() or GameResult.DRAW
        term = termination_of(pos) if pos.game_result() is not None else "adjudicated"
        games.append(GameRecord(moves, result, termination=term))
    return games


class ReplayEvaluator:
    """Lookup oracle: answers the i-th query with the i-th recorded action as a
    one-hot policy (floored at ``floor``), scaled like the target."""

    def __init__(self, examples, floor=0.0, scaled=False):
        self.examples = list(examples)
        self.floor = floor
        self.scaled = scaled
        self.i = 0

    def evaluate(self, pos):
        import numpy as np

        from zhengine.encoding import N_ACTIONS
        from zhengine.nn import EvalResult

        ex = self.examples[self.i % len(self.examples)]
        self.i += 1
        policy = np.full(N_ACTIONS, self.floor)
        policy[ex.policy.index] = ex.policy.scale if self.scaled else 1.0
        return EvalResult(policy, ex.value)


# -- action table oracle ----------------------------------------------------

# (dfile, drank) for N, NE, E, SE, S, SW, W, NW
DIRS = [(0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1)]


def brute_force_removals():
    """Landing squares dropped from the 56 linear planes, split diagonal/straight."""
    removed = {"diagonal": 0, "straight": 0}
    for df, dr in DIRS:
        for dist in range(1, 8):
            for sq in range(64):
                f, r = sq % 8 - df * dist, sq // 8 - dr * dist
                on_board = 0 <= f < 8 and 0 <= r < 8
                diagonal = df != 0 and dr != 0
                if not on_board and not (diagonal and dist == 1):
                    removed["diagonal" if diagonal else "straight"] += 1
    return removed


def plane_size(df, dr, dist):
    """Landing squares whose origin lies on the board, by direct enumeration."""
    return sum(1 for f in range(8) for r in range(8)
               if 0 <= f - df * dist < 8 and 0 <= r - dr * dist < 8)


# -- acceptance report ------------------------------------------------------

ACCEPTANCE_REPORT = []


def report(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_REPORT.append((number, line))
    print(line)
    return ok
