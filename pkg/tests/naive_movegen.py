"""Slow reference move generator used as a test oracle.

Mailbox board, pseudo-legal generation, and legality by brute force (play the
move, then scan every enemy piece for an attack on the king). Shares no code
with the engine: it parses FEN itself and speaks UCI move strings.
"""

KNIGHT_STEPS = [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)]
KING_STEPS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
ROOK_DIRS = [(1, 0), (-1, 0), (0, 1), (0, -1)]
BISHOP_DIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
FILES = "abcdefgh"


def sq_name(f, r):
    return FILES[f] + str(r + 1)


class NaiveState:
    def __init__(self, board, promoted, pockets, white, castling, ep):
        self.board = board          # dict (file, rank) -> letter, uppercase = white
        self.promoted = promoted    # set of (file, rank)
        self.pockets = pockets      # {"w": {"P":n,...}, "b": {...}}
        self.white = white
        self.castling = castling    # string subset of "KQkq"
        self.ep = ep                # (file, rank) or None

    @classmethod
    def from_fen(cls, fen):
        parts = fen.split()
        placement = parts[0]
        pocket = ""
        if "[" in placement:
            placement, pocket = placement.split("[")
            pocket = pocket.rstrip("]")
        board, promoted = {}, set()
        rows = placement.split("/")
        for i, row in enumerate(rows):
            r = 7 - i
            f = 0
            for ch in row:
                if ch.isdigit():
                    f += int(ch)
                elif ch == "~":
                    promoted.add((f - 1, r))
                else:
                    board[(f, r)] = ch
                    f += 1
        pockets = {"w": {k: 0 for k in "PNBRQ"}, "b": {k: 0 for k in "PNBRQ"}}
        for ch in pocket:
            pockets["w" if ch.isupper() else "b"][ch.upper()] += 1
        white = parts[1] == "w"
        castling = "" if parts[2] == "-" else parts[2]
        ep = None
        if parts[3] != "-":
            ep = (FILES.index(parts[3][0]), int(parts[3][1]) - 1)
        return cls(board, promoted, pockets, white, castling, ep)

    def copy(self):
        return NaiveState(dict(self.board), set(self.promoted),
                          {c: dict(p) for c, p in self.pockets.items()},
                          self.white, self.castling, self.ep)

    def mine(self, ch, white):
        return ch.isupper() == white

    def attacked(self, target, by_white):
        """True if any piece of `by_white` attacks `target`."""
        for (f, r), ch in self.board.items():
            if ch.isupper() != by_white:
                continue
            p = ch.upper()
            df, dr = target[0] - f, target[1] - r
            if p == "P":
                fwd = 1 if by_white else -1
                if dr == fwd and abs(df) == 1:
                    return True
            elif p == "N":
                if (df, dr) in KNIGHT_STEPS:
                    return True
            elif p == "K":
                if max(abs(df), abs(dr)) == 1:
                    return True
            else:
                dirs = []
                if p in "RQ":
                    dirs += ROOK_DIRS
                if p in "BQ":
                    dirs += BISHOP_DIRS
                for sf, sr in dirs:
                    x, y = f + sf, r + sr
                    while 0 <= x < 8 and 0 <= y < 8:
                        if (x, y) == target:
                            return True
                        if (x, y) in self.board:
                            break
                        x, y = x + sf, y + sr
        return False

    def king(self, white):
        for sq, ch in self.board.items():
            if ch == ("K" if white else "k"):
                return sq
        raise AssertionError("no king")

    def in_check(self):
        return self.attacked(self.king(self.white), not self.white)

    def pseudo_moves(self):
        out = []
        w = self.white
        for (f, r), ch in list(self.board.items()):
            if ch.isupper() != w:
                continue
            p = ch.upper()
            frm = sq_name(f, r)
            if p == "P":
                fwd = 1 if w else -1
                last = 7 if w else 0
                start = 1 if w else 6
                targets = []
                if 0 <= r + fwd < 8 and (f, r + fwd) not in self.board:
                    targets.append((f, r + fwd))
                    if r == start and (f, r + 2 * fwd) not in self.board:
                        targets.append((f, r + 2 * fwd))
                for df in (-1, 1):
                    t = (f + df, r + fwd)
                    if not (0 <= t[0] < 8 and 0 <= t[1] < 8):
                        continue
                    if t in self.board and not self.mine(self.board[t], w):
                        targets.append(t)
                    elif t == self.ep:
                        targets.append(t)
                for t in targets:
                    if t[1] == last:
                        for promo in "qrbn":
                            out.append(frm + sq_name(*t) + promo)
                    else:
                        out.append(frm + sq_name(*t))
            elif p in "NK":
                for df, dr in (KNIGHT_STEPS if p == "N" else KING_STEPS):
                    t = (f + df, r + dr)
                    if 0 <= t[0] < 8 and 0 <= t[1] < 8:
                        if t not in self.board or not self.mine(self.board[t], w):
                            out.append(frm + sq_name(*t))
            else:
                dirs = []
                if p in "RQ":
                    dirs += ROOK_DIRS
                if p in "BQ":
                    dirs += BISHOP_DIRS
                for sf, sr in dirs:
                    x, y = f + sf, r + sr
                    while 0 <= x < 8 and 0 <= y < 8:
                        if (x, y) in self.board:
                            if not self.mine(self.board[(x, y)], w):
                                out.append(frm + sq_name(x, y))
                            break
                        out.append(frm + sq_name(x, y))
                        x, y = x + sf, y + sr
        # castling
        rank = 0 if w else 7
        k_letter = "K" if w else "k"
        r_letter = "R" if w else "r"
        if self.board.get((4, rank)) == k_letter and not self.attacked((4, rank), not w):
            if ("K" if w else "k") in self.castling and self.board.get((7, rank)) == r_letter:
                if all((x, rank) not in self.board for x in (5, 6)) and \
                        not any(self.attacked((x, rank), not w) for x in (5, 6)):
                    out.append(sq_name(4, rank) + sq_name(6, rank))
            if ("Q" if w else "q") in self.castling and self.board.get((0, rank)) == r_letter:
                if all((x, rank) not in self.board for x in (1, 2, 3)) and \
                        not any(self.attacked((x, rank), not w) for x in (2, 3)):
                    out.append(sq_name(4, rank) + sq_name(2, rank))
        # drops
        pocket = self.pockets["w" if w else "b"]
        for kind, n in pocket.items():
            if n == 0:
                continue
            for f in range(8):
                for r in range(8):
                    if (f, r) in self.board:
                        continue
                    if kind == "P" and r in (0, 7):
                        continue
                    out.append(kind + "@" + sq_name(f, r))
        return out

    def play(self, uci):
        s = self.copy()
        w = self.white
        side = "w" if w else "b"
        if "@" in uci:
            kind = uci[0].upper()
            t = (FILES.index(uci[2]), int(uci[3]) - 1)
            s.board[t] = kind if w else kind.lower()
            s.pockets[side][kind] -= 1
            s.ep = None
            s.white = not w
            return s
        f = (FILES.index(uci[0]), int(uci[1]) - 1)
        t = (FILES.index(uci[2]), int(uci[3]) - 1)
        ch = s.board.pop(f)
        was_promoted = f in s.promoted
        s.promoted.discard(f)
        if t in s.board:
            cap = s.board[t]
            s.pockets[side]["P" if t in s.promoted else cap.upper()] += 1
            s.promoted.discard(t)
        elif ch.upper() == "P" and t == self.ep:
            cap_sq = (t[0], f[1])
            del s.board[cap_sq]
            s.pockets[side]["P"] += 1
        if len(uci) == 5:
            ch = uci[4].upper() if w else uci[4]
            s.promoted.add(t)
        elif was_promoted:
            s.promoted.add(t)
        s.board[t] = ch
        if ch.upper() == "K" and abs(t[0] - f[0]) == 2:
            if t[0] == 6:
                s.board[(5, f[1])] = s.board.pop((7, f[1]))
            else:
                s.board[(3, f[1])] = s.board.pop((0, f[1]))
        # castling rights
        rights = s.castling
        for sq, lost in (((4, 0), "KQ"), ((7, 0), "K"), ((0, 0), "Q"),
                         ((4, 7), "kq"), ((7, 7), "k"), ((0, 7), "q")):
            if f == sq or t == sq:
                rights = "".join(c for c in rights if c not in lost)
        s.castling = rights
        s.ep = None
        if ch.upper() == "P" and abs(t[1] - f[1]) == 2:
            s.ep = (f[0], (f[1] + t[1]) // 2)
        s.white = not w
        return s

    def legal_moves(self):
        out = []
        for m in self.pseudo_moves():
            nxt = self.play(m)
            if not nxt.attacked(nxt.king(self.white), not self.white):
                out.append(m)
        return out


def naive_legal_uci(fen):
    return sorted(NaiveState.from_fen(fen).legal_moves())


def naive_perft(state, depth):
    if depth == 0:
        return 1
    moves = state.legal_moves()
    if depth == 1:
        return len(moves)
    return sum(naive_perft(state.play(m), depth - 1) for m in moves)
