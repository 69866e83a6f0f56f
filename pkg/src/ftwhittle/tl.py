"""Temperley-Lieb monoid words, planar evaluation and Jones normal forms.

Words are sequences of generator indices ``i`` standing for ``e_i`` on
``n`` strands.  The loop value is taken to be 1, so two words are
equivalent exactly when their planar diagrams have the same pairing of
boundary points; closed loops are counted but otherwise ignored.

Moves (all sites are 1-based word positions)::

    a+      e_i            -> e_i e_i
    a-      e_i e_i        -> e_i
    b+1     e_i            -> e_i e_{i+1} e_i
    b-1     e_i e_{i+1} e_i -> e_i
    b+-1    e_i            -> e_i e_{i-1} e_i
    b--1    e_i e_{i-1} e_i -> e_i
    c       e_i e_j        -> e_j e_i        (|i - j| >= 2)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

A_PLUS = "a+"
A_MINUS = "a-"
B_PLUS_UP = "b+1"
B_MINUS_UP = "b-1"
B_PLUS_DOWN = "b+-1"
B_MINUS_DOWN = "b--1"
COMMUTE = "c"
MOVE_KINDS = (A_PLUS, A_MINUS, B_PLUS_UP, B_MINUS_UP, B_PLUS_DOWN, B_MINUS_DOWN, COMMUTE)


class TLError(ValueError):
    pass


class MoveInapplicable(TLError):
    """The left-hand side of a move does not match the word at the given site."""


@dataclass(frozen=True)
class TLWord:
    strands: int
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise TLError(f"need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "gens", tuple(int(g) for g in self.gens))
        for g in self.gens:
            if not 1 <= g <= self.strands - 1:
                raise TLError(f"generator e_{g} out of range for {self.strands} strands")

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return " ".join(f"e{g}" for g in self.gens) or "1"

    def to_text(self) -> str:
        return " ".join(str(g) for g in self.gens)

    @classmethod
    def from_text(cls, text: str, strands: int) -> "TLWord":
        return cls(strands, tuple(int(tok.lstrip("e")) for tok in text.replace(",", " ").split()))


@dataclass(frozen=True)
class TLDiagram:
    """A crossingless matching of ``2n`` boundary points.

    Points ``0..n-1`` are the left ends of rows ``1..n``; points ``n..2n-1``
    are the right ends.  ``pairing[p]`` is the partner of point ``p``.
    """

    strands: int
    pairing: tuple[int, ...]
    loops: int = 0

    def through_count(self) -> int:
        n = self.strands
        return sum(1 for p in range(n) if self.pairing[p] >= n)

    def closure_cycles(self) -> int:
        """Number of circles formed by joining right end ``r`` to left end ``r``."""
        n = self.strands
        seen = [False] * (2 * n)
        cycles = 0
        for start in range(2 * n):
            if seen[start]:
                continue
            cycles += 1
            p = start
            while not seen[p]:
                seen[p] = True
                q = self.pairing[p]
                seen[q] = True
                p = q - n if q >= n else q + n
        return cycles


def identity_pairing(n: int) -> tuple[int, ...]:
    return tuple(list(range(n, 2 * n)) + list(range(n)))


def generator_pairing(n: int, i: int) -> tuple[int, ...]:
    pairing = list(identity_pairing(n))
    a, b = i - 1, i
    pairing[a], pairing[b] = b, a
    pairing[n + a], pairing[n + b] = n + b, n + a
    return tuple(pairing)


def compose(left: Sequence[int], right: Sequence[int], n: int) -> tuple[tuple[int, ...], int]:
    """Stack ``left`` then ``right``; return the composite pairing and closed loop count."""
    result = [-1] * (2 * n)
    used_mid = [False] * n

    def walk(side: str, p: int) -> int:
        # side is the diagram we are inside, p the point we entered at
        while True:
            diagram = left if side == "L" else right
            q = diagram[p]
            if side == "L":
                if q < n:
                    return q
                used_mid[q - n] = True
                side, p = "R", q - n
            else:
                if q >= n:
                    return q
                used_mid[q] = True
                side, p = "L", q + n

    for p in range(n):
        if result[p] < 0:
            end = walk("L", p)
            result[p], result[end] = end, p
    for p in range(n, 2 * n):
        if result[p] < 0:
            end = walk("R", p)
            result[p], result[end] = end, p

    loops = 0
    for m in range(n):
        if used_mid[m]:
            continue
        loops += 1
        p = m
        while not used_mid[p]:
            used_mid[p] = True
            q = right[p]  # left side of `right`, stays in the middle column
            used_mid[q] = True
            p = left[q + n] - n
    return tuple(result), loops


def evaluate(w: TLWord) -> TLDiagram:
    n = w.strands
    pairing = identity_pairing(n)
    loops = 0
    for g in w.gens:
        pairing, closed = compose(pairing, generator_pairing(n, g), n)
        loops += closed
    return TLDiagram(n, pairing, loops)


def all_diagrams(n: int) -> set[tuple[int, ...]]:
    """Every pairing reachable as a product of generators (identity included)."""
    seen = {identity_pairing(n)}
    frontier = deque(seen)
    gens = [generator_pairing(n, i) for i in range(1, n)]
    while frontier:
        d = frontier.popleft()
        for g in gens:
            e, _ = compose(d, g, n)
            if e not in seen:
                seen.add(e)
                frontier.append(e)
    return seen


def catalan(n: int) -> int:
    if n < 0:
        raise TLError("catalan is defined for n >= 0")
    return comb(2 * n, n) // (n + 1)


# -- moves ------------------------------------------------------------------


@dataclass(frozen=True)
class TLMove:
    kind: str
    site: int

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise TLError(f"unknown move kind {self.kind!r}")

    def __str__(self) -> str:
        return f"{self.kind}@{self.site}"


def apply_move(w: TLWord, m: TLMove) -> TLWord:
    g = list(w.gens)
    n = w.strands
    s = m.site - 1

    def need(length: int) -> None:
        if s < 0 or s + length > len(g):
            raise MoveInapplicable(f"{m} does not fit in a word of length {len(g)}")

    if m.kind == A_PLUS:
        need(1)
        new = g[: s + 1] + [g[s]] + g[s + 1 :]
    elif m.kind == A_MINUS:
        need(2)
        if g[s] != g[s + 1]:
            raise MoveInapplicable(f"{m}: e{g[s]} e{g[s + 1]} is not a square")
        new = g[: s + 1] + g[s + 2 :]
    elif m.kind in (B_PLUS_UP, B_PLUS_DOWN):
        need(1)
        other = g[s] + (1 if m.kind == B_PLUS_UP else -1)
        if not 1 <= other <= n - 1:
            raise MoveInapplicable(f"{m}: e{other} does not exist on {n} strands")
        new = g[: s + 1] + [other, g[s]] + g[s + 1 :]
    elif m.kind in (B_MINUS_UP, B_MINUS_DOWN):
        need(3)
        step = 1 if m.kind == B_MINUS_UP else -1
        if not (g[s] == g[s + 2] and g[s + 1] == g[s] + step):
            raise MoveInapplicable(f"{m}: pattern e{g[s]} e{g[s + 1]} e{g[s + 2]} does not match")
        new = g[: s + 1] + g[s + 3 :]
    else:
        need(2)
        if abs(g[s] - g[s + 1]) < 2:
            raise MoveInapplicable(f"{m}: e{g[s]} and e{g[s + 1]} do not commute")
        new = g[:s] + [g[s + 1], g[s]] + g[s + 2 :]
    return TLWord(n, tuple(new))


@dataclass(frozen=True)
class TLPath:
    words: tuple[TLWord, ...]
    moves: tuple[TLMove, ...] = ()

    def __post_init__(self):
        if len(self.words) != len(self.moves) + 1:
            raise TLError("a path has exactly one more word than moves")

    @property
    def start(self) -> TLWord:
        return self.words[0]

    @property
    def final(self) -> TLWord:
        return self.words[-1]

    def __len__(self) -> int:
        return len(self.moves)

    def is_monotone_decreasing(self) -> bool:
        return all(len(a) >= len(b) for a, b in zip(self.words, self.words[1:]))

    def is_valid(self) -> bool:
        return all(apply_move(w, m) == nxt for w, m, nxt in zip(self.words, self.moves, self.words[1:]))


class _PathBuilder:
    def __init__(self, w: TLWord):
        self.words = [w]
        self.moves: list[TLMove] = []

    @property
    def gens(self) -> tuple[int, ...]:
        return self.words[-1].gens

    def move(self, kind: str, site: int) -> None:
        m = TLMove(kind, site)
        self.words.append(apply_move(self.words[-1], m))
        self.moves.append(m)

    def path(self) -> TLPath:
        return TLPath(tuple(self.words), tuple(self.moves))


# -- Jones normal form --------------------------------------------------------


@dataclass(frozen=True)
class JNFTuple:
    """Runs ``(i, j)`` standing for the decreasing products ``e_i e_{i-1} ... e_j``."""

    runs: tuple[tuple[int, int], ...] = ()

    def is_valid(self, n: int) -> bool:
        prev_i = prev_j = 0
        for i, j in self.runs:
            if not (prev_i < i < n and prev_j < j < n and j <= i):
                return False
            prev_i, prev_j = i, j
        return True

    def gens(self) -> tuple[int, ...]:
        return tuple(x for i, j in self.runs for x in range(i, j - 1, -1))

    def word(self, n: int) -> TLWord:
        return TLWord(n, self.gens())


def decreasing_runs(gens: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for g in gens:
        if runs and runs[-1][1] - 1 == g:
            runs[-1] = (runs[-1][0], g)
        else:
            runs.append((g, g))
    return runs


def is_jnf(w: TLWord) -> JNFTuple | None:
    t = JNFTuple(tuple(decreasing_runs(w.gens)))
    return t if t.is_valid(w.strands) else None


def _jnf_tuples(n: int, h: int | None) -> Iterator[JNFTuple]:
    def extend(prefix, last_i, last_j, remaining):
        if h is None or remaining == 0:
            yield JNFTuple(tuple(prefix))
            if h is not None:
                return
        for i in range(last_i + 1, n):
            for j in range(last_j + 1, i + 1):
                size = i - j + 1
                if h is not None and size > remaining:
                    continue
                prefix.append((i, j))
                yield from extend(prefix, i, j, None if h is None else remaining - size)
                prefix.pop()

    yield from extend([], 0, 0, h)


def enumerate_jnf(n: int, h: int) -> list[TLWord]:
    """All words on ``n`` strands in Jones normal form with exactly ``h`` letters."""
    if n < 2 or h < 0:
        raise TLError("need n >= 2 and h >= 0")
    return [t.word(n) for t in _jnf_tuples(n, h)]


@lru_cache(maxsize=None)
def _jnf_by_pairing(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    table = {}
    for t in _jnf_tuples(n, None):
        gens = t.gens()
        table[evaluate(TLWord(n, gens)).pairing] = gens
    return table


def _reducible_pair(gens: Sequence[int]) -> tuple[int, int, int | None] | None:
    """Find two consecutive occurrences of a letter that can be brought together.

    Returns ``(p, q, r)``: positions of the two copies and, for the ``b``-type
    pattern, the position of the single non-commuting letter between them.
    """
    for p, a in enumerate(gens):
        blockers = []
        for q in range(p + 1, len(gens)):
            x = gens[q]
            if x == a:
                if not blockers:
                    return p, q, None
                if len(blockers) == 1:
                    return p, q, blockers[0]
                break
            if abs(x - a) == 1:
                blockers.append(q)
                if len(blockers) > 1:
                    break
    return None


def reduce_to_jnf(w: TLWord) -> TLPath:
    """A monotone decreasing path of moves from ``w`` to its Jones normal form.

    First every shortening move is applied, where commuting letters are
    shuffled out of the way to expose ``e_i e_i`` or ``e_i e_{i+-1} e_i``;
    the word that remains has minimal length, and commutations alone carry
    it to the normal form.
    """
    b = _PathBuilder(w)
    while (found := _reducible_pair(b.gens)) is not None:
        p, q, r = found
        if r is None:
            for pos in range(q, p + 1, -1):
                b.move(COMMUTE, pos)  # swap pos-1, pos (0-based) -> site pos
            b.move(A_MINUS, p + 1)
        else:
            for pos in range(p, r - 1):
                b.move(COMMUTE, pos + 1)
            for pos in range(q, r + 1, -1):
                b.move(COMMUTE, pos)
            kind = B_MINUS_UP if b.gens[r] == b.gens[r - 1] + 1 else B_MINUS_DOWN
            b.move(kind, r)

    target = _jnf_by_pairing(w.strands)[evaluate(b.words[-1]).pairing]
    for k, letter in enumerate(target):
        cur = b.gens
        pos = cur.index(letter, k)
        if any(abs(x - letter) < 2 for x in cur[k:pos]):
            raise AssertionError(f"{cur} is not a commutation rearrangement of {target}")
        for s in range(pos, k, -1):
            b.move(COMMUTE, s)
    if b.gens != target:
        raise AssertionError(f"reduction of {w} stopped at {b.gens}, expected {target}")
    return b.path()


def jnf(w: TLWord) -> TLWord:
    return reduce_to_jnf(w).final


# -- restricted moves -----------------------------------------------------------


def d_moves(gens: tuple[int, ...], n: int) -> Iterator[tuple[TLMove, tuple[int, ...]]]:
    """Moves of the three restricted types, ordered by site.

    D1 squares away ``e_{n-1}``, D2 commutes distant letters and D3 is
    ``e_i e_{i-1} e_i -> e_i`` for ``i >= 2``.
    """
    top = n - 1
    for s in range(len(gens)):
        a = gens[s]
        if s + 1 < len(gens):
            b = gens[s + 1]
            if a == b == top:
                yield TLMove(A_MINUS, s + 1), gens[: s + 1] + gens[s + 2 :]
            if abs(a - b) >= 2:
                yield TLMove(COMMUTE, s + 1), gens[:s] + (b, a) + gens[s + 2 :]
        if s + 2 < len(gens) and a >= 2 and gens[s + 1] == a - 1 and gens[s + 2] == a:
            yield TLMove(B_MINUS_DOWN, s + 1), gens[: s + 1] + gens[s + 3 :]


def d_move_reduce(w: TLWord) -> TLPath | None:
    """Breadth-first search for a path to Jones normal form using only D1/D2/D3."""
    n = w.strands
    start = w.gens
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], TLMove] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if is_jnf(TLWord(n, cur)) is not None:
            moves = []
            words = [cur]
            while parent[words[-1]] is not None:
                prev, m = parent[words[-1]]
                moves.append(m)
                words.append(prev)
            words.reverse()
            moves.reverse()
            return TLPath(tuple(TLWord(n, x) for x in words), tuple(moves))
        for m, nxt in d_moves(cur, n):
            if nxt not in parent:
                parent[nxt] = (cur, m)
                queue.append(nxt)
    return None


def d_move_type(m: TLMove) -> str:
    return {A_MINUS: "D1", COMMUTE: "D2", B_MINUS_DOWN: "D3"}[m.kind]
