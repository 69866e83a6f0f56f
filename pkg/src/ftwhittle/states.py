"""Kauffman states on a braid word, their resolutions and enhancements.

A Kauffman state is written as a string of ``0``/``1`` characters, one per
crossing; ``1`` ("barred") picks the 1-resolution, which replaces the
crossing ``s_i`` by the cup-cap diagram ``e_i``.  An enhanced state adds a
``+``/``-`` mark to every closed loop of the resolution, listed in the
order in which the loops close during a left-to-right sweep.

The single differential components between enhanced states follow the
Khovanov merge/split rules on closed loops.  Where an arc is involved the
component is recorded only up to its coefficient class (identity, dotted
identity or a bare saddle), which is all the Gaussian-elimination
bookkeeping needs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .braids import BraidWord
from .tl import TLDiagram, TLWord

PLUS = "+"
MINUS = "-"

UNIT = "unit"
DOTTED = "dotted"
SADDLE = "saddle"
ZERO = "zero"

PLAIN = "plain"
STANDARD = "standard"


class MergeSplitKind(enum.Enum):
    MERGE_LOOPS = "merge-loops"
    SPLIT_LOOP = "split-loop"
    LOOP_INTO_ARC = "loop-into-arc"
    ARC_SPLITS_LOOP = "arc-splits-loop"
    ARC_ARC = "arc-arc"


@dataclass(frozen=True)
class KauffmanState:
    braid: BraidWord
    bars: str

    def __post_init__(self):
        if len(self.bars) != len(self.braid) or set(self.bars) - {"0", "1"}:
            raise ValueError(f"bars {self.bars!r} do not fit a braid with {len(self.braid)} crossings")

    @property
    def rank(self) -> int:
        return self.bars.count("1")

    def is_barred(self, p: int) -> bool:
        return self.bars[p - 1] == "1"

    def with_bar(self, p: int, value: str = "1") -> "KauffmanState":
        return KauffmanState(self.braid, self.bars[: p - 1] + value + self.bars[p:])

    def barred_word(self) -> str:
        """Render as e.g. ``1 2̄ 1`` with combining overlines on barred letters."""
        return " ".join(
            f"{x}̄" if bit == "1" else str(x) for x, bit in zip(self.braid.letters, self.bars)
        )


@dataclass(frozen=True)
class Loop:
    id: int
    left_crossing: int
    right_crossing: int
    boundary: frozenset[int]
    key: frozenset[tuple[str, int]]


@dataclass(frozen=True)
class _Component:
    closed: bool
    key: frozenset[tuple[str, int]]
    strands: frozenset[tuple[int, int]]  # (crossing, row) of unbarred pass-throughs


@dataclass(frozen=True)
class Resolution:
    word: TLWord
    loops: tuple[Loop, ...]
    through: TLDiagram
    origin: tuple[int, ...]
    components: tuple[_Component, ...]  # loops first, in id order, then arcs


class _DisjointSets:
    def __init__(self):
        self.parent: list[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
        return ra


@lru_cache(maxsize=1 << 16)
def resolve(s: KauffmanState) -> Resolution:
    """Sweep the crossings left to right, tracking connected strand segments."""
    braid = s.braid
    n = braid.strands
    ds = _DisjointSets()
    pieces: dict[int, set[tuple[str, int]]] = {}
    strands: dict[int, set[tuple[int, int]]] = {}
    frontier = []
    for _ in range(n):
        x = ds.add()
        pieces[x], strands[x] = set(), set()
        frontier.append(x)
    left_ends = list(frontier)

    closed: list[tuple[int, set, set]] = []
    word, origin = [], []
    for p, (i, bit) in enumerate(zip(braid.letters, s.bars), start=1):
        lo, hi = i - 1, i
        if bit == "0":
            strands[ds.find(frontier[lo])].add((p, lo + 1))
            strands[ds.find(frontier[hi])].add((p, hi + 1))
            continue
        word.append(i)
        origin.append(p)
        ra, rb = ds.find(frontier[lo]), ds.find(frontier[hi])
        if ra == rb:
            pieces[ra].add(("cap", p))
            closed.append((p, pieces.pop(ra), strands.pop(ra)))
        else:
            root = ds.union(ra, rb)
            other = rb if root == ra else ra
            pieces[root] |= pieces.pop(other) | {("cap", p)}
            strands[root] |= strands.pop(other)
        c = ds.add()
        pieces[c], strands[c] = {("cup", p)}, set()
        frontier[lo] = frontier[hi] = c

    loops = []
    components = []
    for lid, (_, ps, st) in enumerate(closed):
        boundary = frozenset(p for _, p in ps)
        loops.append(Loop(lid, min(boundary), max(boundary), boundary, frozenset(ps)))
        components.append(_Component(True, frozenset(ps), frozenset(st)))

    ends: dict[int, list[int]] = {}
    for r, x in enumerate(left_ends):
        ends.setdefault(ds.find(x), []).append(r)
    for r, x in enumerate(frontier):
        ends.setdefault(ds.find(x), []).append(n + r)
    pairing = [0] * (2 * n)
    for root in sorted(ends, key=lambda rt: min(ends[rt])):
        a, b = ends[root]
        pairing[a], pairing[b] = b, a
        components.append(_Component(False, frozenset(pieces[root]), frozenset(strands[root])))

    return Resolution(
        word=TLWord(n, tuple(word)),
        loops=tuple(loops),
        through=TLDiagram(n, tuple(pairing), len(loops)),
        origin=tuple(origin),
        components=tuple(components),
    )


@dataclass(frozen=True)
class EnhancedState:
    state: KauffmanState
    marks: str = ""

    def __post_init__(self):
        if set(self.marks) - {PLUS, MINUS}:
            raise ValueError(f"marks must be '+'/'-', got {self.marks!r}")

    @property
    def bars(self) -> str:
        return self.state.bars

    @property
    def braid(self) -> BraidWord:
        return self.state.braid

    def sort_key(self) -> tuple[int, str, str]:
        return self.state.rank, self.state.bars, self.marks

    def __str__(self) -> str:
        return f"({self.bars}, {self.marks or 'ø'})"


def make_enhanced(s: KauffmanState, marks: str = "") -> EnhancedState:
    e = EnhancedState(s, marks)
    if len(marks) != len(resolve(s).loops):
        raise ValueError(f"state {s.bars} has {len(resolve(s).loops)} loops, got marks {marks!r}")
    return e


def gradings(e: EnhancedState, convention: str = PLAIN) -> tuple[int, int]:
    """Homological and quantum degree ``(h, q)`` of an enhanced state.

    ``h = r - c_-`` and ``q = (#plus - #minus) + h + c_+ - c_-``.  The
    ``standard`` convention subtracts ``2 c_-`` instead; the two agree on
    positive braids.
    """
    braid = e.braid
    cp, cm = braid.positive_crossings, braid.negative_crossings
    h = e.state.rank - cm
    deg = e.marks.count(PLUS) - e.marks.count(MINUS)
    if convention == PLAIN:
        return h, deg + h + cp - cm
    if convention == STANDARD:
        return h, deg + h + cp - 2 * cm
    raise ValueError(f"unknown grading convention {convention!r}")


def enumerate_states(b: BraidWord) -> Iterator[KauffmanState]:
    """All ``2^t`` states, grouped by number of bars, lexicographic within a group."""
    t = len(b)
    for r in range(t + 1):
        for bars in _choose_masks(t, r):
            yield KauffmanState(b, bars)


def _choose_masks(t: int, r: int) -> list[str]:
    out = []
    for ones in combinations(range(t), r):
        bits = ["0"] * t
        for p in ones:
            bits[p] = "1"
        out.append("".join(bits))
    return sorted(out)


def enumerate_enhanced(b: BraidWord) -> Iterator[EnhancedState]:
    """Every enhanced state, in state order and then marks with ``+`` before ``-``."""
    for s in enumerate_states(b):
        for marks in product(PLUS + MINUS, repeat=len(resolve(s).loops)):
            yield EnhancedState(s, "".join(marks))


# -- single differential components ----------------------------------------------


@dataclass(frozen=True)
class Saddle:
    """How the loops of a state change when one more crossing is barred.

    ``source`` and ``target`` list the affected loop ids on each side (arcs
    are not listed); ``carried`` maps each untouched source loop id to its
    target loop id.
    """

    kind: MergeSplitKind
    source: tuple[int, ...]
    target: tuple[int, ...]
    carried: tuple[tuple[int, int], ...]


@lru_cache(maxsize=1 << 17)
def saddle(s: KauffmanState, c: int) -> Saddle:
    if s.is_barred(c):
        raise ValueError(f"crossing {c} is already barred in {s.bars}")
    t = s.with_bar(c)
    rs, rt = resolve(s), resolve(t)
    i = s.braid.letter(c)
    touched = {(c, i), (c, i + 1)}
    src = [k for k, comp in enumerate(rs.components) if comp.strands & touched]
    tgt = [k for k, comp in enumerate(rt.components) if ("cap", c) in comp.key or ("cup", c) in comp.key]

    nloops_s, nloops_t = len(rs.loops), len(rt.loops)
    src_loops = tuple(k for k in src if k < nloops_s)
    tgt_loops = tuple(k for k in tgt if k < nloops_t)
    by_key = {rt.loops[k].key: k for k in range(nloops_t) if k not in tgt}
    carried = tuple((k, by_key[rs.loops[k].key]) for k in range(nloops_s) if k not in src)
    if len(carried) != nloops_s - len(src_loops):
        raise AssertionError("untouched loops failed to correspond across a saddle")

    if len(src) == 2 and len(tgt) == 1:
        if len(src_loops) == 2:
            kind = MergeSplitKind.MERGE_LOOPS
        elif len(src_loops) == 1:
            kind = MergeSplitKind.LOOP_INTO_ARC
        else:
            raise AssertionError("two arcs cannot merge into a single component")
    elif len(src) == 1 and len(tgt) == 2:
        if len(tgt_loops) == 2:
            kind = MergeSplitKind.SPLIT_LOOP
        elif len(tgt_loops) == 1 and not src_loops:
            kind = MergeSplitKind.ARC_SPLITS_LOOP
        else:
            raise AssertionError("a loop cannot split into a loop and an arc")
    elif len(src) == 2 and len(tgt) == 2 and not src_loops and not tgt_loops:
        kind = MergeSplitKind.ARC_ARC
    else:
        raise AssertionError(f"unexpected saddle shape {len(src)} -> {len(tgt)} at crossing {c}")
    return Saddle(kind, src_loops, tgt_loops, carried)


@dataclass(frozen=True)
class DifferentialComponent:
    target: EnhancedState
    crossing: int
    kind: MergeSplitKind
    coefficient: str


def _component_targets(marks: str, sd: Saddle, n_target: int) -> list[tuple[str, str]]:
    """Target markings reachable through a saddle, with their coefficient class."""
    base = [""] * n_target
    for a, b in sd.carried:
        base[b] = marks[a]

    def emit(assign: dict[int, str], coeff: str) -> tuple[str, str]:
        out = list(base)
        for k, v in assign.items():
            out[k] = v
        return "".join(out), coeff

    kind = sd.kind
    if kind is MergeSplitKind.MERGE_LOOPS:
        x, y = (marks[k] for k in sd.source)
        (m,) = sd.target
        if x == PLUS and y == PLUS:
            return [emit({m: PLUS}, UNIT)]
        if x == MINUS and y == MINUS:
            return []
        return [emit({m: MINUS}, UNIT)]
    if kind is MergeSplitKind.SPLIT_LOOP:
        (a,) = sd.source
        u, v = sd.target
        if marks[a] == PLUS:
            return [emit({u: PLUS, v: MINUS}, UNIT), emit({u: MINUS, v: PLUS}, UNIT)]
        return [emit({u: MINUS, v: MINUS}, UNIT)]
    if kind is MergeSplitKind.LOOP_INTO_ARC:
        (a,) = sd.source
        return [emit({}, UNIT if marks[a] == PLUS else DOTTED)]
    if kind is MergeSplitKind.ARC_SPLITS_LOOP:
        (u,) = sd.target
        return [emit({u: MINUS}, UNIT), emit({u: PLUS}, DOTTED)]
    return [emit({}, SADDLE)]


def differential_components(e: EnhancedState) -> list[DifferentialComponent]:
    """Nonzero single components of the differential leaving ``e``.

    One entry per (unbarred crossing, target marking).  Classes: ``unit``
    components are isomorphisms of the underlying arc pictures, ``dotted``
    ones carry a dot, ``saddle`` is an arc-arc saddle.  Zero components are
    omitted.
    """
    s = e.state
    out = []
    for c in range(1, len(s.bars) + 1):
        if s.is_barred(c):
            continue
        sd = saddle(s, c)
        t = s.with_bar(c)
        n_target = len(resolve(t).loops)
        for marks, coeff in _component_targets(e.marks, sd, n_target):
            out.append(DifferentialComponent(EnhancedState(t, marks), c, sd.kind, coeff))
    return out


def q_shift(coefficient: str) -> int:
    """Change in quantum degree along a nonzero component of the given class."""
    return {UNIT: 0, SADDLE: 1, DOTTED: 2}[coefficient]


def state_record(e: EnhancedState, convention: str = PLAIN) -> dict:
    """JSON-ready record of an enhanced state."""
    res = resolve(e.state)
    h, q = gradings(e, convention)
    return {
        "bars": e.bars,
        "marks": e.marks,
        "h": h,
        "q": q,
        "tl_word": list(res.word.gens),
        "loops": [{"l": lp.left_crossing, "r": lp.right_crossing} for lp in res.loops],
    }
