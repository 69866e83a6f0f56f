"""Distinguished Gaussian-elimination isomorphisms on ``CKh(ft_n^k)``.

Two patterns give isomorphism components of the differential, both
supported on a window of crossings ``init < fin`` carrying the same
generator ``i`` with ``fin - init = n - 1``:

* **G1** (split, then keep the ``-`` copy of the new loop): ``init`` is
  barred, ``fin`` is not; barring ``fin`` creates a loop bounded exactly by
  ``init`` and ``fin``, and the target marks it ``-``.
* **G2** (keep the ``+`` copy, then merge): both ends are barred and bound a
  loop marked ``+``; barring the single ``s_{i+1}`` between them merges
  that loop into its neighbour.

The selection scan walks enhanced states by homological degree and picks
at most one isomorphism per state.  The chosen set is only usable for
simultaneous elimination when the connecting-map graph over it is acyclic,
so :func:`whittle` checks that before reporting survivors.
"""

from __future__ import annotations

import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field

from .braids import BraidWord
from .states import (
    MINUS,
    PLUS,
    UNIT,
    EnhancedState,
    KauffmanState,
    MergeSplitKind,
    differential_components,
    enumerate_enhanced,
    gradings,
    resolve,
    saddle,
)

log = logging.getLogger(__name__)

G1 = "G1"
G2 = "G2"


class WhittleError(ValueError):
    pass


class UnsupportedBraid(WhittleError):
    """Whittling is only defined for the torus braids ``ft_n^k``."""


class CycleDetected(RuntimeError):
    def __init__(self, cycle: list[int]):
        super().__init__(f"connecting-map graph has a cycle: {cycle}")
        self.cycle = cycle


@dataclass(frozen=True)
class GEIsomorphism:
    kind: str
    source: EnhancedState
    target: EnhancedState
    init: int
    fin: int
    active: int

    def record(self) -> dict:
        return {
            "kind": self.kind,
            "source": {"bars": self.source.bars, "marks": self.source.marks},
            "target": {"bars": self.target.bars, "marks": self.target.marks},
            "init": self.init,
            "fin": self.fin,
            "active": self.active,
        }


def _require_torus(b: BraidWord) -> None:
    if b.torus_power() is None:
        raise UnsupportedBraid(f"braid {b.to_text()!r} on {b.strands} strands is not a torus braid ft_n^k")


def _loop_between(e: EnhancedState, init: int, fin: int) -> int | None:
    for lp in resolve(e.state).loops:
        if lp.left_crossing == init and lp.right_crossing == fin:
            return lp.id
    return None


def detect_iso_at(e: EnhancedState, init: int, fin: int) -> GEIsomorphism | None:
    """The G1 or G2 isomorphism with source ``e`` supported on ``[init, fin]``, if any."""
    s = e.state
    b = s.braid
    if fin - init != b.strands - 1 or not 1 <= init < fin <= len(b):
        raise WhittleError(f"window ({init}, {fin}) is not a GE window for {b.strands} strands")
    if b.letter(init) != b.letter(fin):
        raise WhittleError(f"crossings {init} and {fin} carry different generators")
    if not s.is_barred(init):
        raise WhittleError(f"init crossing {init} is not barred in {s.bars}")

    if not s.is_barred(fin):
        sd = saddle(s, fin)
        if sd.kind not in (MergeSplitKind.SPLIT_LOOP, MergeSplitKind.ARC_SPLITS_LOOP):
            return None
        t = s.with_bar(fin)
        new = [k for k in sd.target if _bounds(t, k) == (init, fin)]
        if not new:
            return None
        if len(new) > 1:
            raise AssertionError(f"two loops bounded by ({init}, {fin}) in {t.bars}")
        (c,) = new
        for comp in differential_components(e):
            if comp.crossing == fin and comp.coefficient == UNIT and comp.target.marks[c] == MINUS:
                return GEIsomorphism(G1, e, comp.target, init, fin, fin)
        return None

    c = _loop_between(e, init, fin)
    if c is None or e.marks[c] != PLUS:
        return None
    i = b.letter(init)
    between = [p for p in range(init + 1, fin) if b.letter(p) == i + 1]
    if not between:
        return None
    if len(between) != 1:
        raise AssertionError(f"generator {i + 1} occurs {len(between)} times in ({init}, {fin})")
    (active,) = between
    if s.is_barred(active):
        return None
    sd = saddle(s, active)
    if c not in sd.source or sd.kind not in (MergeSplitKind.MERGE_LOOPS, MergeSplitKind.LOOP_INTO_ARC):
        return None
    for comp in differential_components(e):
        if comp.crossing == active and comp.coefficient == UNIT:
            return GEIsomorphism(G2, e, comp.target, init, fin, active)
    return None


def _bounds(s: KauffmanState, loop_id: int) -> tuple[int, int]:
    lp = resolve(s).loops[loop_id]
    return lp.left_crossing, lp.right_crossing


@dataclass
class Selection:
    isomorphisms: list[GEIsomorphism]
    collisions: list[tuple[EnhancedState, int, EnhancedState]] = field(default_factory=list)


def scan(b: BraidWord) -> Selection:
    """Run the selection scan, also reporting skipped windows whose target was taken."""
    _require_torus(b)
    n, length = b.strands, len(b)
    claimed: dict[EnhancedState, GEIsomorphism] = {}
    chosen: list[GEIsomorphism] = []
    collisions = []
    for e in enumerate_enhanced(b):
        if e in claimed:
            continue
        for start in range(1, length - n + 2):
            if not e.state.is_barred(start):
                continue
            iso = detect_iso_at(e, start, start + n - 1)
            if iso is None:
                continue
            if iso.target in claimed:
                log.warning("target %s already claimed; %s skips window %d", iso.target, e, start)
                collisions.append((e, start, iso.target))
                continue
            claimed[iso.target] = iso
            chosen.append(iso)
            break
    return Selection(chosen, collisions)


def select_distinguished(b: BraidWord) -> list[GEIsomorphism]:
    return scan(b).isomorphisms


@dataclass
class WhittleGraph:
    vertices: list[GEIsomorphism]
    edges: list[tuple[int, int, int]]  # (from, to, crossing)

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.vertices]
        for u, v, _ in self.edges:
            out[u].append(v)
        return out


def build_graph(isos: list[GEIsomorphism]) -> WhittleGraph:
    """Edge ``u -> v`` when some nonzero component runs from ``u``'s source to ``v``'s target."""
    by_target = {iso.target: k for k, iso in enumerate(isos)}
    edges = []
    for u, iso in enumerate(isos):
        seen = set()
        for comp in differential_components(iso.source):
            v = by_target.get(comp.target)
            if v is None or v == u or v in seen:
                continue
            seen.add(v)
            edges.append((u, v, comp.crossing))
    return WhittleGraph(list(isos), edges)


def topological_order(g: WhittleGraph) -> list[int] | None:
    """Kahn's algorithm, always taking the smallest available vertex; ``None`` on a cycle."""
    succ = g.successors()
    indeg = [0] * len(g.vertices)
    for u, v, _ in g.edges:
        indeg[v] += 1
    ready = [v for v, d in enumerate(indeg) if d == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        u = heapq.heappop(ready)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(ready, v)
    return order if len(order) == len(g.vertices) else None


def find_cycle(g: WhittleGraph) -> list[int] | None:
    """A directed cycle ``[v0, v1, ..., v0]`` if one exists."""
    succ = g.successors()
    colour = [0] * len(g.vertices)  # 0 new, 1 on stack, 2 done
    for root in range(len(g.vertices)):
        if colour[root]:
            continue
        stack = [(root, iter(sorted(succ[root])))]
        path = [root]
        colour[root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[u] = 2
                stack.pop()
                path.pop()
            elif colour[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif colour[nxt] == 0:
                colour[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(sorted(succ[nxt]))))
    return None


@dataclass
class WhittledComplex:
    braid: BraidWord
    survivors: dict[int, list[EnhancedState]]
    cancelled: list[GEIsomorphism]
    elimination_order: list[int]
    graph: WhittleGraph
    collisions: list = field(default_factory=list)

    def all_survivors(self) -> list[EnhancedState]:
        return [e for h in sorted(self.survivors) for e in self.survivors[h]]

    def survivor_states(self, h: int) -> list[KauffmanState]:
        """Distinct Kauffman states among the survivors in degree ``h``."""
        return list(dict.fromkeys(e.state for e in self.survivors.get(h, [])))


def whittle(b: BraidWord) -> WhittledComplex:
    sel = scan(b)
    isos = sel.isomorphisms
    graph = build_graph(isos)
    order = topological_order(graph)
    if order is None:
        raise CycleDetected(find_cycle(graph))
    matched = {iso.source for iso in isos} | {iso.target for iso in isos}
    survivors: dict[int, list[EnhancedState]] = defaultdict(list)
    for e in enumerate_enhanced(b):
        if e not in matched:
            survivors[gradings(e)[0]].append(e)
    return WhittledComplex(
        braid=b,
        survivors=dict(survivors),
        cancelled=[isos[k] for k in order],
        elimination_order=order,
        graph=graph,
        collisions=sel.collisions,
    )
