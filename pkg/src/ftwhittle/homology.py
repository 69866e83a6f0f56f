"""Integer Khovanov homology of a braid closure, used as an independent check.

Nothing here reuses the left-to-right sweep of :mod:`ftwhittle.states`.
The closure is modelled directly as a graph on crossing ports: every
crossing has an ``in`` and an ``out`` port on each of its two rows, the
resolution joins ports inside the crossing, and the closed braid joins
each ``out`` port to the next ``in`` port on the same row, wrapping around.
Circles are the connected components of that graph.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from . import snf
from .braids import BraidWord
from .states import MINUS, PLAIN, PLUS, STANDARD, EnhancedState, enumerate_states, gradings, resolve

Laurent = dict[int, int]  # exponent of q -> coefficient, zero coefficients dropped

WORKERS_ENV = "FTWHITTLE_WORKERS"


class ComplexError(AssertionError):
    """Raised when ``d o d != 0``; that is a bug, never bad input."""


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# -- Laurent polynomial helpers ---------------------------------------------------


def laurent_add(a: Laurent, b: Laurent, scale: int = 1) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in sorted(out.items()) if c}


def laurent_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in sorted(out.items()) if c}


def laurent_str(a: Laurent) -> str:
    if not a:
        return "0"
    return " + ".join(f"{c}*q^{e}" for e, c in sorted(a.items()))


# -- closure circles -------------------------------------------------------------

IN_LO, IN_HI, OUT_LO, OUT_HI = range(4)


def _port(p: int, which: int) -> int:
    return 4 * (p - 1) + which


@lru_cache(maxsize=64)
def _closure_wires(b: BraidWord) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    """Wires joining crossings along each row of the closed braid, plus untouched rows."""
    by_row: dict[int, list[tuple[int, int, int]]] = {r: [] for r in range(1, b.strands + 1)}
    for p, i in enumerate(b.letters, start=1):
        by_row[i].append((p, IN_LO, OUT_LO))
        by_row[i + 1].append((p, IN_HI, OUT_HI))
    wires = []
    free = []
    for r, hits in by_row.items():
        if not hits:
            free.append(r)
            continue
        for (p, _, out), (q, inn, _) in zip(hits, hits[1:] + hits[:1]):
            wires.append((_port(p, out), _port(q, inn)))
    return tuple(wires), tuple(free)


@dataclass(frozen=True)
class ClosureState:
    """A Kauffman state of the closed braid with its circles in canonical order.

    Circles are sets of ports (or ``("free", row)`` for a row no crossing
    touches), sorted by minimal incident crossing and then strand.
    """

    braid: BraidWord
    bars: str
    circles: tuple[frozenset, ...]

    @property
    def rank(self) -> int:
        return self.bars.count("1")

    def circle_of(self, port: int) -> int:
        for k, c in enumerate(self.circles):
            if port in c:
                return k
        raise KeyError(port)


@lru_cache(maxsize=1 << 15)
def closure_state(b: BraidWord, bars: str) -> ClosureState:
    wires, free = _closure_wires(b)
    parent = list(range(4 * len(b)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(x, y):
        parent[find(x)] = find(y)

    for x, y in wires:
        join(x, y)
    for p, bit in enumerate(bars, start=1):
        if bit == "0":
            join(_port(p, IN_LO), _port(p, OUT_LO))
            join(_port(p, IN_HI), _port(p, OUT_HI))
        else:
            join(_port(p, IN_LO), _port(p, IN_HI))
            join(_port(p, OUT_LO), _port(p, OUT_HI))
    groups: dict[int, set[int]] = {}
    for x in range(len(parent)):
        groups.setdefault(find(x), set()).add(x)

    def key(ports):
        # port -> (crossing, row); ports 0/2 sit on the lower row of the crossing
        return min((x // 4 + 1, b.letters[x // 4] + (x % 2)) for x in ports)

    circles = sorted((frozenset(g) for g in groups.values()), key=key)
    circles += [frozenset({("free", r)}) for r in free]
    return ClosureState(b, bars, tuple(circles))


def closure_circle_count(b: BraidWord, bars: str) -> int:
    return len(closure_state(b, bars).circles)


# -- the cube complex -------------------------------------------------------------

Generator = tuple[str, str]  # (bars, marks over closure circles)


def _closure_gradings(b: BraidWord, bars: str, marks: str, convention: str) -> tuple[int, int]:
    cp, cm = b.positive_crossings, b.negative_crossings
    h = bars.count("1") - cm
    deg = marks.count(PLUS) - marks.count(MINUS)
    shift = cp - cm if convention == PLAIN else cp - 2 * cm
    if convention not in (PLAIN, STANDARD):
        raise ValueError(f"unknown grading convention {convention!r}")
    return h, deg + h + shift


def _edge_images(src: ClosureState, tgt: ClosureState, p: int, marks: str) -> list[str]:
    """Images of ``marks`` under the merge or split at crossing ``p``."""
    touched = {_port(p, w) for w in range(4)}
    s_aff = [k for k, c in enumerate(src.circles) if c & touched]
    t_aff = [k for k, c in enumerate(tgt.circles) if c & touched]
    t_index = {c: k for k, c in enumerate(tgt.circles)}
    base = [""] * len(tgt.circles)
    for k, c in enumerate(src.circles):
        if k not in s_aff:
            base[t_index[c]] = marks[k]

    out = []
    if len(s_aff) == 2 and len(t_aff) == 1:  # m
        a, b = marks[s_aff[0]], marks[s_aff[1]]
        if a == MINUS and b == MINUS:
            return []
        base[t_aff[0]] = PLUS if a == b == PLUS else MINUS
        out.append("".join(base))
    elif len(s_aff) == 1 and len(t_aff) == 2:  # Delta
        x, y = t_aff
        pairs = [(PLUS, MINUS), (MINUS, PLUS)] if marks[s_aff[0]] == PLUS else [(MINUS, MINUS)]
        for u, v in pairs:
            base[x], base[y] = u, v
            out.append("".join(base))
    else:
        raise ComplexError(f"crossing {p} neither merges nor splits ({len(s_aff)} -> {len(t_aff)})")
    return out


@dataclass
class IntComplex:
    """Integer cube complex of a braid closure.

    ``basis[(h, q)]`` lists generators; ``differential[(h, q)]`` maps the
    row index of a generator in ``(h, q)`` to ``{column: entry}`` with
    columns indexing ``basis[(h + 1, q)]``.
    """

    braid: BraidWord
    convention: str
    basis: dict[tuple[int, int], list[Generator]]
    differential: dict[tuple[int, int], snf.SparseMatrix] = field(default_factory=dict)

    def degrees(self) -> list[int]:
        return sorted({h for h, _ in self.basis})

    def dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (h, _), gens in self.basis.items():
            out[h] = out.get(h, 0) + len(gens)
        return dict(sorted(out.items()))

    def check_d_squared(self) -> None:
        for (h, q), d in self.differential.items():
            nxt = self.differential.get((h + 1, q))
            if nxt and not snf.is_zero(snf.matmul(d, nxt)):
                raise ComplexError(f"d o d != 0 at (h, q) = ({h}, {q})")


def close_and_build(b: BraidWord, convention: str = PLAIN) -> IntComplex:
    basis: dict[tuple[int, int], list[Generator]] = {}
    for s in enumerate_states(b):
        cs = closure_state(b, s.bars)
        for marks in product(PLUS + MINUS, repeat=len(cs.circles)):
            m = "".join(marks)
            basis.setdefault(_closure_gradings(b, s.bars, m, convention), []).append((s.bars, m))
    basis = dict(sorted(basis.items()))
    index = {hq: {g: k for k, g in enumerate(gens)} for hq, gens in basis.items()}

    cx = IntComplex(b, convention, basis)
    for (h, q), gens in basis.items():
        tgt_index = index.get((h + 1, q))
        if tgt_index is None:
            continue
        d: snf.SparseMatrix = {}
        for row, (bars, marks) in enumerate(gens):
            src = closure_state(b, bars)
            entries: dict[int, int] = {}
            for p, bit in enumerate(bars, start=1):
                if bit == "1":
                    continue
                sign = -1 if bars[: p - 1].count("1") % 2 else 1
                tbars = bars[: p - 1] + "1" + bars[p:]
                tgt = closure_state(b, tbars)
                for tm in _edge_images(src, tgt, p, marks):
                    col = tgt_index[(tbars, tm)]
                    entries[col] = entries.get(col, 0) + sign
            entries = {c: v for c, v in entries.items() if v}
            if entries:
                d[row] = entries
        cx.differential[(h, q)] = d
    cx.check_d_squared()
    return cx


# -- homology ---------------------------------------------------------------------


@dataclass
class HomologySummary:
    free_ranks: dict[int, int]
    torsion: dict[int, list[int]]
    dims: dict[tuple[int, int], int]  # rational dimension per (h, q)
    graded_torsion: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def total_rank(self) -> int:
        return sum(self.free_ranks.values())

    def rational_dim(self, h: int) -> int:
        return self.free_ranks.get(h, 0)

    def euler(self) -> Laurent:
        out: Laurent = {}
        for (h, q), d in self.dims.items():
            out[q] = out.get(q, 0) + (-1) ** h * d
        return {e: c for e, c in sorted(out.items()) if c}

    def rows(self) -> list[dict]:
        keys = sorted(set(self.dims) | set(self.graded_torsion))
        return [
            {"h": h, "q": q, "rank": self.dims.get((h, q), 0), "torsion": self.graded_torsion.get((h, q), [])}
            for h, q in keys
            if self.dims.get((h, q), 0) or self.graded_torsion.get((h, q))
        ]


def _factors(m: snf.SparseMatrix) -> list[int]:
    return snf.invariant_factors(m)


def homology(c: IntComplex, workers: int | None = None) -> HomologySummary:
    workers = default_workers() if workers is None else workers
    keys = list(c.differential)
    mats = [c.differential[k] for k in keys]
    if workers > 1 and len(mats) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_factors, mats))
    else:
        results = [_factors(m) for m in mats]
    factors = dict(zip(keys, results))

    free: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    dims: dict[tuple[int, int], int] = {}
    graded_torsion: dict[tuple[int, int], list[int]] = {}
    for (h, q), gens in c.basis.items():
        out_rank = len(factors.get((h, q), []))
        incoming = factors.get((h - 1, q), [])
        d = len(gens) - out_rank - len(incoming)
        if d:
            dims[(h, q)] = d
        tors = [f for f in incoming if f > 1]
        if tors:
            graded_torsion[(h, q)] = tors
            torsion.setdefault(h, []).extend(tors)
        free[h] = free.get(h, 0) + d
    return HomologySummary(
        free_ranks=dict(sorted(free.items())),
        torsion={h: sorted(t) for h, t in sorted(torsion.items())},
        dims=dims,
        graded_torsion=graded_torsion,
    )


# -- Euler characteristics --------------------------------------------------------


def _bracket_term(h: int, shift: int, circles: int) -> Laurent:
    poly = {h + shift: (-1) ** h}
    for _ in range(circles):
        poly = laurent_mul(poly, {1: 1, -1: 1})
    return poly


def euler_state_sum(b: BraidWord, closed: bool = True, convention: str = PLAIN):
    """Signed state sum ``sum (-1)^h q^q`` in bracket form.

    Each Kauffman state contributes ``(-1)^h q^(h + shift) (q + 1/q)^c``.  For
    the closed braid ``c`` counts circles of the closure (internal loops plus
    cycles of the through pairing); the open version keeps only internal
    loops and files the term under the planar pairing of the resolution.
    """
    cp, cm = b.positive_crossings, b.negative_crossings
    shift = cp - cm if convention == PLAIN else cp - 2 * cm
    total: Laurent = {}
    by_pairing: dict[tuple[int, ...], Laurent] = {}
    for s in enumerate_states(b):
        res = resolve(s)
        h = s.rank - cm
        if closed:
            total = laurent_add(total, _bracket_term(h, shift, len(res.loops) + res.through.closure_cycles()))
        else:
            key = res.through.pairing
            by_pairing[key] = laurent_add(by_pairing.get(key, {}), _bracket_term(h, shift, len(res.loops)))
    if closed:
        return total
    return {k: v for k, v in sorted(by_pairing.items()) if v}


def signed_counts(states, convention: str = PLAIN) -> dict[tuple[int, ...], Laurent]:
    """``sum (-1)^h q^q`` over the given enhanced states, per planar pairing class."""
    out: dict[tuple[int, ...], Laurent] = {}
    for e in states:
        h, q = gradings(e, convention)
        key = resolve(e.state).through.pairing
        out[key] = laurent_add(out.get(key, {}), {q: (-1) ** h})
    return {k: v for k, v in sorted(out.items()) if v}


def survivor_capacity(survivors: list[EnhancedState]) -> int:
    """``sum 2^(closure cycles of the through pairing)`` over the given survivors."""
    return sum(2 ** resolve(e.state).through.closure_cycles() for e in survivors)
