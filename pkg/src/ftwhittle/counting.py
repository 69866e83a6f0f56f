"""Counting formulas for whittled generators and survivor classification."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .tl import TLPath, TLWord, catalan, d_move_reduce, enumerate_jnf

FORM1 = "Form1"
FORM2 = "Form2"


def ordered_partitions(n: int, k: int) -> int:
    """Number of ways to write ``n`` as an ordered sum of ``k`` positive integers.

    ``p(0, m)`` is taken to be 1, the convention used when summing over all
    part counts up to a degree.
    """
    if n < 0 or k < 0:
        raise ValueError("ordered_partitions needs n, k >= 0")
    if n == 0:
        return 1
    if k == 0:
        return 0
    return comb(n - 1, k - 1)


def formula_N(n: int, h: int) -> int:
    """``sum_{k <= h} C(n-1, k) p(h, k)``: an upper estimate of JNF words of length ``h``."""
    if n < 2 or h < 0:
        raise ValueError("formula_N needs n >= 2, h >= 0")
    return sum(comb(n - 1, k) * ordered_partitions(h, k) for k in range(h + 1))


def jnf_count(n: int, h: int) -> int:
    return len(enumerate_jnf(n, h))


@dataclass(frozen=True)
class BoundTerms:
    partitions: int
    jnf_words: int
    catalan_part: int

    @property
    def total(self) -> int:
        return self.partitions + self.jnf_words + self.catalan_part


def count_bound_terms(n: int, k: int, h: int, two_part_of: int | None = None) -> BoundTerms:
    """Terms of ``sum_{m<=h} p(h,m) + N(n,h) + (p(n,2) + 2) C_n``.

    ``two_part_of`` replaces the first argument of ``p(., 2)``; by default it
    is ``n`` as printed, ``k`` gives the variant matching ``k_0 + k_1 <= k``.
    """
    if n < 2 or k < 1 or h < 0:
        raise ValueError("count_bound needs n >= 2, k >= 1, h >= 0")
    split = n if two_part_of is None else two_part_of
    return BoundTerms(
        partitions=sum(ordered_partitions(h, m) for m in range(h + 1)),
        jnf_words=formula_N(n, h),
        catalan_part=(ordered_partitions(split, 2) + 2) * catalan(n),
    )


def count_bound(n: int, k: int, h: int) -> int:
    return count_bound_terms(n, k, h).total


# -- survivor classification ------------------------------------------------------


@dataclass(frozen=True)
class SurvivorForm:
    variant: str
    exponents: tuple[int, ...] = ()
    tails: tuple[tuple[int, ...], ...] = ()
    path: TLPath | None = None


def _blocks(gens: tuple[int, ...], top: int) -> list[tuple[bool, tuple[int, ...]]]:
    out: list[tuple[bool, list[int]]] = []
    for g in gens:
        is_top = g == top
        if out and out[-1][0] == is_top:
            out[-1][1].append(g)
        else:
            out.append((is_top, [g]))
    return [(t, tuple(xs)) for t, xs in out]


def parse_form1(w: TLWord) -> SurvivorForm | None:
    """Match ``e_{n-1}^{k_0} V_0 e_{n-1}^{k_1} V_1 ...`` with ``k_j >= 2`` between tails.

    The word is cut at its maximal ``e_{n-1}`` blocks.  Each piece between
    blocks must be a consecutive ascending run ``e_a e_{a+1} ... e_{n-2}``;
    with the ``e_{n-1}`` that follows it this is a tail ``V_j``.  Blocks
    sitting between two runs need length at least 2; the first and last
    block are unrestricted, and a run may open or close the word.
    """
    top = w.strands - 1
    parts = _blocks(w.gens, top)
    if not any(is_top for is_top, _ in parts):
        return None
    exponents, tails = [], []
    for pos, (is_top, xs) in enumerate(parts):
        if is_top:
            internal = 0 < pos < len(parts) - 1
            if internal and len(xs) < 2:
                return None
            exponents.append(len(xs))
        else:
            if xs[-1] != top - 1 or any(b != a + 1 for a, b in zip(xs, xs[1:])):
                return None
            tails.append(xs + (top,))
    return SurvivorForm(FORM1, tuple(exponents), tuple(tails))


def classify_survivor(w: TLWord) -> SurvivorForm | None:
    form = parse_form1(w)
    if form is not None:
        return form
    path = d_move_reduce(w)
    if path is not None:
        return SurvivorForm(FORM2, path=path)
    return None
