"""Positive braid words and the torus braids ``ft_n^k = (s_1 s_2 ... s_{n-1})^k``.

Crossings are indexed from 1, left to right.  A crossing ``s_i`` involves
rows ``i`` and ``i + 1`` (rows counted from 1 at the bottom).
"""

from __future__ import annotations

from dataclasses import dataclass


class BraidError(ValueError):
    """Raised for malformed braid input (bad strand count, letter, or index)."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 2:
            raise BraidError(f"need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if not 1 <= x <= self.strands - 1:
                raise BraidError(f"letter {x} out of range 1..{self.strands - 1}")

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise BraidError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    @property
    def positive_crossings(self) -> int:
        return len(self.letters)

    @property
    def negative_crossings(self) -> int:
        return 0

    def letter(self, p: int) -> int:
        """Generator index of the crossing at 1-based position ``p``."""
        if not 1 <= p <= len(self.letters):
            raise BraidError(f"crossing index {p} out of range 1..{len(self.letters)}")
        return self.letters[p - 1]

    def torus_power(self) -> int | None:
        """Return ``k`` if this word is exactly ``ft_n^k``, else ``None``."""
        period = self.strands - 1
        if not self.letters or len(self.letters) % period:
            return None
        for p, x in enumerate(self.letters):
            if x != p % period + 1:
                return None
        return len(self.letters) // period

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    @classmethod
    def from_text(cls, text: str, strands: int) -> "BraidWord":
        return cls(strands, tuple(int(tok) for tok in text.split()))


def make_torus_braid(n: int, k: int) -> BraidWord:
    """The braid word ``(s_1 s_2 ... s_{n-1})^k`` on ``n`` strands."""
    if n < 2:
        raise BraidError(f"n must be >= 2, got {n}")
    if k < 1:
        raise BraidError(f"k must be >= 1, got {k}")
    return BraidWord(n, tuple(range(1, n)) * k)


def crossing_position(b: BraidWord, p: int) -> tuple[int, int]:
    """Horizontal and vertical position of crossing ``p``.

    The horizontal position is ``p`` itself; the vertical position is the
    lower of the two rows the crossing touches, i.e. its generator index.
    """
    return p, b.letter(p)
