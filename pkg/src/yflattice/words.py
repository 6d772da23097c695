"""Fibonacci words: the vertices of the Young-Fibonacci lattice.

A word is a finite string over {1, 2}; its rank is the digit sum.  Words are
displayed leftmost-first (``"222121112"``) but stored rightmost-first, because
every statistic used downstream (positions of 2's, block ranks, monomial
order) is read from the right end.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

EMPTY_TEXT = "e"
_WORD_RE = re.compile(r"[12]+")


class WordError(ValueError):
    """Raised for malformed word text or inconsistent word arguments."""


class FibWord:
    """Immutable Fibonacci word.

    ``digits`` is rightmost-first: ``digits[0]`` is the rightmost letter.
    Ordering is lexicographic on the leftmost-first spelling with '1' < '2',
    which is the canonical order within a level.
    """

    __slots__ = ("digits", "rank", "text")

    def __init__(self, digits: Iterable[int] = ()):
        digits = tuple(digits)
        for d in digits:
            if d != 1 and d != 2:
                raise WordError(f"digit {d!r} is not 1 or 2")
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "rank", sum(digits))
        object.__setattr__(self, "text", "".join("12"[d - 1] for d in reversed(digits)))

    @classmethod
    def _from_text(cls, text: str) -> "FibWord":
        w = object.__new__(cls)
        object.__setattr__(w, "text", text)
        object.__setattr__(w, "digits", tuple(1 if c == "1" else 2 for c in reversed(text)))
        object.__setattr__(w, "rank", sum(w.digits))
        return w

    def __setattr__(self, name, value):
        raise AttributeError("FibWord is immutable")

    def __str__(self) -> str:
        return self.text or EMPTY_TEXT

    def __repr__(self) -> str:
        return f"FibWord({str(self)!r})"

    def __len__(self) -> int:
        return len(self.digits)

    def __eq__(self, other) -> bool:
        return isinstance(other, FibWord) and self.text == other.text

    def __lt__(self, other: "FibWord") -> bool:
        return self.text < other.text

    def __hash__(self) -> int:
        return hash(self.text)

    def __reduce__(self):
        return (FibWord, (self.digits,))

    def __add__(self, other: "FibWord") -> "FibWord":
        # leftmost-first concatenation: self on the left
        return FibWord._from_text(self.text + other.text)

    @property
    def leftmost(self) -> int | None:
        return self.digits[-1] if self.digits else None

    def prepend(self, letters: str) -> "FibWord":
        """Word with ``letters`` (leftmost-first text) put at the left end."""
        return FibWord._from_text(letters + self.text)

    def drop_left(self, count: int = 1) -> "FibWord":
        return FibWord._from_text(self.text[count:])

    def rightmost(self, count: int) -> "FibWord":
        """The word made of the rightmost ``count`` letters."""
        return FibWord._from_text(self.text[len(self.text) - count:] if count else "")


EMPTY = FibWord()


def word(text: str | FibWord) -> FibWord:
    """Lenient constructor used internally: accepts FibWord, "e" or "" for empty."""
    if isinstance(text, FibWord):
        return text
    if text in ("", EMPTY_TEXT):
        return EMPTY
    return parse_word(text)


def parse_word(text: str) -> FibWord:
    """Parse ``e`` or a nonempty leftmost-first string over {1, 2}."""
    if not isinstance(text, str):
        raise WordError(f"expected a string, got {type(text).__name__}")
    if text == EMPTY_TEXT:
        return EMPTY
    if text == "":
        raise WordError('empty string is not a word; spell the empty word "e"')
    if not _WORD_RE.fullmatch(text):
        raise WordError(f"malformed word {text!r}: expected 'e' or [12]+")
    return FibWord._from_text(text)


@dataclass(frozen=True)
class WordStats:
    rank: int
    head_length: int
    leading_ones: int
    epsilon: int
    two_positions: tuple[int, ...]


def two_positions(v: FibWord) -> tuple[int, ...]:
    """Positions of the 2's, increasing; a 2 with subword u to its right sits at |u|+1."""
    out = []
    r = 0
    for d in v.digits:
        if d == 2:
            out.append(r + 1)
        r += d
    return tuple(out)


def head_length(v: FibWord) -> int:
    t = v.text
    return len(t) - len(t.lstrip("2"))


def leading_ones(v: FibWord) -> int:
    """m(v): the number of 1's at the left end."""
    t = v.text
    return len(t) - len(t.lstrip("1"))


def epsilon(v: FibWord) -> int:
    return -1 if v.digits and v.digits[0] == 2 else 1


def word_stats(v: FibWord) -> WordStats:
    return WordStats(
        rank=v.rank,
        head_length=head_length(v),
        leading_ones=leading_ones(v),
        epsilon=epsilon(v),
        two_positions=two_positions(v),
    )


def run_lengths(v: FibWord) -> list[int]:
    """[k_0, k_1, ..., k_t] for v = 1^{k_t} 2 1^{k_{t-1}} ... 2 1^{k_0}."""
    runs = [0]
    for d in v.digits:
        if d == 1:
            runs[-1] += 1
        else:
            runs.append(0)
    return runs


def from_run_lengths(runs: Sequence[int]) -> FibWord:
    """Inverse of :func:`run_lengths`."""
    parts = ["1" * runs[-1]]
    for k in reversed(runs[:-1]):
        parts.append("2" + "1" * k)
    return FibWord._from_text("".join(parts))


def from_positions(positions: Iterable[int], rank: int | None = None) -> FibWord:
    """Word whose 2's sit at ``positions``, left-padded with 1's up to ``rank``."""
    digits: list[int] = []
    r = 0
    for p in sorted(positions):
        if p < r + 1:
            raise WordError(f"positions {sorted(positions)} overlap (gaps must be >= 2)")
        digits.extend([1] * (p - 1 - r))
        digits.append(2)
        r = p + 1
    if rank is not None:
        if rank < r:
            raise WordError(f"rank {rank} too small for positions")
        digits.extend([1] * (rank - r))
    return FibWord(digits)


@lru_cache(maxsize=1 << 16)
def successors(v: FibWord) -> frozenset[FibWord]:
    """Covers of v: prepend 1; turn the first 1 into 2; insert 1 after any head 2."""
    t = v.text
    out = {FibWord._from_text("1" + t)}
    i = t.find("1")
    if i >= 0:
        out.add(FibWord._from_text(t[:i] + "2" + t[i + 1:]))
    for j in range(1, head_length(v) + 1):
        out.add(FibWord._from_text(t[:j] + "1" + t[j:]))
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def predecessors(v: FibWord) -> frozenset[FibWord]:
    """Words covered by v: drop the leftmost 1; turn any head 2 into 1."""
    t = v.text
    out = set()
    i = t.find("1")
    if i >= 0:
        out.add(FibWord._from_text(t[:i] + t[i + 1:]))
    for j in range(head_length(v)):
        out.add(FibWord._from_text(t[:j] + "1" + t[j + 1:]))
    return frozenset(out)


def dim_product(v: FibWord) -> int:
    """d(v): product of the positions of the 2's (number of saturated chains from e)."""
    return math.prod(two_positions(v))


def z_value(v: FibWord) -> int:
    runs = run_lengths(v)
    z = math.factorial(runs[-1])
    for k in runs[:-1]:
        z *= (k + 2) * math.factorial(k)
    return z


def block_data(v: FibWord) -> tuple[list[int], list[int]]:
    """(block ranks, inverse block ranks), both indexed from the right.

    Block ranks are (k_0+2, ..., k_{t-1}+2, k_t); inverse block ranks are
    (k_t+2, ..., k_1+2, k_0).  Entry 0 is the size of the rightmost piece in
    the corresponding splitting.
    """
    runs = run_lengths(v)
    block = [k + 2 for k in runs[:-1]] + [runs[-1]]
    # inverse: n_0 = k_0, n_j = k_j + 2 for j = 1..t; listed n_0 first
    inverse = [runs[0]] + [k + 2 for k in runs[1:]]
    return block, inverse


def split(v: FibWord, parts: Sequence[int]) -> list[FibWord] | None:
    """Cut v into pieces of the given ranks, reading ``parts[0]`` from the right.

    Returns [v_0, v_1, ..., v_t] (v_0 rightmost) or None when a cut would
    fall inside a 2.
    """
    if any(p < 0 for p in parts):
        raise WordError(f"negative part in {list(parts)}")
    if sum(parts) != v.rank:
        raise WordError(f"parts {list(parts)} do not sum to rank {v.rank}")
    pieces = []
    digits = v.digits
    i = 0
    for p in parts:
        budget = p
        start = i
        while budget > 0:
            budget -= digits[i]
            i += 1
        if budget < 0:
            return None
        pieces.append(FibWord(digits[start:i]))
    return pieces
