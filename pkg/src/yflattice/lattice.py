"""Levels, path counts, the Martin kernel and the up/down operators.

Functions on a level are dense vectors in the canonical level order
(lexicographic on leftmost-first spellings, '1' < '2').  The operators act on
formal combinations of vertices: ``U`` sends a vertex to the sum of its
covers (level n -> n+1) and ``D`` to the sum of the vertices it covers
(level n -> n-1), so that DU - UD = I.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .report import Report
from .words import EMPTY, FibWord, dim_product, predecessors, successors

DEFAULT_LEVEL_CAP = 30


class LevelCapError(ValueError):
    pass


@lru_cache(maxsize=None)
def fibonacci(n: int) -> int:
    """f_n with f_0 = f_1 = 1 (the size of level n)."""
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[FibWord, ...]:
    if n == 0:
        return (EMPTY,)
    if n == 1:
        return (FibWord((1,)),)
    ones = [w.prepend("1") for w in _level(n - 1)]
    twos = [w.prepend("2") for w in _level(n - 2)]
    return tuple(ones + twos)


def level(n: int, cap: int = DEFAULT_LEVEL_CAP) -> tuple[FibWord, ...]:
    """All words of rank n in canonical order."""
    if n < 0:
        raise ValueError(f"level must be >= 0, got {n}")
    if n > cap:
        raise LevelCapError(f"level {n} exceeds cap {cap} (f_{n} = {fibonacci(n)} vertices)")
    return _level(n)


@lru_cache(maxsize=None)
def level_index(n: int) -> dict[FibWord, int]:
    return {w: i for i, w in enumerate(level(n))}


def words_up_to(n: int) -> list[FibWord]:
    return [w for k in range(n + 1) for w in level(k)]


# -- path counting ----------------------------------------------------------

@lru_cache(maxsize=1 << 20)
def path_count(u: FibWord, v: FibWord) -> int:
    """d(u, v): number of saturated chains from u up to v (0 unless u <= v)."""
    if v.rank < u.rank:
        return 0
    if v.rank == u.rank:
        return int(u == v)
    return sum(path_count(u, x) for x in predecessors(v))


def dim(v: FibWord) -> int:
    return dim_product(v)


@lru_cache(maxsize=4096)
def paths_from(u: FibWord, n_max: int) -> dict[FibWord, int]:
    """d(u, w) for every w >= u with |w| <= n_max, by forward dynamic programming."""
    layer = {u: 1}
    out = dict(layer)
    for _ in range(u.rank, n_max):
        nxt: dict[FibWord, int] = {}
        for x, c in layer.items():
            for y in successors(x):
                nxt[y] = nxt.get(y, 0) + c
        out.update(nxt)
        layer = nxt
    return out


@lru_cache(maxsize=4096)
def paths_to(v: FibWord) -> dict[FibWord, int]:
    """d(u, v) for every u <= v, by backward dynamic programming."""
    layer = {v: 1}
    out = dict(layer)
    for _ in range(v.rank):
        nxt: dict[FibWord, int] = {}
        for x, c in layer.items():
            for y in predecessors(x):
                nxt[y] = nxt.get(y, 0) + c
        out.update(nxt)
        layer = nxt
    return out


@dataclass(frozen=True)
class KernelValue:
    numerator: int
    denominator: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def martin_kernel(v: FibWord, w: FibWord) -> KernelValue:
    """K(v, w) = d(v, w) / d(w)."""
    return KernelValue(path_count(v, w), dim(w))


# -- functions on a level ---------------------------------------------------

@dataclass(frozen=True)
class LevelFn:
    level: int
    values: tuple

    def __post_init__(self):
        expected = 0 if self.level < 0 else fibonacci(self.level)
        if len(self.values) != expected:
            raise ValueError(f"level {self.level} needs {expected} values, got {len(self.values)}")

    @classmethod
    def zero(cls, n: int) -> "LevelFn":
        return cls(n, (Fraction(0),) * (0 if n < 0 else fibonacci(n)))

    @classmethod
    def indicator(cls, v: FibWord) -> "LevelFn":
        vals = [Fraction(0)] * fibonacci(v.rank)
        vals[level_index(v.rank)[v]] = Fraction(1)
        return cls(v.rank, tuple(vals))

    @classmethod
    def constant(cls, n: int, c=1) -> "LevelFn":
        return cls(n, (Fraction(c),) * fibonacci(n))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[FibWord, object]) -> "LevelFn":
        return cls(n, tuple(mapping.get(w, Fraction(0)) for w in level(n)))

    @classmethod
    def from_function(cls, n: int, f: Callable[[FibWord], object]) -> "LevelFn":
        return cls(n, tuple(f(w) for w in level(n)))

    def __getitem__(self, v: FibWord):
        return self.values[level_index(self.level)[v]]

    def words(self) -> tuple[FibWord, ...]:
        return level(self.level) if self.level >= 0 else ()

    def items(self):
        return zip(self.words(), self.values)

    def as_dict(self) -> dict[FibWord, object]:
        return dict(self.items())

    def total(self):
        return sum(self.values, Fraction(0))

    def _check(self, other: "LevelFn"):
        if other.level != self.level:
            raise ValueError(f"level mismatch {self.level} vs {other.level}")

    def __add__(self, other: "LevelFn") -> "LevelFn":
        self._check(other)
        return LevelFn(self.level, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "LevelFn") -> "LevelFn":
        self._check(other)
        return LevelFn(self.level, tuple(a - b for a, b in zip(self.values, other.values)))

    def scale(self, c) -> "LevelFn":
        return LevelFn(self.level, tuple(c * a for a in self.values))

    def dot(self, other: "LevelFn"):
        self._check(other)
        return sum((a * b for a, b in zip(self.values, other.values)), Fraction(0))


@lru_cache(maxsize=None)
def _pred_indices(n: int) -> tuple[tuple[int, ...], ...]:
    """For each word on level n, the indices of its predecessors on level n-1."""
    idx = level_index(n - 1)
    return tuple(tuple(sorted(idx[x] for x in predecessors(w))) for w in level(n))


@lru_cache(maxsize=None)
def _succ_indices(n: int) -> tuple[tuple[int, ...], ...]:
    idx = level_index(n + 1)
    return tuple(tuple(sorted(idx[y] for y in successors(w))) for w in level(n))


def _sum(vals: Iterable):
    it = iter(vals)
    try:
        acc = next(it)
    except StopIteration:
        return Fraction(0)
    for x in it:
        acc = acc + x
    return acc


def apply_U(f: LevelFn) -> LevelFn:
    """(U f)(w) = sum of f over the vertices covered by w; level n -> n+1."""
    n = f.level + 1
    if n == 0:
        return LevelFn.zero(0)
    vals = f.values
    return LevelFn(n, tuple(_sum(vals[i] for i in preds) for preds in _pred_indices(n)))


def apply_D(f: LevelFn) -> LevelFn:
    """(D f)(v) = sum of f over the covers of v; level n -> n-1.

    D of a level-0 function is the empty function on level -1.
    """
    n = f.level - 1
    if n < 0:
        return LevelFn(-1, ())
    vals = f.values
    return LevelFn(n, tuple(_sum(vals[i] for i in succ) for succ in _succ_indices(n)))


# -- verification sweeps ----------------------------------------------------

def verify_differential(n_max: int) -> Report:
    """Exhaustive (D1), (D2) and Weyl identity DU - UD = I up to level n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rep = Report("poset axioms D1/D2 + Weyl")
    for n in range(n_max + 1):
        words = level(n)
        for u, v in combinations(words, 2):
            up = len(successors(u) & successors(v))
            down = len(predecessors(u) & predecessors(v))
            rep.check(up == down and up <= 1, f"D1 fails for ({u}, {v}): {up} common covers, {down} common co-covers")
        for v in words:
            rep.check(len(successors(v)) == len(predecessors(v)) + 1,
                      f"D2 fails at {v}")
            e = LevelFn.indicator(v)
            lhs = apply_D(apply_U(e)) - apply_U(apply_D(e))
            rep.check(lhs == e, f"Weyl identity fails on indicator of {v}")
    rep.notes["n_max"] = n_max
    return rep


def verify_sum_identities(n_max: int, pair_n_max: int | None = None) -> Report:
    """Path-count sums over covers.

sum over covers w of v of d(w) = (n+1) d(v), for |v| <= n_max; and for
u <= v with |v| <= pair_n_max, sum over covers of v of d(u, w) minus sum over
u' covered by u of d(u', v) equals (|v| - |u| + 1) d(u, v).
"""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    pair_n_max = n_max if pair_n_max is None else pair_n_max
    rep = Report("path-count sum identities")
    for n in range(n_max + 1):
        for v in level(n):
            lhs = sum(dim(w) for w in successors(v))
            rep.check(lhs == (n + 1) * dim(v), f"cover sum fails at {v}")
    for k in range(pair_n_max + 1):
        for u in level(k):
            from_u = paths_from(u, pair_n_max + 1)
            from_preds = [paths_from(x, pair_n_max) for x in predecessors(u)]
            for v, duv in from_u.items():
                n = v.rank
                if n > pair_n_max:
                    continue
                up = sum(from_u.get(w, 0) for w in successors(v))
                down = sum(p.get(v, 0) for p in from_preds)
                rep.check(up - down == (n - k + 1) * duv, f"two-point sum fails at u={u}, v={v}")
    rep.notes["n_max"] = n_max
    rep.notes["pair_n_max"] = pair_n_max
    return rep


def plancherel_normalization(n: int) -> bool:
    """sum over level n of d(v)^2 equals n!."""
    return sum(dim(v) ** 2 for v in level(n)) == math.factorial(n)
