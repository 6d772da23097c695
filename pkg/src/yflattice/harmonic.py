"""Harmonic functions on the Young-Fibonacci lattice.

A harmonic function is evaluated level by level: ``level_values(n)`` returns
its values on level n in canonical order.  Values are exact rationals, or
certified intervals when the function depends on an infinite tail.  Linear
functionals on the ring are evaluated on p-basis labels u = 1^inf u0, where
u0 is empty or starts with a 2; a function phi and its functional are tied by
phi(v) = phi(s_v) and phi(p_u) = sum_v X_u^v phi(v) on level |u0|.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .boundary import SummableWord, UncertifiedTail, functional_p_value
from .characters import char_matrix, normalized_character
from .intervals import Interval, Value, lower, upper, value_to_json
from .lattice import LevelFn, apply_D, apply_U, dim, level, level_index, paths_to
from .report import Report
from .words import FibWord, WordError, leading_ones, parse_word, two_positions, word, z_value

__all__ = [
    "PWordLabel", "HarmonicFn", "Plancherel", "TypeI", "Summable", "Contracted", "Mixture",
    "phi_plancherel", "psi_type1", "phi_summable", "contract", "mixture", "check_harmonic",
    "central_measure", "UncertifiedTail",
]


@dataclass(frozen=True)
class PWordLabel:
    """The p-basis label u = 1^inf u0 with u0 empty or led by a 2."""

    core: FibWord

    def __post_init__(self):
        if self.core.digits and self.core.leftmost != 2:
            raise WordError(f"core {self.core} must be empty or start with 2")

    @classmethod
    def of(cls, u) -> "PWordLabel":
        """Label of 1^inf u for any finite word u (leading 1's are dropped)."""
        if isinstance(u, PWordLabel):
            return u
        u = word(u)
        return cls(u.drop_left(leading_ones(u)))

    @property
    def essential_rank(self) -> int:
        return self.core.rank

    @property
    def deltas(self) -> tuple[int, ...]:
        return two_positions(self.core)

    def __str__(self) -> str:
        return str(self.core)


@lru_cache(maxsize=None)
def _inverse_columns(n: int) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
    """For each v on level n, the nonzero (index of u, X_u^v / z(u))."""
    m = char_matrix(n, cap=max(n, 12))
    zs = [z_value(u) for u in m.order]
    cols = []
    for j in range(len(m.order)):
        cols.append(tuple((i, m.rows[i][j] / zs[i]) for i in range(len(m.order)) if m.rows[i][j]))
    return tuple(cols)


def _combine(terms) -> Value:
    acc = Fraction(0)
    for c, x in terms:
        acc = acc + c * x if isinstance(x, Interval) else acc + x * c
    return acc


class HarmonicFn:
    """Base class; subclasses provide ``_level(n)`` and optionally a fast ``p_value``."""

    kind = "abstract"

    def __init__(self):
        self._cache: dict[int, tuple] = {}

    def level_values(self, n: int) -> tuple:
        if n < 0:
            raise ValueError("level must be >= 0")
        vals = self._cache.get(n)
        if vals is None:
            vals = tuple(self._level(n))
            self._cache[n] = vals
        return vals

    def _level(self, n: int) -> Sequence[Value]:
        raise NotImplementedError

    def level_fn(self, n: int) -> LevelFn:
        return LevelFn(n, self.level_values(n))

    def __call__(self, v) -> Value:
        v = word(v)
        return self.level_values(v.rank)[level_index(v.rank)[v]]

    def p_value_generic(self, u) -> Value:
        """phi(p_u) = sum_v X_{u0}^v phi(v) over the level of u0."""
        lab = PWordLabel.of(u)
        n = lab.essential_rank
        if n == 0:
            return self.level_values(0)[0]
        m = char_matrix(n, cap=max(n, 12))
        row = m.row(lab.core)
        vals = self.level_values(n)
        return _combine((c, x) for c, x in zip(row, vals) if c)

    def p_value(self, u) -> Value:
        return self.p_value_generic(u)

    @property
    def exact(self) -> bool:
        return True

    def params(self) -> dict:
        return {}

    def describe(self) -> dict:
        return {"kind": self.kind, "params": self.params()}


class Plancherel(HarmonicFn):
    kind = "plancherel"

    def _level(self, n):
        f = math.factorial(n)
        return [Fraction(dim(v), f) for v in level(n)]

    def p_value(self, u) -> Fraction:
        return Fraction(int(PWordLabel.of(u).essential_rank == 0))


class TypeI(HarmonicFn):
    """psi_w(v) = d(v, 1^K w) / d(1^K w) with K the least integer making |1^K w| >= |v|."""

    kind = "type1"

    def __init__(self, w: FibWord):
        super().__init__()
        self.w = word(w)

    def _level(self, n):
        w = self.w
        if n <= w.rank:
            counts = paths_to(w)
            dw = dim(w)
            return [Fraction(counts.get(v, 0), dw) for v in level(n)]
        # above |w| only 1^K w is reached, and d(1^K w) = d(w)
        target = w.prepend("1" * (n - w.rank))
        top = Fraction(1, dim(w))
        return [top if v == target else Fraction(0) for v in level(n)]

    def p_value(self, u) -> Fraction:
        return normalized_character(PWordLabel.of(u).deltas, two_positions(self.w))

    def params(self):
        return {"w": str(self.w)}


class Summable(HarmonicFn):
    """phi_w: p-values by the grouped product, word values by the inverse transition."""

    kind = "summable"

    def __init__(self, w: SummableWord):
        super().__init__()
        self.w = w
        self._pcache: dict[FibWord, Value] = {}

    @property
    def exact(self) -> bool:
        return self.w.finitary

    def p_value(self, u) -> Value:
        lab = PWordLabel.of(u)
        val = self._pcache.get(lab.core)
        if val is None:
            val = functional_p_value(self.w, lab.deltas)
            self._pcache[lab.core] = val
        return val

    def _level(self, n):
        words = level(n)
        pv = [self.p_value(u) for u in words]
        return [_combine((c, pv[i]) for i, c in col) for col in _inverse_columns(n)]

    def params(self):
        return {"w": self.w.to_spec()}


class Contracted(HarmonicFn):
    """C_tau(phi)(v) = sum_k tau^k (1 - tau)^{n-k} / (n-k)! * S_k(v, phi).

    S_k(., phi) on level n is U^{n-k} applied to phi on level k, where U sends
    a function on level k to w -> sum of its values over the vertices w covers.
    """

    kind = "contracted"

    def __init__(self, base: HarmonicFn, tau: Fraction):
        super().__init__()
        self.base = base
        self.tau = tau
        self._lifted: dict[tuple[int, int], LevelFn] = {}

    @property
    def exact(self) -> bool:
        return self.base.exact

    def lifted(self, k: int, n: int) -> LevelFn:
        """S_k(., phi) on level n."""
        key = (k, n)
        got = self._lifted.get(key)
        if got is None:
            got = self.base.level_fn(k) if n == k else apply_U(self.lifted(k, n - 1))
            self._lifted[key] = got
        return got

    def _level(self, n):
        tau = self.tau
        acc = None
        for k in range(n + 1):
            coef = tau ** k * (1 - tau) ** (n - k) / math.factorial(n - k)
            if coef == 0:
                continue
            term = self.lifted(k, n).scale(coef)
            acc = term if acc is None else acc + term
        if acc is None:
            return [Fraction(0)] * len(level(n))
        return list(acc.values)

    def p_value(self, u) -> Value:
        lab = PWordLabel.of(u)
        return self.tau ** lab.essential_rank * self.base.p_value(lab)

    def p_value_direct(self, u) -> Value:
        return self.p_value_generic(u)

    def params(self):
        return {"tau": str(self.tau), "base": self.base.describe()}


class Mixture(HarmonicFn):
    kind = "mixture"

    def __init__(self, components: Sequence[tuple[Fraction, HarmonicFn]]):
        super().__init__()
        self.components = tuple((Fraction(a), f) for a, f in components)

    @property
    def exact(self) -> bool:
        return all(f.exact for _, f in self.components)

    def _level(self, n):
        acc = None
        for a, f in self.components:
            vals = [x * a for x in f.level_values(n)]
            acc = vals if acc is None else [x + y for x, y in zip(acc, vals)]
        return acc

    def p_value(self, u) -> Value:
        return _combine((a, f.p_value(u)) for a, f in self.components)

    def params(self):
        return {"components": [{"weight": str(a), **f.describe()} for a, f in self.components]}


# -- constructors ---------------------------------------------------------------

def phi_plancherel() -> Plancherel:
    return Plancherel()


def psi_type1(w) -> TypeI:
    return TypeI(word(w))


def phi_summable(w) -> Summable:
    if isinstance(w, FibWord):
        w = SummableWord.from_word(w)
    elif isinstance(w, str):
        w = SummableWord.parse(w)
    return Summable(w)


def _rational(x, name: str) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"{name} must be rational (int, Fraction or 'p/q'), not float")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational {name} {x!r}") from None


def contract(phi: HarmonicFn, tau) -> HarmonicFn:
    """C_tau(phi); a mixture is contracted componentwise."""
    tau = _rational(tau, "tau")
    if not 0 <= tau <= 1:
        raise ValueError(f"tau = {tau} outside [0, 1]")
    if isinstance(phi, Mixture):
        return Mixture([(a, contract(f, tau)) for a, f in phi.components])
    return Contracted(phi, tau)


def mixture(components) -> HarmonicFn:
    comps = [(_rational(a, "weight"), f) for a, f in components]
    if not comps:
        raise ValueError("empty mixture")
    if any(a < 0 for a, _ in comps):
        raise ValueError("mixture weights must be non-negative")
    total = sum(a for a, _ in comps)
    if total != 1:
        raise ValueError(f"mixture weights sum to {total}, not 1")
    return Mixture(comps)


def mean_value_defect(phi: HarmonicFn, n: int) -> LevelFn:
    """phi on level n minus (sum over covers) of phi on level n+1."""
    return phi.level_fn(n) - apply_D(phi.level_fn(n + 1))


def check_harmonic(phi: HarmonicFn, n_max: int) -> Report:
    """Normalization, positivity and the mean value property on levels 0..n_max."""
    rep = Report(f"harmonicity of {phi.kind} to level {n_max}")
    e = phi.level_values(0)[0]
    if isinstance(e, Interval):
        rep.check(e.contains(1), f"phi(e) = {e} does not contain 1")
    else:
        rep.check(e == 1, f"phi(e) = {e}")
    for n in range(n_max + 1):
        here = phi.level_values(n)
        down = apply_D(phi.level_fn(n + 1)).values
        for v, a, b in zip(level(n), here, down):
            if isinstance(a, Interval) or isinstance(b, Interval):
                diff = Interval(lower(a), upper(a)) - Interval(lower(b), upper(b))
                rep.check(diff.contains(0), f"mean value fails at {v}: {a} vs {b}")
                rep.check(upper(a) >= 0, f"phi({v}) certainly negative: {a}")
            else:
                rep.check(a == b, f"mean value fails at {v}: {a} != {b}")
                rep.check(a >= 0, f"phi({v}) = {a} < 0")
    for v, a in zip(level(n_max + 1), phi.level_values(n_max + 1)):
        rep.check(upper(a) >= 0, f"phi({v}) = {a} < 0")
    rep.notes["n_max"] = n_max
    return rep


def central_measure(phi: HarmonicFn, n: int) -> LevelFn:
    """M_n(v) = d(v) phi(v)."""
    return LevelFn(n, tuple(x * dim(v) for v, x in zip(level(n), phi.level_values(n))))


def values_json(phi: HarmonicFn, n: int) -> dict:
    return {str(v): value_to_json(x) for v, x in zip(level(n), phi.level_values(n))}


def parse_label(text: str) -> PWordLabel:
    return PWordLabel.of(parse_word(text))
