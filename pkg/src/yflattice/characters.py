"""The character matrix X_u^v between the p- and s-bases (p_u = sum_v X_u^v s_v).

Four independent evaluators are provided: the Okada recurrences, the
block splitting by the block ranks of u, the product over 2-positions, and
the splitting of u by the inverse block ranks of v.  ``char_matrix`` in
verify mode builds all four and insists they agree.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .lattice import level
from .linalg import identity, mat_mul
from .report import Report
from .words import (
    EMPTY,
    FibWord,
    block_data,
    dim_product,
    epsilon,
    leading_ones,
    split,
    two_positions,
    z_value,
)

DEFAULT_MATRIX_CAP = 12
METHODS = ("recursive", "product", "block", "inverse")


class RankMismatchError(ValueError):
    pass


def _same_rank(u: FibWord, v: FibWord):
    if u.rank != v.rank:
        raise RankMismatchError(f"|{u}| = {u.rank} but |{v}| = {v.rank}")


@lru_cache(maxsize=1 << 18)
def _recursive(u: FibWord, v: FibWord) -> int:
    if not v.digits:
        return 1
    ut, vt = u.text, v.text
    if vt[0] == "1":
        if ut[0] == "1":
            return _recursive(u.drop_left(1), v.drop_left(1))
        # X_{2u}^{1v} = X_{1u}^{v}
        return _recursive(FibWord._from_text("1" + ut[1:]), v.drop_left(1))
    if ut[0] == "2":
        return -_recursive(u.drop_left(1), v.drop_left(1))
    if ut[1] == "2":
        return 0
    rest = u.drop_left(2)
    return (leading_ones(rest) + 1) * _recursive(rest, v.drop_left(1))


def char_recursive(u: FibWord, v: FibWord) -> Fraction:
    """X_u^v from the recurrences on leftmost letters, anchored at X_e^e = 1."""
    _same_rank(u, v)
    return Fraction(_recursive(u, v))


def normalized_character(deltas: Sequence[int], ds: Sequence[int]) -> Fraction:
    """prod_j prod_{delta_j <= d < delta_{j+1}} (1 - (delta_j + 1)/d).

    ``deltas`` and ``ds`` are increasing 2-positions; the last group is
    unbounded above.  Positions below delta_1 contribute nothing.  Integer
    products are formed first so long position lists stay cheap.
    """
    if not deltas:
        return Fraction(1)
    num = 1
    den = 1
    start = bisect.bisect_left(ds, deltas[0])
    j = 0
    m = len(deltas)
    for d in ds[start:]:
        while j + 1 < m and d >= deltas[j + 1]:
            j += 1
        num *= d - deltas[j] - 1
        den *= d
        if num == 0:
            return Fraction(0)
    return Fraction(num, den)


def normalized_char(u: FibWord, v: FibWord) -> Fraction:
    """X~_u^v = X_u^v / d(v)."""
    return normalized_character(two_positions(u), two_positions(v))


def char_product(u: FibWord, v: FibWord) -> Fraction:
    """X_u^v = d(v) * X~_u^v with X~ the product over grouped 2-positions."""
    _same_rank(u, v)
    return dim_product(v) * normalized_char(u, v)


def _g(w: FibWord) -> int:
    if w.text[0] == "1":
        return dim_product(w.drop_left(1))
    return -dim_product(w.drop_left(1))


def char_block(u: FibWord, v: FibWord) -> Fraction:
    """Split v by the block ranks of u; X = d(v_t) g(v_{t-1}) ... g(v_0), or 0 if v does not split."""
    _same_rank(u, v)
    blocks, _ = block_data(u)
    pieces = split(v, blocks)
    if pieces is None:
        return Fraction(0)
    out = dim_product(pieces[-1])
    for p in pieces[:-1]:
        out *= _g(p)
    return Fraction(out)


def char_inverse_entry(u: FibWord, v: FibWord) -> Fraction:
    """Split u by the inverse block ranks of v; X = f_1 ... f_t, or 0 if u does not split.

    f_j = -1 when u_j ends in 2, otherwise 1 + m(u_{j-1} ... u_0).
    """
    _same_rank(u, v)
    _, inv = block_data(v)
    pieces = split(u, inv)
    if pieces is None:
        return Fraction(0)
    out = 1
    right = EMPTY
    for j in range(1, len(pieces)):
        right = pieces[j - 1] + right
        if epsilon(pieces[j]) == -1:
            out = -out
        else:
            out *= 1 + leading_ones(right)
    return Fraction(out)


_EVALUATORS = {
    "recursive": char_recursive,
    "product": char_product,
    "block": char_block,
    "inverse": char_inverse_entry,
}


class CharacterMismatchError(AssertionError):
    pass


@dataclass(frozen=True)
class CharMatrix:
    """Rows u, columns v, both in canonical level order."""

    n: int
    order: tuple[FibWord, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def entry(self, u: FibWord, v: FibWord) -> Fraction:
        return self.rows[self.order.index(u)][self.order.index(v)]

    def row(self, u: FibWord) -> tuple[Fraction, ...]:
        return self.rows[self.order.index(u)]

    def column(self, v: FibWord) -> tuple[Fraction, ...]:
        j = self.order.index(v)
        return tuple(r[j] for r in self.rows)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "order": [str(w) for w in self.order],
            "rows": {str(u): [str(x) for x in r] for u, r in zip(self.order, self.rows)},
        }

    def to_csv(self) -> str:
        lines = ["u," + ",".join(str(w) for w in self.order)]
        for u, r in zip(self.order, self.rows):
            lines.append(f"{u}," + ",".join(str(x) for x in r))
        return "\n".join(lines) + "\n"


def _build(n: int, method: str) -> tuple[tuple[Fraction, ...], ...]:
    f = _EVALUATORS[method]
    words = level(n)
    return tuple(tuple(f(u, v) for v in words) for u in words)


@lru_cache(maxsize=64)
def _cached_matrix(n: int, method: str) -> CharMatrix:
    words = level(n)
    if method == "verify":
        built = {m: _build(n, m) for m in METHODS}
        ref = built["product"]
        for m, rows in built.items():
            if rows != ref:
                raise CharacterMismatchError(f"method {m} disagrees with product formula at level {n}")
        return CharMatrix(n, words, ref)
    return CharMatrix(n, words, _build(n, method))


def char_matrix(n: int, method: str = "product", cap: int = DEFAULT_MATRIX_CAP) -> CharMatrix:
    """Full f_n x f_n matrix; ``method="verify"`` builds all four and checks agreement."""
    if method not in METHODS and method != "verify":
        raise ValueError(f"unknown method {method!r}")
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise ValueError(f"level {n} exceeds matrix cap {cap}")
    return _cached_matrix(n, method)


def verify_agreement(n_max: int) -> Report:
    """All four evaluators agree on every pair of equal rank <= n_max."""
    rep = Report("character four-way agreement")
    for n in range(n_max + 1):
        words = level(n)
        for u in words:
            for v in words:
                vals = [_EVALUATORS[m](u, v) for m in METHODS]
                rep.check(len(set(vals)) == 1, f"X_{u}^{v}: {dict(zip(METHODS, map(str, vals)))}")
                blocks, _ = block_data(u)
                rep.check((vals[1] == 0) == (split(v, blocks) is None),
                          f"zero pattern mismatch at X_{u}^{v}")
    return rep


def verify_inverse(n: int, cap: int = DEFAULT_MATRIX_CAP) -> Report:
    """sum_v X_u^v X_{u'}^v / z(u') = [u = u'] exactly."""
    rep = Report(f"inverse transition at level {n}")
    m = char_matrix(n, cap=cap)
    words = m.order
    scaled_t = [[m.rows[j][i] / z_value(words[j]) for j in range(len(words))] for i in range(len(words))]
    prod = mat_mul(m.rows, scaled_t)
    ident = identity(len(words))
    for i, u in enumerate(words):
        for j, u2 in enumerate(words):
            rep.check(prod[i][j] == ident[i][j], f"entry ({u}, {u2}) = {prod[i][j]}")
    return rep


def z_vector(n: int) -> tuple[int, ...]:
    return tuple(z_value(w) for w in level(n))


def dimension_row_check(n: int) -> bool:
    """Row u = 1^n equals (d(v))_v."""
    m = char_matrix(n)
    ones = FibWord((1,) * n)
    return list(m.row(ones)) == [dim_product(v) for v in m.order]

