"""The graded ring of polynomials in two non-commuting variables X (deg 1), Y (deg 2).

Monomials are keyed by Fibonacci words: the word ``v`` stands for the
monomial whose letters, read left to right, are the digits of ``v`` read
right to left with 1 -> X and 2 -> Y.  So ``XY`` is the word "21" and ``YX``
is "12", and the product of monomials concatenates rightmost-first digit
tuples.
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import lattice
from .lattice import LevelFn, level, level_index
from .linalg import inverse, vec_mat
from .report import Report
from .words import EMPTY, FibWord, run_lengths, successors, word

DEFAULT_DET_CAP = 8
DEFAULT_COORD_CAP = 12


class NcPoly:
    """Finite rational combination of monomials; no zero coefficients are stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FibWord, object] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[word(k)] = c
        self.terms: dict[FibWord, Fraction] = clean

    @classmethod
    def monomial(cls, v: FibWord | str, coef=1) -> "NcPoly":
        return cls({word(v): coef})

    @classmethod
    def x_power(cls, k: int) -> "NcPoly":
        return cls.monomial(FibWord((1,) * k))

    def degree(self) -> int | None:
        """Common rank of all monomials, or None if not homogeneous (0 polynomial -> None)."""
        ranks = {k.rank for k in self.terms}
        return ranks.pop() if len(ranks) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NcPoly({EMPTY: other})
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return NcPoly(out)

    def __neg__(self) -> "NcPoly":
        return NcPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def __mul__(self, other) -> "NcPoly":
        if not isinstance(other, NcPoly):
            c = Fraction(other)
            return NcPoly({k: c * v for k, v in self.terms.items()})
        out: dict[FibWord, Fraction] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = FibWord._from_text(b.text + a.text)
                out[key] = out.get(key, 0) + ca * cb
        return NcPoly(out)

    def __rmul__(self, other) -> "NcPoly":
        return self * other

    def coefficient(self, v: FibWord | str) -> Fraction:
        return self.terms.get(word(v), Fraction(0))

    def sorted_terms(self) -> list[tuple[FibWord, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0].rank, kv[0].text))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{k}" for k, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"NcPoly({str(self)!r})"

    def to_json(self) -> dict:
        return {"degree": self.degree(), "terms": {str(k): str(c) for k, c in self.sorted_terms()}}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "NcPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls({word(k): Fraction(c) for k, c in data["terms"].items()})


ZERO = NcPoly()
ONE = NcPoly.monomial(EMPTY)
X = NcPoly.monomial("1")
Y = NcPoly.monomial("2")


def nc_mul(f: NcPoly, g: NcPoly) -> NcPoly:
    return f * g


def _product(factors: Iterable[NcPoly]) -> NcPoly:
    out = ONE
    for f in factors:
        out = out * f
    return out


# -- determinants -----------------------------------------------------------

def nc_det(matrix: Sequence[Sequence[NcPoly]], cap: int = DEFAULT_DET_CAP) -> NcPoly:
    """Sum over permutations w of sign(w) a_{w(1)1} a_{w(2)2} ... a_{w(n)n}.

    Factors are multiplied in column order.  Zero entries are pruned, so
    sparse (tridiagonal) matrices are cheap even though the formula has n!
    terms.
    """
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("matrix is not square")
    if n > cap:
        raise ValueError(f"determinant size {n} exceeds cap {cap}")
    if n == 0:
        return ONE
    total: dict[FibWord, Fraction] = {}

    def expand(col: int, used: list[bool], rows: list[int], acc: NcPoly):
        if col == n:
            inversions = sum(1 for i in range(n) for j in range(i + 1, n) if rows[i] > rows[j])
            sign = -1 if inversions % 2 else 1
            for k, c in acc.terms.items():
                total[k] = total.get(k, 0) + sign * c
            return
        for r in range(n):
            if used[r]:
                continue
            entry = matrix[r][col]
            if entry.is_zero():
                continue
            used[r] = True
            rows.append(r)
            expand(col + 1, used, rows, acc * entry)
            rows.pop()
            used[r] = False

    expand(0, [False] * n, [], ONE)
    return NcPoly(total)


def p_matrix(n: int) -> list[list[NcPoly]]:
    """Tridiagonal n x n matrix: X on the diagonal, Y above, 1 below."""
    m = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = X
        if i + 1 < n:
            m[i][i + 1] = Y
            m[i + 1][i] = ONE
    return m


def q_matrix(n: int) -> list[list[NcPoly]]:
    """The (n+1) x (n+1) matrix whose determinant is Q_n.

    Same as the P matrix except the top-left 2 x 2 corner is [[Y, Y], [X, X]].
    """
    size = n + 1
    m = p_matrix(size)
    m[0][0] = Y
    if size > 1:
        m[1][0] = X
    return m


@lru_cache(maxsize=None)
def _P(n: int) -> NcPoly:
    if n < 0:
        return ZERO
    if n == 0:
        return ONE
    return _P(n - 1) * X - _P(n - 2) * Y


@lru_cache(maxsize=None)
def _Q(n: int) -> NcPoly:
    if n == 0:
        return Y
    if n == 1:
        return Y * X - X * Y
    return _Q(n - 1) * X - _Q(n - 2) * Y


def P_poly(n: int) -> NcPoly:
    """P_n by the recurrence P_{n+1} = P_n X - P_{n-1} Y (P_0 = 1, P_{-1} = 0)."""
    if n < 0:
        raise ValueError(f"P_n needs n >= 0, got {n}")
    return _P(n)


def Q_poly(n: int) -> NcPoly:
    """Q_n by Q_{n+1} = Q_n X - Q_{n-1} Y, seeded with Q_0 = Y and Q_1 = YX - XY."""
    if n < 0:
        raise ValueError(f"Q_n needs n >= 0, got {n}")
    return _Q(n)


# -- the s- and p-families --------------------------------------------------

@lru_cache(maxsize=1 << 14)
def s_poly(v: FibWord) -> NcPoly:
    """Okada-Schur polynomial s_v = P_{k_0} Q_{k_1} ... Q_{k_t}."""
    runs = run_lengths(v)
    return _product([_P(runs[0])] + [_Q(k) for k in runs[1:]])


@lru_cache(maxsize=1 << 14)
def p_poly(v: FibWord) -> NcPoly:
    """p_v = (X^{k_0+2} - (k_0+2) X^{k_0} Y) ... (X^{k_{t-1}+2} - ...) X^{k_t}."""
    runs = run_lengths(v)
    factors = []
    for k in runs[:-1]:
        xky = NcPoly.monomial(FibWord((1,) * k + (2,)))
        factors.append(NcPoly.x_power(k + 2) - xky * (k + 2))
    factors.append(NcPoly.x_power(runs[-1]))
    return _product(factors)


def _coord_vector(f: NcPoly, n: int) -> list[Fraction]:
    idx = level_index(n)
    vec = [Fraction(0)] * len(idx)
    for k, c in f.terms.items():
        vec[idx[k]] = c
    return vec


@lru_cache(maxsize=None)
def _basis_inverse(kind: str, n: int) -> tuple[tuple[Fraction, ...], ...]:
    family = s_poly if kind == "s" else p_poly
    rows = [_coord_vector(family(v), n) for v in level(n)]
    return tuple(tuple(r) for r in inverse(rows))


def _coords(f: NcPoly, kind: str, cap: int, degree: int | None) -> LevelFn:
    n = f.degree()
    if n is None:
        if not f.is_zero():
            raise ValueError("polynomial is not homogeneous")
        if degree is None:
            raise ValueError("zero polynomial needs an explicit degree")
        n = degree
    if degree is not None and n != degree:
        raise ValueError(f"polynomial has degree {n}, expected {degree}")
    if n > cap:
        raise ValueError(f"degree {n} exceeds coordinate cap {cap}")
    return LevelFn(n, tuple(vec_mat(_coord_vector(f, n), _basis_inverse(kind, n))))


def to_s_coords(f: NcPoly, cap: int = DEFAULT_COORD_CAP, degree: int | None = None) -> LevelFn:
    """Coordinates of a homogeneous f in the s-basis, by exact elimination."""
    return _coords(f, "s", cap, degree)


def to_p_coords(f: NcPoly, cap: int = DEFAULT_COORD_CAP, degree: int | None = None) -> LevelFn:
    """Coordinates of a homogeneous f in the p-basis, by exact elimination."""
    return _coords(f, "p", cap, degree)


def from_s_coords(c: LevelFn) -> NcPoly:
    out = ZERO
    for v, a in c.items():
        if a:
            out = out + s_poly(v) * a
    return out


# -- verification -----------------------------------------------------------

def verify_pieri(n_max: int) -> Report:
    """s_w X = sum of s_v over covers v of w, for |w| < n_max, plus the two p-basis laws.

    The p-laws are p_v X = p_{1v} and D(p_{2v}) = 0, for |v| < n_max, with D
    applied to s-coordinates.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    rep = Report("Pieri rule and p-basis laws")
    for n in range(n_max):
        for w in level(n):
            rhs = ZERO
            for v in successors(w):
                rhs = rhs + s_poly(v)
            rep.check(s_poly(w) * X == rhs, f"Pieri fails at {w}")
            rep.check(p_poly(w) * X == p_poly(w.prepend("1")), f"p_v X != p_1v at {w}")
            two_v = w.prepend("2")
            down = lattice.apply_D(to_s_coords(p_poly(two_v)))
            rep.check(all(x == 0 for x in down.values), f"D(p_2v) != 0 at v={w}")
    rep.notes["n_max"] = n_max
    return rep


def commutation_sides(n: int, m: int, family: str = "P") -> tuple[NcPoly, NcPoly]:
    """Both sides of the rule for moving X past F_n Q_0^m (F = P or Q), n >= 1.

    F_n Q_0^m X = sum_{i=0}^{m-1} F_n Q_0^{m-1-i} Q_1 Q_0^i + F_{n+1} Q_0^m + F_{n-1} Q_0^{m+1}
    """
    F = _P if family == "P" else _Q
    q0 = _Q(0)

    def q0pow(j: int) -> NcPoly:
        return _product([q0] * j)

    lhs = F(n) * q0pow(m) * X
    rhs = F(n + 1) * q0pow(m) + F(n - 1) * q0pow(m + 1)
    for i in range(m):
        rhs = rhs + F(n) * q0pow(m - 1 - i) * _Q(1) * q0pow(i)
    return lhs, rhs


def verify_determinants(n_max: int) -> Report:
    """Determinant formulas agree with the P/Q recurrences up to size n_max."""
    rep = Report("determinants vs recurrences")
    for n in range(1, n_max + 1):
        rep.check(nc_det(p_matrix(n)) == P_poly(n), f"P_{n} mismatch")
        rep.check(nc_det(q_matrix(n - 1)) == Q_poly(n - 1), f"Q_{n - 1} mismatch")
    return rep


def verify_bases(n_max: int) -> Report:
    """s- and p-families are bases of each graded piece and transition back and forth."""
    rep = Report("s/p bases")
    for n in range(n_max + 1):
        for v in level(n):
            c = to_s_coords(s_poly(v))
            rep.check(c == LevelFn.indicator(v), f"s-coords of s_{v} not a unit vector")
            rep.check(from_s_coords(to_s_coords(p_poly(v))) == p_poly(v), f"round trip fails for p_{v}")
    return rep
