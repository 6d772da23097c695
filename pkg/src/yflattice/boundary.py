"""Summable words, the functionals pi and pi_k, and finite-stage boundary diagnostics.

An infinite word is given by the positions of its 2's.  Finitary words have
finitely many 2's (all-1 tail); otherwise a prefix of positions is given
together with a certified bound T on the sum of 1/d over the unknown tail.
Infinite products over the tail are then enclosed in intervals: for tail
factors 1 - k/d with x = k/d <= x_max < 1 we have
log(1 - x) in [-x/(1 - x_max), -x], so the tail product lies in
[exp(-kT/(1 - x_max)), 1].
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .characters import normalized_character
from .intervals import Interval, Value, lower, upper
from .report import Report
from .rng import substream
from .words import FibWord, WordError, from_positions, two_positions


class UncertifiedTail(ValueError):
    """The certified prefix is too short for the requested quantity."""


class InsufficientPrefix(UncertifiedTail):
    pass


@dataclass(frozen=True)
class SummableWord:
    positions: tuple[int, ...]
    tail_bound: Fraction = Fraction(0)

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "tail_bound", Fraction(self.tail_bound))
        if any(p < 1 for p in pos):
            raise WordError("positions must be >= 1")
        for a, b in zip(pos, pos[1:]):
            if b - a < 2:
                raise WordError(f"positions {a}, {b}: consecutive 2's need gaps >= 2")
        if self.tail_bound < 0:
            raise WordError("tail bound must be >= 0")
        if self.tail_bound > 0 and not pos:
            raise WordError("a tail bound needs at least one explicit position")

    @property
    def finitary(self) -> bool:
        return self.tail_bound == 0

    @property
    def known_rank(self) -> int | None:
        """Ranks up to this value are spelled exactly; None means all of them."""
        if self.finitary:
            return None
        return self.positions[-1] + 1

    @classmethod
    def from_word(cls, v: FibWord) -> "SummableWord":
        """The finitary word 1^inf v."""
        return cls(two_positions(v))

    @classmethod
    def parse(cls, text: str) -> "SummableWord":
        """``positions=3,7,15`` or ``positions=1,4,9,16;tailbound=0.05``."""
        fields_ = {}
        for part in text.strip().split(";"):
            if not part.strip():
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise WordError(f"malformed summable-word field {part!r}")
            fields_[key.strip().lower()] = val.strip()
        unknown = set(fields_) - {"positions", "tailbound"}
        if unknown or "positions" not in fields_:
            raise WordError(f"summable word spec needs positions=..., got {text!r}")
        try:
            raw = fields_["positions"]
            pos = tuple(int(x) for x in raw.split(",")) if raw else ()
            tail = Fraction(fields_.get("tailbound", "0"))
        except ValueError as exc:
            raise WordError(f"malformed summable word {text!r}: {exc}") from None
        return cls(pos, tail)

    def to_spec(self) -> str:
        s = "positions=" + ",".join(map(str, self.positions))
        if not self.finitary:
            s += f";tailbound={self.tail_bound}"
        return s

    def __str__(self) -> str:
        return self.to_spec()

    def rightmost(self, n: int) -> FibWord:
        """The rightmost n letters."""
        pos = set(self.positions)
        digits = []
        r = 1
        limit = self.known_rank
        while len(digits) < n:
            if limit is not None and r > limit:
                raise InsufficientPrefix(f"letter {len(digits) + 1} lies beyond the certified prefix")
            if r in pos:
                digits.append(2)
                r += 2
            else:
                digits.append(1)
                r += 1
        return FibWord(digits)

    def truncated(self, max_position: int) -> "SummableWord":
        """Finitary word keeping the 2's at positions <= max_position."""
        return SummableWord(tuple(p for p in self.positions if p <= max_position))


def _as_summable(w) -> SummableWord:
    if isinstance(w, SummableWord):
        return w
    if isinstance(w, FibWord):
        return SummableWord.from_word(w)
    if isinstance(w, str):
        return SummableWord.parse(w)
    raise TypeError(f"expected SummableWord or FibWord, got {type(w).__name__}")


def tail_enclosure(w: SummableWord, k: int) -> Interval:
    """Enclosure of prod over tail positions d of (1 - k/d)."""
    if w.finitary:
        return Interval(1)
    first = w.positions[-1] + 2
    if first <= k:
        raise UncertifiedTail(f"tail starts at position {first}; factors 1 - {k}/d need d > {k}")
    x_max = Fraction(k, first)
    y = k * w.tail_bound / (1 - x_max)
    lo = 1 - y + y * y / 2 - y ** 3 / 6
    return Interval(max(lo, Fraction(0)), 1)


def functional_p_value(w, deltas: Sequence[int]) -> Value:
    """phi_w(p_u) for u with 2-positions ``deltas``: grouped product over the 2's of w."""
    w = _as_summable(w)
    exact = normalized_character(deltas, w.positions)
    if w.finitary or not deltas:
        return exact
    return exact * tail_enclosure(w, deltas[-1] + 1)


def pi_value(w) -> Value:
    """pi(w) = prod over d_j >= 2 of (1 - 1/d_j)."""
    if isinstance(w, FibWord):
        pos = two_positions(w)
        w = SummableWord(pos)
    w = _as_summable(w)
    num, den = 1, 1
    for d in w.positions:
        if d >= 2:
            num *= d - 1
            den *= d
    exact = Fraction(num, den)
    if w.finitary:
        return exact
    out = exact * tail_enclosure(w, 1)
    if out.lo <= 0:
        raise UncertifiedTail("pi(w) is not certified positive")
    return out


def pi_k_value(w, k: int) -> Value:
    """pi_k(w) = prod over d_j >= k-1 of (1 - k/d_j)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    w = _as_summable(w)
    num, den = 1, 1
    for d in w.positions:
        if d >= k - 1:
            num *= d - k
            den *= d
    exact = Fraction(num, den)
    if w.finitary:
        return exact
    return exact * tail_enclosure(w, k)


# -- float evaluators for long finite words ---------------------------------

def pi_float(positions: Sequence[int]) -> float:
    return math.prod(1.0 - 1.0 / d for d in positions if d >= 2)


def psi_float(deltas: Sequence[int], ds: Sequence[int]) -> float:
    """Float version of the grouped product, for trajectories over long words."""
    if not deltas:
        return 1.0
    out = 1.0
    j = 0
    m = len(deltas)
    for d in ds:
        if d < deltas[0]:
            continue
        while j + 1 < m and d >= deltas[j + 1]:
            j += 1
        out *= 1.0 - (deltas[j] + 1) / d
        if out == 0.0:
            return 0.0
    return out


# -- approximating sequences --------------------------------------------------

def transient_length(beta: Fraction, n: int) -> int:
    """r_n: 0 for beta = 1, n^2 for beta = 0, else n(1 - beta^2)/beta^2 rounded to nearest."""
    beta = Fraction(beta)
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    if beta == 1:
        return 0
    if beta == 0:
        return n * n
    return math.floor(n * (1 - beta * beta) / (beta * beta) + Fraction(1, 2))


def approx_sequence(beta, w, n: int) -> FibWord:
    """v^(n) = 2^{r_n} 1^{s_n} w_n with w_n the rightmost n letters of w and s_n = 2n + 1 - |w_n|."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w = _as_summable(w)
    wn = w.rightmost(n)
    s = 2 * n + 1 - wn.rank
    r = transient_length(Fraction(beta), n)
    return wn.prepend("2" * r + "1" * s)


def approx_positions(beta, w, n: int) -> tuple[int, ...]:
    """2-positions of v^(n) without spelling the word."""
    w = _as_summable(w)
    wn = w.rightmost(n)
    base = two_positions(wn)
    r = transient_length(Fraction(beta), n)
    start = 2 * n + 2
    return base + tuple(start + 2 * i for i in range(r))


def alternating_word(n: int) -> FibWord:
    """Rank-n word with 2's at 2, 4, ..., 2m, m = floor((n-1)/2), left-padded with 1's."""
    m = (n - 1) // 2
    return from_positions(range(2, 2 * m + 1, 2), rank=n)


# -- regularity diagnosis ---------------------------------------------------

@dataclass
class RegularityReport:
    n_terms: int
    pi_trajectory: list[float]
    stable_length: int
    limit_positions: tuple[int, ...]
    beta_hat: float | None
    classification: str
    window: int
    notes: dict = field(default_factory=dict)

    def summary(self) -> str:
        b = "n/a" if self.beta_hat is None else f"{self.beta_hat:.6f}"
        return (f"[{self.classification}] {self.n_terms} terms, pi_last={self.pi_trajectory[-1]:.6g}, "
                f"stable letters={self.stable_length}, beta_hat={b}")

    def to_dict(self) -> dict:
        return {
            "n_terms": self.n_terms,
            "pi_last": self.pi_trajectory[-1],
            "stable_length": self.stable_length,
            "limit_positions": list(self.limit_positions),
            "beta_hat": self.beta_hat,
            "classification": self.classification,
            "window": self.window,
        }


def regularity_diagnose(seq: Iterable[FibWord], n_max: int, zero_tol: float = 0.05,
                        drift_tol: float = 0.1) -> RegularityReport:
    """Heuristic classification of the limit of psi_{w_n} from the first n_max terms.

    A letter counts as stable when it is constant over the last ceil(n_max/4)
    terms, so the stable part is the common right end of the words in that
    window.  Class "i" (Plancherel) is reported when pi(w_n) has fallen below
    ``zero_tol`` and is still non-increasing over the window; class "ii" when
    a stable part exists, beta_hat = pi(w_last)/pi(stable part) exceeds
    ``zero_tol`` and pi drifts by at most ``drift_tol`` (relative) over the window.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    window = math.ceil(n_max / 4)
    pis: list[float] = []
    tail_texts: list[str] = []
    last_rank = -1
    count = 0
    for v in seq:
        if count == n_max:
            break
        if v.rank <= last_rank:
            raise ValueError(f"ranks must increase strictly (got {v.rank} after {last_rank})")
        last_rank = v.rank
        pis.append(pi_float(two_positions(v)))
        if count >= n_max - window:
            tail_texts.append(v.text[::-1])
        count += 1
    if count == 0:
        raise ValueError("empty sequence")
    if count < n_max:
        window = min(window, count)
        tail_texts = tail_texts[-window:]
    stable = os.path.commonprefix(tail_texts) if tail_texts else ""
    limit_word = FibWord._from_text(stable[::-1])
    limit_pos = two_positions(limit_word)
    pi_limit = pi_float(limit_pos)
    pi_last = pis[-1]
    pi_start = pis[-len(tail_texts)] if tail_texts else pis[0]
    beta_hat = pi_last / pi_limit if stable and pi_limit > 0 else None
    if pi_last <= zero_tol and pi_last <= pi_start:
        cls = "i"
    elif beta_hat is not None and beta_hat > zero_tol and abs(pi_last - pi_start) <= drift_tol * pi_last:
        cls = "ii"
    else:
        cls = "inconclusive"
    return RegularityReport(count, pis, len(stable), limit_pos, beta_hat, cls, len(tail_texts),
                            {"pi_limit": pi_limit, "pi_window_start": pi_start})


# -- the space Omega ----------------------------------------------------------

@dataclass(frozen=True)
class OmegaPoint:
    """Either the Plancherel point (beta is None) or a pair (beta, w) with 0 < beta <= 1."""

    beta: Fraction | None = None
    w: SummableWord | None = None

    def __post_init__(self):
        if self.beta is None:
            if self.w is not None:
                raise ValueError("the Plancherel point carries no word")
            return
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 < self.beta <= 1:
            raise ValueError("beta must lie in (0, 1]")
        if self.w is None:
            raise ValueError("a non-Plancherel point needs a summable word")

    @classmethod
    def plancherel(cls) -> "OmegaPoint":
        return cls()

    @property
    def is_plancherel(self) -> bool:
        return self.beta is None

    def weight(self) -> float:
        """beta * pi(w) as a float (midpoint for intervals); 0 at the Plancherel point."""
        if self.is_plancherel:
            return 0.0
        p = pi_value(self.w)
        return float(self.beta) * float((lower(p) + upper(p)) / 2)


def agreement_horizon(a: SummableWord, b: SummableWord) -> int | None:
    """Largest rank up to which the spellings of a and b agree (None: everywhere known)."""
    limits = [x for x in (a.known_rank, b.known_rank) if x is not None]
    cap = min(limits) if limits else None
    pa, pb = set(a.positions), set(b.positions)
    diff = sorted(p for p in pa ^ pb if cap is None or p <= cap)
    if diff:
        return diff[0] - 1
    return cap


@dataclass
class ConvergenceReport:
    state: str
    details: dict

    @property
    def converges(self) -> bool:
        return self.state == "converges"

    def summary(self) -> str:
        return f"[{self.state}] " + ", ".join(f"{k}={v}" for k, v in self.details.items())


def omega_converges(seq: Sequence[OmegaPoint], limit: OmegaPoint, tol: float) -> ConvergenceReport:
    """Check the defining predicates of convergence in Omega on the last supplied point.

    Towards P: beta_n <= tol or pi(w_n) <= tol.  Towards (beta, w): the words
    agree letter by letter up to rank ceil(1/tol) (or on the whole certified
    prefix of w if shorter) and |beta_n pi(w_n) - beta pi(w)| <= tol.
    """
    if not seq:
        return ConvergenceReport("inconclusive", {"reason": "empty sequence"})
    last = seq[-1]
    if limit.is_plancherel:
        if last.is_plancherel:
            return ConvergenceReport("converges", {"last": "P"})
        pi_last = float(upper(pi_value(last.w)))
        ok = float(last.beta) <= tol or pi_last <= tol
        return ConvergenceReport("converges" if ok else "inconclusive",
                                 {"beta_last": float(last.beta), "pi_last": pi_last})
    if last.is_plancherel:
        return ConvergenceReport("inconclusive", {"reason": "last point is P"})
    need = math.ceil(1 / tol)
    horizon = agreement_horizon(last.w, limit.w)
    known = limit.w.known_rank
    required = need if known is None else min(need, known)
    digit_ok = horizon is None or horizon >= required
    gap = abs(last.weight() - limit.weight())
    ok = digit_ok and gap <= tol
    return ConvergenceReport("converges" if ok else "inconclusive",
                             {"horizon": horizon, "required": required, "weight_gap": gap})


# -- inequality fuzzing ---------------------------------------------------------

def _random_word(gen: np.random.Generator, rank: int) -> FibWord:
    digits = []
    r = 0
    while r < rank:
        d = 1 if rank - r == 1 else int(gen.integers(1, 3))
        digits.append(d)
        r += d
    return FibWord(digits)


def _random_core(gen: np.random.Generator, k: int) -> FibWord:
    """A word of rank k whose leftmost letter is 2 (k >= 2)."""
    return _random_word(gen, k - 2).prepend("2")


def verify_inequalities(trials: int, seed: int) -> Report:
    """Random instances of the elementary inequalities and of three bounds relating psi, pi and pi_k."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rep = Report("elementary inequalities and bounds on pi, pi_k")
    gen = substream(seed, 0)
    for _ in range(trials):
        d = int(gen.integers(2, 400))
        k = int(gen.integers(1, 40))
        rep.check(1 - Fraction(k, d) <= (1 - Fraction(1, d)) ** k, f"1 - k/d <= (1 - 1/d)^k fails at d={d}, k={k}")
        k = int(gen.integers(1, 30))
        d = k + int(gen.integers(1, 400))
        lo = (1 - Fraction(1, d)) ** (k * k)
        mid = 1 - Fraction(k, d)
        rep.check(lo <= mid, f"(1 - 1/d)^(k^2) <= 1 - k/d fails at d={d}, k={k}")
        ratio = (1 - Fraction(1, d)) ** k / mid
        rep.check(1 <= ratio <= 1 + Fraction(k * (k - 1) // 2, (d - k) ** 2), f"ratio bound fails at d={d}, k={k}")

        v = _random_word(gen, int(gen.integers(1, 61)))
        vpos = two_positions(v)
        k = int(gen.integers(2, 13))
        u0 = _random_core(gen, k)
        psi = normalized_character(two_positions(u0), vpos)
        pk = pi_k_value(SummableWord(vpos), k)
        rep.check(abs(psi) <= abs(pk), f"|psi_v(p_u)| <= |pi_k(v)| fails at v={v}, u0={u0}")
        pi = pi_value(SummableWord(vpos))
        rep.check(abs(pk) <= (k * pi) ** k, f"|pi_k(v)| <= (k pi(v))^k fails at v={v}, k={k}")
        if vpos and vpos[0] == 2:
            rep.check(abs(pi_k_value(SummableWord(vpos), 3)) >= pi ** 9, f"|pi_3| >= pi^9 fails at v={v}")
        else:
            rep.check(abs(pi_k_value(SummableWord(vpos), 2)) >= pi ** 4, f"|pi_2| >= pi^4 fails at v={v}")
    rep.notes.update({"trials": trials, "seed": seed})
    return rep


# -- recovering (beta, w) from p-values -----------------------------------------

def integer_root(n: int, k: int) -> int | None:
    """The exact k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    # Newton iteration from a starting point above the root
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    for c in (x - 1, x, x + 1):
        if c >= 0 and c ** k == n:
            return c
    return None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """The positive rational k-th root of q > 0 if it exists."""
    if q <= 0:
        return None
    a = integer_root(q.numerator, k)
    b = integer_root(q.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


@dataclass(frozen=True)
class Recovery:
    positions: tuple[int, ...]
    beta: Fraction
    witness_k: int


def recover_parameters(values: Mapping[int, Fraction]) -> Recovery:
    """Recover (beta, A) from V_k = phi_{beta,w}(p_u), u = 1^inf 2 1^{k-2}, k = 2..K.

    For k >= 3, V_k = 0 exactly when some 2 of w sits at position k, and a
    2 at position 2 gives V_2 = 0; a 2 at position 1 makes V_2 negative.
    The positions recovered are those <= K; beta then follows from
    beta^k = V_k / pi_k(A) at the smallest k not in A with V_k != 0.
    """
    ks = sorted(values)
    if not ks or ks[0] != 2 or ks != list(range(2, ks[-1] + 1)):
        raise ValueError("need the values for k = 2, 3, ..., K")
    vals = {k: Fraction(v) for k, v in values.items()}
    found = [k for k in ks if vals[k] == 0]
    if vals[2] < 0:
        found.append(1)
    positions = tuple(sorted(found))
    w = SummableWord(positions)
    for k in ks:
        if k in positions or vals[k] == 0:
            continue
        pk = pi_k_value(w, k)
        if pk == 0:
            continue
        beta = rational_root(vals[k] / pk, k)
        if beta is None:
            raise ValueError(f"V_{k}/pi_{k} = {vals[k] / pk} has no rational {k}-th root")
        return Recovery(positions, beta, k)
    raise ValueError("no usable k: every value vanishes")
