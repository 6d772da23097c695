"""Plancherel growth, hitting probabilities and seeded Monte Carlo samplers."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .harmonic import HarmonicFn, central_measure, contract
from .intervals import Interval
from .lattice import LevelFn, dim, level, path_count
from .rng import DEFAULT_SEED, ExactSampler, uniforms128
from .words import EMPTY, FibWord, successors, word


class UnsampleableError(ValueError):
    pass


@lru_cache(maxsize=1 << 16)
def plancherel_step(v: FibWord) -> dict[FibWord, Fraction]:
    """p(v, w) = d(w) / ((n+1) d(v)) over the covers w of v."""
    n = v.rank
    dv = dim(v)
    return {w: Fraction(dim(w), (n + 1) * dv) for w in sorted(successors(v))}


def hit_probability(u, v) -> Fraction:
    """Probability that Plancherel growth started at u passes through v."""
    u, v = word(u), word(v)
    if u.rank > v.rank:
        raise ValueError(f"|u| = {u.rank} exceeds |v| = {v.rank}")
    k, n = u.rank, v.rank
    return Fraction(math.factorial(k) * path_count(u, v) * dim(v), math.factorial(n) * dim(u))


@dataclass(frozen=True)
class WalkConfig:
    start: FibWord = EMPTY
    n: int = 8
    samples: int = 100_000
    seed: int = DEFAULT_SEED
    kind: str = "plancherel"
    tau: Fraction | None = None
    base: HarmonicFn | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("sample count must be >= 1")
        if self.kind not in ("plancherel", "mixed"):
            raise ValueError(f"unknown walk kind {self.kind!r}")
        if self.kind == "plancherel" and self.n < self.start.rank:
            raise ValueError("target level below the start vertex")
        if self.kind == "mixed":
            if self.tau is None or self.base is None:
                raise ValueError("mixed walks need tau and a base function")
            if not 0 <= self.tau <= 1:
                raise ValueError("tau must lie in [0, 1]")


@dataclass
class EmpiricalDist:
    n: int
    counts: dict[FibWord, int]
    total: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not sum to the total")
        if any(w.rank != self.n for w in self.counts):
            raise ValueError("support leaves level n")

    def frequency(self, v: FibWord) -> float:
        return self.counts.get(v, 0) / self.total

    def frequencies(self) -> dict[FibWord, float]:
        return {w: c / self.total for w, c in self.counts.items()}

    def tv_distance(self, law: LevelFn) -> float:
        return 0.5 * sum(abs(self.frequency(v) - float(p)) for v, p in law.items())


class _Walker:
    """Per-sample logic shared by the serial and the worker-process paths."""

    def __init__(self, cfg: WalkConfig):
        self.cfg = cfg
        self.steps: dict[FibWord, tuple[tuple[FibWord, ...], ExactSampler]] = {}
        if cfg.kind == "mixed":
            n, tau = cfg.n, cfg.tau
            binom = [math.comb(n, k) * tau ** k * (1 - tau) ** (n - k) for k in range(n + 1)]
            self.k_sampler = ExactSampler(binom)
            self.level_samplers = {}
            for k in range(n + 1):
                if binom[k] == 0:
                    continue
                law = central_measure(cfg.base, k).values
                if any(isinstance(x, Interval) for x in law):
                    raise UnsampleableError("base function has non-exact values")
                self.level_samplers[k] = ExactSampler(law)

    def _step(self, v: FibWord) -> FibWord:
        got = self.steps.get(v)
        if got is None:
            probs = plancherel_step(v)
            got = (tuple(probs), ExactSampler(list(probs.values())))
            self.steps[v] = got
        targets, sampler = got
        return targets[sampler.pick(next(self._draws))]

    def sample(self, i: int) -> FibWord:
        cfg = self.cfg
        # at most n growth steps plus two draws for the starting vertex
        self._draws = iter(uniforms128(cfg.seed, i, cfg.n + 2))
        if cfg.kind == "plancherel":
            v = cfg.start
        else:
            k = self.k_sampler.pick(next(self._draws))
            v = level(k)[self.level_samplers[k].pick(next(self._draws))]
        while v.rank < cfg.n:
            v = self._step(v)
        return v

    def run(self, lo: int, hi: int) -> dict[FibWord, int]:
        counts: dict[FibWord, int] = {}
        for i in range(lo, hi):
            v = self.sample(i)
            counts[v] = counts.get(v, 0) + 1
        return counts


def _run_chunk(args):
    cfg, lo, hi = args
    return _Walker(cfg).run(lo, hi)


def sample_walk(cfg: WalkConfig, workers: int = 1) -> EmpiricalDist:
    """Seeded sampler; sample i uses its own counter-based substream, so workers > 1 gives identical counts."""
    if workers <= 1:
        counts = _Walker(cfg).run(0, cfg.samples)
    else:
        bounds = [cfg.samples * j // workers for j in range(workers + 1)]
        chunks = [(cfg, bounds[j], bounds[j + 1]) for j in range(workers)]
        counts = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_chunk, chunks):
                for v, c in part.items():
                    counts[v] = counts.get(v, 0) + c
    ordered = {v: counts[v] for v in sorted(counts)}
    return EmpiricalDist(cfg.n, ordered, cfg.samples)


def exact_walk_dist(start: FibWord, n: int) -> LevelFn:
    """Law at level n of Plancherel growth from ``start``."""
    return LevelFn.from_function(n, lambda v: hit_probability(start, v))


def exact_mixed_dist(tau, phi: HarmonicFn, n: int) -> LevelFn:
    """M_n(v) = d(v) C_tau(phi)(v)."""
    return central_measure(contract(phi, tau), n)
