"""Seeded Monte Carlo: empirical level laws against the exact ones.

Runs Plancherel growth from a start vertex and the mixed procedure over a
base function, and prints per-vertex frequencies with the total-variation
distance.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from fractions import Fraction

from yflattice.cli import parse_base
from yflattice.rng import DEFAULT_SEED
from yflattice.stochastic import WalkConfig, exact_mixed_dist, exact_walk_dist, sample_walk
from yflattice.words import parse_word


@dataclass
class MonteCarloConfig:
    n: int = 8
    samples: int = 100_000
    seed: int = DEFAULT_SEED
    start: str = "e"
    tau: Fraction = Fraction(1, 2)
    base: str = "type1:2"
    workers: int = 1


def report(title: str, emp, law) -> None:
    print(f"# {title}: TV = {emp.tv_distance(law):.5f}")
    print("word,frequency,exact")
    for v, p in law.items():
        print(f"{v},{emp.frequency(v):.6f},{float(p):.6f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=MonteCarloConfig.n)
    ap.add_argument("--samples", type=int, default=MonteCarloConfig.samples)
    ap.add_argument("--seed", type=int, default=MonteCarloConfig.seed)
    ap.add_argument("--start", default=MonteCarloConfig.start)
    ap.add_argument("--tau", type=Fraction, default=MonteCarloConfig.tau)
    ap.add_argument("--base", default=MonteCarloConfig.base)
    ap.add_argument("--workers", type=int, default=MonteCarloConfig.workers)
    ns = ap.parse_args()
    cfg = MonteCarloConfig(ns.n, ns.samples, ns.seed, ns.start, ns.tau, ns.base, ns.workers)
    start = parse_word(cfg.start)
    plan = sample_walk(WalkConfig(start, cfg.n, cfg.samples, cfg.seed), workers=cfg.workers)
    report(f"Plancherel growth from {start}", plan, exact_walk_dist(start, cfg.n))
    base = parse_base(cfg.base)
    mixed = sample_walk(WalkConfig(start, cfg.n, cfg.samples, cfg.seed, "mixed", cfg.tau, base),
                        workers=cfg.workers)
    report(f"mixed procedure, tau = {cfg.tau}, base {cfg.base}", mixed, exact_mixed_dist(cfg.tau, base, cfg.n))


if __name__ == "__main__":
    main()
