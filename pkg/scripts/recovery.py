"""Recover (beta, A) of phi_{beta,w} from its values on p_{2 1^{k-2}}, k = 2..K.

Samples random pairs with A a 2-position set inside {1..top}, evaluates the
functional through word values on level K and runs the recovery.
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass
from fractions import Fraction

from yflattice.boundary import SummableWord, recover_parameters
from yflattice.harmonic import contract, phi_summable
from yflattice.rng import DEFAULT_SEED
from yflattice.suites import sparse_subsets


@dataclass
class RecoveryConfig:
    cases: int = 10
    top: int = 8
    k_max: int = 10
    seed: int = DEFAULT_SEED
    max_denominator: int = 7


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", type=int, default=RecoveryConfig.cases)
    ap.add_argument("--top", type=int, default=RecoveryConfig.top)
    ap.add_argument("--kmax", type=int, default=RecoveryConfig.k_max)
    ap.add_argument("--seed", type=int, default=RecoveryConfig.seed)
    ns = ap.parse_args()
    cfg = RecoveryConfig(ns.cases, ns.top, ns.kmax, ns.seed)
    if cfg.top > cfg.k_max:
        ap.error("positions above K cannot be recovered; need --top <= --kmax")
    rnd = random.Random(cfg.seed)
    subsets = sparse_subsets(cfg.top)
    betas = [Fraction(p, q) for q in range(2, cfg.max_denominator + 1) for p in range(1, q + 1)]
    bad = 0
    print("positions,beta,recovered_positions,recovered_beta,witness_k,ok")
    for _ in range(cfg.cases):
        A, beta = rnd.choice(subsets), rnd.choice(betas)
        phi = contract(phi_summable(SummableWord(A)), beta)
        values = {k: phi.p_value_direct("2" + "1" * (k - 2)) for k in range(2, cfg.k_max + 1)}
        got = recover_parameters(values)
        ok = (got.positions, got.beta) == (A, beta)
        bad += not ok
        print(f"\"{A}\",{beta},\"{got.positions}\",{got.beta},{got.witness_k},{ok}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
