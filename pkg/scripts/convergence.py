"""Convergence of psi_{v(n)}(p_u) along the approximating sequence of (beta, w).

Writes one CSV row per (n, u0) with u0 = 2 1^{k-2}, k = 2, 3, ...; the
target is beta^k phi_w(p_u).  Long words are handled through their
2-positions only, so n in the thousands is cheap.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from yflattice.boundary import SummableWord
from yflattice.cli import converge_rows


@dataclass
class ConvergenceConfig:
    beta: Fraction = Fraction(1, 2)
    word: str = "positions=3"
    ks: tuple[int, ...] = (2, 3)
    n_max: int = 2000
    stride: int = 100


def run(cfg: ConvergenceConfig) -> list[dict]:
    w = SummableWord.parse(cfg.word)
    rows = []
    for k in cfg.ks:
        for r in converge_rows(cfg.beta, w, "2" + "1" * (k - 2), cfg.n_max, cfg.stride):
            rows.append({"k": k, **r})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", type=Fraction, default=ConvergenceConfig.beta)
    ap.add_argument("--word", default=ConvergenceConfig.word)
    ap.add_argument("--ks", default="2,3", help="comma-separated essential ranks")
    ap.add_argument("--nmax", type=int, default=ConvergenceConfig.n_max)
    ap.add_argument("--stride", type=int, default=ConvergenceConfig.stride)
    ns = ap.parse_args()
    cfg = ConvergenceConfig(ns.beta, ns.word, tuple(int(k) for k in ns.ks.split(",")), ns.nmax, ns.stride)
    rows = run(cfg)
    out = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
    out.writeheader()
    out.writerows(rows)


if __name__ == "__main__":
    main()
