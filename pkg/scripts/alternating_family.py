"""The non-summable family with 2's at positions 2, 4, ..., 2m.

pi(w_n) decays like m^{-1/2}, and every psi_{w_n}(p_u) with u0 != e tends to
zero with it.  Prints pi(w_n) next to the largest |psi_{w_n}(p_u)| over the
labels of essential rank 2..max_rank.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from yflattice.boundary import alternating_word, pi_float, psi_float
from yflattice.suites import p_labels
from yflattice.words import two_positions


@dataclass
class FamilyConfig:
    n_min: int = 100
    n_max: int = 3000
    stride: int = 100
    max_rank: int = 4


def run(cfg: FamilyConfig) -> list[tuple[int, float, float, str]]:
    labels = [lab for lab in p_labels(cfg.max_rank) if lab.essential_rank > 0]
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1, cfg.stride):
        pos = two_positions(alternating_word(n))
        vals = [(abs(psi_float(lab.deltas, pos)), str(lab)) for lab in labels]
        top, where = max(vals)
        rows.append((n, pi_float(pos), top, where))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmin", type=int, default=FamilyConfig.n_min)
    ap.add_argument("--nmax", type=int, default=FamilyConfig.n_max)
    ap.add_argument("--stride", type=int, default=FamilyConfig.stride)
    ap.add_argument("--max-rank", type=int, default=FamilyConfig.max_rank)
    ns = ap.parse_args()
    cfg = FamilyConfig(ns.nmin, ns.nmax, ns.stride, ns.max_rank)
    print("n,pi,max_abs_psi,argmax_u0")
    for n, pi, top, where in run(cfg):
        print(f"{n},{pi:.8g},{top:.8g},{where}")


if __name__ == "__main__":
    main()
