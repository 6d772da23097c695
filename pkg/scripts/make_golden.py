"""Freeze character matrices for small levels as JSON test fixtures.

The rows come from expanding p_u in the s-basis inside the polynomial ring,
which does not use any of the character-matrix evaluators.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from yflattice.lattice import level
from yflattice.ncpoly import p_poly, to_s_coords


@dataclass
class GoldenConfig:
    n_max: int = 5
    out_dir: Path = Path(__file__).resolve().parent.parent / "tests" / "golden"


def golden_matrix(n: int) -> dict:
    words = level(n)
    rows = {str(u): [str(x) for x in to_s_coords(p_poly(u), degree=n).values] for u in words}
    return {"n": n, "order": [str(w) for w in words], "rows": rows}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=GoldenConfig.n_max)
    ap.add_argument("--out", type=Path, default=GoldenConfig.out_dir)
    ns = ap.parse_args()
    cfg = GoldenConfig(ns.nmax, ns.out)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(1, cfg.n_max + 1):
        path = cfg.out_dir / f"char_matrix_n{n}.json"
        path.write_text(json.dumps(golden_matrix(n), indent=1) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
