"""Named verification suites shared by the command line and the test-suite."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import characters, lattice, ncpoly
from .boundary import SummableWord, verify_inequalities
from .harmonic import (
    HarmonicFn,
    PWordLabel,
    check_harmonic,
    contract,
    mixture,
    phi_plancherel,
    phi_summable,
    psi_type1,
)
from .lattice import level, words_up_to
from .report import Report
from .rng import DEFAULT_SEED
from .stochastic import WalkConfig, exact_mixed_dist, exact_walk_dist, sample_walk
from .words import EMPTY, FibWord

BETAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
RATES = (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))


def sparse_subsets(top: int) -> list[tuple[int, ...]]:
    """Subsets of {1..top} with gaps >= 2, i.e. 2-position sets of finitary words."""
    out = []
    for r in range(top // 2 + 2):
        for c in combinations(range(1, top + 1), r):
            if all(b - a >= 2 for a, b in zip(c, c[1:])):
                out.append(c)
    return out


def p_labels(max_rank: int) -> list[PWordLabel]:
    """All labels 1^inf u0 with |u0| <= max_rank (u0 empty or led by 2)."""
    out = [PWordLabel(EMPTY)]
    for n in range(2, max_rank + 1):
        out.extend(PWordLabel(w.prepend("2")) for w in level(n - 2))
    return out


def builtin_families(word_rank: int = 6, positions_top: int = 8, betas=BETAS) -> list[HarmonicFn]:
    fams: list[HarmonicFn] = [phi_plancherel()]
    fams.extend(psi_type1(w) for w in words_up_to(word_rank))
    for pos in sparse_subsets(positions_top):
        f = phi_summable(SummableWord(pos))
        fams.append(f)
        fams.extend(contract(f, b) for b in betas if b != 1)
    return fams


def harmonic_suite(n_max: int, word_rank: int = 6, positions_top: int = 8, label_rank: int | None = None) -> Report:
    """Mean value property and positivity of every built-in family, plus phi_P(p_u) = 0 off u0 = e."""
    rep = Report("harmonicity of built-in families")
    for f in builtin_families(word_rank, positions_top):
        sub = check_harmonic(f, n_max)
        sub.name = f"{f.kind} {f.params()}"
        rep.merge(sub)
    rep.merge(check_harmonic(mixture([(Fraction(1, 2), phi_plancherel()), (Fraction(1, 2), psi_type1("2"))]),
                             min(n_max, 6)))
    label_rank = n_max if label_rank is None else label_rank
    P = phi_plancherel()
    for lab in p_labels(label_rank):
        want = 1 if lab.essential_rank == 0 else 0
        rep.check(P.p_value_generic(lab) == want, f"phi_P(p_{lab}) != {want}")
    rep.notes["n_max"] = n_max
    return rep


def contraction_suite(n_max: int, rates=RATES) -> Report:
    """C_0 = phi_P, C_1 = id, C_t C_s = C_ts, and beta-scaling of p-values vs the direct formula."""
    rep = Report("contraction semigroup and beta-scaling")
    P = phi_plancherel()
    bases = [psi_type1("2"), psi_type1("211"), phi_summable("positions=3"), phi_summable("positions=1,4,7"),
             mixture([(Fraction(1, 3), psi_type1("21")), (Fraction(2, 3), phi_summable("positions=2,6"))])]
    for phi in bases:
        c0, c1 = contract(phi, 0), contract(phi, 1)
        for n in range(n_max + 1):
            rep.check(c0.level_values(n) == P.level_values(n), f"C_0 != phi_P on level {n} for {phi.kind}")
            rep.check(c1.level_values(n) == phi.level_values(n), f"C_1 != id on level {n} for {phi.kind}")
        for t in rates:
            for s in rates:
                lhs = contract(contract(phi, s), t)
                rhs = contract(phi, t * s)
                for n in range(n_max + 1):
                    rep.check(lhs.level_values(n) == rhs.level_values(n),
                              f"C_{t} C_{s} != C_{t * s} on level {n} for {phi.kind}")
    for pos in sparse_subsets(min(n_max, 8))[:12]:
        f = phi_summable(SummableWord(pos))
        for b in BETAS:
            c = contract(f, b)
            for lab in p_labels(n_max):
                rep.check(c.p_value(lab) == c.p_value_direct(lab),
                          f"beta-scaling fails for w={pos}, beta={b}, u0={lab}")
    rep.notes["n_max"] = n_max
    return rep


def montecarlo_suite(n: int = 8, samples: int = 100_000, seed: int = DEFAULT_SEED, tv_tol: float = 0.02,
                     workers: int = 1) -> Report:
    """Empirical vs exact level laws, Plancherel growth and the mixed procedure over psi_2."""
    rep = Report("Monte Carlo level laws")
    plan = sample_walk(WalkConfig(EMPTY, n, samples, seed), workers=workers)
    tv = plan.tv_distance(exact_walk_dist(EMPTY, n))
    rep.check(tv <= tv_tol, f"Plancherel TV {tv:.4f} > {tv_tol}")
    base = psi_type1("2")
    half = Fraction(1, 2)
    mixed = sample_walk(WalkConfig(EMPTY, n, samples, seed, "mixed", half, base), workers=workers)
    tv2 = mixed.tv_distance(exact_mixed_dist(half, base, n))
    rep.check(tv2 <= tv_tol, f"mixed TV {tv2:.4f} > {tv_tol}")
    rep.notes.update({"tv_plancherel": f"{tv:.5f}", "tv_mixed": f"{tv2:.5f}", "samples": samples, "seed": seed})
    return rep


@dataclass(frozen=True)
class Suite:
    name: str
    default_n: int
    limit: int
    run: Callable[[int, int], Report]


def _inverse(n_max: int, seed: int) -> Report:
    rep = Report("inverse transition")
    for n in range(n_max + 1):
        rep.merge(characters.verify_inverse(n))
    return rep


def _pieri(n_max: int, seed: int) -> Report:
    rep = ncpoly.verify_pieri(n_max + 1)
    rep.merge(ncpoly.verify_determinants(min(n_max, 7)))
    return rep


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("poset", 12, 16, lambda n, seed: lattice.verify_differential(n)),
        Suite("sums", 10, 13, lambda n, seed: lattice.verify_sum_identities(n, n - 1)),
        Suite("pieri", 8, 9, _pieri),
        Suite("pbasis", 8, 9, lambda n, seed: ncpoly.verify_bases(n)),
        Suite("chars", 9, 11, lambda n, seed: characters.verify_agreement(n)),
        Suite("inverse", 9, 11, _inverse),
        Suite("harmonic", 8, 12, lambda n, seed: harmonic_suite(n, word_rank=min(n, 6))),
        Suite("contraction", 8, 10, lambda n, seed: contraction_suite(n)),
        Suite("montecarlo", 8, 10, lambda n, seed: montecarlo_suite(n, seed=seed)),
        Suite("inequalities", 10_000, 10 ** 6, lambda n, seed: verify_inequalities(n, seed)),
    ]
}


def run_suite(name: str, n_max: int | None = None, seed: int = DEFAULT_SEED) -> Report:
    """Run one named suite; n_max defaults per suite (trials for the inequality fuzzer)."""
    suite = SUITES[name]
    n = suite.default_n if n_max is None else n_max
    if n > suite.limit:
        raise ValueError(f"suite {name}: n_max {n} exceeds safety limit {suite.limit}")
    if n < 1:
        raise ValueError("n_max must be >= 1")
    return suite.run(n, seed)
