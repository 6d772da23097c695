"""Counter-based random streams (Philox 4x64) and exact sampling from rational laws.

Sample i of a run with seed s draws from the Philox stream with key s and
counter (0, 0, 0, i), so the output of sample i never depends on how the
samples are distributed over workers.
"""
from __future__ import annotations

import bisect
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

MASK64 = (1 << 64) - 1
DEFAULT_SEED = 20240601


def substream(seed: int, index: int = 0) -> np.random.Generator:
    bitgen = np.random.Philox(key=seed & MASK64, counter=[0, 0, 0, index & MASK64])
    return np.random.Generator(bitgen)


def uniform128(gen: np.random.Generator) -> int:
    """An integer uniform on [0, 2^128)."""
    a, b = gen.integers(0, 1 << 64, size=2, dtype=np.uint64, endpoint=False)
    return (int(a) << 64) | int(b)


def uniforms128(seed: int, index: int, count: int) -> list[int]:
    """``count`` 128-bit uniforms from substream ``index``, built from raw Philox output."""
    bitgen = np.random.Philox(key=seed & MASK64, counter=[0, 0, 0, index & MASK64])
    raw = bitgen.random_raw(2 * count).tolist()
    return [(raw[2 * j] << 64) | raw[2 * j + 1] for j in range(count)]


class ExactSampler:
    """Draws an index with probability probs[i] (rationals summing to 1).

    One 128-bit uniform U is compared against the integer cumulative sums
    scaled by 2^128, so the only error is the 2^-128 discretization.
    """

    def __init__(self, probs: Sequence[Fraction]):
        probs = [Fraction(p) for p in probs]
        if any(p < 0 for p in probs):
            raise ValueError("negative probability")
        if sum(probs) != 1:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")
        den = lcm(*(p.denominator for p in probs)) if probs else 1
        self.denominator = den
        acc = 0
        cum = []
        for p in probs:
            acc += p.numerator * (den // p.denominator)
            cum.append(acc << 128)
        self._cum = cum

    def draw(self, gen: np.random.Generator) -> int:
        return self.pick(uniform128(gen))

    def pick(self, u: int) -> int:
        """Index selected by the 128-bit uniform u."""
        return bisect.bisect_right(self._cum, u * self.denominator)
