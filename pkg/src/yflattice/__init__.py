"""Exact computations on the Young-Fibonacci lattice and its harmonic functions."""
from .words import EMPTY, FibWord, parse_word, word

__version__ = "0.1.0"

__all__ = ["EMPTY", "FibWord", "parse_word", "word", "__version__"]
