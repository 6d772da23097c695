import math
from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import fib_words
from yflattice.lattice import (
    LevelCapError,
    LevelFn,
    apply_D,
    apply_U,
    dim,
    fibonacci,
    level,
    martin_kernel,
    path_count,
    paths_from,
    paths_to,
    plancherel_normalization,
    verify_differential,
    verify_sum_identities,
)
from yflattice.words import EMPTY, parse_word, predecessors, successors

w = parse_word


def test_levels():
    assert level(0) == (EMPTY,)
    assert level(2) == (w("11"), w("2"))
    assert len(level(5)) == 8


def test_fibonacci_sizes():
    a, b = 1, 1
    for n in range(20):
        assert len(level(n)) == fibonacci(n) == a
        a, b = b, a + b


def test_level_cap():
    with pytest.raises(LevelCapError):
        level(31)
    with pytest.raises(ValueError):
        level(-1)


def test_path_count_examples():
    assert path_count(EMPTY, w("21")) == 2
    assert path_count(w("2"), w("211")) == 1
    assert path_count(w("11"), w("2")) == 0


def test_kernel_examples():
    assert martin_kernel(EMPTY, w("2211")).value == 1
    assert martin_kernel(w("2"), w("211")).value == Fraction(1, 3)
    assert martin_kernel(w("1"), w("2")).value == 1


def test_path_count_matches_dim():
    for n in range(13):
        for v in level(n):
            assert path_count(EMPTY, v) == dim(v)


def test_forward_and_backward_tables_agree():
    for u in level(3):
        fwd = paths_from(u, 8)
        for v in level(8):
            assert fwd.get(v, 0) == paths_to(v).get(u, 0) == path_count(u, v)


@given(fib_words(0, 4), fib_words(6, 10), st.integers(4, 6))
def test_chain_rule(u, v, m):
    total = sum(path_count(u, x) * path_count(x, v) for x in level(m))
    assert total == path_count(u, v)


@given(fib_words(0, 5), st.integers(0, 5))
def test_stabilization_along_ones(v, extra):
    # d(v, 1^k w) is constant once k >= |v|
    base = w("211")
    k = v.rank
    a = path_count(v, base.prepend("1" * k))
    b = path_count(v, base.prepend("1" * (k + extra)))
    assert a == b


def test_operator_examples():
    f = LevelFn.indicator(w("2"))
    assert apply_D(f)[w("1")] == 1
    g = LevelFn.constant(2)
    assert apply_D(g)[w("1")] == 2
    e = LevelFn.indicator(w("21"))
    assert apply_D(apply_U(e)) - apply_U(apply_D(e)) == e


def test_U_sums_over_covered_vertices():
    f = LevelFn.constant(1)
    assert apply_U(f).values == tuple(Fraction(len(predecessors(x))) for x in level(2))


def test_edge_levels():
    assert apply_D(LevelFn.indicator(EMPTY)).level == -1
    assert apply_U(LevelFn(-1, ())) == LevelFn.zero(0)


def test_levelfn_validates_length():
    with pytest.raises(ValueError):
        LevelFn(2, (Fraction(1),))


@given(st.integers(0, 7), st.data())
def test_adjointness(n, data):
    vals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
    f = LevelFn(n, tuple(data.draw(st.lists(vals, min_size=fibonacci(n), max_size=fibonacci(n)))))
    g = LevelFn(n + 1, tuple(data.draw(st.lists(vals, min_size=fibonacci(n + 1), max_size=fibonacci(n + 1)))))
    assert apply_U(f).dot(g) == f.dot(apply_D(g))


@given(st.integers(0, 7), st.data())
def test_weyl_on_random_functions(n, data):
    vals = st.fractions(min_value=-3, max_value=3, max_denominator=5)
    f = LevelFn(n, tuple(data.draw(st.lists(vals, min_size=fibonacci(n), max_size=fibonacci(n)))))
    assert apply_D(apply_U(f)) - apply_U(apply_D(f)) == f


def test_differential_sweep():
    rep = verify_differential(6)
    assert rep.passed and rep.checked > 0


def test_d1_d2_instances():
    assert successors(w("11")) & successors(w("2")) == {w("21")}
    assert predecessors(w("11")) & predecessors(w("2")) == {w("1")}
    assert len(predecessors(w("22"))) == 2 and len(successors(w("22"))) == 3


def test_sum_identity_instances():
    assert dim(w("11")) + dim(w("2")) == 2 * dim(w("1"))
    u = w("2")
    up = sum(path_count(u, x) for x in successors(u))
    down = sum(path_count(x, u) for x in predecessors(u))
    assert up - down == 1


def test_sum_identities_to_8():
    assert verify_sum_identities(8).passed


def test_plancherel_normalization_small():
    for n in range(11):
        assert sum(dim(v) ** 2 for v in level(n)) == math.factorial(n)
        assert plancherel_normalization(n)
