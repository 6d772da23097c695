from itertools import product

import pytest
from hypothesis import given
import hypothesis.strategies as st

from conftest import fib_words
from yflattice.lattice import level, paths_to
from yflattice.words import (
    EMPTY,
    FibWord,
    WordError,
    block_data,
    dim_product,
    from_positions,
    from_run_lengths,
    parse_word,
    predecessors,
    run_lengths,
    split,
    successors,
    two_positions,
    word,
    word_stats,
    z_value,
)


def W(*texts):
    return {parse_word(t) for t in texts}


class TestParse:
    def test_empty(self):
        assert parse_word("e") == EMPTY
        assert EMPTY.rank == 0 and str(EMPTY) == "e"

    def test_digits_are_rightmost_first(self):
        w = parse_word("21")
        assert w.digits == (1, 2)
        assert w.rank == 3

    def test_long_example(self):
        assert parse_word("222121112").rank == 14

    @pytest.mark.parametrize("bad", ["", "3", "12a", " 1", "ee", "0"])
    def test_rejects(self, bad):
        with pytest.raises(WordError):
            parse_word(bad)

    def test_rejects_non_string(self):
        with pytest.raises(WordError):
            parse_word(12)

    def test_round_trip_to_rank_10(self):
        for n in range(11):
            for w in level(n):
                assert parse_word(str(w)) == w

    def test_immutable(self):
        with pytest.raises(AttributeError):
            parse_word("1").rank = 3


class TestStats:
    def test_head_example(self):
        s = word_stats(parse_word("222121112"))
        assert s.head_length == 3 and s.leading_ones == 0

    def test_21(self):
        s = word_stats(parse_word("21"))
        assert s.two_positions == (2,) and s.epsilon == 1 and s.leading_ones == 0

    def test_22(self):
        assert two_positions(parse_word("22")) == (1, 3)

    def test_epsilon_of_empty(self):
        assert word_stats(EMPTY).epsilon == 1 and word_stats(EMPTY).head_length == 0

    @given(fib_words())
    def test_position_gaps(self, w):
        pos = two_positions(w)
        assert all(p >= 1 for p in pos)
        assert all(b - a >= 2 for a, b in zip(pos, pos[1:]))

    @given(fib_words())
    def test_positions_round_trip(self, w):
        assert from_positions(two_positions(w), rank=w.rank) == w

    @given(fib_words())
    def test_run_lengths_round_trip(self, w):
        assert from_run_lengths(run_lengths(w)) == w

    @given(fib_words())
    def test_stats_invariants(self, w):
        s = word_stats(w)
        assert s.rank == sum(w.digits)
        assert (s.epsilon == 1) == (w.rank == 0 or w.digits[0] == 1)
        assert (s.head_length == 0) == (w.rank == 0 or w.text[0] == "1")


class TestCovers:
    def test_worked_example_successors(self):
        assert successors(parse_word("222121112")) == W(
            "1222121112", "2122121112", "2212121112", "2221121112", "222221112")

    def test_worked_example_predecessors(self):
        assert predecessors(parse_word("222121112")) == W(
            "122121112", "212121112", "221121112", "22221112")

    def test_small(self):
        assert successors(parse_word("1")) == W("11", "2")
        assert successors(parse_word("22")) == W("122", "212", "221")
        assert successors(EMPTY) == W("1")
        assert predecessors(parse_word("11")) == W("1")
        assert predecessors(parse_word("211")) == W("111", "21")
        assert predecessors(EMPTY) == frozenset()

    @given(fib_words())
    def test_counts(self, w):
        h = word_stats(w).head_length
        if 1 in w.digits:
            assert (len(successors(w)), len(predecessors(w))) == (h + 2, h + 1)
        else:
            assert (len(successors(w)), len(predecessors(w))) == (h + 1, h)

    def test_cover_relations_are_converse(self):
        for n in range(12):
            for u in level(n):
                for v in successors(u):
                    assert u in predecessors(v)
                for x in predecessors(u):
                    assert u in successors(x)

    @given(fib_words())
    def test_covers_add_one_rank(self, w):
        assert all(v.rank == w.rank + 1 for v in successors(w))
        assert all(v.rank == w.rank - 1 for v in predecessors(w))


class TestDimAndZ:
    def test_examples(self):
        assert dim_product(EMPTY) == 1
        assert dim_product(parse_word("21")) == 2
        assert dim_product(parse_word("22")) == 3
        assert z_value(parse_word("11")) == 2
        assert z_value(parse_word("2")) == 2
        assert z_value(parse_word("21")) == 3

    def test_dim_matches_chain_count(self):
        # backward dynamic programming over predecessors, independent of the product
        for n in range(13):
            for v in level(n):
                assert paths_to(v)[EMPTY] == dim_product(v)

    def test_brute_force_chains(self):
        def chains(v):
            if v.rank == 0:
                return 1
            return sum(chains(x) for x in predecessors(v))
        for n in range(9):
            for v in level(n):
                assert chains(v) == dim_product(v)


class TestBlocks:
    def test_block_ranks(self):
        assert block_data(parse_word("111"))[0] == [3]
        assert block_data(parse_word("21"))[0] == [3, 0]
        assert block_data(parse_word("12"))[0] == [2, 1]

    def test_inverse_block_ranks(self):
        assert block_data(parse_word("2"))[1] == [0, 2]
        assert block_data(parse_word("21"))[1] == [1, 2]

    def test_split(self):
        assert split(parse_word("21"), [3]) == [parse_word("21")]
        assert split(parse_word("12"), [2, 1]) == [parse_word("2"), parse_word("1")]
        assert split(parse_word("2"), [1, 1]) is None

    def test_split_rank_mismatch(self):
        with pytest.raises(WordError):
            split(parse_word("21"), [1, 1])

    @given(fib_words(1, 12), st.data())
    def test_split_concatenates(self, w, data):
        cuts = sorted(data.draw(st.lists(st.integers(0, w.rank), max_size=3)))
        bounds = [0] + cuts + [w.rank]
        parts = [b - a for a, b in zip(bounds, bounds[1:])]
        pieces = split(w, parts)
        if pieces is not None:
            joined = EMPTY
            for p in pieces:
                joined = p + joined
            assert joined == w
            assert [p.rank for p in pieces] == parts

    @given(fib_words())
    def test_block_ranks_sum_to_rank(self, w):
        blocks, inv = block_data(w)
        assert sum(blocks) == w.rank and sum(inv) == w.rank


def test_word_accepts_words_and_text():
    w = parse_word("121")
    assert word(w) is w
    assert word("") == EMPTY and word("e") == EMPTY


def test_canonical_order_is_lexicographic():
    for n in range(10):
        texts = [w.text for w in level(n)]
        assert texts == sorted(texts)


def test_all_words_of_rank_appear_once():
    for n in range(10):
        expected = set()
        for length in range(n + 1):
            for ds in product((1, 2), repeat=length):
                if sum(ds) == n:
                    expected.add(FibWord(ds))
        assert set(level(n)) == expected and len(level(n)) == len(expected)
