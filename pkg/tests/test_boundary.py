import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from conftest import fib_words
from yflattice.boundary import (
    InsufficientPrefix,
    OmegaPoint,
    SummableWord,
    UncertifiedTail,
    alternating_word,
    approx_positions,
    approx_sequence,
    functional_p_value,
    integer_root,
    omega_converges,
    pi_float,
    pi_k_value,
    pi_value,
    psi_float,
    rational_root,
    recover_parameters,
    regularity_diagnose,
    transient_length,
    verify_inequalities,
)
from yflattice.characters import normalized_character
from yflattice.harmonic import contract, phi_summable
from yflattice.intervals import Interval
from yflattice.suites import sparse_subsets
from yflattice.words import EMPTY, WordError, parse_word, two_positions

F = Fraction
w = parse_word


class TestSummableWord:
    def test_parse(self):
        a = SummableWord.parse("positions=3,7,15")
        assert a.positions == (3, 7, 15) and a.finitary
        b = SummableWord.parse("positions=1,4,9,16;tailbound=0.05")
        assert b.tail_bound == F(1, 20) and not b.finitary
        assert SummableWord.parse(b.to_spec()) == b
        assert SummableWord.parse("positions=").positions == ()

    @pytest.mark.parametrize("bad", ["positions=3,4", "positions=0", "pos=3", "positions=a",
                                     "positions=3;tailbound=-1", "positions=;tailbound=0.1", "positions"])
    def test_parse_errors(self, bad):
        with pytest.raises(WordError):
            SummableWord.parse(bad)

    def test_rightmost(self):
        sw = SummableWord((3,))
        assert sw.rightmost(3) == w("211")
        assert sw.rightmost(5) == w("11211")
        tail = SummableWord((2, 5), F(1, 10))
        assert tail.rightmost(4) == w("2121")
        with pytest.raises(InsufficientPrefix):
            tail.rightmost(5)

    @given(fib_words(0, 12))
    def test_from_word(self, v):
        sw = SummableWord.from_word(v)
        assert sw.rightmost(len(v) + 2) == v.prepend("11")


class TestPi:
    def test_examples(self):
        assert pi_value(SummableWord(())) == 1
        assert pi_value(w("211")) == F(2, 3)
        assert pi_value(w("21")) == F(1, 2)
        assert pi_k_value(SummableWord((3,)), 2) == F(1, 3)
        assert pi_k_value(w("2"), 2) == -1
        assert pi_k_value(w("12"), 3) == 1
        with pytest.raises(ValueError):
            pi_k_value(w("2"), 1)

    def test_pi_k_is_a_p_value(self):
        for pos in sparse_subsets(9):
            sw = SummableWord(pos)
            for k in range(2, 11):
                core = w("2" + "1" * (k - 2))
                assert pi_k_value(sw, k) == functional_p_value(sw, two_positions(core))
                assert pi_k_value(sw, k) == phi_summable(sw).p_value(core)

    def test_interval_enclosure(self):
        # prefix 2,4,8 and true tail 16, 32, ...: sum of reciprocals 1/8
        sw = SummableWord((2, 4, 8), F(1, 8))
        encl = pi_value(sw)
        assert isinstance(encl, Interval)
        truth = math.prod(1 - 2.0 ** -j for j in range(1, 60))
        assert float(encl.lo) <= truth <= float(encl.hi)
        assert encl.lo > 0
        for k in (2, 3, 4, 5):
            e = pi_k_value(sw, k)
            exact = math.prod(1 - k / 2 ** j for j in range(1, 60) if 2 ** j >= k - 1)
            assert float(e.lo) - 1e-12 <= exact <= float(e.hi) + 1e-12

    def test_uncertified(self):
        with pytest.raises(UncertifiedTail):
            pi_k_value(SummableWord((1,), F(1, 10)), 5)

    def test_float_versions(self):
        v = w("2121211")
        assert abs(pi_float(two_positions(v)) - float(pi_value(v))) < 1e-15
        d = two_positions(w("21"))
        assert abs(psi_float(d, two_positions(v)) - float(normalized_character(d, two_positions(v)))) < 1e-15


class TestApprox:
    def test_transient_lengths(self):
        assert transient_length(F(1), 7) == 0
        assert transient_length(F(0), 7) == 49
        assert transient_length(F(1, 2), 7) == 21

    def test_sequence_shape(self):
        sw = SummableWord((3,))
        v = approx_sequence(F(1, 2), sw, 4)
        assert v.text == "2" * 12 + "1" * 4 + "1211"
        assert two_positions(v) == approx_positions(F(1, 2), sw, 4)

    @settings(max_examples=30)
    @given(st.sampled_from(sparse_subsets(8)), st.fractions(0, 1, max_denominator=5), st.integers(1, 30))
    def test_positions_agree(self, pos, beta, n):
        sw = SummableWord(pos)
        assert two_positions(approx_sequence(beta, sw, n)) == approx_positions(beta, sw, n)

    def test_worked_family_is_exact(self):
        # psi_{v(n)}(p_2) telescopes to beta^2 / 3 when r_n = 3n
        sw = SummableWord((3,))
        for n in (5, 40, 300):
            v = approx_sequence(F(1, 2), sw, n)
            assert normalized_character((1,), two_positions(v)) == F(1, 12)

    def test_pi_k_ratios(self):
        sw = SummableWord((3,))
        for k in (2, 3):
            pk = pi_k_value(sw, k)
            if pk == 0:
                continue
            pos = approx_positions(F(1, 2), sw, 2000)
            ratio = pi_k_value(SummableWord(pos), k) / pk
            assert abs(ratio - F(1, 2) ** k) <= 0.02


class TestRegularity:
    def test_ones(self):
        rep = regularity_diagnose((w("1" * n) for n in range(1, 10 ** 6)), 200)
        assert rep.classification == "ii" and rep.beta_hat == 1.0 and rep.limit_positions == ()

    def test_alternating(self):
        rep = regularity_diagnose((alternating_word(n) for n in range(1, 10 ** 6)), 2000)
        assert rep.classification == "i" and rep.pi_trajectory[-1] <= 0.05

    def test_approximating_sequence(self):
        sw = SummableWord((3,))
        rep = regularity_diagnose((approx_sequence(F(1, 2), sw, n) for n in range(1, 10 ** 6)), 2000)
        assert rep.classification == "ii"
        assert abs(rep.beta_hat - 0.5) <= 0.05
        assert rep.limit_positions == (3,)

    def test_rank_order(self):
        with pytest.raises(ValueError):
            regularity_diagnose([w("11"), w("2")], 2)


class TestOmega:
    def test_constant(self):
        p = OmegaPoint(F(1, 2), SummableWord((3,)))
        assert omega_converges([p] * 5, p, 0.01).converges
        assert omega_converges([OmegaPoint.plancherel()] * 3, OmegaPoint.plancherel(), 0.01).converges

    def test_to_plancherel(self):
        sw = SummableWord((3,))
        seq = [OmegaPoint(F(1, n), sw) for n in range(1, 200)]
        assert omega_converges(seq, OmegaPoint.plancherel(), 0.01).converges

    def test_to_point(self):
        sw = SummableWord((2, 4, 8, 16, 32, 64, 128, 256))
        limit = OmegaPoint(F(2, 3), sw)
        seq = [OmegaPoint(F(2, 3), sw.truncated(n)) for n in range(1, 300)]
        assert omega_converges(seq, limit, 0.01).converges
        assert not omega_converges(seq[:5], limit, 0.01).converges

    def test_invalid(self):
        with pytest.raises(ValueError):
            OmegaPoint(F(0), SummableWord(()))
        with pytest.raises(ValueError):
            OmegaPoint(F(1, 2))


class TestInequalities:
    def test_examples(self):
        assert 1 - F(2, 3) <= (1 - F(1, 3)) ** 2
        assert abs(normalized_character((1,), (1,))) == abs(pi_k_value(w("2"), 2)) == 1
        assert abs(pi_k_value(w("211"), 2)) == F(1, 3) <= (2 * pi_value(w("211"))) ** 2

    def test_fuzz(self):
        rep = verify_inequalities(500, 11)
        assert rep.passed and rep.checked == 3000

    def test_rejects_zero_trials(self):
        with pytest.raises(ValueError):
            verify_inequalities(0, 1)


class TestRecovery:
    @given(st.integers(0, 10 ** 30), st.integers(1, 7))
    def test_integer_root(self, n, k):
        r = integer_root(n ** k, k)
        assert r == n
        if n > 1 and k > 1:
            assert integer_root(n ** k + 1, k) is None

    def test_rational_root(self):
        assert rational_root(F(8, 27), 3) == F(2, 3)
        assert rational_root(F(2), 2) is None
        assert rational_root(F(-1), 3) is None

    @settings(max_examples=25)
    @given(st.sampled_from(sparse_subsets(8)), st.fractions(F(1, 9), 1, max_denominator=9))
    def test_recovers(self, pos, beta):
        phi = contract(phi_summable(SummableWord(pos)), beta)
        values = {k: phi.p_value(w("2" + "1" * (k - 2))) for k in range(2, 11)}
        rec = recover_parameters(values)
        assert rec.positions == pos and rec.beta == beta

    def test_bad_input(self):
        with pytest.raises(ValueError):
            recover_parameters({3: F(1)})
