import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from finsemi.core import is_nilsemigroup, verify_associativity
from finsemi.errors import BadIndex, CapExceeded, NotAFactor
from finsemi.green import green_classes
from finsemi.sapir import (
    FactorSet,
    factors_upto,
    format_word,
    gamma,
    gamma_power,
    is_square_free,
    letter,
    letter_indices,
    matrix_row,
    order_r,
    parse_word,
    square_witness,
    vk_multiply,
    vk_table,
)


def ref_row(r, t):
    """Row t of the letter matrix as (i, j) pairs, straight from the column rules."""
    out = []
    for c in range(1, r + 1):
        i = -(-t // r) if c % 2 == 1 else (t - 1) % r + 1
        out.append((i, c))
    return out


def ref_gamma_power(k, m):
    r = 6 * k + 2
    w = [(1, 1)]
    for _ in range(m):
        w = [p for (i, j) in w for p in ref_row(r, (i - 1) * r + j)]
    return w


def ids(k, pairs):
    return [letter(k, i, j) for i, j in pairs]


@pytest.fixture(scope="module")
def fs2():
    return factors_upto(1, 2)


@pytest.fixture(scope="module")
def fs4():
    return factors_upto(1, 4)


class TestLetters:
    def test_r(self):
        assert order_r(1) == 8 and order_r(2) == 14
        with pytest.raises(BadIndex):
            order_r(0)

    def test_round_trip(self):
        for a in range(64):
            assert letter(1, *letter_indices(1, a)) == a
        assert parse_word(1, "a_1_1 a_8_8").tolist() == [0, 63]
        assert format_word(1, [0, 63]) == "a_1_1 a_8_8"

    def test_bad_letters(self):
        with pytest.raises(BadIndex):
            letter(1, 9, 1)
        with pytest.raises(BadIndex):
            parse_word(1, "b_1_1")


class TestMatrix:
    def test_first_row(self):
        assert format_word(1, matrix_row(1, 1)) == " ".join(f"a_1_{c}" for c in range(1, 9))

    def test_second_row(self):
        assert format_word(1, matrix_row(1, 2)) == "a_1_1 a_2_2 a_1_3 a_2_4 a_1_5 a_2_6 a_1_7 a_2_8"

    def test_last_row(self):
        assert format_word(1, matrix_row(1, 64)) == " ".join(f"a_8_{c}" for c in range(1, 9))

    @pytest.mark.parametrize("k", [1, 2])
    def test_all_rows_match_reference(self, k):
        r = order_r(k)
        for t in range(1, r * r + 1):
            assert matrix_row(k, t).tolist() == ids(k, ref_row(r, t))

    def test_bad_row(self):
        with pytest.raises(BadIndex):
            matrix_row(1, 65)
        with pytest.raises(BadIndex):
            matrix_row(1, 0)


class TestGamma:
    def test_of_a11(self):
        assert gamma(1, [letter(1, 1, 1)]).tolist() == matrix_row(1, 1).tolist()

    def test_lengths(self):
        assert [len(gamma_power(1, m)) for m in range(5)] == [1, 8, 64, 512, 4096]
        assert len(gamma_power(2, 2)) == 196

    def test_prefix(self):
        for m in range(4):
            a, b = gamma_power(1, m), gamma_power(1, m + 1)
            assert np.array_equal(b[: len(a)], a)

    def test_matches_reference(self):
        for m in range(4):
            assert gamma_power(1, m).tolist() == ids(1, ref_gamma_power(1, m))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            gamma_power(1, 4, max_length=1000)


class TestSquares:
    def test_small_words(self):
        assert is_square_free([0, 1, 0])
        assert square_witness([0, 1, 0, 1]) == (0, 2)
        assert square_witness([2, 0, 0]) == (1, 1)

    def test_gamma_cubed_against_oracle(self):
        w = gamma_power(1, 3).tolist()
        assert len(w) == 512
        assert not oracles.has_square(w)
        assert is_square_free(w)

    @pytest.mark.parametrize("k,m", [(1, 4), (2, 1), (2, 2)])
    def test_square_free(self, k, m):
        assert is_square_free(gamma_power(k, m))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 2), min_size=1, max_size=30))
    def test_agrees_with_oracle(self, w):
        got = square_witness(w)
        assert (got is None) == (not oracles.has_square(w))
        if got is not None:
            s, p = got
            assert w[s:s + p] == w[s + p:s + 2 * p]


class TestFactors:
    def test_letters(self):
        fs = factors_upto(1, 1)
        seen = set(gamma_power(1, 3).tolist())
        assert {int(w[0]) for w in fs.words()} == seen

    def test_length_two(self, fs2):
        a11a12 = [letter(1, 1, 1), letter(1, 1, 2)]
        assert a11a12 in fs2
        assert all(w[0] != w[1] for w in fs2.words() if len(w) == 2)

    def test_against_oracle(self, fs4):
        w = gamma_power(1, fs4.stabilized_at + 1).tolist()
        expected = oracles.factors(w, 4)
        assert {tuple(x) for x in fs4.words()} == expected

    def test_fixpoint(self, fs2):
        # two more substitution rounds after stabilization add nothing
        later = oracles.factors(gamma_power(1, fs2.stabilized_at + 2).tolist(), 2)
        assert {tuple(x) for x in fs2.words()} == later

    def test_factor_closed(self, fs4):
        members = {tuple(x) for x in fs4.words()}
        for w in members:
            for i in range(len(w)):
                for j in range(i + 1, len(w) + 1):
                    assert w[i:j] in members

    def test_monotone_in_length(self):
        small = {tuple(x) for x in factors_upto(1, 2).words()}
        large = {tuple(x) for x in factors_upto(1, 3).words()}
        assert small < large

    def test_contains_a11(self, fs2):
        assert [letter(1, 1, 1)] in fs2

    def test_bad_length(self):
        with pytest.raises(BadIndex):
            factors_upto(1, 0)


class TestVk:
    def test_squares_are_zero(self, fs2):
        for w in fs2.words():
            assert vk_multiply(fs2, w, w) is None

    def test_a11_a12(self, fs2):
        a, b = [letter(1, 1, 1)], [letter(1, 1, 2)]
        assert vk_multiply(fs2, a, b).tolist() == a + b

    def test_a12_a11_is_zero(self, fs4):
        a12, a11 = letter(1, 1, 2), letter(1, 1, 1)
        assert (a12, a11) not in oracles.factors(gamma_power(1, 5).tolist(), 2)
        assert vk_multiply(fs4, [a12], [a11]) is None

    def test_not_a_factor(self, fs2):
        with pytest.raises(NotAFactor):
            vk_multiply(fs2, [letter(1, 1, 1)] * 2, [letter(1, 1, 2)])

    def test_truncation(self, fs2):
        u = [letter(1, 1, 1), letter(1, 1, 2)]
        assert vk_multiply(fs2, u, [letter(1, 1, 3)]) is None

    def test_table(self, fs2):
        t = vk_table(fs2)
        assert t.n == len(fs2) + 1 == 577
        assert t.label(0) == "0" and t.label(1) == "a_1_1"
        assert (np.diag(t.product) == 0).all()
        assert verify_associativity(t)
        assert is_nilsemigroup(t)
        assert green_classes(t, "J").class_count == t.n

    def test_table_agrees_with_multiply(self, fs2):
        t = vk_table(fs2)
        rng = np.random.default_rng(0)
        words = fs2.words()
        for a, b in rng.integers(0, len(fs2), size=(300, 2)):
            prod = vk_multiply(fs2, words[a], words[b])
            got = int(t.product[a + 1, b + 1])
            assert (got == 0) if prod is None else (fs2.index_of(prod) + 1 == got)

    def test_cap(self, fs2):
        with pytest.raises(CapExceeded):
            vk_table(fs2, cap=10)

    def test_factor_set_is_frozen(self, fs2):
        assert isinstance(fs2, FactorSet)
        with pytest.raises(AttributeError):
            fs2.L = 3
