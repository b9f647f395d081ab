import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import coeffs, elements, raw_words, words
from twistlog.words import (
    GroupRingElement,
    LoopSum,
    WordSyntaxError,
    augmentation,
    cyclic_canonical,
    forget_basepoint,
    format_word,
    inverse,
    is_reduced,
    multiply,
    parse_word,
    reduce,
)

x = lambda *w: GroupRingElement.from_word(w, rank=3)
one = GroupRingElement.one(3)


class TestReduce:
    def test_cancellation(self):
        assert reduce([1, -1]) == ()

    def test_inner_cancellation(self):
        assert reduce([1, 2, -2, 1]) == (1, 1)

    def test_already_reduced(self):
        assert reduce([1, 2]) == (1, 2)

    def test_nested(self):
        assert reduce([1, 2, 3, -3, -2, -1, 2]) == (2,)

    @given(raw_words(3, 12))
    def test_idempotent_and_shorter(self, w):
        r = reduce(w)
        assert reduce(r) == r
        assert is_reduced(r)
        assert len(r) <= len(w)

    @given(words(3))
    def test_inverse(self, w):
        assert reduce(w + inverse(w)) == ()


class TestCyclicCanonical:
    def test_conjugate(self):
        assert cyclic_canonical((1, 2, -1)) == cyclic_canonical((2,))

    def test_rotation(self):
        assert cyclic_canonical((2, 1)) == cyclic_canonical((1, 2)) == (1, 2)

    def test_empty(self):
        assert cyclic_canonical(()) == ()

    def test_positive_letter_first(self):
        # letters compare by index first, then + before -
        assert cyclic_canonical((-1, 2)) == (-1, 2)
        assert cyclic_canonical((2, -1, -1)) == (-1, -1, 2)
        assert cyclic_canonical((-1, 2, 1, 3)) == (1, 3, -1, 2)

    @given(words(3), words(3))
    def test_conjugation_invariance(self, u, w):
        assert cyclic_canonical(reduce(u + w + inverse(u))) == cyclic_canonical(w)

    @given(words(3))
    def test_rotations_agree(self, w):
        c = cyclic_canonical(w)
        assert all(cyclic_canonical(c[k:] + c[:k]) == c for k in range(len(c)))


class TestGroupRing:
    def test_inverse_product(self):
        assert multiply(x(1), x(-1)) == one

    def test_difference_of_squares(self):
        assert multiply(x(1) - one, x(1) + one) == x(1, 1) - one

    def test_zero(self):
        assert multiply(GroupRingElement.zero(3), x(1, 2) + x(3)) == 0

    def test_rank_mismatch(self):
        with pytest.raises(ValueError, match="rank"):
            GroupRingElement.from_word((1,), rank=2) * GroupRingElement.from_word((1,), rank=3)

    def test_no_zero_terms(self):
        assert (x(1) - x(1)).terms == {}

    def test_augmentation_examples(self):
        assert augmentation(x(1, -2)) == 1
        assert augmentation(x(1) - one) == 0
        assert augmentation(x(1).scale(3) + x(2).scale(2)) == 5

    @given(elements(3), elements(3), elements(3))
    def test_associative(self, a, b, c):
        assert multiply(a, multiply(b, c)) == multiply(multiply(a, b), c)

    @given(elements(3), elements(3))
    def test_augmentation_multiplicative(self, a, b):
        assert augmentation(a * b) == augmentation(a) * augmentation(b)

    @given(elements(3), coeffs)
    def test_exact_scaling(self, a, c):
        b = a.scale(c)
        assert all(isinstance(v, (int, Fraction)) for v in b.terms.values())
        if c:
            assert b.scale(1 / c) == a

    def test_forget_basepoint(self):
        assert forget_basepoint(x(1, 2, -1) + x(2)) == LoopSum.from_word((2,), 2)


class TestText:
    def test_roundtrip(self):
        assert parse_word("x1 x2^-1 x1") == (1, -2, 1)
        assert format_word((1, -2, 1)) == "x1 x2^-1 x1"
        assert parse_word("e") == () and format_word(()) == "e"

    def test_auto_reduce(self):
        assert parse_word("x1 x2 x2^-1") == (1,)

    @pytest.mark.parametrize("bad", ["x", "x0", "x1^2", "X1", "x1^-1^-1", "y"])
    def test_malformed(self, bad):
        with pytest.raises(WordSyntaxError):
            parse_word(bad)

    def test_alphabet(self):
        assert parse_word("y3", "y") == (3,)
        with pytest.raises(WordSyntaxError):
            parse_word("x1 y2", "y")

    @given(words(4))
    def test_format_parse(self, w):
        assert parse_word(format_word(w, "y"), "y") == w

    def test_json_sorted_by_word(self):
        a = x(2).scale(Fraction(1, 2)) + x(1, 1) - x(1)
        data = a.to_json()
        assert data == [{"coeff": "-1", "word": "x1"}, {"coeff": "1/2", "word": "x2"},
                        {"coeff": "1", "word": "x1 x1"}]
        assert GroupRingElement.from_json(json.loads(json.dumps(data))) == a

    @given(st.lists(st.tuples(words(3, 5), coeffs), max_size=4))
    def test_loop_json_roundtrip(self, ts):
        y = LoopSum(ts)
        assert LoopSum.from_json(y.to_json("y"), "y") == y
