import pytest
from hypothesis import given

from conftest import AB, words_over
from stallings.words import (
    Alphabet,
    Homomorphism,
    Word,
    format_word,
    inclusion,
    parse_word,
    swap_generators,
)

ABT = Alphabet(("a", "b", "t"))


class TestAlphabet:
    def test_rejects_bad_names(self):
        for names in [("a", "a"), ("a", ""), ("x^2",), ("a b",), ("1",)]:
            with pytest.raises(ValueError):
                Alphabet(names)

    def test_order_is_kept(self):
        assert Alphabet(("b", "a")).names == ("b", "a")
        assert Alphabet(("b", "a")) != AB

    def test_index(self):
        assert AB.index("b") == 1
        with pytest.raises(ValueError):
            AB.index("c")


class TestReduce:
    def test_cancellation(self):
        w = Word(AB, [(0, 1), (0, -1), (1, 1)])
        assert w.letters == ((1, 1),)

    def test_identity_case(self):
        assert Word(AB).letters == ()

    def test_repeated_cancellation(self):
        # a^-1 b b^-1 a t collapses to t, by hand
        w = Word(ABT, [(0, -1), (1, 1), (1, -1), (0, 1), (2, 1)])
        assert w == ABT.gen("t")

    def test_idempotent_on_examples(self):
        w = AB.word("a^-1 b a b^-1")
        assert Word(AB, w.letters) == w

    def test_rejects_bad_letters(self):
        with pytest.raises(ValueError):
            Word(AB, [(5, 1)])
        with pytest.raises(ValueError):
            Word(AB, [(0, 2)])


class TestConcat:
    def test_full_cancellation(self):
        u = AB.word("a^-1 b")
        assert (u * ~u).is_identity()

    def test_square_of_color(self):
        c1 = AB.word("a^-1 b")
        assert c1 * c1 == AB.word("a^-1 b a^-1 b")

    def test_one_cancellation_pair(self):
        assert AB.word("b a^-1") * AB.word("a b") == AB.word("b b")

    def test_alphabet_mismatch(self):
        with pytest.raises(ValueError):
            AB.word("a") * ABT.word("a")

    @given(u=words_over(AB), v=words_over(AB), w=words_over(AB))
    def test_associative(self, u, v, w):
        assert (u * v) * w == u * (v * w)


class TestInvert:
    def test_examples(self):
        assert ~AB.word("a^-1 b") == AB.word("b^-1 a")
        assert ~Word(AB) == Word(AB)
        assert ~AB.word("b a^-1 b") == AB.word("b^-1 a b^-1")

    @given(w=words_over(AB))
    def test_inverse_cancels(self, w):
        assert (w * ~w).is_identity()
        assert (~w * w).is_identity()


class TestPower:
    def test_powers(self):
        c = AB.word("a^-1 b")
        assert c ** 0 == Word(AB)
        assert c ** 2 == c * c
        assert c ** -2 == ~(c * c)


def _pair(n):
    from stallings.counterexample import family_homomorphisms

    return family_homomorphisms(n)


class TestApplyHom:
    def test_nielsen_image(self):
        g, _ = _pair(3)
        assert g(g.domain.word("t x1")) == AB.word("b a^-1 b")

    def test_empty(self):
        g, _ = _pair(3)
        assert g(Word(g.domain)) == Word(AB)

    def test_loop_label_is_equalized(self):
        g, h = _pair(3)
        w = g.domain.word("t x1 t^-1")
        assert g(w) == AB.word("b a^-1 b a^-1")
        assert h(w) == AB.word("b a^-1 b a^-1")

    def test_alphabet_mismatch(self):
        g, _ = _pair(3)
        with pytest.raises(ValueError):
            g(AB.word("a"))

    @given(u=words_over(AB), v=words_over(AB))
    def test_multiplicative(self, u, v):
        f = Homomorphism(AB, AB, [AB.word("a b"), AB.word("b^-1")])
        assert f(u * v) == f(u) * f(v)

    def test_validation(self):
        with pytest.raises(ValueError):
            Homomorphism(AB, AB, [AB.word("a")])
        with pytest.raises(ValueError):
            Homomorphism(AB, AB, {"a": "a"})
        with pytest.raises(ValueError):
            Homomorphism(AB, AB, [AB.word("a"), ABT.word("b")])

    def test_dict_images(self):
        f = Homomorphism(AB, AB, {"a": "b", "b": "a"})
        assert f(AB.word("a b")) == AB.word("b a")

    def test_inclusion(self):
        inc = inclusion(AB, ABT)
        assert inc(AB.word("a b^-1")) == ABT.word("a b^-1")
        with pytest.raises(ValueError):
            inclusion(ABT, AB)


class TestExponentSum:
    def test_balanced_pair(self):
        xy = Alphabet(("x", "y"))
        w = xy.word("x y")
        assert w.exponent_sum("x") == 1
        assert w.exponent_sum("y") == 1

    def test_empty(self):
        assert Word(AB).exponent_sum(0) == 0

    def test_signed_counts(self):
        xy = Alphabet(("x", "y"))
        w = xy.word("x y^-1 x")
        assert w.exponent_sum("x") == 2
        assert w.exponent_sum("y") == -1

    def test_invalid_index(self):
        with pytest.raises(ValueError):
            Word(AB).exponent_sum(7)

    @given(u=words_over(AB), v=words_over(AB))
    def test_additive_under_concat(self, u, v):
        for gen in (0, 1):
            assert (u * v).exponent_sum(gen) == u.exponent_sum(gen) + v.exponent_sum(gen)


class TestParseFormat:
    def test_parse_examples(self):
        assert parse_word("a^-1 b", AB).letters == ((0, -1), (1, 1))
        assert parse_word("1", AB).is_identity()
        dom = Alphabet(("t", "x1"))
        assert parse_word("t x1 x1^-1", dom) == dom.gen("t")

    def test_errors(self):
        for text in ["c", "a^-2", "a^", "a^1", "a ^-1"]:
            with pytest.raises(ValueError):
                parse_word(text, AB)

    def test_round_trip(self):
        for text in ["1", "a", "a^-1 b a^-1 b", "b^-1 a b^-1"]:
            assert format_word(parse_word(text, AB)) == text

    @given(w=words_over(AB))
    def test_round_trip_random(self, w):
        assert parse_word(format_word(w), AB) == w

    def test_str_and_repr(self):
        w = AB.word("a b^-1")
        assert str(w) == "a b^-1"
        assert "a b^-1" in repr(w)


class TestSwap:
    def test_color_inverts(self):
        assert swap_generators(AB.word("a^-1 b")) == AB.word("b^-1 a")

    def test_identity(self):
        assert swap_generators(Word(AB)).is_identity()

    def test_requires_two_generators(self):
        with pytest.raises(ValueError):
            swap_generators(ABT.word("a"))

    @given(w=words_over(AB))
    def test_involution(self, w):
        assert swap_generators(swap_generators(w)) == w
