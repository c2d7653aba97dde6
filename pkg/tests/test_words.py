import pytest
from hypothesis import given, strategies as st

from mcgwords.words import (DefinitionError, DefinitionTable, Letter, WordSyntaxError,
                            cyclic_rotate, expand_definitions, free_reduce, invert,
                            is_freely_reduced, is_positive, letter_count, parse_definitions,
                            parse_word, positivity, render_definitions, render_word)

from oracles import reduce_naive

NAMES = ["c1", "c2", "c3", "x", "e1", "f1", "t1_4", "xbar3"]
ALPHABET = [Letter(n, s) for n in NAMES for s in (1, -1)]
words = st.lists(st.integers(0, len(ALPHABET) - 1), max_size=30).map(
    lambda ix: tuple(ALPHABET[i] for i in ix))


def P(s):
    return parse_word(s)


class TestParse:
    def test_plain_letters(self):
        assert P("c1 c2 c1^-1") == (Letter("c1"), Letter("c2"), Letter("c1", -1))

    def test_group_power(self):
        assert P("(c1 c2)^2") == P("c1 c2 c1 c2")

    def test_negative_group_power_inverts(self):
        assert P("(c5 c4)^-2") == P("c4^-1 c5^-1 c4^-1 c5^-1")

    def test_letter_power(self):
        assert P("c3^3") == P("c3 c3 c3")
        assert P("c3^-2") == P("c3^-1 c3^-1")

    def test_nested_groups(self):
        assert P("((a b)^2 c)^2") == P("a b a b c a b a b c")

    def test_comments_and_newlines(self):
        assert P("c1 # first\n  c2\n# done") == P("c1 c2")

    def test_empty(self):
        assert P("") == ()
        assert P("  # nothing\n") == ()

    def test_power_zero_rejected(self):
        with pytest.raises(WordSyntaxError):
            P("c1^0")

    def test_error_position(self):
        with pytest.raises(WordSyntaxError) as exc:
            P("c1 c2\n  C3")
        assert (exc.value.line, exc.value.column) == (2, 3)

    @pytest.mark.parametrize("bad", ["(c1 c2", "c1)", "(c1 c2)", "c1^", "c1^x", "1c"])
    def test_malformed(self, bad):
        with pytest.raises(WordSyntaxError):
            P(bad)


class TestRender:
    def test_examples(self):
        assert render_word(()) == ""
        assert render_word((Letter("c1"), Letter("c1", -1))) == "c1 c1^-1"
        assert render_word((Letter("x1"),)) == "x1"

    def test_canonical_form(self):
        assert render_word(P("(c1  c2)^2")) == "c1 c2 c1 c2"

    @given(words)
    def test_parse_render_roundtrip(self, w):
        assert parse_word(render_word(w)) == w


class TestReduce:
    def test_examples(self):
        assert free_reduce(P("c1 c1^-1")) == ()
        assert free_reduce(P("c7^-1 c7 c6")) == P("c6")
        assert free_reduce(P("c1 c2")) == P("c1 c2")

    def test_nested_cancellation(self):
        assert free_reduce(P("a b c c^-1 b^-1 d")) == P("a d")

    @given(words)
    def test_matches_naive_oracle(self, w):
        assert list(free_reduce(w)) == reduce_naive(w)

    def test_reduced_check(self):
        assert is_freely_reduced(P("c1 c2 c1"))
        assert not is_freely_reduced(P("c1 c2 c2^-1"))


class TestInvert:
    def test_examples(self):
        assert invert(P("c4 e1 c4 f1")) == P("f1^-1 c4^-1 e1^-1 c4^-1")
        assert invert(()) == ()
        assert invert(P("c1^-1")) == P("c1")

    @given(words)
    def test_w_winv_reduces_to_empty(self, w):
        assert free_reduce(w + invert(w)) == ()


class TestRotate:
    def test_examples(self):
        w = P("c1 c2 x")
        assert cyclic_rotate(w, 1) == P("c2 x c1")
        assert cyclic_rotate(w, 0) == w
        assert cyclic_rotate(w, len(w)) == w
        assert cyclic_rotate(w, -1) == P("x c1 c2")
        assert cyclic_rotate((), 5) == ()

    @given(words, st.integers(-50, 50))
    def test_inverse_rotation(self, w, k):
        assert cyclic_rotate(cyclic_rotate(w, k), -k) == w


DEFS = DefinitionTable({"d": P("c1 c2 c1^-1"), "r1": P("f1^-1 c4 f1"),
                        "y2": P("f1^-1 c4 e1 c4^-1 f1"), "dd": P("c3 d c3^-1")})


class TestDefinitions:
    def test_examples(self):
        assert expand_definitions(P("d"), DEFS) == P("c1 c2 c1^-1")
        assert expand_definitions(P("r1"), DEFS) == P("f1^-1 c4 f1")
        assert expand_definitions(P("c1"), DEFS) == P("c1")

    def test_inverse_letter(self):
        assert expand_definitions(P("d^-1"), DEFS) == P("c1 c2^-1 c1^-1")

    def test_nested_reaches_fixpoint(self):
        assert expand_definitions(P("dd"), DEFS) == P("c3 c1 c2 c1^-1 c3^-1")

    def test_cycle_rejected(self):
        with pytest.raises(DefinitionError):
            DefinitionTable({"a": P("b c b^-1"), "b": P("a c a^-1")})

    def test_conjugate_form(self):
        assert all(DEFS.is_conjugate_form(n) for n in DEFS)
        assert not DefinitionTable({"z": P("c1 c2")}).is_conjugate_form("z")
        assert not DefinitionTable({"z": P("c1 c2^-1 c1^-1")}).is_conjugate_form("z")

    def test_file_roundtrip(self):
        text = render_definitions(DEFS)
        assert parse_definitions(text).entries == DEFS.entries

    def test_bad_line(self):
        with pytest.raises(WordSyntaxError):
            parse_definitions("d := c1")

    @given(st.lists(st.integers(0, 11), max_size=20).map(
        lambda ix: tuple(Letter(["d", "r1", "y2", "dd", "c1", "c5"][i // 2], 1 - 2 * (i % 2))
                         for i in ix)))
    def test_commutes_with_invert(self, w):
        assert expand_definitions(invert(w), DEFS) == invert(expand_definitions(w, DEFS))


class TestPositivity:
    def test_relator_copy_is_positive(self):
        assert is_positive(P("c1 c2 x c3 c4 c5 c5 c4 c5 c4"))

    def test_negative_letter(self):
        assert not is_positive(P("c1 d x1 c3 r1 e1 e1 c4 x2 c5 f2^-1 c6"))

    def test_empty(self):
        assert is_positive(())

    def test_defined_letters_count_as_positive(self):
        pos = positivity(P("d c3"), DEFS)
        assert pos == {"raw": True, "expanded": False}

    def test_letter_count(self):
        assert letter_count(P("(c1 c2 x c3 c4 c5 c5 c4 c5 c4)^3")) == 30
        assert letter_count(P("(c1 c2 x1 c3 r c8 c8 c4 x2 c5 c6 c7)^3")) == 36
        assert letter_count(P("(a1 b1 a2 b2 a3 b3 x1 c1 x2 c2 x3 c3 r d)^3")) == 42

    def test_letter_count_rejects_negative(self):
        with pytest.raises(ValueError):
            letter_count(P("c1 c2^-1"))
