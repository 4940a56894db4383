import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weaveclust.braids import (
    BraidWord,
    BrickDiagram,
    braid_equivalent,
    brick_quiver,
    brick_type,
    closure_word,
    conjugate_word,
    family_word,
    half_twist,
    stabilize,
    stabilize_closure,
)
from weaveclust.dynkin import parse_type
from weaveclust.exceptions import MalformedInput


class TestBraidWord:
    def test_parse_success(self):
        word = BraidWord.parse("s2 s1^3 s2")

        assert word.strands == 3
        assert word.letters == (2, 1, 1, 1, 2)
        assert str(word) == "s2 s1^3 s2"
        assert word.to_dict() == {"strands": 3, "word": "s2 s1^3 s2", "letters": [2, 1, 1, 1, 2]}

    def test_parse_family_success(self):
        assert BraidWord.parse("beta(1, 1, 1)") == family_word("beta", 1, 1, 1)
        assert BraidWord.parse("beta0(Dt5)") == family_word("beta0", "Dtilde", 5)
        assert BraidWord.parse("beta0(A2)", strands=3).strands == 3

    def test_empty_success(self):
        word = BraidWord.parse("", strands=2)

        assert len(word) == 0
        assert str(word) == ""
        assert word.rotated(3) == word

    def test_permutation_success(self):
        assert BraidWord.parse("s1").permutation == (1, 0)
        assert BraidWord.parse("s1 s2").cycle_type == (3,)
        assert BraidWord.parse("s1 s1 s2").cycle_type == (1, 2)

    def test_rotated_success(self, braid_factory):
        word = braid_factory()

        assert word.rotated(1).letters == word.letters[1:] + word.letters[:1]
        assert word.rotated(len(word)) == word

    @pytest.mark.parametrize("text", ["s0", "t1", "s1^x", "beta(1,2)", "beta(0,1,1)", "gamma(1,1,1)", "beta(A0)"])
    def test_fail_parse(self, text: str):
        with pytest.raises(MalformedInput):
            BraidWord.parse(text)

    def test_fail_widened(self):
        with pytest.raises(MalformedInput):
            BraidWord.parse("s1 s2").widened(2)


class TestFamilies:
    def test_words_success(self):
        assert str(family_word("beta", 1, 1, 1)) == "s2 s1^2 s2 s1^2 s2 s1^2"
        assert str(family_word("beta0", "A", 2)) == "s1^3"
        assert str(family_word("beta", "A", 2)) == "s1^5"
        assert str(family_word("beta0", 2, 2, 2)) == "s1 s2^2 s1 s2^2"

    def test_fail_dtilde(self):
        with pytest.raises(MalformedInput):
            family_word("beta", "Dtilde", 3)

    def test_operations_success(self):
        base = BraidWord.parse("s1^2")

        assert str(half_twist(3)) == "s1 s2 s1"
        assert str(stabilize(base)) == "s1^2 s2"
        assert str(closure_word(base)) == "s1^4"
        assert str(stabilize_closure(base)) == "s1 s2 s1^3 s2 s1 s2 s1"
        assert str(conjugate_word(BraidWord.parse("s1 s2 s2"))) == "s2 s1^2"


class TestBraidEquivalent:
    def test_braid_relation_success(self):
        result = braid_equivalent(BraidWord.parse("s1 s2 s1"), BraidWord.parse("s2 s1 s2"))

        assert result
        assert len(result.trace) == 1
        assert result.replay()
        assert result.reversed().replay()

    def test_commutation_success(self):
        result = braid_equivalent(BraidWord.parse("s1 s3 s2"), BraidWord.parse("s3 s1 s2"))

        assert result.to_dict()["trace"] == [{"move": "commute", "position": 1}]

    def test_not_equivalent_success(self):
        squares = braid_equivalent(BraidWord.parse("s1 s1", strands=3), BraidWord.parse("s2 s2", strands=3))

        assert squares.result is False
        assert not squares.trace
        assert braid_equivalent(BraidWord.parse("s1 s2"), BraidWord.parse("s1 s2 s1")).result is False
        assert braid_equivalent(BraidWord.parse("s1 s2"), BraidWord.parse("s2 s1")).result is False

    def test_cyclic_success(self):
        first, second = BraidWord.parse("s1 s2 s2"), BraidWord.parse("s2 s2 s1")

        assert braid_equivalent(first, second).result is False
        assert braid_equivalent(first, second, cyclic=True)

    def test_budget_success(self):
        first = family_word("beta", 2, 2, 2)

        result = braid_equivalent(first, first.rotated(5), cyclic=True, budget=2)

        assert result.result == "unknown"
        assert result.explored == 2

    @pytest.mark.parametrize("n, b, c", [(1, 1, 1), (2, 1, 2)])
    def test_stabilization_success(self, n: int, b: int, c: int):
        source = stabilize_closure(family_word("beta0", "A", n))
        target = family_word("beta", 1, b, c)

        result = braid_equivalent(source, target, cyclic=True)

        assert result
        assert result.replay()

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=6), st.integers(min_value=0, max_value=5))
    def test_rotation_property_success(self, letters, steps):
        word = BraidWord(3, letters)

        result = braid_equivalent(word, word.rotated(steps), cyclic=True)

        assert result
        assert result.replay()
        assert result.reversed().replay()

    def test_fail_strands(self):
        with pytest.raises(MalformedInput):
            braid_equivalent(BraidWord.parse("s1"), BraidWord.parse("s1", strands=3))


class TestBricks:
    def test_diagram_success(self):
        diagram = BrickDiagram.of(family_word("beta0", 1, 2, 2))

        assert diagram.to_dict() == {
            "word": "s1 s2 s1 s2^2",
            "bricks": [
                {"level": 1, "interval": [1, 3]},
                {"level": 2, "interval": [2, 4]},
                {"level": 2, "interval": [4, 5]},
            ],
            "arrows": [[2, 1], [2, 3]],
        }
        assert diagram.per_level() == {1: 1, 2: 2}

    @pytest.mark.parametrize(
        "params, expected",
        [((1, 1, 1), "A1"), ((1, 2, 2), "A3"), ((2, 2, 2), "D4"), ((3, 2, 2), "D5"), ((2, 3, 3), "E6")],
    )
    def test_type_success(self, params, expected: str):
        assert brick_type(family_word("beta0", *params)) == parse_type(expected)

    def test_linear_success(self):
        word = family_word("beta0", "A", 3)

        assert brick_quiver(word).arrows == [(0, 1, 1), (1, 2, 1)]
        assert brick_type(word) == parse_type("A3")

    def test_affine_success(self):
        assert brick_type(family_word("beta0", "Dtilde", 4)) == parse_type("Dtilde4")

    def test_no_bricks_success(self):
        assert brick_type(BraidWord.parse("s1 s2")) == "unknown"
