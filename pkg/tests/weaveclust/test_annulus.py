import pytest

from weaveclust.braids import BraidWord, braid_equivalent, conjugate_word, family_word
from weaveclust.exceptions import BoundaryMismatch, MalformedInput, SearchFailure
from weaveclust.ngraph import (
    NGraphWithCycles,
    boundary_word,
    build_linear,
    build_tripod,
    cleanup,
    concatenate,
    coxeter_padding,
    elementary_annulus,
    inverse,
    is_isomorphic,
    is_trivial,
    rotate,
    rotation_annulus,
    trace_annulus,
    trivial_annulus,
)
from weaveclust.ngraph.graph import boundary_words_annulus


class TestElementaryAnnuli:
    def test_trivial_success(self):
        word = BraidWord.parse("s1 s2 s1^2")

        annulus = trivial_annulus(word)

        assert boundary_words_annulus(annulus) == (word, word)
        assert is_trivial(annulus)
        assert annulus.interior == []

    def test_rotation_success(self):
        word = BraidWord.parse("s1 s2 s1^2")

        annulus = rotation_annulus(word, 1)

        assert boundary_words_annulus(annulus) == (word.rotated(-1), word)
        assert is_trivial(annulus, 1)
        assert not is_trivial(annulus)

    def test_commutation_success(self):
        annulus = elementary_annulus(BraidWord.parse("s1 s3 s2"), "R0", 0)

        outer, inner = boundary_words_annulus(annulus)

        assert str(outer) == "s3 s1 s2"
        assert str(inner) == "s1 s3 s2"
        assert [vertex.kind for vertex in annulus.interior] == ["crossing"]

    def test_braid_move_success(self):
        annulus = elementary_annulus(BraidWord.parse("s2 s1 s2 s1"), "RIII", 1)

        outer, _inner = boundary_words_annulus(annulus)

        assert str(outer) == "s2^2 s1 s2"
        assert [vertex.kind for vertex in annulus.interior] == ["hexagonal"]

    def test_inverse_success(self):
        annulus = elementary_annulus(BraidWord.parse("s1 s2 s1"), "RIII", 0)

        outer, inner = boundary_words_annulus(inverse(annulus))

        assert str(outer) == "s1 s2 s1"
        assert str(inner) == "s2 s1 s2"

    @pytest.mark.parametrize(
        "text, kind, position",
        [("s1 s2", "R0", 0), ("s1 s2 s2", "RIII", 0), ("s1", "R0", 0), ("s1 s3", "R2", 0)],
    )
    def test_fail_elementary(self, text: str, kind: str, position: int):
        with pytest.raises(MalformedInput):
            elementary_annulus(BraidWord.parse(text, strands=4), kind, position)


class TestConcatenate:
    def test_trivial_success(self, linear_factory):
        item = linear_factory(n=2)

        glued = concatenate(trivial_annulus(boundary_word(item)), item)

        assert isinstance(glued, NGraphWithCycles)
        assert is_isomorphic(glued, item, 0)

    def test_rotation_success(self):
        item = build_tripod(1, 2, 2)

        glued = concatenate(rotation_annulus(boundary_word(item), 1), item)

        assert is_isomorphic(glued, rotate(item, 1), 0)

    def test_annuli_success(self):
        word = BraidWord.parse("s1 s3 s2", strands=4)
        first = elementary_annulus(word, "R0", 0)
        second = elementary_annulus(boundary_words_annulus(first)[0], "R0", 0)

        glued = concatenate(second, first)

        assert boundary_words_annulus(glued) == (word, word)
        assert len(glued.interior) == 2
        assert is_trivial(cleanup(glued))

    def test_fail_mismatch(self):
        with pytest.raises(BoundaryMismatch):
            concatenate(trivial_annulus(BraidWord.parse("s1 s1")), build_linear(1))


class TestCleanup:
    @pytest.mark.parametrize("text, kind", [("s1 s2 s1", "RIII"), ("s1 s3", "R0")])
    def test_cancellation_success(self, text: str, kind: str):
        annulus = elementary_annulus(BraidWord.parse(text, strands=4), kind, 0)

        reduced = cleanup(concatenate(annulus, inverse(annulus)))

        assert is_trivial(reduced)

    def test_nothing_to_cancel_success(self):
        annulus = elementary_annulus(BraidWord.parse("s1 s2 s1"), "RIII", 0)

        assert cleanup(annulus) == annulus


class TestPadding:
    def test_linear_success(self):
        padding = coxeter_padding("A", 2)

        assert is_trivial(padding, 1)
        assert boundary_words_annulus(padding)[1] == family_word("beta", "A", 2)

    @pytest.mark.parametrize("params", [(1, 1, 1), (1, 2, 2)])
    def test_tripod_success(self, params):
        word = family_word("beta", *params)

        padding = coxeter_padding("tripod", *params)
        glued = concatenate(padding, build_tripod(*params).conjugated())

        assert boundary_words_annulus(padding) == (word, conjugate_word(word))
        assert boundary_word(glued) == word

    def test_conjugated_success(self):
        padding = coxeter_padding("tripod", 1, 1, 1, conjugated=True)
        word = family_word("beta", 1, 1, 1)

        assert boundary_words_annulus(padding) == (conjugate_word(word), word)

    def test_fail_family(self):
        with pytest.raises(MalformedInput):
            coxeter_padding("E", 6)

    def test_fail_trace(self):
        result = braid_equivalent(BraidWord.parse("s1 s1", strands=3), BraidWord.parse("s2 s2", strands=3))

        assert result.result is False
        with pytest.raises(SearchFailure):
            trace_annulus(result)
