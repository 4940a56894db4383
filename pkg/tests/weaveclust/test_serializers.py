import pytest

from weaveclust.braids import BraidWord
from weaveclust.exceptions import MalformedInput
from weaveclust.folding import GroupAction
from weaveclust.mutation import ExchangeMatrix
from weaveclust.seeds import PCSeed, YSeed
from weaveclust.serializers import (
    ActionSerializer,
    BraidSerializer,
    MatrixSerializer,
    SeedSerializer,
    deserialize,
    dump_json,
    load_json,
)


class TestMatrixSerializer:
    def test_success(self):
        matrix = deserialize(MatrixSerializer, {"matrix": [[0, 1], [-1, 0], [2, -1]]})

        assert isinstance(matrix, ExchangeMatrix)
        assert (matrix.m, matrix.n) == (3, 2)

    @pytest.mark.parametrize(
        "data",
        [{}, {"matrix": []}, {"matrix": [[0, 1], [-1]]}, {"matrix": [["a", 1], [-1, 0]]}, {"matrix": [[0, 1], [1, 0]]}],
    )
    def test_fail_invalid(self, data):
        with pytest.raises(MalformedInput):
            deserialize(MatrixSerializer, data)


class TestSeedSerializer:
    def test_pc_success(self):
        seed = deserialize(SeedSerializer, {"matrix": [[0, 1], [-1, 0]], "c": [[1, 0], [0, 1]]})

        assert isinstance(seed, PCSeed)
        assert seed == PCSeed.initial(ExchangeMatrix([[0, 1], [-1, 0]]))

    def test_y_success(self):
        seed = deserialize(SeedSerializer, {"backend": "y", "matrix": [[0, 1], [-1, 0]], "coeffs": ["y1", "1/y2"]})

        assert isinstance(seed, YSeed)
        assert [str(coefficient) for coefficient in seed.coefficients] == ["y1", "1/y2"]

    def test_fail_backend(self):
        with pytest.raises(MalformedInput):
            deserialize(SeedSerializer, {"backend": "x", "matrix": [[0]]})

    def test_fail_coefficients(self):
        with pytest.raises(MalformedInput):
            deserialize(SeedSerializer, {"backend": "y", "matrix": [[0, 1], [-1, 0]], "coeffs": ["y1", "y7"]})


class TestActionSerializer:
    def test_success(self):
        action = deserialize(ActionSerializer, {"degree": 4, "generators": [[[2, 3, 4]]]})

        assert action == GroupAction.from_cycles(4, [[[2, 3, 4]]])

    @pytest.mark.parametrize("data", [{"degree": 0, "generators": []}, {"degree": 3, "generators": [[[0, 1]]]}])
    def test_fail_invalid(self, data):
        with pytest.raises(MalformedInput):
            deserialize(ActionSerializer, data)


class TestBraidSerializer:
    def test_success(self):
        word = deserialize(BraidSerializer, {"word": "s1 s3", "strands": 5})

        assert word == BraidWord(5, (1, 3))

    def test_fail_strands(self):
        with pytest.raises(MalformedInput):
            deserialize(BraidSerializer, {"word": "s3", "strands": 2})


class TestJson:
    def test_dump_success(self):
        assert dump_json({"b": 1, "a": "γ"}) == '{"a": "γ", "b": 1}'

    def test_load_success(self, tmp_path):
        path = tmp_path / "data.json"
        path.write_text('{"matrix": [[0]]}', encoding="utf-8")

        assert load_json(str(path)) == {"matrix": [[0]]}

    @pytest.mark.parametrize("content", [None, "{not json"])
    def test_fail_load(self, tmp_path, content):
        path = tmp_path / "data.json"
        if content is not None:
            path.write_text(content, encoding="utf-8")

        with pytest.raises(MalformedInput):
            load_json(str(path))
