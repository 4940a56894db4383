import pytest
from hypothesis import given
from hypothesis import strategies as st

from weaveclust.dynkin import (
    DynkinType,
    bipartite_coloring,
    cartan_matrix,
    catalog,
    catalog_dump,
    classify_cartan,
    cluster_variable_count,
    coxeter_number,
    parse_type,
    seed_count,
)
from weaveclust.exceptions import MalformedInput


class TestParseType:
    @pytest.mark.parametrize("text", ["A3", "Dtilde5", "Atilde{1,2}", "E6^(2)", "D4^(3)", "G2"])
    def test_round_trip_success(self, text: str):
        assert str(parse_type(text)) == text

    def test_composite_success(self):
        item = parse_type("A1+A2")

        assert [str(part) for part in item.components] == ["A1", "A2"]
        assert item.size == 3

    @given(st.sampled_from(catalog()))
    def test_catalog_round_trip_success(self, item: DynkinType):
        assert parse_type(str(item)) == item

    @pytest.mark.parametrize("text", ["", "X4", "D3", "E9", "Atilde{0,3}", "A-1"])
    def test_fail_malformed(self, text: str):
        with pytest.raises(MalformedInput):
            parse_type(text)


class TestClassifyCartan:
    @pytest.mark.parametrize("text", ["A4", "B3", "D5", "E6", "F4", "G2", "Dtilde4", "Etilde6"])
    def test_success(self, text: str):
        item = parse_type(text)

        assert classify_cartan(cartan_matrix(item)) == item

    def test_permuted_success(self):
        matrix = cartan_matrix(parse_type("D4")).permuted([3, 1, 0, 2])

        assert classify_cartan(matrix) == parse_type("D4")

    def test_fail_not_cartan(self):
        assert classify_cartan([[2, -1], [0, 2]]) is None

    def test_fail_hyperbolic(self):
        assert classify_cartan([[2, -3], [-3, 2]]) is None

    def test_cycle_success(self):
        rows = [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]

        assert classify_cartan(rows) == parse_type("Atilde2")

    def test_orientation_pair_ignored_success(self):
        oriented = parse_type("Atilde{1,1}")

        assert oriented.cartan_type == parse_type("Atilde1")
        assert classify_cartan(cartan_matrix(oriented).rows) == oriented.cartan_type
        assert parse_type("D4").cartan_type == parse_type("D4")


class TestCounts:
    @pytest.mark.parametrize(
        ("text", "seeds", "variables"),
        [("A2", 5, 5), ("A3", 14, 9), ("B2", 6, 6), ("B3", 20, 12), ("D4", 50, 16), ("E6", 833, 42), ("F4", 105, 28), ("G2", 8, 8)],
    )
    def test_success(self, text: str, seeds: int, variables: int):
        item = parse_type(text)

        assert seed_count(item) == seeds
        assert cluster_variable_count(item) == variables

    def test_composite_success(self):
        assert seed_count(parse_type("A1+A2")) == 2 * 5

    @pytest.mark.parametrize(("text", "h"), [("A4", 5), ("C3", 6), ("D5", 8), ("E8", 30), ("G2", 6)])
    def test_coxeter_number_success(self, text: str, h: int):
        assert coxeter_number(parse_type(text)) == h

    def test_fail_affine(self):
        with pytest.raises(MalformedInput):
            seed_count(parse_type("Dtilde4"))


class TestBipartiteColoring:
    def test_success(self):
        assert bipartite_coloring(parse_type("A4")) == ("+", "-", "+", "-")

    def test_fail_odd_cycle(self):
        assert bipartite_coloring(parse_type("Atilde2")) is None


class TestCatalogDump:
    def test_success(self):
        dump = catalog_dump(5)
        by_type = {entry["type"]: entry for entry in dump}

        assert by_type["D4"]["seeds"] == 50
        assert by_type["A3"]["coxeter_number"] == 4
        assert "seeds" not in by_type["Dtilde4"]
        assert all(entry["size"] <= 5 for entry in dump)

    def test_fail_invalid_rank(self):
        with pytest.raises(MalformedInput):
            DynkinType("E", 5)
