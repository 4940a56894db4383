import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weaveclust.dynkin import parse_type
from weaveclust.exceptions import MalformedInput, RankCapExceeded
from weaveclust.mutation import ExchangeMatrix, type_matrix
from weaveclust.rational import RationalFunction
from weaveclust.seeds import (
    PCSeed,
    XSeed,
    YSeed,
    apply_sequence,
    canonical_key,
    initial_seed,
    seed_from_dict,
)

A2 = [[0, 1], [-1, 0]]


class TestPCSeed:
    def test_mutate_success(self, pc_seed_factory):
        seed = pc_seed_factory(matrix__rows=A2)

        mutated = seed.mutate(0)

        assert mutated.matrix.to_list() == [[0, -1], [1, 0]]
        assert mutated.c_matrix.tolist() == [[-1, 1], [0, 1]]

    @settings(max_examples=25)
    @given(st.lists(st.integers(min_value=0, max_value=3), max_size=6))
    def test_sequence_inverse_success(self, indices):
        seed = PCSeed.initial(type_matrix(parse_type("D4")))

        there = apply_sequence(seed, indices)

        assert apply_sequence(there, list(reversed(indices))) == seed

    def test_dict_success(self, pc_seed_factory):
        seed = pc_seed_factory(matrix__type_name="B3").mutate(1)

        assert seed_from_dict(seed.to_dict()) == seed
        assert seed.to_dict()["backend"] == "pc"

    def test_fail_c_shape(self):
        with pytest.raises(MalformedInput):
            PCSeed(ExchangeMatrix(A2), np.eye(3, dtype=np.int64))


class TestYSeed:
    def test_mutate_success(self):
        seed = YSeed.initial(ExchangeMatrix(A2))
        y1, y2 = (RationalFunction.variable(i, 2) for i in (1, 2))

        mutated = seed.mutate(0)

        assert mutated.coefficients == (1 / y1, y2 * (1 + y1))

    def test_involution_success(self, y_seed_factory):
        seed = y_seed_factory(matrix__type_name="A3")

        for k in range(3):
            assert seed.mutate(k).mutate(k) == seed

    def test_dict_success(self):
        seed = YSeed.initial(ExchangeMatrix(A2)).mutate(1)

        restored = seed_from_dict(seed.to_dict())

        assert restored == seed
        assert set(seed.to_dict()) == {"backend", "matrix", "coeffs"}

    @pytest.mark.parametrize(("type_name", "k", "other"), [("A3", 0, 2), ("B3", 0, 2), ("D4", 0, 2), ("D4", 2, 3)])
    def test_non_adjacent_commute_success(self, type_name: str, k: int, other: int):
        seed = YSeed.initial(type_matrix(parse_type(type_name)))

        assert seed.matrix.entries[k, other] == 0
        assert seed.mutate(k).mutate(other) == seed.mutate(other).mutate(k)

    def test_fail_rank_cap(self):
        with pytest.raises(RankCapExceeded):
            YSeed.initial(type_matrix(parse_type("A5")))

    def test_fail_frozen_rows(self):
        with pytest.raises(MalformedInput):
            YSeed.initial(ExchangeMatrix([[0, 1], [-1, 0], [1, 0]]))


class TestXSeed:
    def test_exchange_relation_success(self):
        seed = XSeed.initial(ExchangeMatrix(A2))
        x1, x2 = seed.cluster

        assert seed.mutate(0).cluster == ((1 + x2) / x1, x2)

    def test_fail_rank_cap(self):
        with pytest.raises(RankCapExceeded):
            XSeed.initial(type_matrix(parse_type("A5")))


class TestPeriodicity:
    @pytest.mark.parametrize("backend", ["pc", "y", "x"])
    def test_pentagon_success(self, backend: str):
        seed = initial_seed(ExchangeMatrix(A2), backend)

        assert canonical_key(apply_sequence(seed, [0, 1, 0, 1, 0])) == canonical_key(seed)
        assert canonical_key(apply_sequence(seed, [0, 1])) != canonical_key(seed)

    def test_fail_unknown_backend(self):
        with pytest.raises(MalformedInput):
            initial_seed(ExchangeMatrix(A2), "z")
        with pytest.raises(MalformedInput):
            seed_from_dict({"backend": "x", "matrix": A2})


class TestRationalFunction:
    def test_str_success(self):
        y1 = RationalFunction.variable(1, 2)

        assert str((1 + y1) / y1) == "(y1 + 1)/y1"
        assert str(RationalFunction.constant(3, 2)) == "3"

    def test_parse_success(self):
        y1, y2 = (RationalFunction.variable(i, 2) for i in (1, 2))

        assert RationalFunction.parse("(1 + y1)^2 / y2", 2) == (1 + y1) ** 2 / y2
        assert RationalFunction.parse(str(y2 * (1 + y1)), 2) == y2 * (1 + y1)

    @pytest.mark.parametrize("text", ["y3", "y1 +", "import os", "y + 1", "x1"])
    def test_fail_parse(self, text: str):
        with pytest.raises(MalformedInput):
            RationalFunction.parse(text, 2)
