import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weaveclust.dynkin import parse_type
from weaveclust.exceptions import MalformedInput, NotAdmissible
from weaveclust.folding import (
    GroupAction,
    catalog_triples,
    coxeter_compatibility,
    find_triple,
    fold_matrix,
    fold_seed,
    folded_exchange_graph,
    invariant_census,
    invariant_y_seed,
    is_g_admissible,
    is_g_invariant,
    is_globally_foldable,
    orbit_mutate,
)
from weaveclust.mutation import ExchangeMatrix, type_matrix
from weaveclust.rational import RationalFunction
from weaveclust.seeds import PCSeed

LINEAR_A3 = [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]


class TestGroupAction:
    def test_from_cycles_success(self):
        action = GroupAction.from_cycles(4, [[[2, 3, 4]]])

        assert action.generators == ((0, 2, 3, 1),)
        assert action.order == 3
        assert action.orbits == ((0,), (1, 2, 3))
        assert action.to_dict() == {"degree": 4, "generators": [[[2, 3, 4]]]}

    def test_product_success(self):
        action = GroupAction.from_cycles(5, [[[1, 2], [4, 5]], [[1, 4], [2, 5]]])

        assert action.order == 4
        assert action.orbits == ((0, 1, 3, 4), (2,))

    def test_trivial_success(self):
        assert GroupAction.trivial(3).orbits == ((0,), (1,), (2,))

    @pytest.mark.parametrize("cycles", [[[[1, 5]]], [[[1, 2], [2, 3]]], [[[0, 1]]]])
    def test_fail_cycles(self, cycles):
        with pytest.raises(MalformedInput):
            GroupAction.from_cycles(4, cycles)


class TestAdmissibility:
    def test_success(self):
        triple = find_triple("A3/Z2")

        assert is_g_invariant(triple.matrix, triple.action)
        assert bool(is_g_admissible(triple.matrix, triple.action))

    def test_adjacent_orbit_success(self):
        report = is_g_admissible(type_matrix(parse_type("A3")), GroupAction.from_cycles(3, [[[1, 2]]]))

        assert not report
        assert report.to_dict() == {"admissible": False, "condition": "b", "witness": [1, 2]}

    def test_sign_condition_success(self):
        matrix = ExchangeMatrix(LINEAR_A3)
        action = GroupAction.from_cycles(3, [[[1, 3]]])

        assert not is_g_invariant(matrix, action)
        assert is_g_admissible(matrix, action).condition == "c"

    def test_frozen_orbit_success(self):
        matrix = ExchangeMatrix([[0, 1], [-1, 0], [1, 0]])
        action = GroupAction.from_cycles(3, [[[1, 3]]])

        assert not is_g_invariant(matrix, action)
        assert is_g_admissible(matrix, action).condition == "a"

    def test_fail_degree(self):
        with pytest.raises(MalformedInput):
            is_g_invariant(type_matrix(parse_type("A3")), GroupAction.trivial(4))


class TestFoldMatrix:
    def test_success(self):
        triple = find_triple("A3/Z2")

        folded = fold_matrix(triple.matrix, triple.action)

        assert folded.orbits == ((0, 2), (1,))
        assert folded.matrix.to_list() == [[0, 2], [-1, 0]]
        assert folded.to_dict()["orbits"] == [[1, 3], [2]]

    def test_fail_not_admissible(self):
        with pytest.raises(NotAdmissible):
            fold_matrix(type_matrix(parse_type("A3")), GroupAction.from_cycles(3, [[[1, 2]]]))

    def test_orbit_mutate_success(self):
        triple = find_triple("A3/Z2")

        mutated = orbit_mutate(triple.matrix, triple.action, 0)

        assert mutated == triple.matrix.mutate(0).mutate(2)
        assert is_g_invariant(mutated, triple.action)

    def test_fail_orbit_mutate_adjacent(self):
        with pytest.raises(NotAdmissible):
            orbit_mutate(type_matrix(parse_type("A3")), GroupAction.from_cycles(3, [[[1, 2]]]), 0)

    def test_fold_y_seed_success(self):
        triple = find_triple("D4/Z3")
        seed = invariant_y_seed(triple.matrix, triple.action)

        folded = fold_seed(seed, triple.action)

        assert folded.rank == 2
        assert folded.coefficients == tuple(RationalFunction.variable(i, 2) for i in (1, 2))
        assert folded.matrix.to_list() == (-fold_matrix(triple.matrix, triple.action).matrix.entries.T).tolist()

    @pytest.mark.parametrize("backend", ["pc", "y"])
    @pytest.mark.parametrize("name", ["A3/Z2", "D4/Z2", "D4/Z3"])
    @settings(max_examples=20, deadline=None)
    @given(steps=st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=5))
    def test_orbit_sequence_commutes_with_fold_success(self, name: str, backend: str, steps: list[int]):
        triple = find_triple(name)
        if backend == "pc":
            seed = PCSeed.initial(triple.matrix)
        else:
            seed = invariant_y_seed(triple.matrix, triple.action)
        folded = fold_seed(seed, triple.action)

        for step in steps:
            orbit = step % folded.rank
            seed = orbit_mutate(seed, triple.action, orbit)
            folded = folded.mutate(orbit)

            assert fold_seed(seed, triple.action) == folded


class TestFoldedExchangeGraph:
    @pytest.mark.parametrize("name, count", [("A3/Z2", 6), ("D4/Z2", 20), ("D4/Z3", 8), ("A5/Z2", 20)])
    def test_count_success(self, name: str, count: int):
        triple = find_triple(name)

        graph = folded_exchange_graph(triple.matrix, triple.action)

        assert graph.node_count == count
        assert graph.is_regular()
        assert len(graph.extra) == count

    def test_globally_foldable_success(self):
        triple = find_triple("D4/Z3")

        assert is_globally_foldable(triple.matrix, triple.action).to_dict() == {
            "globally_foldable": True,
            "folded_seeds": 8,
        }

    def test_not_foldable_success(self):
        action = GroupAction.from_cycles(3, [[[1, 2]]])

        assert is_globally_foldable(type_matrix(parse_type("A3")), action).result is False

    def test_unknown_success(self):
        triple = find_triple("A5/Z2")

        assert is_globally_foldable(triple.matrix, triple.action, max_nodes=3).result == "unknown"

    def test_fail_not_invariant(self):
        with pytest.raises(NotAdmissible):
            folded_exchange_graph(ExchangeMatrix(LINEAR_A3), GroupAction.from_cycles(3, [[[1, 3]]]))


class TestCensus:
    @pytest.mark.parametrize("name", ["A3/Z2", "D4/Z2", "D4/Z3"])
    def test_success(self, name: str):
        triple = find_triple(name)

        census = invariant_census(triple.matrix, triple.action)

        assert census.passed
        assert census.invariant >= 1
        assert census.to_dict()["violations"] == []

    def test_budget_success(self):
        triple = find_triple("D4/Z2")

        census = invariant_census(triple.matrix, triple.action, max_nodes=5)

        assert not census.complete
        assert not census.passed


class TestCoxeterCompatibility:
    @pytest.mark.parametrize("name", ["A3/Z2", "D4/Z3"])
    def test_success(self, name: str):
        triple = find_triple(name)

        results = coxeter_compatibility(triple.matrix, triple.action, 3)

        assert results == [True] * 7


class TestCatalog:
    def test_finite_success(self):
        triples = catalog_triples(include_affine=False)

        assert [triple.name for triple in triples] == ["A3/Z2", "A5/Z2", "D4/Z2", "D5/Z2", "E6/Z2", "D4/Z3"]
        assert all(triple.is_finite for triple in triples)
        assert all(is_g_invariant(triple.matrix, triple.action) for triple in triples)

    def test_affine_success(self):
        triples = [triple for triple in catalog_triples() if not triple.is_finite]

        assert triples
        assert all(is_g_admissible(triple.matrix, triple.action) for triple in triples)
        assert find_triple("Dtilde4/Z3").folded == parse_type("D4^(3)")

    def test_fail_unknown(self):
        with pytest.raises(MalformedInput):
            find_triple("A4/Z2")
