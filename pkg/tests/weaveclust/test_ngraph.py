import json

import pytest

from weaveclust.braids import conjugate_word, family_word
from weaveclust.dynkin import parse_type
from weaveclust.exceptions import MalformedInput, NotBipartite, UnsupportedConfiguration
from weaveclust.mutation import classify_type, is_bipartite, mutate_quiver
from weaveclust.ngraph import (
    NGraphWithCycles,
    Symmetry,
    boundary_word,
    build_affine_d,
    build_linear,
    build_tripod,
    conjugate,
    equivariance_check,
    find_isomorphism,
    is_free_sufficient,
    is_invariant,
    is_isomorphic,
    legendrian_coxeter_mutation,
    mutate,
    mutate_sequence,
    quiver_from_cycles,
    rotate,
)
from weaveclust.ngraph import moves
from weaveclust.ngraph.graph import Sketch
from weaveclust.ngraph.symmetry import cycle_images
from weaveclust.serializers import NGraphSerializer, deserialize, dump_json


class TestFamilies:
    @pytest.mark.parametrize(
        "builder, params, expected",
        [
            (build_linear, (1,), "A1"),
            (build_linear, (3,), "A3"),
            (build_linear, (4,), "A4"),
            (build_tripod, (1, 2, 2), "A3"),
            (build_tripod, (2, 2, 2), "D4"),
            (build_tripod, (2, 2, 3), "D5"),
            (build_affine_d, (4,), "Dtilde4"),
        ],
    )
    def test_quiver_type_success(self, builder, params, expected: str):
        item = builder(*params)
        matrix = quiver_from_cycles(item).to_matrix()

        item.check_tags()
        assert classify_type(matrix) == parse_type(expected)
        assert is_bipartite(matrix) is not None

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_linear_boundary_success(self, linear_factory, n: int):
        item = linear_factory(n=n)

        assert boundary_word(item) == family_word("beta", "A", n)
        assert item.kinds() == ["I"] * n
        assert is_free_sufficient(item)

    @pytest.mark.parametrize("params", [(1, 2, 2), (2, 3, 3)])
    def test_tripod_boundary_success(self, params):
        item = build_tripod(*params)

        assert boundary_word(item) == family_word("beta", *params)
        assert len(item.cycles) == sum(params) - 2
        assert item.kinds()[1:] == ["I"] * (sum(params) - 3)

    def test_closed_face_not_free_success(self):
        sketch = Sketch(2)
        corners = [sketch.trivalent(1, 0, 0), sketch.trivalent(1, 1, 0), sketch.trivalent(1, 0.5, 0.9)]
        for first, second in ((0, 1), (1, 2), (2, 0)):
            sketch.edge(corners[first], corners[second], 1)
        for corner, angle in zip(corners, (210, 330, 90)):
            sketch.leg(corner, angle, 1)

        assert not is_free_sufficient(sketch.build())

    @pytest.mark.parametrize("builder, params", [(build_linear, (0,)), (build_tripod, (0, 1, 1)), (build_affine_d, (3,))])
    def test_fail_parameters(self, builder, params):
        with pytest.raises(MalformedInput):
            builder(*params)


class TestTags:
    def test_fail_untagged(self, tripod_factory):
        item = tripod_factory().untagged()

        assert not item.tagged
        with pytest.raises(NotBipartite):
            item.check_tags()
        with pytest.raises(NotBipartite):
            legendrian_coxeter_mutation(item)

    def test_fail_wrong_tags(self, linear_factory):
        item = linear_factory(n=2)

        with pytest.raises(NotBipartite):
            item.with_signs(["-", "+"]).check_tags()


class TestMutation:
    def test_mutate_success(self, linear_factory):
        item = linear_factory(n=3)

        mutated = mutate(item, 1)

        assert boundary_word(mutated) == boundary_word(item)
        assert quiver_from_cycles(mutated) == mutate_quiver(quiver_from_cycles(item), 1)
        assert not mutated.tagged

    def test_sequence_success(self, tripod_factory):
        item = tripod_factory()
        expected = quiver_from_cycles(item)
        for k in (1, 0, 2):
            expected = mutate_quiver(expected, k)

        mutated = mutate_sequence(item, [1, 0, 2])

        assert quiver_from_cycles(mutated) == expected
        assert boundary_word(mutated) == boundary_word(item)

    def test_coxeter_keeps_classes_success(self, linear_factory):
        item = linear_factory(n=3)

        mutated = legendrian_coxeter_mutation(item)

        assert [cycle.sign for cycle in mutated.cycles] == [cycle.sign for cycle in item.cycles]
        assert boundary_word(legendrian_coxeter_mutation(mutated, inverse=True)) == boundary_word(item)

    def test_coxeter_is_rotation_success(self, linear_factory):
        base = linear_factory(n=2)
        mutated = legendrian_coxeter_mutation(base)
        size = len(base.graph.boundary)

        found = [find_isomorphism(mutated, base, offset) for offset in (1, size - 1)]

        assert any(iso is not None and None not in cycle_images(iso, mutated, base) for iso in found)

    def test_fail_index(self, linear_factory):
        with pytest.raises(MalformedInput):
            mutate(linear_factory(n=2), 2)

    def test_equivariance_success(self, linear_factory):
        item = linear_factory(n=3)

        report = equivariance_check(item, trials=5, seed=7)

        assert report.passed
        assert report.to_dict()["trials"] == 5
        assert report.to_dict() == equivariance_check(item, trials=5, seed=7).to_dict()

    def test_equivariance_reports_skipped_success(self, monkeypatch, linear_factory):
        supported = moves.mutate

        def first_cycle_unsupported(item, k):
            if k == 0:
                raise UnsupportedConfiguration("cycle 1 has no room for a flip")
            return supported(item, k)

        monkeypatch.setattr(moves, "mutate", first_cycle_unsupported)
        item = linear_factory(n=3)

        report = equivariance_check(item, trials=20, seed=3)
        budgeted = equivariance_check(item, trials=20, seed=3, max_skipped=0)

        assert report.skipped > 0
        assert report.to_dict()["skipped_cycles"] == [1]
        assert report.failures == 0
        assert report.passed
        assert not budgeted.passed
        assert budgeted.to_dict()["max_skipped"] == 0


class TestTransforms:
    def test_rotate_success(self):
        item = build_tripod(1, 2, 2)
        word = boundary_word(item)

        assert boundary_word(rotate(item, 1)) == word.rotated(-1)
        assert rotate(rotate(item, 3), -3) == item
        assert is_isomorphic(rotate(item, 2), item)

    def test_conjugate_success(self):
        item = build_tripod(1, 2, 2)

        assert boundary_word(conjugate(item)) == conjugate_word(boundary_word(item))
        assert conjugate(conjugate(item)) == item

    def test_not_isomorphic_success(self):
        assert not is_isomorphic(build_linear(2), build_linear(3))
        assert find_isomorphism(build_linear(2), build_tripod(1, 1, 1)) is None

    @pytest.mark.parametrize("a", [1, 2])
    def test_tripod_symmetry_success(self, a: int):
        assert is_invariant(build_tripod(a, a, a), Symmetry(steps=a + 2))

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_linear_symmetry_success(self, n: int):
        size = 2 * n - 1
        symmetry = Symmetry(steps=n + 1, permutation=tuple(reversed(range(size))))

        assert is_invariant(build_linear(size), symmetry)

    def test_fail_symmetry_permutation(self):
        with pytest.raises(MalformedInput):
            is_invariant(build_linear(3), Symmetry(steps=3, permutation=(0,)))


class TestSerialization:
    @pytest.mark.parametrize("item", [build_linear(2), build_tripod(1, 2, 2)])
    def test_round_trip_success(self, item: NGraphWithCycles):
        data = json.loads(dump_json(item.to_dict()))

        restored = deserialize(NGraphSerializer, data)

        assert isinstance(restored, NGraphWithCycles)
        assert restored.to_dict() == item.to_dict()
        assert is_isomorphic(restored, item, 0)

    def test_plain_graph_success(self):
        data = build_linear(2).graph.to_dict()

        restored = deserialize(NGraphSerializer, data)

        assert boundary_word(restored) == family_word("beta", "A", 2)

    def test_fail_rotation_size(self):
        data = build_linear(1).to_dict()
        data["vertices"][0]["rot"] = data["vertices"][0]["rot"] + [99]

        with pytest.raises(MalformedInput):
            deserialize(NGraphSerializer, data)

    def test_fail_sheets(self):
        data = build_linear(1).to_dict()
        data["sheets"] = 1

        with pytest.raises(MalformedInput):
            deserialize(NGraphSerializer, data)
