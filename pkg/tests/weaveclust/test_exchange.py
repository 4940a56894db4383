import pytest

from main.celery import app as celery_app
from weaveclust.dynkin import parse_type, seed_count
from weaveclust.exceptions import MalformedInput
from weaveclust.exchange import (
    coxeter_order,
    coxeter_orbit,
    coxeter_power,
    exchange_graph,
    graphs_isomorphic,
    normal_form_witness,
    normal_form_witnesses,
)
from weaveclust.mutation import type_matrix
from weaveclust.seeds import apply_sequence, canonical_key, initial_seed


def _seed(type_name: str, backend: str = "pc"):
    return initial_seed(type_matrix(parse_type(type_name)), backend)


class TestExchangeGraph:
    @pytest.mark.parametrize("type_name", ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "D4", "A1+A2"])
    def test_count_success(self, type_name: str):
        graph = exchange_graph(_seed(type_name))

        assert graph.node_count == seed_count(parse_type(type_name))
        assert not graph.partial
        assert graph.is_regular()
        assert graph.is_connected()
        assert graph.verify_edges()

    def test_workers_success(self):
        single = exchange_graph(_seed("A3"))
        parallel = exchange_graph(_seed("A3"), jobs=2)

        assert parallel.node_count == single.node_count == 14
        assert graphs_isomorphic(single, parallel)

    def test_workers_without_broker_success(self):
        assert celery_app.conf.task_always_eager
        assert celery_app.conf.task_store_eager_result is False
        assert celery_app.conf.result_backend.startswith("cache+memory")

    @pytest.mark.parametrize("type_name", ["A2", "A3", "B2"])
    def test_backends_success(self, type_name: str):
        assert graphs_isomorphic(exchange_graph(_seed(type_name)), exchange_graph(_seed(type_name, "y")))

    def test_not_isomorphic_success(self):
        assert not graphs_isomorphic(exchange_graph(_seed("A3")), exchange_graph(_seed("B2")))

    def test_to_dict_success(self):
        data = exchange_graph(_seed("A2")).to_dict()

        assert data["count"] == 5
        assert data["complete"] is True
        assert len(data["nodes"]) == 5
        assert all(1 <= source <= 5 and 1 <= i <= 2 for source, i, _target, _index in data["edges"])
        assert len(data["edges"]) == 10

    def test_budget_success(self):
        graph = exchange_graph(_seed("A3"), max_nodes=3)

        assert graph.partial
        assert graph.node_count <= 3

    def test_fail_budget(self):
        with pytest.raises(MalformedInput):
            exchange_graph(_seed("A2"), max_nodes=0)


class TestCoxeter:
    @pytest.mark.parametrize(
        "type_name, order",
        [("A1", 2), ("A2", 5), ("A3", 3), ("A4", 7), ("B2", 3), ("D4", 4), ("G2", 4)],
    )
    def test_order_success(self, type_name: str, order: int):
        assert coxeter_order(_seed(type_name)) == order

    def test_infinite_success(self):
        seed = _seed("Dtilde4")

        assert coxeter_order(seed) == "infinite(≥12)"
        assert len(set(coxeter_orbit(seed, 12))) == 13

    def test_orbit_negative_success(self):
        seed = _seed("A3")
        forward = coxeter_orbit(seed, 3)
        backward = coxeter_orbit(seed, 3, negative=True)

        assert forward[0] == backward[0] == forward[3]
        assert forward[1] == backward[2]


class TestNormalForm:
    def test_witness_success(self):
        seed = _seed("A3")
        graph = exchange_graph(seed)
        target = canonical_key(apply_sequence(seed, [0, 1, 2]))

        witness = normal_form_witness(graph, target)

        start = coxeter_power(seed, witness.r)
        assert canonical_key(apply_sequence(start, witness.sequence)) == target
        assert witness.avoided not in witness.sequence.indices

    def test_all_witnesses_success(self):
        graph = exchange_graph(_seed("B2"))

        witnesses = normal_form_witnesses(graph)

        assert set(witnesses) == set(graph.nodes)
        assert witnesses[graph.initial].sequence.indices == ()

    def test_fail_partial_graph(self):
        graph = exchange_graph(_seed("A3"), max_nodes=3)

        with pytest.raises(MalformedInput):
            normal_form_witness(graph, graph.initial)
