"""Графы обмена, орбиты мутации Кокстера и свидетели нормальной формы."""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable

import networkx as nx
from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.canonical import SeedKey, position_map
from weaveclust.exceptions import MalformedInput, SearchFailure
from weaveclust.mutation import MutationSequence, coxeter_mutation
from weaveclust.seeds import AnySeed, apply_sequence

logger = logging.getLogger(__name__)

Mutator = Callable[[Any, int], Any]
Keyer = Callable[[Any], tuple[SeedKey, tuple[int, ...]]]


@dataclass(frozen=True)
class Edge:
    """Ребро графа обмена из вершины-источника по индексу i.

    permutation[x] - индекс представителя целевой вершины, соответствующий
    индексу x сида μ_i(представитель источника); index = permutation[i].
    """

    target: SeedKey
    index: int
    permutation: tuple[int, ...]


@dataclass
class ExchangeGraph:
    """Граф обмена: вершины - классы эквивалентности сидов, рёбра - мутации.

    complete=False означает, что бюджет вершин исчерпан и граф частичный;
    число вершин частичного графа не является ответом.
    """

    rank: int
    initial: SeedKey
    nodes: dict[SeedKey, Any] = field(default_factory=dict)
    orders: dict[SeedKey, tuple[int, ...]] = field(default_factory=dict)
    edges: dict[SeedKey, list[Edge | None]] = field(default_factory=dict)
    complete: bool = True
    extra: dict[SeedKey, Any] = field(default_factory=dict)
    mutate: Mutator | None = field(default=None, repr=False, compare=False)
    key_of: Keyer | None = field(default=None, repr=False, compare=False)

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def partial(self) -> bool:
        return not self.complete

    def is_regular(self) -> bool:
        return all(edge is not None for edges in self.edges.values() for edge in edges)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        for source, edges in self.edges.items():
            for i, edge in enumerate(edges):
                if edge is not None:
                    graph.add_edge(source, edge.target)
                    graph.edges[source, edge.target].setdefault("labels", set()).add((source, i))
        return graph

    def is_connected(self) -> bool:
        return self.node_count > 0 and nx.is_connected(self.to_networkx())

    def verify_edges(self) -> bool:
        """Повторная проверка каждого ребра мутацией представителей в обе стороны."""
        for source, edges in self.edges.items():
            for i, edge in enumerate(edges):
                if edge is None:
                    continue
                forward, _order = self.key_of(self.mutate(self.nodes[source], i))
                backward, _order = self.key_of(self.mutate(self.nodes[edge.target], edge.index))
                if forward != edge.target or backward != source:
                    logger.warning(
                        format_lazy(
                            _("Edge {source}-{i} does not replay"), source=source.digest, i=i + 1
                        )
                    )
                    return False
        return True

    def index_of(self) -> dict[SeedKey, int]:
        return {key: position for position, key in enumerate(self.nodes)}

    def to_dict(self) -> dict:
        """Список смежности: рёбра [источник, i, цель, j] с нумерацией с единицы."""
        positions = self.index_of()
        edges = []
        for source, items in self.edges.items():
            for i, edge in enumerate(items):
                if edge is not None:
                    edges.append([positions[source] + 1, i + 1, positions[edge.target] + 1, edge.index + 1])
        return {
            "rank": self.rank,
            "nodes": [key.digest for key in self.nodes],
            "edges": edges,
            "complete": self.complete,
            "count": self.node_count,
        }


def explore(
    initial: Any,
    rank: int,
    mutate: Mutator,
    key_of: Keyer,
    max_nodes: int | None = None,
    expand_level: Callable[[list[Any]], list[list[tuple[Any, SeedKey, tuple[int, ...]]]]] | None = None,
) -> ExchangeGraph:
    """Поиск в ширину по уровням с дедупликацией по каноническим ключам.

    expand_level позволяет вычислять мутации целого уровня вне процесса
    (задачи Celery); слияние всегда идёт в порядке уровня, поэтому результат
    не зависит от распределения работы.
    """
    max_nodes = settings.WEAVECLUST_BUDGET if max_nodes is None else max_nodes
    if max_nodes < 1:
        raise MalformedInput(_("Node budget must be positive"))
    initial_key, initial_order = key_of(initial)
    graph = ExchangeGraph(rank=rank, initial=initial_key, mutate=mutate, key_of=key_of)
    graph.nodes[initial_key] = initial
    graph.orders[initial_key] = initial_order
    level = [initial_key]
    while level:
        if expand_level is None:
            children = [
                [(child, *key_of(child)) for child in (mutate(graph.nodes[key], i) for i in range(rank))]
                for key in level
            ]
        else:
            children = expand_level([graph.nodes[key] for key in level])
        next_level = []
        for key, items in zip(level, children):
            graph.edges[key] = [None] * rank
            for i, (child, child_key, child_order) in enumerate(items):
                if child_key not in graph.nodes:
                    if graph.node_count >= max_nodes:
                        graph.complete = False
                        continue
                    graph.nodes[child_key] = child
                    graph.orders[child_key] = child_order
                    next_level.append(child_key)
                permutation = position_map(child_order, graph.orders[child_key])
                graph.edges[key][i] = Edge(child_key, permutation[i], permutation)
        logger.debug(
            format_lazy(
                _("Exchange graph level done: {size} nodes, {pending} pending"),
                size=graph.node_count,
                pending=len(next_level),
            )
        )
        level = next_level
        if not graph.complete:
            for key in level:
                graph.edges.setdefault(key, [None] * rank)
            break
    if graph.complete:
        logger.info(format_lazy(_("Exchange graph closed with {size} nodes"), size=graph.node_count))
    else:
        logger.warning(
            format_lazy(_("Exchange graph is partial: budget of {budget} nodes exhausted"), budget=max_nodes)
        )
    return graph


def _seed_key(seed: AnySeed) -> tuple[SeedKey, tuple[int, ...]]:
    return seed.canonical()


def _seed_mutate(seed: AnySeed, k: int) -> AnySeed:
    return seed.mutate(k)


def exchange_graph(initial: AnySeed, max_nodes: int | None = None, jobs: int = 1) -> ExchangeGraph:
    """Граф обмена сида (Y- или PC-бэкенд).

    При jobs > 1 уровни поиска раздаются задачам Celery expand_frontier.
    """
    expand_level = None
    if jobs > 1:
        from weaveclust.tasks import expand_level_in_workers

        def expand_level(seeds):
            return expand_level_in_workers(seeds, jobs)

    return explore(initial, initial.rank, _seed_mutate, _seed_key, max_nodes, expand_level)


def graphs_isomorphic(first: ExchangeGraph, second: ExchangeGraph) -> bool:
    """Изоморфизм графов обмена с сохранением меток рёбер.

    Обход идёт одновременно по обоим графам от начальных сидов с одинаковой
    нумерацией индексов; перестановка π переводит нумерацию представителя
    вершины первого графа в нумерацию представителя парной вершины второго.
    """
    if first.partial or second.partial or first.rank != second.rank or first.node_count != second.node_count:
        return False
    rank = first.rank
    mapping = {first.initial: second.initial}
    image = {second.initial}
    queue = [(first.initial, second.initial, tuple(range(rank)))]
    while queue:
        a1, a2, pi = queue.pop()
        for i in range(rank):
            edge1 = first.edges[a1][i]
            edge2 = second.edges[a2][pi[i]]
            if edge1 is None or edge2 is None:
                return False
            inverse1 = [0] * rank
            for x, y in enumerate(edge1.permutation):
                inverse1[y] = x
            next_pi = tuple(edge2.permutation[pi[inverse1[y]]] for y in range(rank))
            if edge1.target in mapping:
                if mapping[edge1.target] != edge2.target:
                    return False
                continue
            if edge2.target in image:
                return False
            mapping[edge1.target] = edge2.target
            image.add(edge2.target)
            queue.append((edge1.target, edge2.target, next_pi))
    return len(mapping) == first.node_count


def coxeter_power(seed: AnySeed, r: int) -> AnySeed:
    """μ_Q^r(seed); при r < 0 применяется обратная мутация μ₋μ₊."""
    sequence = coxeter_mutation(seed.matrix)
    if r < 0:
        sequence = sequence.inverse()
    for _step in range(abs(r)):
        seed = apply_sequence(seed, sequence)
    return seed


def coxeter_orbit(seed: AnySeed, r_max: int, negative: bool = False) -> list[SeedKey]:
    """Ключи μ_Q^r(seed) для r = 0..r_max (или r = 0, −1, …, −r_max при negative)."""
    sequence = coxeter_mutation(seed.matrix)
    if negative:
        sequence = sequence.inverse()
    keys = [seed.canonical()[0]]
    for _step in range(r_max):
        seed = apply_sequence(seed, sequence)
        keys.append(seed.canonical()[0])
    return keys


def coxeter_order(seed: AnySeed, depth: int | None = None) -> int | str:
    """Наименьшее r ≥ 1 с μ_Q^r(s) ~ s или "infinite(≥K)", если до глубины K совпадения нет."""
    depth = settings.WEAVECLUST_COXETER_DEPTH if depth is None else depth
    keys = coxeter_orbit(seed, depth)
    for r, key in enumerate(keys[1:], start=1):
        if key == keys[0]:
            return r
    return f"infinite(≥{depth})"


@dataclass(frozen=True)
class NormalFormWitness:
    """Сертификат target = (μ_{j_L}…μ_{j_1})(μ_Q^r(initial)) со всеми j ≠ avoided."""

    r: int
    avoided: int
    sequence: MutationSequence

    def to_dict(self) -> dict:
        return {"r": self.r, "avoided": self.avoided + 1, "sequence": self.sequence.to_list()}


def _alternating(bound: int):
    yield 0
    for r in range(1, bound + 1):
        yield r
        yield -r


def _avoiding_tree(start: AnySeed, avoided: int, limit: int) -> dict[SeedKey, tuple[int, ...]]:
    """Кратчайшие пути (в порядке применения) от start без мутаций в индексе avoided."""
    paths = {start.canonical()[0]: ()}
    seen = {start.labeled_key()}
    level = [(start, ())]
    while level and len(seen) <= limit:
        next_level = []
        for seed, path in level:
            for k in range(seed.rank):
                if k == avoided:
                    continue
                child = seed.mutate(k)
                labeled = child.labeled_key()
                if labeled in seen:
                    continue
                seen.add(labeled)
                paths.setdefault(child.canonical()[0], path + (k,))
                next_level.append((child, path + (k,)))
        level = next_level
    return paths


class NormalFormSearch:
    """Поиск свидетелей нормальной формы с кешированием деревьев по парам (r, ℓ)."""

    def __init__(self, graph: ExchangeGraph):
        if graph.partial:
            error_msg = _("Normal form witnesses need a complete exchange graph")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        self.graph = graph
        self.initial = graph.nodes[graph.initial]
        self.limit = graph.node_count * max(1, graph.rank) ** 2 * 64
        self._trees: dict[tuple[int, int], dict[SeedKey, tuple[int, ...]]] = {}
        self._starts: dict[int, AnySeed] = {}

    def _tree(self, r: int, avoided: int) -> dict[SeedKey, tuple[int, ...]]:
        if (r, avoided) not in self._trees:
            if r not in self._starts:
                self._starts[r] = coxeter_power(self.initial, r)
            self._trees[r, avoided] = _avoiding_tree(self._starts[r], avoided, self.limit)
        return self._trees[r, avoided]

    def witness(self, target: SeedKey) -> NormalFormWitness:
        if target not in self.graph.nodes:
            error_msg = format_lazy(_("Seed {key} is not a node of the graph"), key=target.digest)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        for r in _alternating(self.graph.node_count):
            for avoided in range(self.graph.rank):
                path = self._tree(r, avoided).get(target)
                if path is None:
                    continue
                witness = NormalFormWitness(r, avoided, MutationSequence(tuple(reversed(path))))
                replayed = apply_sequence(self._starts[r], witness.sequence)
                if replayed.canonical()[0] != target:
                    error_msg = format_lazy(_("Witness for {key} failed replay"), key=target.digest)
                    logger.error(error_msg)
                    raise SearchFailure(error_msg)
                return witness
        error_msg = format_lazy(_("No normal form witness for seed {key}"), key=target.digest)
        logger.error(error_msg)
        raise SearchFailure(error_msg)


def normal_form_witness(graph: ExchangeGraph, target: SeedKey) -> NormalFormWitness:
    return NormalFormSearch(graph).witness(target)


def normal_form_witnesses(graph: ExchangeGraph) -> dict[SeedKey, NormalFormWitness]:
    search = NormalFormSearch(graph)
    return {key: search.witness(key) for key in graph.nodes}
