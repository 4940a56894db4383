"""Циклы N-графа и форма пересечений, задающая колчан.

Цикл хранится множеством рёбер; его вид (I, длинный I, Y, T) каждый раз
выводится из локальной картины в вершинах графа. Поэтому перестройки,
сохраняющие номера рёбер, переносят циклы без отдельной разметки концов.
"""

import logging
from dataclasses import dataclass, replace
from functools import cached_property

import networkx as nx
import numpy as np
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import MalformedInput, NotBipartite, UnsupportedConfiguration
from weaveclust.mutation import Quiver
from weaveclust.ngraph.graph import CROSSING, HEXAGONAL, TRIVALENT, NGraph, graph_from_dict

logger = logging.getLogger(__name__)

I_CYCLE = "I"
LONG_I = "LongI"
Y_UPPER = "YUpper"
Y_LOWER = "YLower"
T_CYCLE = "T"
Y_KINDS = (Y_UPPER, Y_LOWER)
SIGNS = ("+", "-")


def _unsupported(error_msg):
    logger.warning(error_msg)
    return UnsupportedConfiguration(error_msg)


@dataclass(frozen=True)
class CycleSpec:
    """Цикл как множество рёбер и, при наличии, класс двудольного разбиения ("+" или "-")."""

    edges: tuple[int, ...]
    sign: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        if not self.edges:
            raise MalformedInput(_("A cycle needs at least one edge"))
        if self.sign is not None and self.sign not in SIGNS:
            raise MalformedInput(format_lazy(_("Unknown bipartite class '{sign}'"), sign=self.sign))

    def untagged(self) -> "CycleSpec":
        return replace(self, sign=None)


@dataclass(frozen=True)
class CycleShape:
    """Локальная картина цикла.

    ends - пары (трёхвалентная вершина, ребро цикла); passes - (вершина, пара
    противоположных рёбер); junctions - (шестивалентная вершина, три одноцветных ребра).
    """

    kind: str
    ends: tuple[tuple[int, int], ...]
    passes: tuple[tuple[int, tuple[int, int]], ...]
    junctions: tuple[tuple[int, tuple[int, ...]], ...]

    @cached_property
    def touched(self) -> set[int]:
        return {vertex for vertex, _edge in self.ends} | {vertex for vertex, _pair in self.passes} | {
            vertex for vertex, _arms in self.junctions
        }


def cycle_shape(graph: NGraph, edges) -> CycleShape:
    """Вид цикла; всё, что не является I, длинным I, Y или T, - UnsupportedConfiguration."""
    edges = tuple(edges)
    missing = [edge for edge in edges if edge not in graph.edges]
    if missing:
        raise _unsupported(format_lazy(_("Cycle refers to missing edges {edges}"), edges=missing))
    incident: dict[int, list[int]] = {}
    for edge in edges:
        for vertex in graph.edges[edge].ends:
            incident.setdefault(vertex, []).append(edge)
    ends, passes, junctions = [], [], []
    for vertex_id, members in sorted(incident.items()):
        vertex = graph.vertices[vertex_id]
        positions = sorted(vertex.rot.index(edge) for edge in members)
        if vertex.kind == TRIVALENT and len(members) == 1:
            ends.append((vertex_id, members[0]))
        elif vertex.kind in (HEXAGONAL, CROSSING) and len(members) == 2 and positions[1] - positions[0] == vertex.degree // 2:
            passes.append((vertex_id, tuple(vertex.rot[position] for position in positions)))
        elif vertex.kind == HEXAGONAL and len(members) == 3 and positions in ([0, 2, 4], [1, 3, 5]):
            junctions.append((vertex_id, tuple(vertex.rot[position] for position in positions)))
        else:
            raise _unsupported(
                format_lazy(
                    _("Cycle {edges} meets vertex {vertex} ({kind}) in an unsupported way"),
                    edges=list(edges),
                    vertex=vertex_id,
                    kind=vertex.kind,
                )
            )
    skeleton = nx.Graph()
    skeleton.add_edges_from(graph.edges[edge].ends for edge in edges)
    if not nx.is_tree(skeleton) or skeleton.number_of_edges() != len(edges):
        raise _unsupported(format_lazy(_("Cycle {edges} is not a tree of edges"), edges=list(edges)))
    match len(junctions), len(ends):
        case (0, 2):
            kind = I_CYCLE if len(edges) == 1 else LONG_I
        case (1, 3):
            vertex_id, arms = junctions[0]
            low = graph.vertices[vertex_id].colors[0]
            kind = Y_UPPER if graph.edges[arms[0]].color == low else Y_LOWER
        case (count, tips) if count >= 2 and tips == count + 2:
            kind = T_CYCLE
        case _:
            raise _unsupported(format_lazy(_("Cycle {edges} has no supported shape"), edges=list(edges)))
    return CycleShape(kind, tuple(ends), tuple(passes), tuple(junctions))


def intersection_number(graph: NGraph, first: CycleSpec, second: CycleSpec) -> int:
    """Алгебраическое пересечение i(γ₁, γ₂).

    В общей трёхвалентной вершине ребро γ₂, следующее против часовой стрелки за
    ребром γ₁, даёт +1, предыдущее даёт −1. В шестивалентной вершине, через которую
    оба цикла проходят насквозь, сравниваются позиции их рёбер младшего цвета:
    сдвиг на 2 даёт +1, на 4 даёт −1. Пересечения в точках crossing нулевые.
    """
    if first.edges == second.edges:
        return 0
    shared = set(first.edges) & set(second.edges)
    if shared:
        raise _unsupported(format_lazy(_("Cycles share edges {edges}"), edges=sorted(shared)))
    one, other = cycle_shape(graph, first.edges), cycle_shape(graph, second.edges)
    for vertex, _arms in one.junctions + other.junctions:
        if vertex in one.touched and vertex in other.touched:
            raise _unsupported(format_lazy(_("Cycles meet at the junction {vertex}"), vertex=vertex))
    total = 0
    other_ends = dict(other.ends)
    for vertex_id, edge in one.ends:
        if vertex_id in other_ends:
            vertex = graph.vertices[vertex_id]
            total += 1 if vertex.turn(edge, 1) == other_ends[vertex_id] else -1
    other_passes = dict(other.passes)
    for vertex_id, chord in one.passes:
        vertex = graph.vertices[vertex_id]
        if vertex_id not in other_passes or vertex.kind != HEXAGONAL:
            continue
        low = vertex.colors[0]
        mine = next(vertex.rot.index(edge) for edge in chord if graph.edges[edge].color == low)
        theirs = next(vertex.rot.index(edge) for edge in other_passes[vertex_id] if graph.edges[edge].color == low)
        total += 1 if (theirs - mine) % 6 == 2 else -1
    return total


@dataclass(frozen=True)
class NGraphWithCycles:
    """N-граф с упорядоченным набором циклов; классы "+"/"-" задают разбиение B₊/B₋."""

    graph: NGraph
    cycles: tuple[CycleSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        for cycle in self.cycles:
            cycle_shape(self.graph, cycle.edges)

    def shape(self, k: int) -> CycleShape:
        self.check_index(k)
        return cycle_shape(self.graph, self.cycles[k].edges)

    def kinds(self) -> list[str]:
        return [cycle_shape(self.graph, cycle.edges).kind for cycle in self.cycles]

    def check_index(self, k: int) -> None:
        if not 0 <= k < len(self.cycles):
            error_msg = format_lazy(_("Cycle index {k} is out of range for {count} cycles"), k=k, count=len(self.cycles))
            logger.warning(error_msg)
            raise MalformedInput(error_msg)

    @property
    def tagged(self) -> bool:
        return bool(self.cycles) and all(cycle.sign is not None for cycle in self.cycles)

    def untagged(self) -> "NGraphWithCycles":
        return replace(self, cycles=tuple(cycle.untagged() for cycle in self.cycles))

    def with_signs(self, signs) -> "NGraphWithCycles":
        return replace(self, cycles=tuple(replace(cycle, sign=sign) for cycle, sign in zip(self.cycles, signs)))

    def check_tags(self, quiver: Quiver | None = None) -> None:
        """Классы согласованы с колчаном: стрелка i→j идёт из "+" в "-"."""
        if not self.tagged:
            raise NotBipartite(_("Cycles carry no bipartite classes"))
        quiver = quiver_from_cycles(self) if quiver is None else quiver
        for i, j, _multiplicity in quiver.arrows:
            if (self.cycles[i].sign, self.cycles[j].sign) != ("+", "-"):
                error_msg = format_lazy(_("Arrow {i}->{j} contradicts the bipartite classes"), i=i + 1, j=j + 1)
                logger.warning(error_msg)
                raise NotBipartite(error_msg)

    def intersection(self, i: int, j: int) -> int:
        self.check_index(i)
        self.check_index(j)
        return intersection_number(self.graph, self.cycles[i], self.cycles[j])

    def rotated(self, steps: int) -> "NGraphWithCycles":
        return replace(self, graph=self.graph.rotated(steps))

    def conjugated(self) -> "NGraphWithCycles":
        return replace(self, graph=self.graph.conjugated())

    def to_dict(self) -> dict:
        return {
            **self.graph.to_dict(),
            "cycles": [
                {"kind": kind, "edges": list(cycle.edges), "class": cycle.sign}
                for kind, cycle in zip(self.kinds(), self.cycles)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NGraphWithCycles":
        graph = graph_from_dict(data)
        if not isinstance(graph, NGraph):
            raise MalformedInput(_("Cycles are only supported on disk N-graphs"))
        cycles = tuple(CycleSpec(tuple(item["edges"]), item.get("class")) for item in data.get("cycles", ()))
        try:
            return cls(graph, cycles)
        except UnsupportedConfiguration as err:
            raise MalformedInput(err.detail)


def quiver_from_cycles(item: NGraphWithCycles) -> Quiver:
    """Колчан b_ij = i(γ_i, γ_j) на номерах циклов."""
    size = len(item.cycles)
    adjacency = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(i + 1, size):
            value = intersection_number(item.graph, item.cycles[i], item.cycles[j])
            adjacency[i, j], adjacency[j, i] = value, -value
    return Quiver(size, size, adjacency)
