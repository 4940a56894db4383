"""Комбинаторные N-графы на диске и кольце.

Вложение хранится только системой вращений: у каждой вершины - список инцидентных
рёбер против часовой стрелки. Граничные вершины перечислены против часовой стрелки
начиная с отмеченной точки. Геометрия используется лишь эскизом (Sketch) при
построении семейств и сразу забывается.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable

import networkx as nx
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.braids import BraidWord
from weaveclust.exceptions import MalformedInput

logger = logging.getLogger(__name__)

TRIVALENT = "trivalent"
HEXAGONAL = "hexagonal"
CROSSING = "crossing"
BOUNDARY = "boundary"
DEGREES = {TRIVALENT: 3, HEXAGONAL: 6, CROSSING: 4, BOUNDARY: 1}

LEG_REACH = 1.0e6


def _fail(error_msg) -> None:
    logger.warning(error_msg)
    raise MalformedInput(error_msg)


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: str
    colors: tuple[int, ...]
    rot: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.rot)

    def turn(self, edge: int, step: int) -> int:
        """Ребро, отстоящее от edge на step позиций против часовой стрелки."""
        return self.rot[(self.rot.index(edge) + step) % len(self.rot)]

    def opposite(self, edge: int) -> int:
        return self.turn(edge, len(self.rot) // 2)

    def starting_at(self, edge: int) -> tuple[int, ...]:
        index = self.rot.index(edge)
        return self.rot[index:] + self.rot[:index]


@dataclass(frozen=True)
class Edge:
    id: int
    color: int
    ends: tuple[int, int]

    def other(self, vertex: int) -> int:
        first, second = self.ends
        return second if vertex == first else first


@dataclass(frozen=True)
class EmbeddedGraph:
    """Общая часть дисковых и кольцевых N-графов: вершины, рёбра, проверки."""

    sheets: int
    vertices: dict[int, Vertex]
    edges: dict[int, Edge]

    def __post_init__(self):
        self._check_local()
        self._check_planar()

    def rings(self) -> list[tuple[tuple[int, ...], bool]]:
        """Граничные окружности: (вершины против часовой стрелки, внутренняя ли окружность)."""
        raise NotImplementedError

    def color_of(self, edge: int) -> int:
        return self.edges[edge].color

    def _check_local(self) -> None:
        if self.sheets < 2:
            _fail(format_lazy(_("An N-graph needs at least two sheets, got {sheets}"), sheets=self.sheets))
        seen: dict[int, int] = {}
        for vertex in self.vertices.values():
            if vertex.kind not in DEGREES:
                _fail(format_lazy(_("Unknown vertex kind '{kind}'"), kind=vertex.kind))
            if vertex.degree != DEGREES[vertex.kind]:
                _fail(
                    format_lazy(
                        _("Vertex {id} of kind {kind} has degree {degree}"),
                        id=vertex.id,
                        kind=vertex.kind,
                        degree=vertex.degree,
                    )
                )
            for edge in vertex.rot:
                if edge not in self.edges or vertex.id not in self.edges[edge].ends:
                    _fail(format_lazy(_("Vertex {id} lists foreign edge {edge}"), id=vertex.id, edge=edge))
                seen[edge] = seen.get(edge, 0) + 1
            self._check_colors(vertex)
        for edge in self.edges.values():
            if not 1 <= edge.color < self.sheets:
                _fail(format_lazy(_("Edge {id} has color {color} out of range"), id=edge.id, color=edge.color))
            if edge.ends[0] == edge.ends[1] or any(end not in self.vertices for end in edge.ends):
                _fail(format_lazy(_("Edge {id} has invalid ends {ends}"), id=edge.id, ends=edge.ends))
            if seen.get(edge.id) != 2:
                _fail(format_lazy(_("Edge {id} is not listed at both of its ends"), id=edge.id))
        ring_vertices = [vertex for ring, _inner in self.rings() for vertex in ring]
        boundary = {vertex.id for vertex in self.vertices.values() if vertex.kind == BOUNDARY}
        if len(ring_vertices) != len(set(ring_vertices)) or set(ring_vertices) != boundary:
            _fail(_("Boundary lists must enumerate every boundary vertex exactly once"))

    def _check_colors(self, vertex: Vertex) -> None:
        colors = [self.edges[edge].color for edge in vertex.rot]
        match vertex.kind:
            case "trivalent" | "boundary":
                valid = len(set(colors)) == 1 and vertex.colors == (colors[0],)
            case "hexagonal":
                low = min(colors)
                valid = vertex.colors == (low, low + 1) and all(
                    colors[i] == (low if i % 2 == colors.index(low) % 2 else low + 1) for i in range(6)
                )
            case _:
                pair = tuple(sorted(set(colors)))
                valid = (
                    len(pair) == 2
                    and pair[1] - pair[0] >= 2
                    and vertex.colors == pair
                    and colors[0] == colors[2]
                    and colors[1] == colors[3]
                )
        if not valid:
            _fail(
                format_lazy(
                    _("Vertex {id} ({kind}) has inconsistent colors {colors}"),
                    id=vertex.id,
                    kind=vertex.kind,
                    colors=colors,
                )
            )

    def _augmented(self) -> tuple[dict[int, list[int]], dict[int, tuple[int, int]], list[list[tuple[int, int]]]]:
        """Граф с дугами граничных окружностей и ожидаемые граничные грани в виде дротиков."""
        rot = {vertex.id: list(vertex.rot) for vertex in self.vertices.values()}
        ends = {edge.id: edge.ends for edge in self.edges.values()}
        label = max(ends, default=-1) + 1
        expected = []
        for ring, inner in self.rings():
            if len(ring) < 2:
                continue
            arcs = []
            for position, vertex in enumerate(ring):
                following = ring[(position + 1) % len(ring)]
                ends[label] = (vertex, following)
                arcs.append(label)
                label += 1
            for position, vertex in enumerate(ring):
                arc_next, arc_prev = arcs[position], arcs[position - 1]
                (interior,) = rot[vertex]
                rot[vertex] = [interior, arc_next, arc_prev] if inner else [arc_next, interior, arc_prev]
            if inner:
                expected.append([(arc, ends[arc][1]) for arc in arcs])
            else:
                expected.append([(arc, ends[arc][0]) for arc in arcs])
        return rot, ends, expected

    def _check_planar(self) -> None:
        rot, ends, expected = self._augmented()
        faces = trace_faces(rot, ends)
        skeleton = nx.MultiGraph()
        skeleton.add_nodes_from(rot)
        skeleton.add_edges_from(ends.values())
        characteristic = len(rot) - len(ends) + len(faces)
        if characteristic != 2 * nx.number_connected_components(skeleton):
            _fail(format_lazy(_("Rotation system is not planar (characteristic {chi})"), chi=characteristic))
        face_of = {dart: index for index, face in enumerate(faces) for dart in face}
        for darts in expected:
            owners = {face_of[dart] for dart in darts}
            if len(owners) != 1 or len(faces[owners.pop()]) != len(darts):
                _fail(_("Boundary vertices do not bound a single face in the stored order"))

    def color_subgraph(self, color: int) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        for edge in self.edges.values():
            if edge.color == color:
                graph.add_edge(*edge.ends, key=edge.id)
        return graph

    def colored(self, mapping) -> dict:
        """Вершины и рёбра после замены цвета c на mapping(c); вращения не меняются."""
        vertices = {}
        for vertex in self.vertices.values():
            vertices[vertex.id] = replace(vertex, colors=tuple(sorted(mapping(color) for color in vertex.colors)))
        edges = {edge.id: replace(edge, color=mapping(edge.color)) for edge in self.edges.values()}
        return {"vertices": vertices, "edges": edges}

    def half_edge(self, vertex: int, edge: int) -> int:
        return 2 * edge + (0 if self.edges[edge].ends[0] == vertex else 1)

    def _base_dict(self) -> dict:
        return {
            "sheets": self.sheets,
            "vertices": [
                {
                    "id": vertex.id,
                    "kind": vertex.kind,
                    "colors": list(vertex.colors),
                    "rot": [self.half_edge(vertex.id, edge) for edge in vertex.rot],
                }
                for vertex in sorted(self.vertices.values(), key=lambda item: item.id)
            ],
            "edges": [
                {"id": edge.id, "color": edge.color, "ends": [2 * edge.id, 2 * edge.id + 1]}
                for edge in sorted(self.edges.values(), key=lambda item: item.id)
            ],
        }


def trace_faces(rot: dict[int, list[int]], ends: dict[int, tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Грани системы вращений; дротик (ребро, начало), следующий - ребро после входящего у конца."""
    faces, seen = [], set()
    for edge, (first, second) in ends.items():
        for start in ((edge, first), (edge, second)):
            if start in seen:
                continue
            face, dart = [], start
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                label, tail = dart
                u, v = ends[label]
                head = v if tail == u else u
                around = rot[head]
                following = around[(around.index(label) + 1) % len(around)]
                dart = (following, head)
            faces.append(face)
    return faces


@dataclass(frozen=True)
class NGraph(EmbeddedGraph):
    """N-граф на диске; boundary - граничные вершины против часовой стрелки."""

    boundary: tuple[int, ...] = ()

    def rings(self) -> list[tuple[tuple[int, ...], bool]]:
        return [(self.boundary, False)]

    def rotated(self, steps: int) -> "NGraph":
        """Сдвиг отмеченной точки: новая граница [j] = старая [(j − steps) mod m]."""
        size = len(self.boundary)
        if not size:
            return self
        boundary = tuple(self.boundary[(j - steps) % size] for j in range(size))
        return replace(self, boundary=boundary)

    def conjugated(self) -> "NGraph":
        return replace(self, **self.colored(lambda color: self.sheets - color))

    def to_dict(self) -> dict:
        return {**self._base_dict(), "boundary": list(self.boundary)}


@dataclass(frozen=True)
class AnnularNGraph(EmbeddedGraph):
    """N-граф на кольце: внешняя и внутренняя граничные окружности, обе против часовой стрелки."""

    outer: tuple[int, ...] = ()
    inner: tuple[int, ...] = ()

    def rings(self) -> list[tuple[tuple[int, ...], bool]]:
        return [(self.outer, False), (self.inner, True)]

    def conjugated(self) -> "AnnularNGraph":
        return replace(self, **self.colored(lambda color: self.sheets - color))

    @property
    def interior(self) -> list[Vertex]:
        return [vertex for vertex in self.vertices.values() if vertex.kind != BOUNDARY]

    def to_dict(self) -> dict:
        return {**self._base_dict(), "outer": list(self.outer), "inner": list(self.inner)}


def _ring_word(graph: EmbeddedGraph, ring: Iterable[int]) -> BraidWord:
    letters = [graph.edges[graph.vertices[vertex].rot[0]].color for vertex in ring]
    return BraidWord(graph.sheets, tuple(letters))


def boundary_word(graph) -> BraidWord:
    """Слово на границе диска: σ_c для каждой граничной точки цвета c, против часовой стрелки."""
    graph = getattr(graph, "graph", graph)
    if isinstance(graph, AnnularNGraph):
        error_msg = _("Annular N-graphs have two boundary words, use boundary_words_annulus")
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return _ring_word(graph, graph.boundary)


def boundary_words_annulus(annulus: AnnularNGraph) -> tuple[BraidWord, BraidWord]:
    """(внешнее слово, внутреннее слово)."""
    return _ring_word(annulus, annulus.outer), _ring_word(annulus, annulus.inner)


def is_free_sufficient(graph) -> bool:
    """Достаточное условие свободы: каждый одноцветный подграф - лес, и каждое дерево касается границы."""
    graph = getattr(graph, "graph", graph)
    boundary = {vertex.id for vertex in graph.vertices.values() if vertex.kind == BOUNDARY}
    for color in range(1, graph.sheets):
        subgraph = graph.color_subgraph(color)
        if not subgraph.number_of_nodes():
            continue
        if not nx.is_forest(subgraph):
            return False
        if any(not boundary & component for component in nx.connected_components(subgraph)):
            return False
    return True


def rotate(item, steps: int):
    return item.rotated(steps)


def conjugate(item):
    """Сопряжение: цвет c ↦ N − c, вращения и граница не меняются."""
    return item.conjugated()


def graph_from_dict(data: dict) -> NGraph | AnnularNGraph:
    """Граф из JSON-словаря; полуребро h принадлежит ребру h // 2 со стороны h % 2."""
    half_owner: dict[int, int] = {}
    vertices = {}
    for item in data["vertices"]:
        rot = []
        for half in item["rot"]:
            if half in half_owner:
                _fail(format_lazy(_("Half-edge {half} is used twice"), half=half))
            half_owner[half] = item["id"]
            rot.append(half // 2)
        vertices[item["id"]] = Vertex(item["id"], item["kind"], tuple(item["colors"]), tuple(rot))
    edges = {}
    for item in data["edges"]:
        label = item["id"]
        if list(item["ends"]) != [2 * label, 2 * label + 1]:
            _fail(format_lazy(_("Edge {id} must own half-edges {first} and {second}"), id=label, first=2 * label, second=2 * label + 1))
        try:
            ends = (half_owner[2 * label], half_owner[2 * label + 1])
        except KeyError:
            _fail(format_lazy(_("Edge {id} is not attached at both half-edges"), id=label))
        edges[label] = Edge(label, item["color"], ends)
    if len(half_owner) != 2 * len(edges):
        _fail(_("Rotation lists mention half-edges of unknown edges"))
    if "inner" in data or "outer" in data:
        return AnnularNGraph(
            data["sheets"], vertices, edges, tuple(data.get("outer", ())), tuple(data.get("inner", ()))
        )
    return NGraph(data["sheets"], vertices, edges, tuple(data.get("boundary", ())))


class GraphEditor:
    """Изменяемая рабочая копия графа для локальных перестроек; build() снова проверяет граф."""

    def __init__(self, graph: EmbeddedGraph | None = None, sheets: int | None = None):
        self.sheets = graph.sheets if graph is not None else sheets
        self.kinds: dict[int, str] = {}
        self.colors: dict[int, tuple[int, ...]] = {}
        self.rot: dict[int, list[int]] = {}
        self.ends: dict[int, list[int]] = {}
        self.edge_colors: dict[int, int] = {}
        if graph is not None:
            for vertex in graph.vertices.values():
                self.kinds[vertex.id], self.colors[vertex.id] = vertex.kind, vertex.colors
                self.rot[vertex.id] = list(vertex.rot)
            for edge in graph.edges.values():
                self.ends[edge.id], self.edge_colors[edge.id] = list(edge.ends), edge.color
        self._next_vertex = max(self.rot, default=-1) + 1
        self._next_edge = max(self.ends, default=-1) + 1

    def add_vertex(self, kind: str, colors: tuple[int, ...], rot: Iterable[int] = ()) -> int:
        vertex = self._next_vertex
        self._next_vertex += 1
        self.kinds[vertex], self.colors[vertex], self.rot[vertex] = kind, tuple(colors), list(rot)
        return vertex

    def add_edge(self, color: int, first: int | None = None, second: int | None = None) -> int:
        edge = self._next_edge
        self._next_edge += 1
        self.ends[edge], self.edge_colors[edge] = [first, second], color
        return edge

    def absorb(self, graph: EmbeddedGraph, vertex_shift: int, edge_shift: int) -> None:
        """Добавить копию graph, сдвинув номера вершин и рёбер."""
        for vertex in graph.vertices.values():
            label = vertex.id + vertex_shift
            self.kinds[label], self.colors[label] = vertex.kind, vertex.colors
            self.rot[label] = [edge + edge_shift for edge in vertex.rot]
        for edge in graph.edges.values():
            label = edge.id + edge_shift
            self.ends[label] = [end + vertex_shift for end in edge.ends]
            self.edge_colors[label] = edge.color
        self._next_vertex = max(self.rot, default=-1) + 1
        self._next_edge = max(self.ends, default=-1) + 1

    def set_rot(self, vertex: int, rot: Iterable[int]) -> None:
        self.rot[vertex] = list(rot)

    def move_end(self, edge: int, old: int, new: int) -> None:
        ends = self.ends[edge]
        ends[ends.index(old)] = new

    def other(self, edge: int, vertex: int) -> int:
        first, second = self.ends[edge]
        return second if first == vertex else first

    def remove_vertex(self, vertex: int) -> None:
        for table in (self.kinds, self.colors, self.rot):
            del table[vertex]

    def remove_edge(self, edge: int) -> None:
        del self.ends[edge], self.edge_colors[edge]

    def replace_in_rot(self, vertex: int, old: int, new: int) -> None:
        around = self.rot[vertex]
        around[around.index(old)] = new

    def frozen_parts(self) -> dict:
        vertices = {
            vertex: Vertex(vertex, self.kinds[vertex], self.colors[vertex], tuple(self.rot[vertex]))
            for vertex in sorted(self.rot)
        }
        edges = {edge: Edge(edge, self.edge_colors[edge], tuple(self.ends[edge])) for edge in sorted(self.ends)}
        return {"sheets": self.sheets, "vertices": vertices, "edges": edges}

    def build(self, cls=NGraph, **rings):
        return cls(**self.frozen_parts(), **rings)


class Sketch:
    """Эскиз N-графа по координатам.

    Порядок рёбер у вершины и порядок граничных точек (по углу от начала
    координат, отсчитанному от start) вычисляются по геометрии.

    Примеры:
        >>> sketch = Sketch(2)
        >>> u, v = sketch.trivalent(1, 0, 0), sketch.trivalent(1, 1, 0)
        >>> edge = sketch.edge(u, v, 1)
        >>> for angle in (150, 210):
        ...     leg = sketch.leg(u, angle, 1)
        >>> for angle in (30, 330):
        ...     leg = sketch.leg(v, angle, 1)
        >>> len(sketch.build().boundary)
        4
    """

    def __init__(self, sheets: int):
        self.sheets = sheets
        self.points: dict[int, tuple[float, float]] = {}
        self.kinds: dict[int, str] = {}
        self.colors: dict[int, tuple[int, ...]] = {}
        self.ends: dict[int, tuple[int, int]] = {}
        self.edge_colors: dict[int, int] = {}

    def vertex(self, kind: str, colors: tuple[int, ...], x: float, y: float) -> int:
        vertex = len(self.points)
        self.points[vertex], self.kinds[vertex], self.colors[vertex] = (x, y), kind, tuple(colors)
        return vertex

    def trivalent(self, color: int, x: float, y: float) -> int:
        return self.vertex(TRIVALENT, (color,), x, y)

    def hexagon(self, color: int, x: float, y: float) -> int:
        return self.vertex(HEXAGONAL, (color, color + 1), x, y)

    def crossing(self, colors: tuple[int, int], x: float, y: float) -> int:
        return self.vertex(CROSSING, tuple(sorted(colors)), x, y)

    def boundary(self, color: int, x: float, y: float) -> int:
        return self.vertex(BOUNDARY, (color,), x, y)

    def edge(self, first: int, second: int, color: int) -> int:
        edge = len(self.ends)
        self.ends[edge], self.edge_colors[edge] = (first, second), color
        return edge

    def leg(self, vertex: int, angle: float, color: int) -> int:
        """Ребро от вершины к граничной точке далеко по лучу под углом angle (в градусах)."""
        x, y = self.points[vertex]
        radians = math.radians(angle)
        tip = self.boundary(color, x + LEG_REACH * math.cos(radians), y + LEG_REACH * math.sin(radians))
        return self.edge(vertex, tip, color)

    def _direction(self, vertex: int, edge: int) -> float:
        first, second = self.ends[edge]
        other = second if first == vertex else first
        (x, y), (u, v) = self.points[vertex], self.points[other]
        return math.atan2(v - y, u - x) % math.tau

    def build(self, start: float = 0.0) -> NGraph:
        incident: dict[int, list[int]] = {vertex: [] for vertex in self.points}
        for edge, (first, second) in self.ends.items():
            incident[first].append(edge)
            incident[second].append(edge)
        vertices = {
            vertex: Vertex(
                vertex,
                self.kinds[vertex],
                self.colors[vertex],
                tuple(sorted(incident[vertex], key=lambda edge: self._direction(vertex, edge))),
            )
            for vertex in self.points
        }
        edges = {edge: Edge(edge, self.edge_colors[edge], ends) for edge, ends in self.ends.items()}
        offset = math.radians(start)

        def polar(vertex: int) -> float:
            x, y = self.points[vertex]
            return (math.atan2(y, x) - offset) % math.tau

        boundary = tuple(sorted((vertex for vertex in self.points if self.kinds[vertex] == BOUNDARY), key=polar))
        return NGraph(self.sheets, vertices, edges, boundary)
