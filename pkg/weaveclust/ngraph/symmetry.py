"""Изоморфизмы N-графов, согласованные с границей, и проверка симметрий."""

import logging
from collections import deque
from dataclasses import dataclass

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import MalformedInput
from weaveclust.ngraph.cycles import NGraphWithCycles
from weaveclust.ngraph.graph import NGraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Isomorphism:
    """Биекции вершин и рёбер; граничная точка i переходит в точку (i + offset) mod m."""

    vertices: dict[int, int]
    edges: dict[int, int]
    offset: int

    def image(self, edges) -> tuple[int, ...]:
        return tuple(sorted(self.edges[edge] for edge in edges))


def _align(first: NGraph, second: NGraph, offset: int) -> Isomorphism | None:
    size = len(first.boundary)
    vertex_map: dict[int, int] = {}
    edge_map: dict[int, int] = {}
    queue = deque()
    for position, vertex in enumerate(first.boundary):
        image = second.boundary[(position + offset) % size]
        vertex_map[vertex] = image
        queue.append((vertex, first.vertices[vertex].rot[0], second.vertices[image].rot[0]))
    used_vertices, used_edges = set(vertex_map.values()), set()
    while queue:
        vertex_id, anchor, anchor_image = queue.popleft()
        source, target = first.vertices[vertex_id], second.vertices[vertex_map[vertex_id]]
        if (source.kind, source.colors, source.degree) != (target.kind, target.colors, target.degree):
            return None
        start, start_image = source.rot.index(anchor), target.rot.index(anchor_image)
        for step in range(source.degree):
            edge = source.rot[(start + step) % source.degree]
            image = target.rot[(start_image + step) % source.degree]
            if edge in edge_map:
                if edge_map[edge] != image:
                    return None
                continue
            if image in used_edges or first.edges[edge].color != second.edges[image].color:
                return None
            edge_map[edge] = image
            used_edges.add(image)
            neighbour = first.edges[edge].other(vertex_id)
            neighbour_image = second.edges[image].other(target.id)
            if neighbour in vertex_map:
                if vertex_map[neighbour] != neighbour_image:
                    return None
                continue
            if neighbour_image in used_vertices:
                return None
            vertex_map[neighbour] = neighbour_image
            used_vertices.add(neighbour_image)
            queue.append((neighbour, edge, image))
    if len(vertex_map) != len(first.vertices) or len(edge_map) != len(first.edges):
        return None
    return Isomorphism(vertex_map, edge_map, offset)


def find_isomorphism(first, second, offset: int | None = None) -> Isomorphism | None:
    """Изоморфизм, переносящий границу циклическим сдвигом; offset=None перебирает все сдвиги.

    Вершины, недостижимые от границы, не сопоставляются: такой граф считается неизоморфным.
    """
    first, second = getattr(first, "graph", first), getattr(second, "graph", second)
    if (
        first.sheets != second.sheets
        or len(first.boundary) != len(second.boundary)
        or len(first.vertices) != len(second.vertices)
        or len(first.edges) != len(second.edges)
    ):
        return None
    size = len(first.boundary)
    if not size:
        return Isomorphism({}, {}, 0) if not first.vertices else None
    offsets = range(size) if offset is None else (offset % size,)
    for candidate in offsets:
        found = _align(first, second, candidate)
        if found is not None:
            return found
    return None


def cycle_images(isomorphism: Isomorphism, source: NGraphWithCycles, target: NGraphWithCycles) -> list[int | None]:
    """Для каждого цикла source - номер цикла target с тем же образом рёбер или None."""
    index = {cycle.edges: position for position, cycle in enumerate(target.cycles)}
    return [index.get(isomorphism.image(cycle.edges)) for cycle in source.cycles]


def _matches_cycles(isomorphism: Isomorphism, first: NGraphWithCycles, second: NGraphWithCycles) -> bool:
    images = cycle_images(isomorphism, first, second)
    return None not in images and sorted(images) == list(range(len(second.cycles)))


def is_isomorphic(first, second, offset: int | None = None) -> bool:
    """Изоморфизм графов; для графов с циклами образы циклов должны быть ровно циклами второго графа."""
    if not isinstance(first, NGraphWithCycles) or not isinstance(second, NGraphWithCycles):
        return find_isomorphism(first, second, offset) is not None
    size = len(first.graph.boundary)
    offsets = range(max(size, 1)) if offset is None else (offset,)
    for candidate in offsets:
        found = find_isomorphism(first, second, candidate)
        if found is not None and _matches_cycles(found, first, second):
            return True
    return False


@dataclass(frozen=True)
class Symmetry:
    """Поворот границы на steps позиций, при необходимости сопряжение цветов и ожидаемая перестановка циклов."""

    steps: int = 0
    conjugate: bool = False
    permutation: tuple[int, ...] | None = None


def is_invariant(item: NGraphWithCycles, symmetry: Symmetry) -> bool:
    """Существует изоморфизм образа item в item с нулевым сдвигом, переводящий циклы согласно permutation."""
    transformed = item.rotated(symmetry.steps)
    if symmetry.conjugate:
        transformed = transformed.conjugated()
    found = find_isomorphism(transformed, item, 0)
    if found is None:
        return False
    images = cycle_images(found, transformed, item)
    if None in images:
        return False
    if symmetry.permutation is None:
        return sorted(images) == list(range(len(item.cycles)))
    if len(symmetry.permutation) != len(item.cycles):
        error_msg = format_lazy(
            _("Cycle permutation has {size} entries for {count} cycles"),
            size=len(symmetry.permutation),
            count=len(item.cycles),
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return images == list(symmetry.permutation)
