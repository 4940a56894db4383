"""Текстовый вывод в формате Graphviz DOT. Только для отображения: обмен данными идёт через JSON."""

from typing import Iterable

from weaveclust.exchange import ExchangeGraph
from weaveclust.mutation import ExchangeMatrix, Quiver
from weaveclust.ngraph.graph import BOUNDARY, EmbeddedGraph

PALETTE = ("black", "blue", "red", "darkgreen", "orange", "purple", "brown", "magenta")
SHAPES = {"trivalent": "point", "hexagonal": "hexagon", "crossing": "diamond", BOUNDARY: "circle"}


def _quote(text) -> str:
    return '"{}"'.format(str(text).replace('"', r"\""))


def _join(lines: Iterable[str]) -> str:
    return "\n".join(lines) + "\n"


def _quiver_lines(quiver: Quiver) -> Iterable[str]:
    yield "digraph quiver {"
    for vertex in range(quiver.m):
        shape = "circle" if vertex < quiver.n else "box"
        yield f"  {vertex + 1} [shape={shape}];"
    for i, j, multiplicity in quiver.arrows:
        label = f" [label={multiplicity}]" if multiplicity > 1 else ""
        yield f"  {i + 1} -> {j + 1}{label};"
    yield "}"


def quiver_dot(quiver: Quiver) -> str:
    """Колчан: мутируемые вершины - круги, замороженные - прямоугольники, кратность - подпись стрелки."""
    return _join(_quiver_lines(quiver))


def matrix_dot(matrix: ExchangeMatrix) -> str:
    """Оснащённый колчан матрицы обмена: стрелка i → j при b_ij > 0 с подписью "b_ij,−b_ji"."""
    entries = matrix.entries
    lines = ["digraph valued {"]
    for vertex in range(matrix.m):
        shape = "circle" if vertex < matrix.n else "box"
        lines.append(f"  {vertex + 1} [shape={shape}];")
    for i in range(matrix.m):
        for j in range(matrix.n):
            value = int(entries[i, j])
            if i >= matrix.n and value:
                tail, head = (i, j) if value > 0 else (j, i)
                lines.append(f"  {tail + 1} -> {head + 1} [label={abs(value)}];")
            elif value > 0:
                label = _quote(f"{value},{-int(entries[j, i])}")
                lines.append(f"  {i + 1} -> {j + 1} [label={label}];")
    lines.append("}")
    return _join(lines)


def exchange_graph_dot(graph: ExchangeGraph) -> str:
    """Граф обмена; вершины подписаны номерами в порядке обхода, рёбра - индексами мутаций."""
    positions = graph.index_of()
    lines = ["graph exchange {", "  node [shape=point];"]
    seen = set()
    for source, edges in graph.edges.items():
        for i, edge in enumerate(edges):
            if edge is None:
                continue
            pair = (positions[source], i, positions[edge.target], edge.index)
            if (pair[2], pair[3], pair[0], pair[1]) in seen:
                continue
            seen.add(pair)
            lines.append(f"  {pair[0] + 1} -- {pair[2] + 1} [label={i + 1}];")
    lines.append("}")
    return _join(lines)


def ngraph_dot(item) -> str:
    """N-граф: цвет ребра - цвет графа Gᵢ, рёбра циклов утолщены и подписаны номером цикла."""
    graph: EmbeddedGraph = getattr(item, "graph", item)
    owners = {}
    for number, cycle in enumerate(getattr(item, "cycles", ())):
        for edge in cycle.edges:
            owners[edge] = number
    lines = ["graph ngraph {", "  layout=neato;"]
    for vertex in sorted(graph.vertices.values(), key=lambda value: value.id):
        lines.append(f"  v{vertex.id} [shape={SHAPES[vertex.kind]}, label={_quote(vertex.id)}];")
    for edge in sorted(graph.edges.values(), key=lambda value: value.id):
        attributes = [f"color={PALETTE[edge.color % len(PALETTE)]}"]
        if edge.id in owners:
            attributes += ["penwidth=3", f"label={_quote(f'γ{owners[edge.id] + 1}')}"]
        first, second = edge.ends
        lines.append(f"  v{first} -- v{second} [{', '.join(attributes)}];")
    lines.append("}")
    return _join(lines)
