"""Кольцевые N-графы: элементарные кольца R0 и RIII, склейка с диском и Кокстеровы прокладки.

Кольцо склеивается с диском (или другим кольцом) по внутренней окружности:
граничная точка i внутренней окружности совпадает с граничной точкой i
приклеиваемого графа. Номера вершин и рёбер внутреннего графа сохраняются.
"""

import logging
from dataclasses import replace

import networkx as nx
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.braids import BraidEquivalence, BraidWord, braid_equivalent, conjugate_word, family_word
from weaveclust.exceptions import BoundaryMismatch, MalformedInput, SearchFailure, UnsupportedConfiguration
from weaveclust.ngraph.cycles import CycleSpec, NGraphWithCycles
from weaveclust.ngraph.families import build_affine_d
from weaveclust.ngraph.graph import (
    BOUNDARY,
    CROSSING,
    HEXAGONAL,
    AnnularNGraph,
    EmbeddedGraph,
    GraphEditor,
    NGraph,
    boundary_word,
    boundary_words_annulus,
)

logger = logging.getLogger(__name__)

PADDING_FAMILIES = ("A", "tripod", "affine_d")


def _reject(error_msg, error=MalformedInput):
    logger.warning(error_msg)
    return error(error_msg)


def _ring_fields(graph: EmbeddedGraph) -> dict:
    if isinstance(graph, AnnularNGraph):
        return {"outer": graph.outer, "inner": graph.inner}
    return {"boundary": graph.boundary}


def _assemble(sheets: int, inner_letters, outer_letters, arcs, centre=None) -> AnnularNGraph:
    """Кольцо из дуг (внутренняя позиция, внешняя позиция) и не более чем одной внутренней вершины.

    centre - (вид, цвета, спицы), спица - ("outer" | "inner", позиция) в порядке против часовой стрелки.
    """
    editor = GraphEditor(sheets=sheets)
    rings = {
        "outer": [editor.add_vertex(BOUNDARY, (color,)) for color in outer_letters],
        "inner": [editor.add_vertex(BOUNDARY, (color,)) for color in inner_letters],
    }
    letters = {"outer": outer_letters, "inner": inner_letters}
    for start, finish in arcs:
        edge = editor.add_edge(inner_letters[start], rings["inner"][start], rings["outer"][finish])
        editor.set_rot(rings["inner"][start], [edge])
        editor.set_rot(rings["outer"][finish], [edge])
    if centre is not None:
        kind, colors, spokes = centre
        hub = editor.add_vertex(kind, colors)
        around = []
        for ring, position in spokes:
            tip = rings[ring][position]
            edge = editor.add_edge(letters[ring][position], hub, tip)
            editor.set_rot(tip, [edge])
            around.append(edge)
        editor.set_rot(hub, around)
    return editor.build(AnnularNGraph, outer=tuple(rings["outer"]), inner=tuple(rings["inner"]))


def trivial_annulus(word: BraidWord) -> AnnularNGraph:
    """Кольцо из радиальных дуг: внутреннее и внешнее слова равны word."""
    return rotation_annulus(word, 0)


def rotation_annulus(word: BraidWord, shift: int) -> AnnularNGraph:
    """Дуги из внутренней точки q во внешнюю (q + shift) mod m; внешнее слово - word.rotated(−shift).

    Склейка с диском G даёт rotate(G, shift).
    """
    size = len(word)
    arcs = [(position, (position + shift) % size) for position in range(size)]
    outer = word.rotated(-shift).letters if size else ()
    return _assemble(word.strands, word.letters, outer, arcs)


def elementary_annulus(word: BraidWord, kind: str, position: int) -> AnnularNGraph:
    """Элементарное кольцо с внутренним словом word.

    R0 - точка пересечения, меняющая местами буквы position, position+1 (|i − j| ≥ 2);
    RIII - шестивалентная точка, переводящая σᵢσⱼσᵢ на позиции position в σⱼσᵢσⱼ.
    Позиции берутся по модулю длины слова.
    """
    size, letters = len(word), word.letters
    width = {"R0": 2, "RIII": 3}.get(kind)
    if width is None:
        raise _reject(format_lazy(_("Unknown elementary annulus '{kind}'"), kind=kind))
    if size < width:
        raise _reject(format_lazy(_("Word {word} is too short for {kind}"), word=str(word), kind=kind))
    window = [(position + step) % size for step in range(width)]
    outer = list(letters)
    if kind == "R0":
        first, second = (letters[place] for place in window)
        if abs(first - second) < 2:
            raise _reject(format_lazy(_("Letters s{first} s{second} do not commute"), first=first, second=second))
        outer[window[0]], outer[window[1]] = second, first
        spokes = [("outer", window[0]), ("outer", window[1]), ("inner", window[1]), ("inner", window[0])]
        centre = (CROSSING, tuple(sorted((first, second))), spokes)
    else:
        first, middle, last = (letters[place] for place in window)
        if first != last or abs(first - middle) != 1:
            raise _reject(
                format_lazy(
                    _("Letters s{first} s{middle} s{last} admit no braid move"), first=first, middle=middle, last=last
                )
            )
        outer[window[0]], outer[window[1]], outer[window[2]] = middle, first, middle
        spokes = [("outer", place) for place in window] + [("inner", place) for place in reversed(window)]
        low = min(first, middle)
        centre = (HEXAGONAL, (low, low + 1), spokes)
    arcs = [(place, place) for place in range(size) if place not in window]
    return _assemble(word.strands, letters, tuple(outer), arcs, centre)


def _chains(editor: GraphEditor, joints: list[tuple[int, int]]) -> nx.MultiGraph:
    """Граф склейки: вершины - рёбра, касающиеся швов, рёбра - швы."""
    chains = nx.MultiGraph()
    for outside, inside in joints:
        chains.add_edge(editor.rot[outside][0], editor.rot[inside][0], joint=(outside, inside))
    return chains


def concatenate(annulus: AnnularNGraph, inner):
    """Склейка annulus ∘ inner; inner - диск, кольцо или граф с циклами.

    Внутреннее слово кольца должно совпадать с граничным (внешним) словом inner.
    Цепочки рёбер, проходящие через швы, сливаются в одно ребро с наименьшим
    номером внутреннего графа. Циклы inner переносятся без изменений.
    """
    cycles = getattr(inner, "cycles", None)
    graph = getattr(inner, "graph", inner)
    annular = isinstance(graph, AnnularNGraph)
    ring = graph.outer if annular else graph.boundary
    glued = boundary_words_annulus(annulus)[1]
    expected = boundary_words_annulus(graph)[0] if annular else boundary_word(graph)
    if annulus.sheets != graph.sheets or glued != expected:
        raise _reject(
            format_lazy(_("Annulus inner word {glued} does not match boundary {expected}"), glued=str(glued), expected=str(expected)),
            BoundaryMismatch,
        )
    vertex_shift = max(graph.vertices, default=-1) + 1
    edge_shift = max(graph.edges, default=-1) + 1
    editor = GraphEditor(graph)
    editor.absorb(annulus, vertex_shift, edge_shift)
    joints = [(vertex + vertex_shift, ring[position]) for position, vertex in enumerate(annulus.inner)]
    seams = {vertex for pair in joints for vertex in pair}
    renamed = {}
    chains = _chains(editor, joints)
    for component in nx.connected_components(chains):
        piece = chains.subgraph(component)
        if piece.number_of_edges() >= piece.number_of_nodes():
            raise _reject(_("Gluing closes a chain of edges into a loop"), UnsupportedConfiguration)
        kept = min(component, key=lambda edge: (edge >= edge_shift, edge))
        tips = []
        for edge in component:
            tips.extend((edge, end) for end in editor.ends[edge] if end not in seams)
        (first, start), (second, finish) = tips
        if start == finish:
            raise _reject(_("Gluing would create a loop edge"), UnsupportedConfiguration)
        editor.replace_in_rot(start, first, kept)
        editor.replace_in_rot(finish, second, kept)
        for edge in component:
            renamed[edge] = kept
            if edge != kept:
                editor.remove_edge(edge)
        editor.ends[kept] = [start, finish]
    for vertex in seams:
        editor.remove_vertex(vertex)
    outer = tuple(vertex + vertex_shift for vertex in annulus.outer)
    if annular:
        result = editor.build(AnnularNGraph, outer=outer, inner=graph.inner)
    else:
        result = editor.build(NGraph, boundary=outer)
    if cycles is None:
        return result
    moved = tuple(CycleSpec(tuple(renamed.get(edge, edge) for edge in cycle.edges), cycle.sign) for cycle in cycles)
    return NGraphWithCycles(result, moved)


def inverse(annulus: AnnularNGraph) -> AnnularNGraph:
    """Отражение кольца относительно средней окружности: окружности меняются местами, вращения обращаются."""
    vertices = {label: replace(vertex, rot=tuple(reversed(vertex.rot))) for label, vertex in annulus.vertices.items()}
    return AnnularNGraph(annulus.sheets, vertices, dict(annulus.edges), outer=annulus.inner, inner=annulus.outer)


def _consecutive(rot: tuple[int, ...], members: list[int]) -> bool:
    positions = {rot.index(edge) for edge in members}
    size = len(rot)
    return any(positions == {(start + step) % size for step in range(len(members))} for start in positions)


def _cancellation(graph: EmbeddedGraph, u: int, v: int) -> list[tuple[int, int]] | None:
    """Пары (ребро у u, ребро у v), которые сливаются при сокращении u и v, или None."""
    first, second = graph.vertices[u], graph.vertices[v]
    if first.kind != second.kind or first.colors != second.colors:
        return None
    shared = [edge for edge in first.rot if graph.edges[edge].other(u) == v]
    if len(shared) != first.degree // 2 or not _consecutive(first.rot, shared) or not _consecutive(second.rot, shared):
        return None
    joins = []
    for edge in first.rot:
        if edge in shared:
            continue
        partner = second.opposite(first.opposite(edge))
        if graph.edges[edge].other(u) == graph.edges[partner].other(v):
            return None
        joins.append((edge, partner))
    return joins


def cleanup(graph: EmbeddedGraph) -> EmbeddedGraph:
    """Жадное сокращение пар шестивалентных точек, соединённых тремя подряд идущими рёбрами,
    и пар точек пересечения, соединённых двумя."""
    cancelled = 0
    while True:
        found = None
        for edge in sorted(graph.edges.values(), key=lambda item: item.id):
            u, v = edge.ends
            if graph.vertices[u].kind not in (HEXAGONAL, CROSSING):
                continue
            joins = _cancellation(graph, u, v)
            if joins is not None:
                found = (u, v, joins)
                break
        if found is None:
            break
        u, v, joins = found
        editor = GraphEditor(graph)
        for edge, partner in joins:
            far = editor.other(partner, v)
            editor.move_end(edge, u, far)
            editor.replace_in_rot(far, partner, edge)
            editor.remove_edge(partner)
        for label in [label for label, ends in editor.ends.items() if set(ends) == {u, v}]:
            editor.remove_edge(label)
        editor.remove_vertex(u)
        editor.remove_vertex(v)
        graph = editor.build(type(graph), **_ring_fields(graph))
        cancelled += 1
    logger.debug(format_lazy(_("Cancelled {count} vertex pairs"), count=cancelled))
    return graph


def is_trivial(annulus: AnnularNGraph, shift: int = 0) -> bool:
    """Нет внутренних вершин и каждая внутренняя точка q соединена с внешней точкой (q + shift) mod m."""
    size = len(annulus.inner)
    if len(annulus.outer) != size or any(vertex.kind != BOUNDARY for vertex in annulus.vertices.values()):
        return False
    for position, vertex in enumerate(annulus.inner):
        (edge,) = annulus.vertices[vertex].rot
        if annulus.edges[edge].other(vertex) != annulus.outer[(position + shift) % size]:
            return False
    return True


def trace_annulus(equivalence: BraidEquivalence) -> AnnularNGraph:
    """Кольцо, реализующее цепочку шагов: внутреннее слово - source, внешнее - target.

    commute ↦ R0, braid ↦ RIII, rotate / unrotate ↦ поворот на одну позицию.
    """
    if equivalence.result is not True:
        raise _reject(
            format_lazy(
                _("No braid trace from {source} to {target}"), source=str(equivalence.source), target=str(equivalence.target)
            ),
            SearchFailure,
        )
    strands, letters = equivalence.source.strands, equivalence.source.letters
    current = trivial_annulus(equivalence.source)
    for move in equivalence.trace:
        word = BraidWord(strands, letters)
        match move.kind:
            case "commute":
                step = elementary_annulus(word, "R0", move.position)
            case "braid":
                step = elementary_annulus(word, "RIII", move.position)
            case "rotate":
                step = rotation_annulus(word, -1)
            case _:
                step = rotation_annulus(word, 1)
        current = concatenate(step, current)
        letters = move.apply(letters)
    return current


def coxeter_padding(family: str, *params, conjugated: bool = False, budget: int | None = None) -> AnnularNGraph:
    """Кокстерова прокладка семейства.

    A(n) - поворот на одну позицию слова σ₁^{n+3}; tripod(a, b, c) - кольцо из цепочки
    шагов от сопряжённого слова β(a,b,c) к β(a,b,c); affine_d(n) - кольцо от
    граничного слова G(D̃ₙ) к β(D̃ₙ). conjugated=True возвращает сопряжённую прокладку.
    """
    match family:
        case "A":
            (n,) = params
            padding = rotation_annulus(family_word("beta", "A", n), 1)
        case "tripod":
            word = family_word("beta", *params)
            padding = trace_annulus(braid_equivalent(conjugate_word(word), word, cyclic=True, budget=budget))
        case "affine_d":
            (n,) = params
            target = family_word("beta", "Dtilde", n)
            source = boundary_word(build_affine_d(n))
            steps = next((step for step in range(len(source)) if source.rotated(step) == target), None)
            if steps is not None:
                padding = rotation_annulus(source, -steps)
            else:
                padding = trace_annulus(braid_equivalent(source, target, cyclic=True, budget=budget))
        case _:
            raise _reject(format_lazy(_("Unknown padding family '{family}'"), family=family))
    logger.info(
        format_lazy(
            _("Built padding {family}{params} with {count} interior vertices"),
            family=family,
            params=tuple(params),
            count=sum(vertex.kind != BOUNDARY for vertex in padding.vertices.values()),
        )
    )
    return padding.conjugated() if conjugated else padding
