"""Лежандровы мутации N-графов: локальные перестройки с переносом циклов.

Реализованы три фиксированных правила: переворот I-цикла, протаскивание
трёхвалентной вершины через шестивалентную (Move II) и перестройка короткого
Y-цикла. Длинные I-циклы и длинные плечи Y-циклов сначала укорачиваются Move II.
Всё, что выходит за эти правила, поднимает UnsupportedConfiguration.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np
from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import NotBipartite, UnsupportedConfiguration
from weaveclust.mutation import Quiver, mutate_quiver
from weaveclust.ngraph.cycles import (
    I_CYCLE,
    LONG_I,
    Y_KINDS,
    CycleShape,
    NGraphWithCycles,
    quiver_from_cycles,
)
from weaveclust.ngraph.graph import HEXAGONAL, TRIVALENT, GraphEditor, NGraph

logger = logging.getLogger(__name__)


def _unsupported(error_msg) -> UnsupportedConfiguration:
    logger.info(error_msg)
    return UnsupportedConfiguration(error_msg)


def _rebuild(item: NGraphWithCycles, editor: GraphEditor, cycles) -> NGraphWithCycles:
    graph = editor.build(NGraph, boundary=item.graph.boundary)
    return NGraphWithCycles(graph, tuple(cycles))


def i_flip(item: NGraphWithCycles, k: int) -> NGraphWithCycles:
    """Мутация I-цикла e = (v₁, v₂).

    После поворота вращений к виду v₁ = (e, a, b), v₂ = (e, c, d) получаем
    v₁ = (e, b, c), v₂ = (e, d, a): рёбра a и c меняют конец, номера сохраняются.
    """
    shape = item.shape(k)
    if shape.kind != I_CYCLE:
        raise _unsupported(format_lazy(_("Cycle {k} is not an I-cycle"), k=k + 1))
    graph = item.graph
    (edge,) = item.cycles[k].edges
    first, second = graph.edges[edge].ends
    _edge, a, b = graph.vertices[first].starting_at(edge)
    _edge, c, d = graph.vertices[second].starting_at(edge)
    if len({edge, a, b, c, d}) != 5:
        raise _unsupported(format_lazy(_("I-cycle {k} has no room for a flip"), k=k + 1))
    editor = GraphEditor(graph)
    editor.set_rot(first, (edge, b, c))
    editor.set_rot(second, (edge, d, a))
    editor.move_end(a, first, second)
    editor.move_end(c, second, first)
    return _rebuild(item, editor, item.cycles)


def move_two(item: NGraphWithCycles, tip: int, hexagon: int, target: int) -> NGraphWithCycles:
    """Move II: трёхвалентная вершина tip протаскивается через шестивалентную hexagon.

    Цикл target проходит hexagon насквозь по ребру tip–hexagon и после хода
    становится на одно ребро короче. Циклы, кончавшиеся в tip, и циклы,
    проходившие hexagon по другим хордам, получают новые рёбра.
    """
    graph = item.graph
    t, hub = graph.vertices[tip], graph.vertices[hexagon]
    if t.kind != TRIVALENT or hub.kind != HEXAGONAL:
        raise _unsupported(format_lazy(_("Move II needs a trivalent and a hexagonal vertex, got {tip} and {hub}"), tip=t.kind, hub=hub.kind))
    joins = [edge for edge in t.rot if hexagon in graph.edges[edge].ends]
    if len(joins) != 1:
        raise _unsupported(format_lazy(_("Vertices {tip} and {hub} are not joined by exactly one edge"), tip=tip, hub=hexagon))
    (link,) = joins
    _link, h1, h2, h3, h4, h5 = hub.starting_at(link)
    _link, x, z = t.starting_at(link)
    if len({link, h1, h2, h3, h4, h5, x, z}) != 8:
        raise _unsupported(_("Move II neighbourhood is not simple"))
    if not {link, h3} <= set(item.cycles[target].edges):
        raise _unsupported(format_lazy(_("Cycle {k} does not pass straight through {hub}"), k=target + 1, hub=hexagon))
    for index, cycle in enumerate(item.cycles):
        if index == target:
            continue
        members = set(cycle.edges)
        if link in members or h3 in members:
            raise _unsupported(format_lazy(_("Cycle {k} blocks Move II at {hub}"), k=index + 1, hub=hexagon))
        if members & {h1, h2, h4, h5} and not ({h1, h4} <= members or {h2, h5} <= members):
            raise _unsupported(format_lazy(_("Cycle {k} branches at {hub}"), k=index + 1, hub=hexagon))
    inner_color = graph.edges[link].color
    outer_color = next(color for color in hub.colors if color != inner_color)

    editor = GraphEditor(graph)
    p = editor.add_vertex(HEXAGONAL, hub.colors)
    q = editor.add_vertex(HEXAGONAL, hub.colors)
    r = editor.add_vertex(TRIVALENT, (outer_color,))
    straight = editor.add_edge(inner_color, p, q)
    curve = editor.add_edge(outer_color, p, q)
    p_leg = editor.add_edge(outer_color, p, r)
    q_leg = editor.add_edge(outer_color, q, r)
    editor.set_rot(p, (h4, h5, x, curve, straight, p_leg))
    editor.set_rot(q, (h2, q_leg, straight, curve, z, h1))
    editor.set_rot(r, (h3, p_leg, q_leg))
    for edge in (h4, h5):
        editor.move_end(edge, hexagon, p)
    for edge in (h1, h2):
        editor.move_end(edge, hexagon, q)
    editor.move_end(h3, hexagon, r)
    editor.move_end(x, tip, p)
    editor.move_end(z, tip, q)
    editor.remove_edge(link)
    editor.remove_vertex(tip)
    editor.remove_vertex(hexagon)

    cycles = []
    for index, cycle in enumerate(item.cycles):
        members = set(cycle.edges)
        if index == target:
            members.discard(link)
        else:
            if x in members:
                members.add(p_leg)
            if z in members:
                members.add(q_leg)
            if {h2, h5} <= members:
                members |= {curve, p_leg}
            if {h1, h4} <= members:
                members |= {curve, q_leg}
        cycles.append(replace(cycle, edges=tuple(members)))
    return _rebuild(item, editor, cycles)


def y_rewrite(item: NGraphWithCycles, k: int) -> NGraphWithCycles:
    """Мутация Y-цикла с короткими плечами.

    Узел O = (y₀, r₀, y₁, r₁, y₂, r₂) и концы Tᵢ = (yᵢ, pᵢ, qᵢ) заменяются
    шестивалентной O′, шестивалентными Hᵢ = (rᵢ, pᵢ₊₁, HᵢRᵢ₊₁, HᵢO′, HᵢRᵢ, qᵢ) и
    трёхвалентными Rᵢ другого цвета; новый цикл - три ребра O′Rᵢ.
    """
    shape = item.shape(k)
    if shape.kind not in Y_KINDS:
        raise _unsupported(format_lazy(_("Cycle {k} is not a Y-cycle"), k=k + 1))
    graph = item.graph
    ((centre, junction_arms),) = shape.junctions
    hub = graph.vertices[centre]
    arm_color = graph.edges[junction_arms[0]].color
    around = hub.starting_at(next(edge for edge in hub.rot if graph.edges[edge].color == arm_color))
    arms, sides = around[0::2], around[1::2]
    tips, outward = [], []
    for arm in arms:
        tip = graph.edges[arm].other(centre)
        if graph.vertices[tip].kind != TRIVALENT:
            raise _unsupported(format_lazy(_("Y-cycle {k} has a long arm"), k=k + 1))
        _arm, p_edge, q_edge = graph.vertices[tip].starting_at(arm)
        tips.append(tip)
        outward.append((p_edge, q_edge))
    external = list(sides) + [edge for pair in outward for edge in pair]
    if len(set(tips)) != 3 or len(set(external)) != 9 or set(external) & set(arms):
        raise _unsupported(format_lazy(_("Y-cycle {k} neighbourhood is not simple"), k=k + 1))
    for index, cycle in enumerate(item.cycles):
        if index != k and set(cycle.edges) & set(hub.rot):
            raise _unsupported(format_lazy(_("Cycle {other} passes the centre of Y-cycle {k}"), other=index + 1, k=k + 1))
    side_color = graph.edges[sides[0]].color

    editor = GraphEditor(graph)
    new_centre = editor.add_vertex(HEXAGONAL, hub.colors)
    hubs = [editor.add_vertex(HEXAGONAL, hub.colors) for _i in range(3)]
    feet = [editor.add_vertex(TRIVALENT, (side_color,)) for _i in range(3)]
    spokes = [editor.add_edge(side_color, new_centre, feet[i]) for i in range(3)]
    rays = [editor.add_edge(arm_color, new_centre, hubs[i]) for i in range(3)]
    forward = [editor.add_edge(side_color, hubs[i], feet[(i + 1) % 3]) for i in range(3)]
    backward = [editor.add_edge(side_color, hubs[i], feet[i]) for i in range(3)]
    editor.set_rot(new_centre, (spokes[0], rays[0], spokes[1], rays[1], spokes[2], rays[2]))
    for i in range(3):
        following = (i + 1) % 3
        p_next = outward[following][0]
        editor.set_rot(hubs[i], (sides[i], p_next, forward[i], rays[i], backward[i], outward[i][1]))
        editor.set_rot(feet[i], (spokes[i], forward[(i - 1) % 3], backward[i]))
        editor.move_end(sides[i], centre, hubs[i])
        editor.move_end(p_next, tips[following], hubs[i])
        editor.move_end(outward[i][1], tips[i], hubs[i])
    for arm in arms:
        editor.remove_edge(arm)
    for vertex in (centre, *tips):
        editor.remove_vertex(vertex)

    cycles = []
    for index, cycle in enumerate(item.cycles):
        if index == k:
            cycles.append(replace(cycle, edges=tuple(spokes)))
            continue
        members = set(cycle.edges)
        for i in range(3):
            p_edge, q_edge = outward[i]
            if p_edge in members:
                members.add(backward[(i - 1) % 3])
            if q_edge in members:
                members.add(forward[i])
        cycles.append(replace(cycle, edges=tuple(members)))
    return _rebuild(item, editor, cycles)


def _next_hop(item: NGraphWithCycles, tip: int, edge: int) -> int:
    neighbour = item.graph.edges[edge].other(tip)
    if item.graph.vertices[neighbour].kind != HEXAGONAL:
        raise _unsupported(format_lazy(_("Cannot push vertex {tip} through a {kind} point"), tip=tip, kind=item.graph.vertices[neighbour].kind))
    return neighbour


def shorten_long_i(item: NGraphWithCycles, k: int, anchor: int) -> NGraphWithCycles:
    """Укорачивание длинного I-цикла Move II со стороны конца, отличного от anchor."""
    while True:
        shape = item.shape(k)
        if shape.kind == I_CYCLE:
            return item
        if shape.kind != LONG_I:
            raise _unsupported(format_lazy(_("Cycle {k} changed shape while shortening"), k=k + 1))
        tip, edge = next((vertex, edge) for vertex, edge in shape.ends if vertex != anchor)
        item = move_two(item, tip, _next_hop(item, tip, edge), k)


def shorten_arms(item: NGraphWithCycles, k: int) -> NGraphWithCycles:
    """Укорачивание плеч Y-цикла до одного ребра."""
    while True:
        shape = item.shape(k)
        if shape.kind not in Y_KINDS:
            raise _unsupported(format_lazy(_("Cycle {k} changed shape while shortening"), k=k + 1))
        ((centre, _arms),) = shape.junctions
        long_arm = next(((vertex, edge) for vertex, edge in shape.ends if item.graph.edges[edge].other(vertex) != centre), None)
        if long_arm is None:
            return item
        tip, edge = long_arm
        item = move_two(item, tip, _next_hop(item, tip, edge), k)


def _mutate_long_i(item: NGraphWithCycles, k: int, shape: CycleShape) -> NGraphWithCycles:
    failure = None
    for anchor, _edge in reversed(shape.ends):
        try:
            return i_flip(shorten_long_i(item, k, anchor), k)
        except UnsupportedConfiguration as err:
            failure = err
    raise failure


def mutate(item: NGraphWithCycles, k: int) -> NGraphWithCycles:
    """Лежандрова мутация по циклу k; граница не меняется, классы "+"/"-" сбрасываются."""
    shape = item.shape(k)
    match shape.kind:
        case "I":
            result = i_flip(item, k)
        case "LongI":
            result = _mutate_long_i(item, k, shape)
        case "YUpper" | "YLower":
            result = y_rewrite(shorten_arms(item, k), k)
        case _:
            raise _unsupported(format_lazy(_("Mutation of a {kind}-cycle is not supported"), kind=shape.kind))
    return result.untagged()


def mutate_sequence(item: NGraphWithCycles, indices) -> NGraphWithCycles:
    for k in indices:
        item = mutate(item, k)
    return item


def legendrian_coxeter_mutation(item: NGraphWithCycles, inverse: bool = False) -> NGraphWithCycles:
    """μ_G: сначала циклы класса "-", затем "+" (inverse=True - в обратном порядке); классы сохраняются."""
    if not item.tagged:
        error_msg = _("Legendrian Coxeter mutation needs bipartite classes on every cycle")
        logger.warning(error_msg)
        raise NotBipartite(error_msg)
    minus = [index for index, cycle in enumerate(item.cycles) if cycle.sign == "-"]
    plus = [index for index, cycle in enumerate(item.cycles) if cycle.sign == "+"]
    order = plus + minus if inverse else minus + plus
    result = mutate_sequence(item, order)
    return result.with_signs(cycle.sign for cycle in item.cycles)


@dataclass
class SampledSequence:
    """Случайная последовательность поддерживаемых мутаций и совпадение колчанов после каждого шага."""

    indices: list[int] = field(default_factory=list)
    matches: bool = True
    skipped: list[int] = field(default_factory=list)
    failed: bool = False

    def to_dict(self) -> dict:
        return {
            "sequence": [k + 1 for k in self.indices],
            "matches": self.matches,
            "skipped": [k + 1 for k in self.skipped],
            "failed": self.failed,
        }


def sample_supported(item: NGraphWithCycles, length: int, rng: np.random.Generator) -> SampledSequence:
    """На каждом шаге берётся первый в случайном порядке индекс, для которого мутация и колчан вычислимы.

    Индексы, на которых мутация не поддержана, записываются в skipped.
    """
    sample = SampledSequence()
    expected: Quiver = quiver_from_cycles(item)
    for _step in range(length):
        for k in rng.permutation(len(item.cycles)).tolist():
            try:
                candidate = mutate(item, k)
                quiver = quiver_from_cycles(candidate)
            except UnsupportedConfiguration:
                sample.skipped.append(k)
                continue
            break
        else:
            sample.failed = True
            logger.warning(format_lazy(_("No supported mutation after {steps} steps"), steps=len(sample.indices)))
            return sample
        item = candidate
        expected = mutate_quiver(expected, k)
        sample.indices.append(k)
        if quiver != expected:
            sample.matches = False
            logger.warning(format_lazy(_("Quiver mismatch after sequence {sequence}"), sequence=[i + 1 for i in sample.indices]))
            return sample
    return sample


@dataclass
class EquivarianceReport:
    """Итог проверки эквивариантности.

    max_skipped - допустимое число пропущенных неподдержанных мутаций по всем
    последовательностям; None - пропуски только учитываются.
    """

    trials: int
    samples: list[SampledSequence]
    max_skipped: int | None = None

    @property
    def mismatches(self) -> int:
        return sum(not sample.matches for sample in self.samples)

    @property
    def failures(self) -> int:
        return sum(sample.failed for sample in self.samples)

    @property
    def skipped(self) -> int:
        return sum(len(sample.skipped) for sample in self.samples)

    @property
    def skipped_cycles(self) -> list[int]:
        return sorted({k for sample in self.samples for k in sample.skipped})

    @property
    def passed(self) -> bool:
        within_budget = self.max_skipped is None or self.skipped <= self.max_skipped
        return not self.mismatches and not self.failures and within_budget

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "mismatches": self.mismatches,
            "unsupported": self.failures,
            "skipped": self.skipped,
            "skipped_cycles": [k + 1 for k in self.skipped_cycles],
            "max_skipped": self.max_skipped,
            "passed": self.passed,
            "samples": [sample.to_dict() for sample in self.samples],
        }


def equivariance_check(
    item: NGraphWithCycles,
    trials: int | None = None,
    max_length: int = 6,
    seed: int | None = None,
    max_skipped: int | None = None,
) -> EquivarianceReport:
    """Ψ∘μ = μ∘Ψ на случайных последовательностях длины от 1 до max_length.

    Пропущенные неподдержанные мутации входят в отчёт; при заданном max_skipped
    их превышение делает проверку непройденной.
    """
    trials = settings.WEAVECLUST_TRIALS if trials is None else trials
    rng = np.random.default_rng(settings.WEAVECLUST_SEED if seed is None else seed)
    samples = []
    for _trial in range(trials):
        length = int(rng.integers(1, max_length + 1))
        samples.append(sample_supported(item, length, rng))
    report = EquivarianceReport(trials, samples, max_skipped)
    logger.info(
        format_lazy(
            _("Equivariance: {trials} trials, {mismatches} mismatches, {failures} unsupported, {skipped} skipped"),
            trials=trials,
            mismatches=report.mismatches,
            failures=report.failures,
            skipped=report.skipped,
        )
    )
    return report

