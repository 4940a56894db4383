"""Свёртки: действия конечных групп на вершинах, допустимость, свёрнутые матрицы и графы обмена."""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _
from networkx.utils import UnionFind

from weaveclust.dynkin import DynkinType, parse_type
from weaveclust.exceptions import MalformedInput, NotAdmissible
from weaveclust.exchange import ExchangeGraph, coxeter_power, explore
from weaveclust.mutation import ExchangeMatrix, Quiver, mutate_matrix, type_matrix
from weaveclust.rational import RationalFunction
from weaveclust.seeds import PCSeed, YSeed

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 24


@dataclass(frozen=True)
class GroupAction:
    """Конечная группа перестановок множества {0, …, degree−1}, заданная образующими.

    Образующая хранится как кортеж образов: g[i] - образ вершины i.
    """

    degree: int
    generators: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        generators = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", generators)
        for g in generators:
            if sorted(g) != list(range(self.degree)):
                error_msg = format_lazy(
                    _("Generator {g} is not a permutation of {degree} points"), g=g, degree=self.degree
                )
                logger.warning(error_msg)
                raise MalformedInput(error_msg)

    @classmethod
    def from_cycles(cls, degree: int, generators: Iterable[Iterable[Iterable[int]]]) -> "GroupAction":
        """Действие по образующим в цикловой записи с нумерацией с единицы: [[[2, 3, 4]]]."""
        images = []
        for cycles in generators:
            g = list(range(degree))
            seen = set()
            for cycle in cycles:
                cycle = [int(x) - 1 for x in cycle]
                if any(not 0 <= x < degree or x in seen for x in cycle):
                    error_msg = format_lazy(_("Invalid cycle {cycle} for degree {degree}"), cycle=cycle, degree=degree)
                    logger.warning(error_msg)
                    raise MalformedInput(error_msg)
                seen.update(cycle)
                for position, x in enumerate(cycle):
                    g[x] = cycle[(position + 1) % len(cycle)]
            images.append(tuple(g))
        return cls(degree, tuple(images))

    @classmethod
    def trivial(cls, degree: int) -> "GroupAction":
        return cls(degree, ())

    def to_cycles(self) -> list[list[list[int]]]:
        result = []
        for g in self.generators:
            cycles, seen = [], set()
            for start in range(self.degree):
                if start in seen or g[start] == start:
                    continue
                cycle, x = [], start
                while x not in seen:
                    seen.add(x)
                    cycle.append(x + 1)
                    x = g[x]
                cycles.append(cycle)
            result.append(cycles)
        return result

    def to_dict(self) -> dict:
        return {"degree": self.degree, "generators": self.to_cycles()}

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        identity = tuple(range(self.degree))
        found = {identity}
        queue = deque([identity])
        while queue:
            current = queue.popleft()
            for g in self.generators:
                product = tuple(g[current[i]] for i in range(self.degree))
                if product not in found:
                    if len(found) >= MAX_GROUP_ORDER:
                        error_msg = format_lazy(_("Group order exceeds {limit}"), limit=MAX_GROUP_ORDER)
                        logger.warning(error_msg)
                        raise MalformedInput(error_msg)
                    found.add(product)
                    queue.append(product)
        return tuple(sorted(found))

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Орбиты, упорядоченные по наименьшему элементу."""
        union = UnionFind(range(self.degree))
        for g in self.generators:
            for i in range(self.degree):
                union.union(i, g[i])
        return tuple(sorted(tuple(sorted(part)) for part in union.to_sets()))

    def orbit_of(self, i: int) -> tuple[int, ...]:
        return next(orbit for orbit in self.orbits if i in orbit)

    def extended(self, size: int) -> "GroupAction":
        """Действие на 2·size вершинах сида с главными коэффициентами: g(size+i) = size+g(i)."""
        if self.degree != size:
            raise MalformedInput(_("Action degree does not match the seed rank"))
        return GroupAction(2 * size, tuple(g + tuple(size + x for x in g) for g in self.generators))


def _matrix_of(source) -> ExchangeMatrix:
    if isinstance(source, Quiver):
        return source.to_matrix()
    if isinstance(source, PCSeed):
        return source.stacked
    if isinstance(source, YSeed):
        return source.matrix
    return source


def _action_for(source, action: GroupAction) -> GroupAction:
    if isinstance(source, PCSeed):
        return action.extended(source.rank)
    return action


def _check_degree(matrix: ExchangeMatrix, action: GroupAction) -> None:
    if action.degree != matrix.m:
        error_msg = format_lazy(
            _("Action degree {degree} does not match {m} vertices"), degree=action.degree, m=matrix.m
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def is_g_invariant(source, action: GroupAction) -> bool:
    """b_{g(i),g(j)} = b_{i,j} для всех образующих g; образующие сохраняют разбиение на мутируемые и замороженные."""
    matrix, action = _matrix_of(source), _action_for(source, action)
    _check_degree(matrix, action)
    entries, n = matrix.entries, matrix.n
    for g in action.generators:
        if any((g[i] < n) != (i < n) for i in range(matrix.m)):
            return False
        image = np.array(g)
        if not np.array_equal(entries[np.ix_(image, image[:n])], entries):
            return False
    return True


@dataclass(frozen=True)
class AdmissibilityReport:
    """Результат проверки допустимости: нарушенное условие (a, b или c) и индексы-свидетели."""

    admissible: bool
    condition: str | None = None
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.admissible

    def to_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "condition": self.condition,
            "witness": [i + 1 for i in self.witness],
        }


def is_g_admissible(source, action: GroupAction) -> AdmissibilityReport:
    matrix, action = _matrix_of(source), _action_for(source, action)
    _check_degree(matrix, action)
    entries, n = matrix.entries, matrix.n
    for orbit in action.orbits:
        if len({i < n for i in orbit}) > 1:
            return AdmissibilityReport(False, "a", orbit)
    for orbit in action.orbits:
        for position, i in enumerate(orbit):
            for other in orbit[position + 1 :]:
                if i < n and other < n and (entries[i, other] or entries[other, i]):
                    return AdmissibilityReport(False, "b", (i, other))
                for j in range(n):
                    if entries[i, j] * entries[other, j] < 0:
                        return AdmissibilityReport(False, "c", (i, other, j))
    return AdmissibilityReport(True)


@dataclass(frozen=True)
class FoldedMatrix:
    """Свёрнутая матрица b^G_{I,J} = Σ_{i∈I} b_{i,j}: строки - все орбиты, столбцы - мутируемые."""

    orbits: tuple[tuple[int, ...], ...]
    matrix: ExchangeMatrix

    @property
    def mutable_orbits(self) -> tuple[tuple[int, ...], ...]:
        return self.orbits[: self.matrix.n]

    def to_dict(self) -> dict:
        return {
            "orbits": [[i + 1 for i in orbit] for orbit in self.orbits],
            "matrix": self.matrix.to_dict(),
        }


def ordered_orbits(action: GroupAction, n: int) -> tuple[tuple[int, ...], ...]:
    mutable = [orbit for orbit in action.orbits if orbit[0] < n]
    frozen = [orbit for orbit in action.orbits if orbit[0] >= n]
    return tuple(mutable + frozen)


def fold_matrix(source, action: GroupAction) -> FoldedMatrix:
    matrix, action = _matrix_of(source), _action_for(source, action)
    report = is_g_admissible(matrix, action)
    if not report:
        error_msg = format_lazy(
            _("Cannot fold: condition ({condition}) fails at {witness}"),
            condition=report.condition,
            witness=[i + 1 for i in report.witness],
        )
        logger.warning(error_msg)
        raise NotAdmissible(error_msg)
    orbits = ordered_orbits(action, matrix.n)
    columns = [orbit for orbit in orbits if orbit[0] < matrix.n]
    entries = matrix.entries
    folded = np.zeros((len(orbits), len(columns)), dtype=np.int64)
    for row, orbit in enumerate(orbits):
        for column, targets in enumerate(columns):
            values = {int(entries[list(orbit), j].sum()) for j in targets}
            if len(values) != 1:
                error_msg = format_lazy(
                    _("Folded entry for orbits {I}, {J} depends on the representative"),
                    I=[i + 1 for i in orbit],
                    J=[j + 1 for j in targets],
                )
                logger.error(error_msg)
                raise NotAdmissible(error_msg)
            folded[row, column] = values.pop()
    return FoldedMatrix(orbits, ExchangeMatrix._trusted(folded))


def _orbit_members(matrix: ExchangeMatrix, action: GroupAction, orbit) -> tuple[int, ...]:
    if isinstance(orbit, int):
        mutable = [o for o in ordered_orbits(action, matrix.n) if o[0] < matrix.n]
        if not 0 <= orbit < len(mutable):
            raise MalformedInput(format_lazy(_("No mutable orbit number {k}"), k=orbit + 1))
        return mutable[orbit]
    orbit = tuple(sorted(orbit))
    if orbit not in action.orbits or orbit[0] >= matrix.n:
        error_msg = format_lazy(_("{orbit} is not a mutable orbit"), orbit=[i + 1 for i in orbit])
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return orbit


def orbit_mutate(seed, action: GroupAction, orbit):
    """μ_I = ∏_{i∈I} μ_i; результат проверяется на независимость от порядка внутри орбиты.

    :param seed: ExchangeMatrix, Quiver, PCSeed или YSeed.
    :param orbit: номер мутируемой орбиты (с нуля) или сама орбита.
    """
    matrix = _matrix_of(seed)
    if isinstance(seed, PCSeed):
        matrix = seed.matrix
    members = _orbit_members(matrix, action, orbit)
    principal = matrix.principal
    for position, i in enumerate(members):
        for other in members[position + 1 :]:
            if principal[i, other] or principal[other, i]:
                error_msg = format_lazy(
                    _("Orbit members {i} and {j} are adjacent"), i=i + 1, j=other + 1
                )
                logger.warning(error_msg)
                raise NotAdmissible(error_msg)

    def run(order):
        current = seed
        for k in order:
            if isinstance(current, ExchangeMatrix):
                current = mutate_matrix(current, k)
            elif isinstance(current, Quiver):
                current = Quiver.from_matrix(mutate_matrix(current.to_matrix(), k))
            else:
                current = current.mutate(k)
        return current

    forward = run(members)
    if len(members) > 1 and run(reversed(members)) != forward:
        error_msg = format_lazy(
            _("Orbit mutation at {orbit} depends on the order"), orbit=[i + 1 for i in members]
        )
        logger.error(error_msg)
        raise NotAdmissible(error_msg)
    return forward


def invariant_y_seed(matrix: ExchangeMatrix, action: GroupAction) -> YSeed:
    """Y-сид с общей переменной на каждой орбите (отождествление ψ переменных орбиты)."""
    orbits = [orbit for orbit in ordered_orbits(action, matrix.n) if orbit[0] < matrix.n]
    count = len(orbits)
    variables = [RationalFunction.variable(position + 1, count) for position in range(count)]
    coefficients = [None] * matrix.n
    for position, orbit in enumerate(orbits):
        for i in orbit:
            coefficients[i] = variables[position]
    return YSeed(coefficients, matrix)


def fold_seed(seed: PCSeed | YSeed, action: GroupAction) -> PCSeed | YSeed:
    """Свёрнутый сид: PC - свёртка составной матрицы, Y - коэффициенты представителей орбит.

    Показатель при y_K в мутации y_I равен сумме b_{i,k} по k из K, поэтому Y-сид
    получает матрицу -(B^G)^T: её элемент (I, K) равен этой сумме.
    """
    if isinstance(seed, PCSeed):
        return PCSeed._from_stacked(fold_matrix(seed, action).matrix)
    folded = fold_matrix(seed.matrix, action)
    coefficients = []
    for orbit in folded.mutable_orbits:
        values = {str(seed.coefficients[i]) for i in orbit}
        if len(values) != 1:
            error_msg = format_lazy(
                _("Coefficients differ along orbit {orbit}"), orbit=[i + 1 for i in orbit]
            )
            logger.error(error_msg)
            raise NotAdmissible(error_msg)
        coefficients.append(seed.coefficients[orbit[0]])
    return YSeed(coefficients, ExchangeMatrix(-folded.matrix.entries.T))


def _prepare(initial, action: GroupAction) -> PCSeed | YSeed:
    if isinstance(initial, Quiver):
        initial = initial.to_matrix()
    if isinstance(initial, ExchangeMatrix):
        initial = PCSeed.initial(initial)
    matrix = initial.matrix
    if not is_g_invariant(matrix, action):
        error_msg = _("Initial seed is not invariant under the action")
        logger.warning(error_msg)
        raise NotAdmissible(error_msg)
    report = is_g_admissible(matrix, action)
    if not report:
        error_msg = format_lazy(
            _("Initial seed is not admissible: condition ({condition}) at {witness}"),
            condition=report.condition,
            witness=[i + 1 for i in report.witness],
        )
        logger.warning(error_msg)
        raise NotAdmissible(error_msg)
    return initial


def folded_exchange_graph(initial, action: GroupAction, max_nodes: int | None = None) -> ExchangeGraph:
    """Граф обмена свёрнутых сидов; вершины хранят развёрнутых представителей, extra - свёрнутые сиды."""
    initial = _prepare(initial, action)
    orbit_count = len([o for o in ordered_orbits(action, initial.rank) if o[0] < initial.rank])

    def mutate(seed, index):
        report = is_g_admissible(seed.matrix, action)
        if not report:
            error_msg = format_lazy(
                _("Reached a non-admissible invariant seed: condition ({condition}) at {witness}"),
                condition=report.condition,
                witness=[i + 1 for i in report.witness],
            )
            logger.error(error_msg)
            raise NotAdmissible(error_msg)
        return orbit_mutate(seed, action, index)

    def key_of(seed):
        return fold_seed(seed, action).canonical()

    graph = explore(initial, orbit_count, mutate, key_of, max_nodes)
    graph.extra = {key: fold_seed(seed, action) for key, seed in graph.nodes.items()}
    return graph


@dataclass(frozen=True)
class Foldability:
    """Ответ True / False / "unknown" и число найденных свёрнутых сидов."""

    result: bool | str
    folded_seeds: int

    def to_dict(self) -> dict:
        return {"globally_foldable": self.result, "folded_seeds": self.folded_seeds}


def is_globally_foldable(initial, action: GroupAction, max_nodes: int | None = None) -> Foldability:
    try:
        graph = folded_exchange_graph(initial, action, max_nodes)
    except NotAdmissible:
        return Foldability(False, 0)
    if graph.partial:
        return Foldability("unknown", graph.node_count)
    return Foldability(True, graph.node_count)


@dataclass
class Census:
    """Перебор помеченных матриц класса мутаций: инвариантные и допустимые среди них."""

    visited: int = 0
    invariant: int = 0
    admissible: int = 0
    complete: bool = True
    violations: list[tuple[ExchangeMatrix, AdmissibilityReport]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.complete and self.invariant == self.admissible

    def to_dict(self) -> dict:
        return {
            "visited": self.visited,
            "invariant": self.invariant,
            "admissible": self.admissible,
            "complete": self.complete,
            "violations": [
                {"matrix": matrix.to_list(), **report.to_dict()} for matrix, report in self.violations
            ],
        }


def invariant_census(matrix: ExchangeMatrix, action: GroupAction, max_nodes: int | None = None) -> Census:
    """Проверка «инвариантность ⇒ допустимость» на всех помеченных матрицах класса мутаций."""
    max_nodes = settings.WEAVECLUST_BUDGET if max_nodes is None else max_nodes
    census = Census()
    seen = {matrix}
    queue = deque([matrix])
    while queue:
        current = queue.popleft()
        census.visited += 1
        if is_g_invariant(current, action):
            census.invariant += 1
            report = is_g_admissible(current, action)
            if report:
                census.admissible += 1
            else:
                census.violations.append((current, report))
        for k in range(current.n):
            child = mutate_matrix(current, k)
            if child in seen:
                continue
            if len(seen) >= max_nodes:
                census.complete = False
                continue
            seen.add(child)
            queue.append(child)
    logger.info(
        format_lazy(
            _("Census: {visited} matrices, {invariant} invariant, {admissible} admissible"),
            visited=census.visited,
            invariant=census.invariant,
            admissible=census.admissible,
        )
    )
    return census


def coxeter_compatibility(matrix: ExchangeMatrix, action: GroupAction, depth: int) -> list[bool]:
    """Сравнение fold(μ_Q^r(s)) и μ_{Q^G}^r(fold(s)) для r = −depth..depth."""
    unfolded = _prepare(matrix, action)
    folded = fold_seed(unfolded, action)
    results = []
    for r in range(-depth, depth + 1):
        left = fold_seed(coxeter_power(unfolded, r), action)
        right = coxeter_power(folded, r)
        results.append(left == right)
    return results


@dataclass(frozen=True)
class FoldingTriple:
    """Строка каталога свёрток: развёрнутый тип, явное действие и свёрнутый тип."""

    name: str
    unfolded: DynkinType
    matrix: ExchangeMatrix
    action: GroupAction
    folded: DynkinType

    @property
    def is_finite(self) -> bool:
        return self.unfolded.is_finite

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "unfolded": str(self.unfolded),
            "folded": str(self.folded),
            "matrix": self.matrix.to_dict(),
            "action": self.action.to_dict(),
        }


def _bipartite_from_edges(size: int, edges: Sequence[tuple[int, int]], sources: set[int]) -> ExchangeMatrix:
    entries = np.zeros((size, size), dtype=np.int64)
    for i, j in edges:
        sign = 1 if i in sources else -1
        entries[i, j], entries[j, i] = sign, -sign
    return ExchangeMatrix(entries)


def _cycle_matrix(size: int) -> ExchangeMatrix:
    edges = [(i, (i + 1) % size) for i in range(size)]
    return _bipartite_from_edges(size, edges, set(range(0, size, 2)))


def _triple(name: str, unfolded: str, matrix, cycles, folded: str) -> FoldingTriple:
    unfolded_type, folded_type = parse_type(unfolded), parse_type(folded)
    matrix = type_matrix(unfolded_type) if matrix is None else matrix
    return FoldingTriple(name, unfolded_type, matrix, GroupAction.from_cycles(matrix.n, cycles), folded_type)


def catalog_triples(include_affine: bool = True) -> list[FoldingTriple]:
    """Каталог свёрток: конечные тройки и аффинные тройки с явными действиями (нумерация с единицы)."""
    d4_star = _bipartite_from_edges(4, [(0, 1), (0, 2), (0, 3)], {1, 2, 3})
    e6_branch = _bipartite_from_edges(6, [(0, 1), (1, 2), (2, 3), (1, 4), (4, 5)], {0, 2, 4})
    triples = [
        _triple("A3/Z2", "A3", None, [[[1, 3]]], "B2"),
        _triple("A5/Z2", "A5", None, [[[1, 5], [2, 4]]], "B3"),
        _triple("D4/Z2", "D4", None, [[[3, 4]]], "C3"),
        _triple("D5/Z2", "D5", None, [[[4, 5]]], "C4"),
        _triple("E6/Z2", "E6", e6_branch, [[[3, 5], [4, 6]]], "F4"),
        _triple("D4/Z3", "D4", d4_star, [[[2, 3, 4]]], "G2"),
    ]
    if not include_affine:
        return triples
    triples += [
        _triple("Atilde{2,2}/Z2 rotation", "Atilde{2,2}", _cycle_matrix(4), [[[1, 3], [2, 4]]], "Atilde{1,1}"),
        _triple("Atilde{2,2}/Z2 reflection", "Atilde{2,2}", _cycle_matrix(4), [[[2, 4]]], "D3^(2)"),
        _triple("Atilde{3,3}/Z2 reflection", "Atilde{3,3}", _cycle_matrix(6), [[[2, 6], [3, 5]]], "D4^(2)"),
        _triple("Dtilde4/Z2xZ2", "Dtilde4", None, [[[1, 2], [4, 5]], [[1, 4], [2, 5]]], "A2^(2)"),
        _triple("Dtilde4/Z3", "Dtilde4", None, [[[2, 4, 5]]], "D4^(3)"),
        _triple("Dtilde5/Z2 both ends", "Dtilde5", None, [[[1, 2], [5, 6]]], "Ctilde3"),
        _triple("Dtilde5/Z2 one end", "Dtilde5", None, [[[5, 6]]], "A7^(2)"),
        _triple("Dtilde6/Z2 rotation", "Dtilde6", None, [[[1, 6], [2, 7], [3, 5]]], "Btilde3"),
        _triple("Dtilde6/Z2xZ2", "Dtilde6", None, [[[1, 6], [2, 7], [3, 5]], [[1, 2], [6, 7]]], "A4^(2)"),
        _triple("Etilde6/Z3", "Etilde6", None, [[[3, 5, 2], [1, 6, 7]]], "Gtilde2"),
        _triple("Etilde6/Z2", "Etilde6", None, [[[3, 5], [1, 6]]], "E6^(2)"),
        _triple("Etilde7/Z2", "Etilde7", None, [[[8, 7], [1, 6], [3, 5]]], "Ftilde4"),
    ]
    return triples


def find_triple(name: str) -> FoldingTriple:
    for triple in catalog_triples():
        if triple.name == name or triple.name.split()[0] == name:
            return triple
    error_msg = format_lazy(_("No folding triple named '{name}'"), name=name)
    logger.warning(error_msg)
    raise MalformedInput(error_msg)
