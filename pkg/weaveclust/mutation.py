"""Матрицы обмена, колчаны и их мутации; классификация класса мутаций по типу Дынкина."""

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.canonical import canonical_labeling
from weaveclust.dynkin import (
    AnyDynkinType,
    CartanMatrix,
    DynkinType,
    bipartite_coloring,
    cartan_matrix,
    classify_cartan,
    combine,
    components,
)
from weaveclust.exceptions import MalformedInput, NotBipartite

logger = logging.getLogger(__name__)

UNKNOWN = "unknown"


def _as_array(rows) -> np.ndarray:
    try:
        array = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError, OverflowError) as err:
        error_msg = format_lazy(_("Matrix entries must be integers: {err}"), err=err)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    if array.ndim != 2 and array.size:
        error_msg = format_lazy(_("Matrix must be two-dimensional, got shape {shape}"), shape=array.shape)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return array.reshape(len(rows), -1) if array.size else np.zeros((len(rows), 0), dtype=np.int64)


class ExchangeMatrix:
    """Матрица обмена B̃ размера m×n: строки 1..n мутируемые, n+1..m замороженные.

    Главная часть (первые n строк) обязана быть кососимметризуемой.
    Объект неизменяем: внутренний массив numpy закрыт на запись.

    Примеры:
        >>> B = ExchangeMatrix([[0, 1], [-3, 0]])
        >>> B.mutate(0).to_list()
        [[0, -1], [3, 0]]
    """

    def __init__(self, rows, n: int | None = None):
        entries = _as_array(rows)
        m, columns = entries.shape
        if n is not None and n != columns:
            error_msg = format_lazy(_("Declared n={n} but matrix has {columns} columns"), n=n, columns=columns)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        if columns > m:
            error_msg = format_lazy(_("Matrix has more columns ({n}) than rows ({m})"), n=columns, m=m)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        entries.flags.writeable = False
        self._entries = entries
        if skew_symmetrizer(self) is None:
            error_msg = format_lazy(_("Principal part is not skew-symmetrizable: {rows}"), rows=self.to_list())
            logger.warning(error_msg)
            raise MalformedInput(error_msg)

    @classmethod
    def _trusted(cls, entries: np.ndarray) -> "ExchangeMatrix":
        obj = cls.__new__(cls)
        entries.flags.writeable = False
        obj._entries = entries
        return obj

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def m(self) -> int:
        return self._entries.shape[0]

    @property
    def n(self) -> int:
        return self._entries.shape[1]

    @property
    def principal(self) -> np.ndarray:
        return self._entries[: self.n]

    @property
    def frozen(self) -> np.ndarray:
        return self._entries[self.n :]

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(value) for value in row) for row in self._entries)

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "rows": self.to_list()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self._entries.shape == other._entries.shape and bool(
            np.array_equal(self._entries, other._entries)
        )

    def __hash__(self) -> int:
        return hash((self._entries.shape, self._entries.tobytes()))

    def __repr__(self) -> str:
        return f"ExchangeMatrix({self.to_list()})"

    def mutate(self, k: int) -> "ExchangeMatrix":
        return mutate_matrix(self, k)

    def permuted(self, order: Sequence[int]) -> "ExchangeMatrix":
        """Матрица с мутируемыми индексами в порядке order; замороженные строки на месте."""
        order = list(order)
        rows = order + list(range(self.n, self.m))
        return ExchangeMatrix._trusted(self._entries[np.ix_(rows, order)].copy())

    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self._entries.astype(float))) if self._entries.size else 0


def check_index(matrix: ExchangeMatrix, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 0 <= k < matrix.n:
        error_msg = format_lazy(
            _("Mutation index {k} is out of range for {n} mutable indices"), k=k, n=matrix.n
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def mutate_entries(entries: np.ndarray, k: int) -> np.ndarray:
    column = entries[:, k]
    row = entries[k, :]
    result = entries + (np.outer(np.abs(column), row) + np.outer(column, np.abs(row))) // 2
    result[k, :] = -entries[k, :]
    result[:, k] = -entries[:, k]
    return result


def mutate_matrix(matrix: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Мутация матрицы обмена в мутируемом индексе k (нумерация с нуля)."""
    check_index(matrix, k)
    return ExchangeMatrix._trusted(mutate_entries(matrix.entries, k))


@dataclass(frozen=True)
class MutationSequence:
    """Последовательность мутаций μ_{k₁}…μ_{k_L} в записанном порядке.

    Применяется справа налево: первой выполняется мутация в индексе k_L.
    """

    indices: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(k) for k in self.indices))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def application_order(self) -> tuple[int, ...]:
        return tuple(reversed(self.indices))

    def inverse(self) -> "MutationSequence":
        return MutationSequence(tuple(reversed(self.indices)))

    def __str__(self) -> str:
        return " ".join(f"μ{k + 1}" for k in self.indices) or "id"

    def to_list(self) -> list[int]:
        return [k + 1 for k in self.indices]


def mutate_sequence(matrix: ExchangeMatrix, sequence: MutationSequence | Iterable[int]) -> ExchangeMatrix:
    if not isinstance(sequence, MutationSequence):
        sequence = MutationSequence(tuple(sequence))
    for k in sequence.application_order():
        matrix = mutate_matrix(matrix, k)
    return matrix


class Quiver:
    """Колчан на m вершинах, из которых первые n мутируемые.

    Хранится кососимметричная матрица b_ij = a_ij − a_ji размера m×m, поэтому
    петли и 2-циклы невозможны по построению.
    """

    def __init__(self, m: int, n: int | None = None, adjacency=None):
        n = m if n is None else n
        if not 0 <= n <= m:
            error_msg = format_lazy(_("Invalid quiver sizes m={m}, n={n}"), m=m, n=n)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        matrix = np.zeros((m, m), dtype=np.int64) if adjacency is None else _as_array(adjacency)
        if matrix.shape != (m, m) or not np.array_equal(matrix, -matrix.T):
            error_msg = format_lazy(_("Quiver adjacency must be skew-symmetric of order {m}"), m=m)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        matrix.flags.writeable = False
        self.m, self.n, self.adjacency = m, n, matrix

    @classmethod
    def from_arrows(cls, m: int, arrows: Iterable[tuple[int, int] | tuple[int, int, int]], n: int | None = None):
        """Колчан по списку стрелок (i, j) или (i, j, кратность)."""
        matrix = np.zeros((m, m), dtype=np.int64)
        for arrow in arrows:
            i, j, multiplicity = (*arrow, 1) if len(arrow) == 2 else arrow
            if i == j or not (0 <= i < m and 0 <= j < m):
                error_msg = format_lazy(_("Invalid arrow {arrow}"), arrow=arrow)
                logger.warning(error_msg)
                raise MalformedInput(error_msg)
            matrix[i, j] += multiplicity
            matrix[j, i] -= multiplicity
        return cls(m, n, matrix)

    @classmethod
    def from_matrix(cls, matrix: ExchangeMatrix) -> "Quiver":
        principal = matrix.principal
        if not np.array_equal(principal, -principal.T):
            error_msg = _("Only skew-symmetric principal parts define quivers")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        m, n = matrix.m, matrix.n
        full = np.zeros((m, m), dtype=np.int64)
        full[:, :n] = matrix.entries
        full[:n, n:] = -matrix.entries[n:].T
        return cls(m, n, full)

    def to_matrix(self) -> ExchangeMatrix:
        return ExchangeMatrix._trusted(self.adjacency[:, : self.n].copy())

    @property
    def arrows(self) -> list[tuple[int, int, int]]:
        return [
            (i, j, int(self.adjacency[i, j]))
            for i in range(self.m)
            for j in range(self.m)
            if self.adjacency[i, j] > 0
        ]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency.tobytes()))

    def __repr__(self) -> str:
        return f"Quiver(m={self.m}, n={self.n}, arrows={self.arrows})"


def mutate_quiver(quiver: Quiver, k: int) -> Quiver:
    """Мутация колчана: пути i→k→j дают стрелки i→j, стрелки у k обращаются, 2-циклы сокращаются."""
    if not 0 <= k < quiver.n:
        error_msg = format_lazy(
            _("Vertex {k} is not a mutable vertex of a quiver with {n} mutable vertices"), k=k, n=quiver.n
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return Quiver(quiver.m, quiver.n, mutate_entries(quiver.adjacency, k))


def skew_symmetrizer(matrix: ExchangeMatrix) -> tuple[int, ...] | None:
    """Минимальный целый положительный вектор d с d_i b_ij = −d_j b_ji или None."""
    principal = matrix.principal
    size = matrix.n
    weights: list[Fraction | None] = [None] * size
    for start in range(size):
        if weights[start] is not None:
            continue
        weights[start] = Fraction(1)
        component = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(size):
                bij, bji = int(principal[i, j]), int(principal[j, i])
                if i == j:
                    if bij:
                        return None
                    continue
                if (bij == 0) != (bji == 0):
                    return None
                if bij == 0:
                    continue
                if (bij > 0) == (bji > 0):
                    return None
                value = weights[i] * Fraction(-bij, bji)
                if weights[j] is None:
                    weights[j] = value
                    component.append(j)
                    queue.append(j)
                elif weights[j] != value:
                    return None
        scale = reduce(lcm, (weights[i].denominator for i in component), 1)
        integers = [int(weights[i] * scale) for i in component]
        common = reduce(gcd, integers)
        for i, value in zip(component, integers):
            weights[i] = Fraction(value // common)
    return tuple(int(weight) for weight in weights)


def cartan_counterpart(matrix: ExchangeMatrix) -> CartanMatrix:
    """Картанов двойник: c_ii = 2, c_ij = −|b_ij|."""
    if not matrix.is_square:
        error_msg = format_lazy(_("Cartan counterpart needs a square matrix, got {m}x{n}"), m=matrix.m, n=matrix.n)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    cartan = -np.abs(matrix.entries)
    np.fill_diagonal(cartan, 2)
    return CartanMatrix(tuple(map(tuple, cartan.tolist())))


def positive_digraph(matrix: ExchangeMatrix | np.ndarray) -> nx.DiGraph:
    principal = matrix.principal if isinstance(matrix, ExchangeMatrix) else matrix
    graph = nx.DiGraph()
    graph.add_nodes_from(range(principal.shape[1]))
    for i, j in zip(*np.nonzero(principal > 0)):
        graph.add_edge(int(i), int(j), weight=int(principal[i, j]))
    return graph


def is_acyclic(matrix: ExchangeMatrix) -> bool:
    return nx.is_directed_acyclic_graph(positive_digraph(matrix))


def is_bipartite(matrix: ExchangeMatrix) -> tuple[str, ...] | None:
    """Раскраска ε с b_ij > 0 ⇒ ε(i) = "+", ε(j) = "−"; изолированные вершины получают "+"."""
    coloring = []
    for row in matrix.principal:
        positive, negative = bool((row > 0).any()), bool((row < 0).any())
        if positive and negative:
            return None
        coloring.append("-" if negative else "+")
    return tuple(coloring)


def coxeter_mutation(matrix: ExchangeMatrix) -> MutationSequence:
    """Мутация Кокстера μ_Q = μ₊μ₋: в записи сначала I₊, затем I₋, поэтому μ₋ выполняется первой."""
    coloring = is_bipartite(matrix)
    if coloring is None:
        error_msg = format_lazy(_("Matrix is not bipartite: {rows}"), rows=matrix.to_list())
        logger.warning(error_msg)
        raise NotBipartite(error_msg)
    plus = tuple(i for i, sign in enumerate(coloring) if sign == "+")
    minus = tuple(i for i, sign in enumerate(coloring) if sign == "-")
    return MutationSequence(plus + minus)


def _oriented_block(item: DynkinType) -> np.ndarray:
    size = item.size
    block = np.zeros((size, size), dtype=np.int64)
    if item.family == "Atilde" and size == 2:
        block[0, 1], block[1, 0] = 2, -2
        return block
    if item.family == "Atilde" and ((item.pq is not None and item.pq[0] != item.pq[1]) or size % 2):
        p = item.pq[0] if item.pq is not None else size // 2
        for step in range(size):
            i, j = step, (step + 1) % size
            sign = 1 if step < p else -1
            block[i, j], block[j, i] = sign, -sign
        return block
    cartan = np.array(cartan_matrix(item).rows, dtype=np.int64)
    coloring = bipartite_coloring(item)
    for i in range(size):
        for j in range(size):
            if i != j and cartan[i, j]:
                block[i, j] = -cartan[i, j] if coloring[i] == "+" else cartan[i, j]
    return block


def type_matrix(item: AnyDynkinType) -> ExchangeMatrix:
    """Матрица обмена типа: двудольная ориентация диаграммы (у Ã_{p,q} - p рёбер в одну сторону).

    Вершина с цветом "+" является источником: b_ij = |c_ij| > 0.
    """
    blocks = [_oriented_block(part) for part in item.components]
    size = sum(block.shape[0] for block in blocks)
    entries = np.zeros((size, size), dtype=np.int64)
    offset = 0
    for block in blocks:
        width = block.shape[0]
        entries[offset : offset + width, offset : offset + width] = block
        offset += width
    return ExchangeMatrix(entries)


def canonical_form(matrix: ExchangeMatrix, rank_cap: int | None = None) -> tuple[bytes, tuple[int, ...]]:
    """Каноническая форма с точностью до перестановки мутируемых индексов.

    Замороженные строки не переставляются и служат цветами столбцов.
    """
    colors = [tuple(int(value) for value in matrix.frozen[:, j]) for j in range(matrix.n)]
    return canonical_labeling(matrix.principal, colors, rank_cap=rank_cap)


def _cycle_shape(principal: np.ndarray) -> tuple[int, int] | None:
    """Для ориентированного n-цикла с единичными весами - число рёбер в двух направлениях обхода."""
    size = principal.shape[0]
    if size < 3 or np.abs(principal).max(initial=0) != 1:
        return None
    graph = nx.Graph()
    graph.add_nodes_from(range(size))
    graph.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(principal > 0)))
    if graph.number_of_edges() != size or any(degree != 2 for _vertex, degree in graph.degree) or not nx.is_connected(graph):
        return None
    walk = [0, next(iter(sorted(graph[0])))]
    while len(walk) < size:
        walk.append(next(v for v in graph[walk[-1]] if v != walk[-2]))
    forward = sum(1 for step in range(size) if principal[walk[step], walk[(step + 1) % size]] > 0)
    return forward, size - forward


def _classify_component(principal: np.ndarray, node_budget: int) -> AnyDynkinType | str:
    size = principal.shape[0]
    if size == 1:
        return DynkinType("A", 1)
    shape = _cycle_shape(principal)
    if shape is not None and 0 in shape:
        return DynkinType("A", 3) if size == 3 else DynkinType("D", size)
    start = ExchangeMatrix._trusted(principal.copy())
    seen = {canonical_labeling(principal)[0]}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if is_acyclic(current):
            return _classify_acyclic(current)
        for k in range(size):
            mutated = mutate_matrix(current, k)
            key, _order = canonical_labeling(mutated.principal)
            if key in seen:
                continue
            if len(seen) >= node_budget:
                logger.info(
                    format_lazy(_("Mutation class search stopped at {count} matrices"), count=len(seen))
                )
                return UNKNOWN
            seen.add(key)
            queue.append(mutated)
    return UNKNOWN


def _classify_acyclic(matrix: ExchangeMatrix) -> AnyDynkinType | str:
    principal = matrix.principal
    if principal.shape == (2, 2) and abs(int(principal[0, 1])) == 2 and abs(int(principal[1, 0])) == 2:
        return DynkinType("Atilde", 1, pq=(1, 1))
    shape = _cycle_shape(principal)
    if shape is not None:
        return DynkinType("Atilde", principal.shape[0] - 1, pq=shape)
    found = classify_cartan(cartan_counterpart(matrix))
    return UNKNOWN if found is None else found


def classify_type(matrix: ExchangeMatrix, node_budget: int | None = None) -> AnyDynkinType | str:
    """Тип Дынкина класса мутаций квадратной матрицы или "unknown".

    Каждая компонента связности классифицируется отдельно: ориентированный цикл
    распознаётся сразу, иначе поиск в ширину по классу мутаций (с точностью до
    перестановки) ищет ацикличного представителя.
    """
    if not matrix.is_square:
        error_msg = format_lazy(_("Type classification needs a square matrix, got {m}x{n}"), m=matrix.m, n=matrix.n)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    node_budget = settings.WEAVECLUST_BUDGET if node_budget is None else node_budget
    if node_budget < 1:
        raise MalformedInput(_("Node budget must be positive"))
    principal = matrix.principal
    parts = []
    for block in components(principal.tolist()):
        found = _classify_component(principal[np.ix_(block, block)], node_budget)
        if found == UNKNOWN:
            return UNKNOWN
        parts.extend(found.components)
    return combine(parts)
