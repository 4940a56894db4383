"""Каталог диаграмм Дынкина: матрицы Картана, числа Кокстера, число сидов и классификация.

Нумерация вершин фиксирована:
    - A, B, C, D: вдоль пути, у Dₙ вершины n−1 и n подвешены к n−2;
    - Eₙ: цепочка 1-3-4-…-n, вершина 2 подвешена к 4;
    - F₄: 1-2⇐3-4, G₂: [[2,−1],[−3,2]].
Направление кратных рёбер выбрано так, чтобы свёртка сумм по орбитам переводила
A₂ₙ₋₁, Dₙ₊₁, E₆, D₄ ровно в Bₙ, Cₙ, F₄, G₂ (и аналогично для аффинных троек).
"""

import logging
import math
import re
from dataclasses import dataclass, field
from functools import cache
from typing import Iterable, Sequence

import networkx as nx
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _
from networkx.algorithms.isomorphism import DiGraphMatcher

from weaveclust.exceptions import MalformedInput

logger = logging.getLogger(__name__)

FINITE_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
AFFINE_FAMILIES = ("Atilde", "Btilde", "Ctilde", "Dtilde", "Etilde", "Ftilde", "Gtilde")
TWISTED_FAMILIES = ("A^(2)", "D^(2)", "E^(2)", "D^(3)")
CATALOG_MAX_SIZE = 9

_FINITE_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}
_AFFINE_RANKS = {
    "Atilde": lambda n: n >= 1,
    "Btilde": lambda n: n >= 3,
    "Ctilde": lambda n: n >= 2,
    "Dtilde": lambda n: n >= 4,
    "Etilde": lambda n: n in (6, 7, 8),
    "Ftilde": lambda n: n == 4,
    "Gtilde": lambda n: n == 2,
}
_TWISTED_RANKS = {
    "A^(2)": lambda n: (n % 2 == 0 and n >= 2) or (n % 2 == 1 and n >= 5),
    "D^(2)": lambda n: n >= 3,
    "E^(2)": lambda n: n == 6,
    "D^(3)": lambda n: n == 4,
}


@dataclass(frozen=True, order=True)
class DynkinType:
    """Неприводимый тип Дынкина.

    rank - нижний индекс в обозначении типа (для аффинных X̃ₙ диаграмма содержит n+1
    вершину). Для Ã_{p,q} хранится неупорядоченная пара pq = (p, q), p ≤ q, p+q = rank+1.

    Примеры:
        >>> str(DynkinType("E", 6))
        'E6'
        >>> str(DynkinType("Atilde", 2, pq=(1, 2)))
        'Atilde{1,2}'
        >>> DynkinType("D", 3)
        Traceback (most recent call last):
        ...
        weaveclust.exceptions.MalformedInput: ...
    """

    family: str
    rank: int
    pq: tuple[int, int] | None = None

    def __post_init__(self):
        checks = _FINITE_RANKS | _AFFINE_RANKS | _TWISTED_RANKS
        if self.family not in checks:
            error_msg = format_lazy(_("Unknown Dynkin family '{family}'"), family=self.family)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        if not isinstance(self.rank, int) or not checks[self.family](self.rank):
            error_msg = format_lazy(
                _("Rank {rank} is out of range for family {family}"),
                rank=self.rank,
                family=self.family,
            )
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        if self.pq is not None:
            p, q = sorted(self.pq)
            if self.family != "Atilde" or p < 1 or p + q != self.rank + 1:
                error_msg = format_lazy(
                    _("Invalid orientation pair {pq} for {family}{rank}"),
                    pq=self.pq,
                    family=self.family,
                    rank=self.rank,
                )
                logger.warning(error_msg)
                raise MalformedInput(error_msg)
            object.__setattr__(self, "pq", (p, q))

    def __str__(self) -> str:
        if self.pq is not None:
            return f"Atilde{{{self.pq[0]},{self.pq[1]}}}"
        if self.family in TWISTED_FAMILIES:
            letter, twist = self.family.split("^")
            return f"{letter}{self.rank}^{twist}"
        return f"{self.family}{self.rank}"

    @property
    def kind(self) -> str:
        if self.family in FINITE_FAMILIES:
            return "finite"
        if self.family in AFFINE_FAMILIES:
            return "affine"
        return "twisted"

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def cartan_type(self) -> "DynkinType":
        """Тип без пары ориентации: матрица Картана Ã_{p,q} от p и q не зависит."""
        return DynkinType(self.family, self.rank) if self.pq is not None else self

    @property
    def size(self) -> int:
        """Число вершин диаграммы (порядок матрицы Картана)."""
        match self.kind:
            case "finite":
                return self.rank
            case "affine":
                return self.rank + 1
        match self.family:
            case "A^(2)" if self.rank % 2 == 0:
                return self.rank // 2 + 1
            case "A^(2)":
                return (self.rank + 1) // 2 + 1
            case "D^(2)":
                return self.rank
            case "E^(2)":
                return 5
        return 3

    @property
    def components(self) -> tuple["DynkinType", ...]:
        return (self,)


@dataclass(frozen=True)
class CompositeType:
    """Приводимый тип: отсортированный мультимножество неприводимых компонент."""

    parts: tuple[DynkinType, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, key=_type_sort_key)))

    def __str__(self) -> str:
        return "+".join(str(part) for part in self.parts)

    @property
    def size(self) -> int:
        return sum(part.size for part in self.parts)

    @property
    def is_finite(self) -> bool:
        return all(part.is_finite for part in self.parts)

    @property
    def components(self) -> tuple[DynkinType, ...]:
        return self.parts


AnyDynkinType = DynkinType | CompositeType


def _type_sort_key(item: DynkinType) -> tuple:
    order = FINITE_FAMILIES + AFFINE_FAMILIES + TWISTED_FAMILIES
    return (order.index(item.family), item.rank, item.pq or ())


def combine(parts: Iterable[DynkinType]) -> AnyDynkinType:
    parts = tuple(parts)
    if len(parts) == 1:
        return parts[0]
    return CompositeType(parts)


_TYPE_PATTERNS = (
    (re.compile(r"^Atilde\{(\d+),(\d+)\}$"), "pq"),
    (re.compile(r"^([A-G])tilde(\d+)$"), "affine"),
    (re.compile(r"^([ADE])(\d+)\^\(([23])\)$"), "twisted"),
    (re.compile(r"^([A-G])(\d+)$"), "finite"),
)


def parse_type(text: str) -> AnyDynkinType:
    """Разбор строкового обозначения типа.

    Поддерживаются формы "A3", "Dtilde5", "Atilde{1,2}", "E6^(2)", "D4^(3)" и суммы "A1+A2".
    """
    parts = []
    for chunk in str(text).replace(" ", "").split("+"):
        for pattern, form in _TYPE_PATTERNS:
            found = pattern.match(chunk)
            if found is None:
                continue
            match form:
                case "pq":
                    p, q = int(found[1]), int(found[2])
                    parts.append(DynkinType("Atilde", p + q - 1, pq=(p, q)))
                case "affine":
                    parts.append(DynkinType(f"{found[1]}tilde", int(found[2])))
                case "twisted":
                    parts.append(DynkinType(f"{found[1]}^({found[3]})", int(found[2])))
                case "finite":
                    parts.append(DynkinType(found[1], int(found[2])))
            break
        else:
            error_msg = format_lazy(_("Cannot parse Dynkin type '{text}'"), text=text)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
    return combine(parts)


@dataclass(frozen=True)
class CartanMatrix:
    """Обобщённая матрица Картана: c_ii = 2, c_ij ≤ 0 при i ≠ j, c_ij = 0 ⇔ c_ji = 0."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(value) for value in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not is_generalized_cartan(rows):
            error_msg = format_lazy(_("Not a generalized Cartan matrix: {rows}"), rows=rows)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)

    @property
    def size(self) -> int:
        return len(self.rows)

    def permuted(self, order: Sequence[int]) -> "CartanMatrix":
        return CartanMatrix(tuple(tuple(self.rows[i][j] for j in order) for i in order))

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def is_generalized_cartan(rows: Sequence[Sequence[int]]) -> bool:
    size = len(rows)
    if any(len(row) != size for row in rows):
        return False
    for i in range(size):
        if rows[i][i] != 2:
            return False
        for j in range(size):
            if i == j:
                continue
            if rows[i][j] > 0 or (rows[i][j] == 0) != (rows[j][i] == 0):
                return False
    return True


def _path(first: int, last: int) -> list[tuple[int, int, int, int]]:
    return [(i, i + 1, -1, -1) for i in range(first, last)]


def _e_edges(rank: int) -> list[tuple[int, int, int, int]]:
    return [(0, 2, -1, -1), (1, 3, -1, -1)] + _path(2, rank - 1)


def _edges(item: DynkinType) -> list[tuple[int, int, int, int]]:
    """Рёбра диаграммы в виде (i, j, c_ij, c_ji), нумерация с нуля."""
    n = item.rank
    match item.family:
        case "A":
            return _path(0, n - 1)
        case "B":
            return _path(0, n - 2) + [(n - 2, n - 1, -2, -1)]
        case "C":
            return _path(0, n - 2) + [(n - 2, n - 1, -1, -2)]
        case "D":
            return _path(0, n - 3) + [(n - 3, n - 2, -1, -1), (n - 3, n - 1, -1, -1)]
        case "E":
            return _e_edges(n)
        case "F":
            return [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1)]
        case "G":
            return [(0, 1, -1, -3)]
        case "Atilde" if n == 1:
            return [(0, 1, -2, -2)]
        case "Atilde":
            return _path(0, n) + [(n, 0, -1, -1)]
        case "Btilde":
            return [(0, 2, -1, -1)] + _path(1, n - 1) + [(n - 1, n, -2, -1)]
        case "Ctilde":
            return [(0, 1, -2, -1)] + _path(1, n - 1) + [(n - 1, n, -1, -2)]
        case "Dtilde":
            return (
                [(0, 2, -1, -1), (1, 2, -1, -1)]
                + _path(2, n - 2)
                + [(n - 2, n - 1, -1, -1), (n - 2, n, -1, -1)]
            )
        case "Etilde":
            extra = {6: (6, 1, -1, -1), 7: (7, 0, -1, -1), 8: (8, 7, -1, -1)}[n]
            return _e_edges(n) + [extra]
        case "Ftilde":
            return [(0, 1, -1, -1), (1, 2, -1, -2), (2, 3, -1, -1), (3, 4, -1, -1)]
        case "Gtilde":
            return [(0, 1, -1, -3), (1, 2, -1, -1)]
        case "A^(2)" if n == 2:
            return [(0, 1, -4, -1)]
        case "A^(2)" if n % 2 == 0:
            ell = n // 2
            return [(0, 1, -2, -1)] + _path(1, ell - 1) + [(ell - 1, ell, -2, -1)]
        case "A^(2)":
            ell = (n + 1) // 2
            return [(0, 2, -1, -1)] + _path(1, ell - 1) + [(ell - 1, ell, -1, -2)]
        case "D^(2)":
            return [(0, 1, -1, -2)] + _path(1, n - 2) + [(n - 2, n - 1, -2, -1)]
        case "E^(2)":
            return [(0, 1, -1, -1), (1, 2, -1, -1), (2, 3, -1, -2), (3, 4, -1, -1)]
        case "D^(3)":
            return [(0, 1, -1, -1), (1, 2, -1, -3)]
    raise MalformedInput(format_lazy(_("No diagram for {type}"), type=item))


def cartan_matrix(item: AnyDynkinType) -> CartanMatrix:
    """Матрица Картана типа; для приводимого типа - блочно-диагональная."""
    blocks = [_irreducible_cartan(part) for part in item.components]
    size = sum(len(block) for block in blocks)
    rows = [[0] * size for _row in range(size)]
    offset = 0
    for block in blocks:
        for i, row in enumerate(block):
            for j, value in enumerate(row):
                rows[offset + i][offset + j] = value
        offset += len(block)
    return CartanMatrix(tuple(tuple(row) for row in rows))


def _irreducible_cartan(item: DynkinType) -> list[list[int]]:
    rows = [[2 if i == j else 0 for j in range(item.size)] for i in range(item.size)]
    for i, j, cij, cji in _edges(item):
        rows[i][j] = cij
        rows[j][i] = cji
    return rows


@cache
def catalog(max_size: int = CATALOG_MAX_SIZE) -> tuple[DynkinType, ...]:
    """Все неприводимые типы каталога с числом вершин не больше max_size.

    Порядок определяет выбор при совпадении матриц (B₂ раньше C₂, конечные раньше
    аффинных и скрученных).
    """
    items = []
    for family, allowed in (_FINITE_RANKS | _AFFINE_RANKS | _TWISTED_RANKS).items():
        for rank in range(1, 2 * max_size + 1):
            if not allowed(rank):
                continue
            item = DynkinType(family, rank)
            if item.size <= max_size:
                items.append(item)
    return tuple(sorted(items, key=_type_sort_key))


def _as_digraph(rows: Sequence[Sequence[int]]) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(rows)))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            if i != j and value:
                graph.add_edge(i, j, weight=value)
    return graph


def _row_profile(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(row)) for row in rows)


@cache
def _catalog_by_size() -> dict[int, list[tuple[DynkinType, tuple[tuple[int, ...], ...]]]]:
    by_size: dict[int, list] = {}
    for item in catalog():
        by_size.setdefault(item.size, []).append((item, cartan_matrix(item).rows))
    return by_size


def find_isomorphism(
    first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]
) -> dict[int, int] | None:
    """Перестановка σ с first[i][j] = second[σ(i)][σ(j)] или None."""
    if len(first) != len(second) or _row_profile(first) != _row_profile(second):
        return None
    matcher = DiGraphMatcher(
        _as_digraph(first),
        _as_digraph(second),
        edge_match=lambda a, b: a["weight"] == b["weight"],
    )
    for mapping in matcher.isomorphisms_iter():
        return mapping
    return None


def components(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Компоненты связности графа ненулевых внедиагональных элементов."""
    graph = _as_digraph(rows).to_undirected()
    return sorted(sorted(part) for part in nx.connected_components(graph))


def classify_cartan(matrix: CartanMatrix | Sequence[Sequence[int]]) -> AnyDynkinType | None:
    """Тип, матрица Картана которого сопряжена данной матрице перестановкой.

    Возвращает None, если матрица не является обобщённой матрицей Картана или
    какая-либо её компонента не совпадает ни с одним элементом каталога.
    """
    rows = matrix.rows if isinstance(matrix, CartanMatrix) else tuple(map(tuple, matrix))
    if not rows or not is_generalized_cartan(rows):
        return None
    found = []
    for part in components(rows):
        block = tuple(tuple(rows[i][j] for j in part) for i in part)
        for item, candidate in _catalog_by_size().get(len(part), []):
            if find_isomorphism(block, candidate) is not None:
                found.append(item)
                break
        else:
            logger.debug(format_lazy(_("No catalog match for block {block}"), block=block))
            return None
    return combine(found)


_COXETER_NUMBERS = {"E": {6: 12, 7: 18, 8: 30}, "F": {4: 12}, "G": {2: 6}}
_SEED_COUNTS = {"E": {6: 833, 7: 4160, 8: 25080}, "F": {4: 105}, "G": {2: 8}}
_CLUSTER_VARIABLE_COUNTS = {"E": {6: 42, 7: 70, 8: 128}, "F": {4: 28}, "G": {2: 8}}


def _require_finite(item: AnyDynkinType, irreducible: bool = True) -> None:
    if not item.is_finite or (irreducible and isinstance(item, CompositeType)):
        error_msg = format_lazy(
            _("Operation requires a finite{irr} type, got {type}"),
            irr=_(" irreducible") if irreducible else "",
            type=item,
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def coxeter_number(item: AnyDynkinType) -> int:
    _require_finite(item)
    n = item.rank
    match item.family:
        case "A":
            return n + 1
        case "B" | "C":
            return 2 * n
        case "D":
            return 2 * n - 2
    return _COXETER_NUMBERS[item.family][n]


def seed_count(item: AnyDynkinType) -> int:
    """Число сидов конечного типа; для приводимого типа - произведение по компонентам."""
    _require_finite(item, irreducible=False)
    return math.prod(_irreducible_seed_count(part) for part in item.components)


def _irreducible_seed_count(item: DynkinType) -> int:
    n = item.rank
    match item.family:
        case "A":
            return math.comb(2 * n + 2, n + 1) // (n + 2)
        case "B" | "C":
            return math.comb(2 * n, n)
        case "D":
            return (3 * n - 2) * math.comb(2 * n - 2, n - 1) // n
    return _SEED_COUNTS[item.family][n]


def cluster_variable_count(item: AnyDynkinType) -> int:
    _require_finite(item, irreducible=False)
    total = 0
    for part in item.components:
        n = part.rank
        match part.family:
            case "A":
                total += n * (n + 3) // 2
            case "B" | "C":
                total += n * (n + 1)
            case "D":
                total += n * n
            case _:
                total += _CLUSTER_VARIABLE_COUNTS[part.family][n]
    return total


def bipartite_coloring(source: AnyDynkinType | Sequence[Sequence[int]]) -> tuple[str, ...] | None:
    """Двухцветная раскраска диаграммы: смежные вершины разного цвета.

    В каждой компоненте вершина с наименьшим номером получает "+". Для диаграммы
    с нечётным циклом возвращается None.
    """
    if isinstance(source, (DynkinType, CompositeType)):
        rows = cartan_matrix(source).rows
    else:
        rows = tuple(map(tuple, source))
    graph = _as_digraph(rows).to_undirected()
    colors: dict[int, str] = {}
    for start in sorted(graph.nodes):
        if start in colors:
            continue
        colors[start] = "+"
        for parent, child in nx.bfs_edges(graph, start):
            colors[child] = "-" if colors[parent] == "+" else "+"
    for i, j in graph.edges:
        if colors[i] == colors[j]:
            return None
    return tuple(colors[i] for i in range(len(rows)))


def catalog_dump(max_size: int = CATALOG_MAX_SIZE) -> list[dict]:
    """Каталог в виде списка словарей для JSON-выгрузки."""
    dump = []
    for item in catalog(max_size):
        entry = {"type": str(item), "kind": item.kind, "size": item.size}
        entry["cartan"] = cartan_matrix(item).to_list()
        if item.is_finite:
            entry["coxeter_number"] = coxeter_number(item)
            entry["seeds"] = seed_count(item)
            entry["cluster_variables"] = cluster_variable_count(item)
        dump.append(entry)
    return dump
