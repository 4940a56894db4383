"""Канонические формы квадратных матриц относительно одновременной перестановки индексов.

Алгоритм: итеративное уточнение раскраски вершин (цвет вершины - её собственная
метка плюс мультимножество (вес ребра, цвет соседа)), затем индивидуализация
первой неодноэлементной клетки с перебором всех её вершин. Минимальная кодировка
по всем листьям дерева поиска является канонической.
"""

import hashlib
import logging
import math
from dataclasses import dataclass
from typing import Hashable, Sequence

from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import RankCapExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class SeedKey:
    """Каноническая байтовая кодировка класса эквивалентности сида."""

    data: bytes

    @property
    def digest(self) -> str:
        return hashlib.blake2b(self.data, digest_size=8).hexdigest()

    def __str__(self) -> str:
        return self.digest


def _relabel(signatures: list) -> list[int]:
    ranks = {value: rank for rank, value in enumerate(sorted(set(signatures)))}
    return [ranks[value] for value in signatures]


def _refine(matrix: Sequence[Sequence[int]], labels: list[int]) -> list[int]:
    size = len(matrix)
    cells = len(set(labels))
    while True:
        signatures = []
        for i in range(size):
            around = sorted(
                (labels[j], matrix[i][j], matrix[j][i])
                for j in range(size)
                if j != i and (matrix[i][j] or matrix[j][i])
            )
            signatures.append((labels[i], tuple(around)))
        labels = _relabel(signatures)
        refined = len(set(labels))
        if refined == cells:
            return labels
        cells = refined


def _encode(matrix: Sequence[Sequence[int]], colors: Sequence[str], order: Sequence[int]) -> tuple:
    return (
        tuple(colors[i] for i in order),
        tuple(tuple(matrix[i][j] for j in order) for i in order),
    )


def canonical_labeling(
    matrix: Sequence[Sequence[int]],
    colors: Sequence[Hashable] | None = None,
    rank_cap: int | None = None,
) -> tuple[bytes, tuple[int, ...]]:
    """Каноническая кодировка и порядок вершин матрицы с раскрашенными вершинами.

    :param Sequence matrix: квадратная целочисленная матрица.
    :param Sequence colors: цвет каждой вершины (участвует в сравнении через repr).
    :param int rank_cap: порог, выше которого перебор ограничен cap! листьями.

    Возвращает пару (key, order): order[p] - исходный индекс вершины,
    стоящей в канонической позиции p.
    """
    size = len(matrix)
    rank_cap = settings.WEAVECLUST_KEY_RANK_CAP if rank_cap is None else rank_cap
    colors = [repr(color) for color in (colors if colors is not None else [""] * size)]
    leaf_limit = math.factorial(rank_cap) if size > rank_cap else None

    best: tuple | None = None
    best_order: tuple[int, ...] = tuple(range(size))
    leaves = 0
    stack = [_refine(matrix, _relabel(colors))]
    while stack:
        labels = stack.pop()
        if len(set(labels)) == size:
            leaves += 1
            if leaf_limit is not None and leaves > leaf_limit:
                error_msg = format_lazy(
                    _("Canonical form search exceeded {limit} leaves at rank {rank}"),
                    limit=leaf_limit,
                    rank=size,
                )
                logger.warning(error_msg)
                raise RankCapExceeded(error_msg)
            order = tuple(sorted(range(size), key=labels.__getitem__))
            encoding = _encode(matrix, colors, order)
            if best is None or encoding < best:
                best, best_order = encoding, order
            continue
        counts: dict[int, int] = {}
        for label in labels:
            counts[label] = counts.get(label, 0) + 1
        target = min(label for label, count in counts.items() if count > 1)
        for vertex in reversed([i for i in range(size) if labels[i] == target]):
            individualized = [2 * label + 1 for label in labels]
            individualized[vertex] -= 1
            stack.append(_refine(matrix, individualized))
    return repr((size, best)).encode(), best_order


def position_map(source_order: Sequence[int], target_order: Sequence[int]) -> tuple[int, ...]:
    """Перестановка индексов source -> target, совмещающая канонические позиции."""
    mapping = [0] * len(source_order)
    for position, index in enumerate(source_order):
        mapping[index] = target_order[position]
    return tuple(mapping)
