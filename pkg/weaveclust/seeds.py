"""Сиды трёх видов: Y-сиды, x-сиды и сиды с главными коэффициентами (PC).

Все сиды неизменяемы и предоставляют общий интерфейс:
    - rank: число мутируемых индексов;
    - matrix: квадратная главная часть матрицы обмена;
    - mutate(k): мутация в индексе k (нумерация с нуля);
    - canonical(): пара (SeedKey, порядок вершин) с точностью до перестановки индексов;
    - labeled_key(): точная кодировка без учёта перестановок;
    - to_dict(): JSON-представление (индексы внутри списков, нумерация неявная).
"""

import logging
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.canonical import SeedKey, canonical_labeling
from weaveclust.exceptions import MalformedInput, RankCapExceeded
from weaveclust.mutation import (
    ExchangeMatrix,
    MutationSequence,
    check_index,
    mutate_matrix,
)
from weaveclust.rational import RationalFunction

logger = logging.getLogger(__name__)


def _require_square(matrix: ExchangeMatrix, kind: str) -> None:
    if not matrix.is_square:
        error_msg = format_lazy(
            _("{kind} needs a square exchange matrix, got {m}x{n}"), kind=kind, m=matrix.m, n=matrix.n
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def _check_rank_cap(rank: int, cap: int, kind: str) -> None:
    if rank > cap:
        error_msg = format_lazy(
            _("{kind} arithmetic is capped at rank {cap}, got rank {rank}"), kind=kind, cap=cap, rank=rank
        )
        logger.warning(error_msg)
        raise RankCapExceeded(error_msg)


class PCSeed:
    """Сид с главными коэффициентами: пара (B, C), хранимая как матрица 2n×n (B над C)."""

    backend = "pc"

    def __init__(self, matrix: ExchangeMatrix, c_matrix=None):
        _require_square(matrix, "PCSeed")
        size = matrix.n
        c_matrix = np.eye(size, dtype=np.int64) if c_matrix is None else np.array(c_matrix, dtype=np.int64)
        if c_matrix.shape != (size, size):
            error_msg = format_lazy(_("C-matrix must be {n}x{n}, got shape {shape}"), n=size, shape=c_matrix.shape)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        self.stacked = ExchangeMatrix._trusted(np.vstack([matrix.entries, c_matrix]))

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "PCSeed":
        return cls(matrix)

    @classmethod
    def _from_stacked(cls, stacked: ExchangeMatrix) -> "PCSeed":
        seed = cls.__new__(cls)
        seed.stacked = stacked
        return seed

    @property
    def rank(self) -> int:
        return self.stacked.n

    @cached_property
    def matrix(self) -> ExchangeMatrix:
        return ExchangeMatrix._trusted(self.stacked.principal.copy())

    @property
    def c_matrix(self) -> np.ndarray:
        return self.stacked.frozen

    def mutate(self, k: int) -> "PCSeed":
        return pc_mutate(self, k)

    def permuted(self, order: Sequence[int]) -> "PCSeed":
        return PCSeed._from_stacked(self.stacked.permuted(order))

    def canonical(self) -> tuple[SeedKey, tuple[int, ...]]:
        colors = [tuple(int(v) for v in self.c_matrix[:, j]) for j in range(self.rank)]
        data, order = canonical_labeling(self.stacked.principal, colors)
        return SeedKey(b"pc" + data), order

    def labeled_key(self) -> bytes:
        return self.stacked.entries.tobytes() + bytes([self.rank])

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "matrix": self.matrix.to_list(),
            "c": self.c_matrix.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PCSeed":
        return cls(ExchangeMatrix(data["matrix"]), data.get("c"))

    def __eq__(self, other) -> bool:
        return isinstance(other, PCSeed) and self.stacked == other.stacked

    def __hash__(self) -> int:
        return hash(self.stacked)

    def __repr__(self) -> str:
        return f"PCSeed(B={self.matrix.to_list()}, C={self.c_matrix.tolist()})"


def pc_mutate(seed: PCSeed, k: int) -> PCSeed:
    """Мутация сида с главными коэффициентами как мутация составной матрицы (B над C)."""
    check_index(seed.stacked, k)
    return PCSeed._from_stacked(mutate_matrix(seed.stacked, k))


class YSeed:
    """Y-сид: кортеж коэффициентов (рациональные функции от y1..yn) и матрица обмена."""

    backend = "y"

    def __init__(self, coefficients: Iterable[RationalFunction], matrix: ExchangeMatrix):
        _require_square(matrix, "YSeed")
        self.coefficients = tuple(coefficients)
        self.matrix = matrix
        if len(self.coefficients) != matrix.n:
            error_msg = format_lazy(
                _("Y-seed needs {n} coefficients, got {count}"), n=matrix.n, count=len(self.coefficients)
            )
            logger.warning(error_msg)
            raise MalformedInput(error_msg)

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "YSeed":
        """Y-сид со свободными переменными y1..yn (алгебраически независимые коэффициенты)."""
        _require_square(matrix, "YSeed")
        _check_rank_cap(matrix.n, settings.WEAVECLUST_Y_RANK_CAP, "Y-seed")
        count = matrix.n
        return cls([RationalFunction.variable(i, count) for i in range(1, count + 1)], matrix)

    @property
    def rank(self) -> int:
        return self.matrix.n

    def mutate(self, k: int) -> "YSeed":
        return y_mutate(self, k)

    def permuted(self, order: Sequence[int]) -> "YSeed":
        return YSeed([self.coefficients[i] for i in order], self.matrix.permuted(order))

    def canonical(self) -> tuple[SeedKey, tuple[int, ...]]:
        colors = [str(coefficient) for coefficient in self.coefficients]
        data, order = canonical_labeling(self.matrix.principal, colors)
        return SeedKey(b"y" + data), order

    def labeled_key(self) -> bytes:
        return repr((self.matrix.rows, [str(c) for c in self.coefficients])).encode()

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "matrix": self.matrix.to_list(),
            "coeffs": [str(coefficient) for coefficient in self.coefficients],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "YSeed":
        matrix = ExchangeMatrix(data["matrix"])
        coefficients = data.get("coeffs")
        if coefficients is None:
            return cls.initial(matrix)
        return cls([RationalFunction.parse(text, matrix.n) for text in coefficients], matrix)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, YSeed)
            and self.matrix == other.matrix
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        return hash((self.matrix, self.coefficients))

    def __repr__(self) -> str:
        return f"YSeed({[str(c) for c in self.coefficients]}, {self.matrix.to_list()})"


def y_mutate(seed: YSeed, k: int) -> YSeed:
    """Мутация Y-сида: y'_k = 1/y_k, y'_i = y_i · y_k^[b_ik]₊ · (1 + y_k)^(−b_ik)."""
    check_index(seed.matrix, k)
    principal = seed.matrix.principal
    pivot = seed.coefficients[k]
    coefficients = []
    for i, coefficient in enumerate(seed.coefficients):
        if i == k:
            coefficients.append(pivot.inverse())
            continue
        exponent = int(principal[i, k])
        if exponent:
            coefficient = coefficient * pivot ** max(exponent, 0) * (pivot + 1) ** (-exponent)
        coefficients.append(coefficient)
    return YSeed(coefficients, mutate_matrix(seed.matrix, k))


class XSeed:
    """x-сид: кластер x1..xm и матрица обмена m×n; замороженные переменные не мутируют."""

    backend = "x"

    def __init__(self, cluster: Iterable[RationalFunction], matrix: ExchangeMatrix):
        self.cluster = tuple(cluster)
        self.matrix = matrix
        if len(self.cluster) != matrix.m:
            error_msg = format_lazy(_("x-seed needs {m} variables, got {count}"), m=matrix.m, count=len(self.cluster))
            logger.warning(error_msg)
            raise MalformedInput(error_msg)

    @classmethod
    def initial(cls, matrix: ExchangeMatrix) -> "XSeed":
        _check_rank_cap(matrix.n, settings.WEAVECLUST_X_RANK_CAP, "x-seed")
        count = matrix.m
        return cls([RationalFunction.variable(i, count, "x") for i in range(1, count + 1)], matrix)

    @property
    def rank(self) -> int:
        return self.matrix.n

    def mutate(self, k: int) -> "XSeed":
        return x_mutate(self, k)

    def permuted(self, order: Sequence[int]) -> "XSeed":
        frozen = list(range(self.matrix.n, self.matrix.m))
        cluster = [self.cluster[i] for i in list(order) + frozen]
        return XSeed(cluster, self.matrix.permuted(order))

    def canonical(self) -> tuple[SeedKey, tuple[int, ...]]:
        colors = [
            (str(self.cluster[j]), tuple(int(v) for v in self.matrix.frozen[:, j]))
            for j in range(self.rank)
        ]
        data, order = canonical_labeling(self.matrix.principal, colors)
        return SeedKey(b"x" + data), order

    def labeled_key(self) -> bytes:
        return repr((self.matrix.rows, [str(x) for x in self.cluster])).encode()

    def to_dict(self) -> dict:
        return {
            "backend": self.backend,
            "matrix": self.matrix.to_dict(),
            "cluster": [str(x) for x in self.cluster],
        }

    def __eq__(self, other) -> bool:
        return isinstance(other, XSeed) and self.matrix == other.matrix and self.cluster == other.cluster

    def __hash__(self) -> int:
        return hash((self.matrix, self.cluster))

    def __repr__(self) -> str:
        return f"XSeed({[str(x) for x in self.cluster]}, {self.matrix.to_list()})"


def x_mutate(seed: XSeed, k: int) -> XSeed:
    """Обменное соотношение x'_k = (∏_{b_jk>0} x_j^b_jk + ∏_{b_jk<0} x_j^(−b_jk)) / x_k."""
    check_index(seed.matrix, k)
    _check_rank_cap(seed.rank, settings.WEAVECLUST_X_RANK_CAP, "x-seed")
    column = seed.matrix.entries[:, k]
    positive = negative = 1
    for j, value in enumerate(column):
        value = int(value)
        if value > 0:
            positive = seed.cluster[j] ** value * positive
        elif value < 0:
            negative = seed.cluster[j] ** (-value) * negative
    cluster = list(seed.cluster)
    cluster[k] = (seed.cluster[k].inverse()) * (positive + negative)
    return XSeed(cluster, mutate_matrix(seed.matrix, k))


AnySeed = PCSeed | YSeed | XSeed


def canonical_key(seed: AnySeed) -> SeedKey:
    """Ключ класса эквивалентности сида (перестановки мутируемых индексов)."""
    return seed.canonical()[0]


def apply_sequence(seed: AnySeed, sequence: MutationSequence | Iterable[int]) -> AnySeed:
    """Применение последовательности мутаций справа налево."""
    if not isinstance(sequence, MutationSequence):
        sequence = MutationSequence(tuple(sequence))
    for k in sequence.application_order():
        seed = seed.mutate(k)
    return seed


def seed_from_dict(data: dict) -> AnySeed:
    match data.get("backend", "pc"):
        case "pc":
            return PCSeed.from_dict(data)
        case "y":
            return YSeed.from_dict(data)
    error_msg = format_lazy(_("Unknown seed backend '{backend}'"), backend=data.get("backend"))
    logger.warning(error_msg)
    raise MalformedInput(error_msg)


def initial_seed(matrix: ExchangeMatrix, backend: str = "pc") -> AnySeed:
    match backend:
        case "pc":
            return PCSeed.initial(matrix)
        case "y":
            return YSeed.initial(matrix)
        case "x":
            return XSeed.initial(matrix)
    error_msg = format_lazy(_("Unknown seed backend '{backend}'"), backend=backend)
    logger.warning(error_msg)
    raise MalformedInput(error_msg)
