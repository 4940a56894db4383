from typing import TypeAlias

import factory

from weaveclust.braids import BraidWord
from weaveclust.dynkin import parse_type
from weaveclust.mutation import ExchangeMatrix, type_matrix
from weaveclust.ngraph import build_linear, build_tripod
from weaveclust.seeds import PCSeed, YSeed


class ExchangeMatrixFactory(factory.Factory):
    """Фабрика матриц обмена: двудольная ориентация диаграммы Дынкина.

    Примеры использования:
        >>> ExchangeMatrixFactory().to_list()
        [[0, 1, 0], [-1, 0, -1], [0, 1, 0]]
        >>> ExchangeMatrixFactory(rows=[[0, 1], [-3, 0]]).to_list()
        [[0, 1], [-3, 0]]
    """

    rows: list[list[int]] = factory.LazyAttribute(lambda obj: type_matrix(parse_type(obj.type_name)).to_list())

    class Meta:
        model = ExchangeMatrix

    class Params:
        type_name = "A3"


class PCSeedFactory(factory.Factory):
    """Фабрика начальных сидов с главными коэффициентами."""

    matrix: ExchangeMatrix = factory.SubFactory(ExchangeMatrixFactory)

    class Meta:
        model = PCSeed


class YSeedFactory(factory.Factory):
    """Фабрика начальных Y-сидов (свободные коэффициенты y1..yn)."""

    matrix: ExchangeMatrix = factory.SubFactory(ExchangeMatrixFactory)

    class Meta:
        model = YSeed.initial


class BraidWordFactory(factory.Factory):
    """Фабрика положительных слов на трёх нитях со случайными буквами."""

    strands: int = 3
    letters: list[int] = factory.Faker("random_elements", elements=(1, 2), length=6, unique=False)

    class Meta:
        model = BraidWord


class TripodFactory(factory.Factory):
    """Фабрика N-графов G(a,b,c) с циклами."""

    a: int = 2
    b: int = 2
    c: int = 2

    class Meta:
        model = build_tripod


class LinearNGraphFactory(factory.Factory):
    """Фабрика линейных 2-графов G(Aₙ) с циклами."""

    n: int = 3

    class Meta:
        model = build_linear


FACTORIES: TypeAlias = (
    ExchangeMatrixFactory | PCSeedFactory | YSeedFactory | BraidWordFactory | TripodFactory | LinearNGraphFactory
)


def factory_wrapper(size: int | None = None, /, _base_factory: FACTORIES | None = None, **kwargs):
    if size is not None:
        return _base_factory.create_batch(size, **kwargs)
    return _base_factory.create(**kwargs)
