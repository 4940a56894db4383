import json
import logging

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _
from rest_framework import serializers
from rest_framework.exceptions import ValidationError

from weaveclust.braids import BraidWord
from weaveclust.exceptions import MalformedInput
from weaveclust.folding import GroupAction
from weaveclust.mutation import ExchangeMatrix
from weaveclust.ngraph.cycles import NGraphWithCycles
from weaveclust.ngraph.graph import DEGREES, graph_from_dict
from weaveclust.seeds import seed_from_dict

logger = logging.getLogger(__name__)


def _rectangular(rows: list[list[int]]) -> list[list[int]]:
    if not rows or any(len(row) != len(rows[0]) for row in rows):
        error_msg = _("Matrix rows must be non-empty and of equal length")
        logger.warning(error_msg)
        raise ValidationError(error_msg)
    return rows


class MatrixSerializer(serializers.Serializer):
    """Serializer-class матрицы обмена.

    Пример принимаемых данных (в формате JSON):
        {
            "matrix": [[0, 1], [-3, 0]]
        }
    Нижние строки сверх квадратной части считаются замороженными.
    """

    matrix = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()))

    def validate_matrix(self, rows: list[list[int]]) -> list[list[int]]:
        return _rectangular(rows)

    def create(self, validated_data: dict) -> ExchangeMatrix:
        return ExchangeMatrix(validated_data["matrix"])


class SeedSerializer(MatrixSerializer):
    """Serializer-class сида.

    Пример принимаемых данных (в формате JSON):
        {
            "backend": "pc" | "y",
            "matrix": [[0, 1], [-1, 0]],
            "c": [[1, 0], [0, 1]],       # опционально, только для "pc"
            "coeffs": ["y1", "1/y2"]     # опционально, только для "y"
        }
    """

    backend = serializers.ChoiceField(choices=["pc", "y"], default="pc")
    c = serializers.ListField(child=serializers.ListField(child=serializers.IntegerField()), required=False)
    coeffs = serializers.ListField(child=serializers.CharField(), required=False)

    def create(self, validated_data: dict):
        return seed_from_dict(validated_data)


class ActionSerializer(serializers.Serializer):
    """Serializer-class действия группы: образующие в циклической записи, нумерация с единицы.

    Пример принимаемых данных (в формате JSON):
        {
            "degree": 4,
            "generators": [[[2, 3, 4]]]
        }
    """

    degree = serializers.IntegerField(min_value=1)
    generators = serializers.ListField(
        child=serializers.ListField(child=serializers.ListField(child=serializers.IntegerField(min_value=1)))
    )

    def create(self, validated_data: dict) -> GroupAction:
        return GroupAction.from_cycles(validated_data["degree"], validated_data["generators"])


class BraidSerializer(serializers.Serializer):
    """Serializer-class положительного слова: "s2 s1^3 s2" или имя семейства."""

    word = serializers.CharField(allow_blank=True)
    strands = serializers.IntegerField(min_value=1, required=False)

    def create(self, validated_data: dict) -> BraidWord:
        return BraidWord.parse(validated_data["word"], validated_data.get("strands"))


class VertexSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    kind = serializers.ChoiceField(choices=sorted(DEGREES))
    colors = serializers.ListField(child=serializers.IntegerField(min_value=1), min_length=1, max_length=2)
    rot = serializers.ListField(child=serializers.IntegerField(min_value=0))

    def validate(self, attrs: dict) -> dict:
        if len(attrs["rot"]) != DEGREES[attrs["kind"]]:
            error_msg = format_lazy(
                _("Vertex {id} of kind {kind} lists {count} half-edges"),
                id=attrs["id"],
                kind=attrs["kind"],
                count=len(attrs["rot"]),
            )
            logger.warning(error_msg)
            raise ValidationError(error_msg)
        return attrs


class EdgeSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    color = serializers.IntegerField(min_value=1)
    ends = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2)


class CycleSerializer(serializers.Serializer):
    kind = serializers.CharField(required=False)
    edges = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)

    def get_fields(self):
        fields = super().get_fields()
        # "class" - зарезервированное слово, поле объявляется здесь
        fields["class"] = serializers.ChoiceField(choices=["+", "-"], allow_null=True, required=False)
        return fields


class NGraphSerializer(serializers.Serializer):
    """Serializer-class N-графа (на диске, при наличии циклов - с циклами; на кольце - с outer/inner).

    Пример принимаемых данных (в формате JSON):
        {
            "sheets": 2,
            "vertices": [{"id": 0, "kind": "boundary", "colors": [1], "rot": [0]}, ...],
            "edges": [{"id": 0, "color": 1, "ends": [0, 1]}, ...],
            "boundary": [0, 2, 4, 6],
            "cycles": [{"kind": "I", "edges": [3], "class": "+"}]
        }
    Полуребро h принадлежит ребру h // 2.
    """

    sheets = serializers.IntegerField(min_value=2)
    vertices = VertexSerializer(many=True)
    edges = EdgeSerializer(many=True)
    boundary = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    outer = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    inner = serializers.ListField(child=serializers.IntegerField(min_value=0), required=False)
    cycles = CycleSerializer(many=True, required=False)

    def create(self, validated_data: dict):
        if "cycles" in validated_data:
            return NGraphWithCycles.from_dict(validated_data)
        return graph_from_dict(validated_data)


def deserialize(serializer_class, data):
    """Проверка данных сериализатором; ValidationError превращается в MalformedInput."""
    serializer = serializer_class(data=data)
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as err:
        error_msg = format_lazy(_("Invalid input: {errors}"), errors=json.dumps(err.detail, default=str))
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return serializer.save()


def load_json(path: str):
    """Чтение JSON-файла; ошибки чтения и разбора - MalformedInput."""
    try:
        with open(path, encoding="utf-8") as stream:
            return json.load(stream)
    except (OSError, json.JSONDecodeError) as err:
        error_msg = format_lazy(_("Cannot read JSON from {path}: {error}"), path=path, error=err)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def dump_json(data) -> str:
    """Детерминированный JSON: ключи отсортированы, ленивые строки приведены к str."""
    return json.dumps(data, sort_keys=True, ensure_ascii=False, default=str)
