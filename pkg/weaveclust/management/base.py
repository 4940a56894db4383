"""Общая часть management-команд: вывод JSON/DOT, разбор входных данных, коды завершения."""

import json
import logging
from dataclasses import dataclass
from typing import Callable

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.dynkin import parse_type
from weaveclust.exceptions import BudgetExhausted, MalformedInput, WeaveclustError
from weaveclust.mutation import ExchangeMatrix, type_matrix
from weaveclust.serializers import MatrixSerializer, SeedSerializer, deserialize, dump_json, load_json

logger = logging.getLogger(__name__)


@dataclass
class Output:
    """Результат команды: данные для JSON и, если есть, построитель DOT или готовый текст."""

    data: object
    dot: Callable[[], str] | None = None
    text: str | None = None


class WeaveclustCommand(BaseCommand):
    """Базовый класс команд.

    Подкласс реализует perform(options) -> Output. Исключения приложения
    превращаются в CommandError с кодом завершения исключения; при исчерпании
    бюджета частичный результат выводится до выхода с кодом 3.
    """

    formats = ("json", "dot")
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument("--format", choices=self.formats, default="json")
        parser.add_argument("--out", help="write output to this file instead of stdout")

    def perform(self, options: dict) -> Output:
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            self.emit(self.perform(options), options)
        except BudgetExhausted as err:
            if err.partial is not None:
                self.emit(err.partial, options)
            raise CommandError(str(err.detail), returncode=err.exit_code)
        except WeaveclustError as err:
            raise CommandError(str(err.detail), returncode=err.exit_code)

    def emit(self, output: Output, options: dict) -> None:
        match options["format"]:
            case "dot":
                if output.dot is None:
                    error_msg = format_lazy(_("Command '{name}' has no DOT output"), name=self.name)
                    logger.warning(error_msg)
                    raise MalformedInput(error_msg)
                content = output.dot()
            case "table":
                content = output.text
            case _:
                content = dump_json(output.data) + "\n"
        if options.get("out"):
            with open(options["out"], "w", encoding="utf-8") as stream:
                stream.write(content)
        else:
            self.stdout.write(content, ending="")

    @property
    def name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    @staticmethod
    def budget(options: dict) -> int:
        value = options.get("max_nodes")
        return settings.WEAVECLUST_BUDGET if value is None else value


class MatrixInputMixin:
    """Миксин входной матрицы: --type, --matrix (JSON-строка) или --input (JSON-файл)."""

    def add_matrix_arguments(self, parser, backend: bool = False, required: bool = True) -> None:
        group = parser.add_mutually_exclusive_group(required=required)
        group.add_argument("--type", help="Dynkin type such as A3, Dtilde5, E6^(2)")
        group.add_argument("--matrix", help="exchange matrix as JSON, e.g. [[0,1],[-3,0]]")
        group.add_argument("--input", help="JSON file with a matrix or a seed")
        if backend:
            parser.add_argument("--backend", choices=("pc", "y"), default="pc")

    def matrix_from(self, options: dict) -> ExchangeMatrix:
        if options.get("type"):
            return type_matrix(parse_type(options["type"]))
        if not options.get("matrix") and not options.get("input"):
            error_msg = _("One of --type, --matrix or --input is required")
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        return deserialize(MatrixSerializer, self.json_from(options))

    def seed_from(self, options: dict):
        """Сид из --input (с backend внутри файла) или начальный сид матрицы с выбранным --backend."""
        if options.get("input"):
            data = load_json(options["input"])
            if isinstance(data, dict) and "backend" not in data:
                data = {**data, "backend": options.get("backend", "pc")}
            return deserialize(SeedSerializer, data)
        matrix = self.matrix_from(options)
        return deserialize(SeedSerializer, {"matrix": matrix.to_list(), "backend": options.get("backend", "pc")})

    @staticmethod
    def json_from(options: dict) -> dict:
        if options.get("input"):
            data = load_json(options["input"])
            return data if isinstance(data, dict) else {"matrix": data}
        try:
            return {"matrix": json.loads(options["matrix"])}
        except json.JSONDecodeError as err:
            error_msg = format_lazy(_("Cannot parse --matrix: {error}"), error=err)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)


def one_based(values) -> list[int]:
    """Индексы командной строки (с единицы) в индексы API (с нуля)."""
    result = []
    for value in values or ():
        if value < 1:
            error_msg = format_lazy(_("Indices start at 1, got {value}"), value=value)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        result.append(value - 1)
    return result
