"""Программная точка входа: weaveclust.cli.run(["exchange-graph", "--type", "D4", "--count"]).

Имена подкоманд с дефисом отображаются на management-команды приложения;
возвращается код завершения (0, 1, 2 или 3).
"""

import logging
import os
import sys

import django
from django.core.management import load_command_class

logger = logging.getLogger(__name__)

COMMANDS = ("classify", "mutate", "exchange-graph", "coxeter", "fold", "braid", "brick", "ngraph", "verify")
USAGE = "usage: weaveclust {" + ",".join(COMMANDS) + "} [options]\n"


def run(argv: list[str]) -> int:
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(USAGE)
        return 2
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "main.settings")
    django.setup()
    name = argv[0].replace("-", "_")
    command = load_command_class("weaveclust", name)
    try:
        command.run_from_argv(["weaveclust", name, *argv[1:]])
    except SystemExit as stop:
        return stop.code if isinstance(stop.code, int) else 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
