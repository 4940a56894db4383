import logging

import pytest

from weaveclust.formatters import WeaveclustFormatter


def make_record(level: int = logging.WARNING) -> logging.LogRecord:
    return logging.LogRecord("weaveclust.mutation", level, __file__, 1, "Index 5 is out of range", None, None)


class TestWeaveclustFormatter:
    def test_plain_format_success(self):
        formatter = WeaveclustFormatter("{levelname} {name}: {message}", style="{", colored=False)

        assert formatter.format(make_record()) == "WARNING weaveclust.mutation: Index 5 is out of range"

    def test_colored_format_success(self):
        formatter = WeaveclustFormatter("{levelname}|{message}", style="{", colored=True)
        record = make_record(logging.ERROR)

        line = formatter.format(record)

        assert line.startswith("\033[31mERROR")
        assert record.levelname == "ERROR"

    def test_server_time_success(self):
        formatter = WeaveclustFormatter("[{server_time}] {message}", style="{", colored=False)
        record = make_record()

        formatter.format(record)

        assert hasattr(record, "server_time")

    @pytest.mark.parametrize("present, expected", [(True, False), (False, True)])
    def test_no_color_environment_success(self, monkeypatch, present, expected):
        if present:
            monkeypatch.setenv("NO_COLOR", "1")
        else:
            monkeypatch.delenv("NO_COLOR", raising=False)

        assert WeaveclustFormatter("{message}", style="{").use_colors() is expected
