import functools

import pytest
from pytest_django.fixtures import SettingsWrapper
from pytest_django.lazy_django import skip_if_no_django

from main.celery import app as celery_app
from weaveclust.cli import run
from tests.utils import (
    BraidWordFactory,
    ExchangeMatrixFactory,
    LinearNGraphFactory,
    PCSeedFactory,
    TripodFactory,
    YSeedFactory,
    factory_wrapper,
)


@pytest.fixture(scope="session", autouse=True)
def testing_environment():
    skip_if_no_django()

    settings = SettingsWrapper()
    settings.CELERY_TASK_ALWAYS_EAGER = True
    settings.CELERY_TASK_STORE_EAGER_RESULT = False
    settings.CELERY_RESULT_BACKEND = "cache+memory://"
    settings.WEAVECLUST_SEED = 0
    celery_app.conf.update(task_always_eager=True, task_store_eager_result=False, result_backend="cache+memory://")
    yield
    settings.finalize()


@pytest.fixture(scope="session")
def matrix_factory():
    return functools.partial(factory_wrapper, _base_factory=ExchangeMatrixFactory)


@pytest.fixture(scope="session")
def pc_seed_factory():
    return functools.partial(factory_wrapper, _base_factory=PCSeedFactory)


@pytest.fixture(scope="session")
def y_seed_factory():
    return functools.partial(factory_wrapper, _base_factory=YSeedFactory)


@pytest.fixture(scope="session")
def braid_factory():
    return functools.partial(factory_wrapper, _base_factory=BraidWordFactory)


@pytest.fixture(scope="session")
def tripod_factory():
    return functools.partial(factory_wrapper, _base_factory=TripodFactory)


@pytest.fixture(scope="session")
def linear_factory():
    return functools.partial(factory_wrapper, _base_factory=LinearNGraphFactory)


@pytest.fixture(scope="function")
def cli(capsys):
    """Фикстура запуска подкоманды: возвращает (код завершения, stdout, stderr).

    Примеры:
        >>> cli("mutate", "--matrix", "[[0,1],[-3,0]]", "--at", "1")
        (0, '{"matrix": [[0, -1], [3, 0]]}\\n', '')
    """

    def invoke(*argv: str) -> tuple[int, str, str]:
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
