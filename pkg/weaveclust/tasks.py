import logging

from celery import group, shared_task
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.canonical import SeedKey
from weaveclust.seeds import AnySeed, seed_from_dict

logger = logging.getLogger(__name__)


def _started(task) -> None:
    msg = format_lazy(_("Celery task '{name}' {id} started"), name=task.name.split(".")[-1], id=task.request.id)
    logger.info(msg)


@shared_task(bind=True)
def expand_frontier(self, seeds: list[dict]) -> list[list[list]]:
    """Задача Celery: мутация каждого сида части уровня во всех индексах.

    :param list[dict] seeds: сиды в JSON-представлении (to_dict)
    :return list[list[list]]: для каждого сида - тройки [сид-потомок, ключ в hex, порядок вершин]
    """
    _started(self)
    result = []
    for data in seeds:
        seed = seed_from_dict(data)
        children = []
        for k in range(seed.rank):
            child = seed.mutate(k)
            key, order = child.canonical()
            children.append([child.to_dict(), key.data.hex(), list(order)])
        result.append(children)
    return result


def expand_level_in_workers(seeds: list[AnySeed], jobs: int) -> list[list[tuple[AnySeed, SeedKey, tuple[int, ...]]]]:
    """Раздать уровень поиска jobs задачам expand_frontier и собрать ответы в исходном порядке."""
    payload = [seed.to_dict() for seed in seeds]
    size = max(1, -(-len(payload) // jobs))
    chunks = [payload[start : start + size] for start in range(0, len(payload), size)]
    answers = group(expand_frontier.s(chunk) for chunk in chunks).apply_async().get()
    merged = []
    for answer in answers:
        for children in answer:
            merged.append(
                [(seed_from_dict(child), SeedKey(bytes.fromhex(key)), tuple(order)) for child, key, order in children]
            )
    return merged


@shared_task(bind=True)
def run_check(self, suite: str, name: str, seed: int | None = None) -> dict:
    """Задача Celery: одна проверка набора verify.

    :param str suite: имя набора
    :param str name: имя проверки внутри набора
    :param int | None seed: зерно случайных последовательностей (None - WEAVECLUST_SEED)
    :return dict: результат проверки (CheckResult.to_dict)
    """
    from weaveclust.verify import run_named_check

    _started(self)
    try:
        return run_named_check(suite, name, seed).to_dict()
    except Exception as exc:
        error_msg = format_lazy(
            _("Exception in celery task '{name}' {id}. Error: {error}"),
            name=self.name.split(".")[-1],
            id=self.request.id,
            error=exc,
        )
        logger.exception(error_msg)
        raise


def run_checks_in_workers(pairs: list[tuple[str, str]], seed: int | None = None) -> list[dict]:
    """Раздать проверки (набор, имя) задачам run_check; ответы в порядке pairs."""
    return group(run_check.s(suite, name, seed) for suite, name in pairs).apply_async().get()
