"""Наборы проверок verify.

Каждая проверка - функция без аргументов, возвращающая пару (успех, измеренное
значение). Проверки регистрируются в наборах при импорте модуля; медленные
помечены флагом slow и запускаются только по явному запросу.
"""

import logging
from dataclasses import dataclass
from functools import partial
from typing import Callable

from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.braids import (
    BraidWord,
    braid_equivalent,
    brick_type,
    conjugate_word,
    family_word,
    stabilize_closure,
)
from weaveclust.dynkin import (
    catalog,
    cartan_matrix,
    classify_cartan,
    coxeter_number,
    find_isomorphism,
    parse_type,
    seed_count,
)
from weaveclust.exceptions import MalformedInput, WeaveclustError
from weaveclust.exchange import coxeter_orbit, coxeter_order, exchange_graph, graphs_isomorphic
from weaveclust.folding import (
    catalog_triples,
    coxeter_compatibility,
    find_triple,
    fold_matrix,
    folded_exchange_graph,
    invariant_census,
    is_globally_foldable,
)
from weaveclust.mutation import ExchangeMatrix, cartan_counterpart, classify_type, is_bipartite, type_matrix
from weaveclust.ngraph import (
    Symmetry,
    boundary_word,
    boundary_words_annulus,
    build_affine_d,
    build_linear,
    build_tripod,
    cleanup,
    concatenate,
    coxeter_padding,
    equivariance_check,
    find_isomorphism as find_ngraph_isomorphism,
    inverse,
    is_invariant,
    is_trivial,
    legendrian_coxeter_mutation,
    quiver_from_cycles,
)
from weaveclust.ngraph.symmetry import cycle_images
from weaveclust.seeds import initial_seed

logger = logging.getLogger(__name__)

SUITES = ("dynkin", "seeds", "coxeter", "folding", "braids", "brick", "ngraph", "equivariance", "rotation", "padding")
ALL = "all"
AFFINE_FOLDING_BUDGET = 500


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    anchor: str
    run: Callable[..., tuple[bool, object]]
    slow: bool = False
    seeded: bool = False


@dataclass(frozen=True)
class CheckResult:
    """Итог одной проверки: набор, имя, источник утверждения, статус и измеренное значение."""

    suite: str
    name: str
    anchor: str
    passed: bool
    value: object

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "anchor": self.anchor,
            "passed": self.passed,
            "value": self.value,
        }


_REGISTRY: dict[str, dict[str, Check]] = {suite: {} for suite in SUITES}


def _register(
    suite: str,
    name: str,
    anchor: str,
    run: Callable[..., tuple[bool, object]],
    slow: bool = False,
    seeded: bool = False,
) -> None:
    _REGISTRY[suite][name] = Check(suite, name, anchor, run, slow, seeded)


def _seed_of(type_name: str, backend: str = "pc"):
    return initial_seed(type_matrix(parse_type(type_name)), backend)


def _cyclic_equal(first: BraidWord, second: BraidWord) -> bool:
    if first.strands != second.strands or len(first) != len(second):
        return False
    return any(first.rotated(step) == second for step in range(max(len(first), 1)))


def _tripods(max_sum: int) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for a in range(1, max_sum)
        for b in range(a, max_sum)
        for c in range(b, max_sum)
        if a + b + c <= max_sum
    ]


# dynkin


def _catalog_round_trip() -> tuple[bool, object]:
    items = catalog()
    broken = [str(item) for item in items if parse_type(str(item)) != item]
    return not broken, {"types": len(items), "broken": broken}


def _cartan_classification() -> tuple[bool, object]:
    aliases, missing = {}, []
    for item in catalog():
        found = classify_cartan(cartan_matrix(item))
        if found is None:
            missing.append(str(item))
        elif found != item:
            if find_isomorphism(cartan_matrix(found).rows, cartan_matrix(item).rows) is None:
                missing.append(str(item))
            else:
                aliases[str(item)] = str(found)
    return not missing, {"missing": missing, "aliases": aliases}


COXETER_NUMBERS = {"A4": 5, "B3": 6, "C3": 6, "D5": 8, "E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}


def _coxeter_numbers() -> tuple[bool, object]:
    measured = {name: coxeter_number(parse_type(name)) for name in COXETER_NUMBERS}
    return measured == COXETER_NUMBERS, measured


SEED_COUNTS = {"A2": 5, "A3": 14, "A4": 42, "B2": 6, "B3": 20, "D4": 50, "D5": 182, "G2": 8, "F4": 105, "C3": 20, "E6": 833}


def _seed_count_table() -> tuple[bool, object]:
    measured = {name: seed_count(parse_type(name)) for name in SEED_COUNTS}
    return measured == SEED_COUNTS, measured


_register("dynkin", "catalog round trip", "type names and catalog", _catalog_round_trip)
_register("dynkin", "cartan classification", "generalized Cartan matrices", _cartan_classification)
_register("dynkin", "coxeter numbers", "Coxeter numbers of finite types", _coxeter_numbers)
_register("dynkin", "seed count table", "#seeds row of the enumeration table", _seed_count_table)


# seeds


def _enumerate(type_name: str, expected: int) -> tuple[bool, object]:
    graph = exchange_graph(_seed_of(type_name))
    passed = not graph.partial and graph.node_count == expected and graph.is_regular and graph.verify_edges()
    return passed, graph.node_count


def _backends(type_name: str) -> tuple[bool, object]:
    first = exchange_graph(_seed_of(type_name, "y"))
    second = exchange_graph(_seed_of(type_name, "pc"))
    return graphs_isomorphic(first, second), [first.node_count, second.node_count]


for _type_name, _expected in (("A2", 5), ("A3", 14), ("A4", 42), ("B2", 6), ("B3", 20), ("D4", 50), ("D5", 182)):
    _register("seeds", f"count {_type_name}", "#seeds row of the enumeration table", partial(_enumerate, _type_name, _expected))
_register("seeds", "count E6", "#seeds row of the enumeration table", partial(_enumerate, "E6", 833), slow=True)
for _type_name in ("A2", "A3", "D4"):
    _register("seeds", f"backends {_type_name}", "Y-seeds and principal coefficients", partial(_backends, _type_name))


# coxeter

COXETER_ORDERS = {"A2": 5, "A3": 3, "A4": 7, "D4": 4, "D5": 5, "E6": 7, "B3": 4, "F4": 7, "G2": 4}


def _coxeter_order(type_name: str, expected: int) -> tuple[bool, object]:
    h = coxeter_number(parse_type(type_name))
    formula = (h + 2) // 2 if h % 2 == 0 else h + 2
    measured = coxeter_order(_seed_of(type_name), max(settings.WEAVECLUST_COXETER_DEPTH, expected))
    return measured == expected == formula, {"order": measured, "h": h}


def _coxeter_infinite(type_name: str, iterates: int) -> tuple[bool, object]:
    keys = coxeter_orbit(_seed_of(type_name), iterates - 1)
    distinct = len(set(keys))
    return distinct == iterates, distinct


for _type_name, _expected in COXETER_ORDERS.items():
    _register("coxeter", f"order {_type_name}", "order (h+2)/2 of the Coxeter mutation", partial(_coxeter_order, _type_name, _expected))
for _type_name in ("Dtilde4", "Etilde6"):
    _register("coxeter", f"infinite {_type_name}", "affine Coxeter mutation has infinite order", partial(_coxeter_infinite, _type_name, 12))


# folding

FOLDED_COUNTS = {"A3/Z2": 6, "A5/Z2": 20, "D4/Z2": 20, "D5/Z2": 70, "D4/Z3": 8, "E6/Z2": 105}


def _census(name: str) -> tuple[bool, object]:
    triple = find_triple(name)
    census = invariant_census(triple.matrix, triple.action)
    return census.passed, {"visited": census.visited, "invariant": census.invariant, "admissible": census.admissible}


def _folded_type(name: str) -> tuple[bool, object]:
    triple = find_triple(name)
    found = classify_type(fold_matrix(triple.matrix, triple.action).matrix)
    return found == triple.folded, str(found)


def _folded_count(name: str, expected: int) -> tuple[bool, object]:
    triple = find_triple(name)
    graph = folded_exchange_graph(triple.matrix, triple.action)
    return not graph.partial and graph.node_count == expected, graph.node_count


def _compatibility(name: str) -> tuple[bool, object]:
    triple = find_triple(name)
    results = coxeter_compatibility(triple.matrix, triple.action, settings.WEAVECLUST_COXETER_DEPTH)
    return all(results), sum(results)


def _affine_triple(name: str) -> tuple[bool, object]:
    triple = find_triple(name)
    folded = fold_matrix(triple.matrix, triple.action).matrix
    cartan = cartan_counterpart(folded).rows
    transposed = tuple(zip(*cartan))
    found = {str(classify_cartan(rows)) for rows in (cartan, transposed)}
    foldability = is_globally_foldable(triple.matrix, triple.action, AFFINE_FOLDING_BUDGET)
    passed = str(triple.folded.cartan_type) in found and foldability.result is not False
    return passed, {"cartan": sorted(found), **foldability.to_dict()}


for _triple in catalog_triples(include_affine=False):
    _slow = _triple.name == "E6/Z2"
    _register("folding", f"census {_triple.name}", "invariant quivers are admissible", partial(_census, _triple.name), _slow)
    _register("folding", f"type {_triple.name}", "folded type", partial(_folded_type, _triple.name))
    _register(
        "folding",
        f"count {_triple.name}",
        "#seeds row of the enumeration table",
        partial(_folded_count, _triple.name, FOLDED_COUNTS[_triple.name]),
        _slow,
    )
for _name in ("D4/Z3", "A3/Z2"):
    _register("folding", f"coxeter {_name}", "folding commutes with the Coxeter mutation", partial(_compatibility, _name))
for _triple in catalog_triples():
    if not _triple.is_finite:
        _register("folding", f"affine {_triple.name}", "affine folding table", partial(_affine_triple, _triple.name))


# braids


def _stabilization(n: int, b: int, c: int) -> tuple[bool, object]:
    source = stabilize_closure(family_word("beta0", "A", n))
    target = family_word("beta", 1, b, c)
    found = braid_equivalent(source, target, cyclic=True)
    return found.result is True and found.replay(), {"moves": len(found.trace), "explored": found.explored}


def _braid_relation() -> tuple[bool, object]:
    found = braid_equivalent(BraidWord.parse("s1 s2 s1"), BraidWord.parse("s2 s1 s2"))
    return found.result is True and found.replay() and found.reversed().replay(), len(found.trace)


for _n in range(1, 5):
    for _b in range(1, _n + 1):
        _c = _n + 1 - _b
        if _b <= _c:
            _register(
                "braids",
                f"stabilization A{_n} -> (1,{_b},{_c})",
                "stabilization of the A-type braid",
                partial(_stabilization, _n, _b, _c),
            )
_register("braids", "braid relation", "positive braid moves", _braid_relation)


# brick

BRICK_TYPES = {
    (1, 1, 1): "A1",
    (1, 1, 2): "A2",
    (1, 2, 2): "A3",
    (1, 2, 3): "A4",
    (2, 2, 2): "D4",
    (3, 2, 2): "D5",
    (4, 2, 2): "D6",
    (2, 3, 3): "E6",
    (2, 3, 4): "E7",
    (2, 3, 5): "E8",
    (3, 3, 3): "Etilde6",
    (2, 4, 4): "Etilde7",
    (2, 3, 6): "Etilde8",
}
SLOW_BRICKS = {(2, 3, 5), (2, 4, 4), (2, 3, 6)}


def _brick(word: BraidWord, expected: str) -> tuple[bool, object]:
    found = brick_type(word)
    return found == parse_type(expected), str(found)


def _brick_rotations(params: tuple[int, int, int], expected: str) -> tuple[bool, object]:
    word = family_word("beta0", *params)
    found = sorted({str(brick_type(word.rotated(step))) for step in range(len(word))})
    return found == [str(parse_type(expected))], found


for _params, _expected in BRICK_TYPES.items():
    _register(
        "brick",
        f"beta0{_params}",
        "brick quiver of the tripod braid",
        partial(_brick, family_word("beta0", *_params), _expected),
        _params in SLOW_BRICKS,
    )
for _n in range(4, 7):
    _register("brick", f"beta0(Dtilde{_n})", "brick quiver of the affine D braid", partial(_brick, family_word("beta0", "Dtilde", _n), f"Dtilde{_n}"))
_register("brick", "rotations beta0(2,2,2)", "cyclic rotation of braid words", partial(_brick_rotations, (2, 2, 2), "D4"))


# ngraph

NGRAPH_TRIPODS = {(1, 1, 1): "A1", (1, 2, 2): "A3", (2, 2, 2): "D4", (2, 2, 3): "D5", (2, 3, 3): "E6", (3, 3, 3): "Etilde6"}


def _quiver_type(builder: Callable, params: tuple, expected: str) -> tuple[bool, object]:
    item = builder(*params)
    item.check_tags()
    matrix: ExchangeMatrix = quiver_from_cycles(item).to_matrix()
    found = classify_type(matrix)
    return found == parse_type(expected) and is_bipartite(matrix) is not None, str(found)


def _boundary(builder: Callable, params: tuple, expected: BraidWord) -> tuple[bool, object]:
    found = boundary_word(builder(*params))
    return found == expected, str(found)


for _n in range(1, 7):
    _register("ngraph", f"linear {_n}", "quiver of the linear N-graph", partial(_quiver_type, build_linear, (_n,), f"A{_n}"))
for _params, _expected in NGRAPH_TRIPODS.items():
    _register("ngraph", f"tripod {_params}", "quiver of the tripod N-graph", partial(_quiver_type, build_tripod, _params, _expected))
for _n in range(4, 7):
    _register("ngraph", f"affine_d {_n}", "quiver of the affine D N-graph", partial(_quiver_type, build_affine_d, (_n,), f"Dtilde{_n}"))
for _n in (1, 4):
    _register("ngraph", f"boundary linear {_n}", "boundary braid of the linear N-graph", partial(_boundary, build_linear, (_n,), family_word("beta", "A", _n)))
for _params in ((1, 2, 2), (2, 3, 3)):
    _register(
        "ngraph",
        f"boundary tripod {_params}",
        "boundary braid of the tripod N-graph",
        partial(_boundary, build_tripod, _params, family_word("beta", *_params)),
    )


# equivariance


def _equivariance(builder: Callable, params: tuple, seed: int | None = None) -> tuple[bool, object]:
    report = equivariance_check(builder(*params), max_length=6, seed=seed)
    return report.passed, {
        "trials": report.trials,
        "mismatches": report.mismatches,
        "unsupported": report.failures,
        "skipped": report.skipped,
        "skipped_cycles": [k + 1 for k in report.skipped_cycles],
    }


for _builder, _params, _name in ((build_tripod, (2, 2, 2), "tripod (2, 2, 2)"), (build_linear, (4,), "linear 4")):
    _register(
        "equivariance",
        _name,
        "Legendrian mutation induces quiver mutation",
        partial(_equivariance, _builder, _params),
        seeded=True,
    )


# rotation


def _rotation(n: int) -> tuple[bool, object]:
    base = build_linear(n)
    mutated = legendrian_coxeter_mutation(base)
    size = len(base.graph.boundary)
    for offset in (1, size - 1):
        found = find_ngraph_isomorphism(mutated, base, offset)
        if found is not None and None not in cycle_images(found, mutated, base):
            return True, offset
    return False, None


for _n in range(1, 6):
    _register("rotation", f"linear {_n}", "Coxeter mutation of the linear N-graph is a rotation", partial(_rotation, _n))


# padding


def _tripod_padding(params: tuple[int, int, int]) -> tuple[bool, object]:
    word = family_word("beta", *params)
    padding = coxeter_padding("tripod", *params)
    outer, inner = boundary_words_annulus(padding)
    glued = concatenate(padding, build_tripod(*params).conjugated())
    passed = _cyclic_equal(outer, word) and _cyclic_equal(inner, conjugate_word(word)) and boundary_word(glued) == word
    return passed, {"outer": str(outer), "inner": str(inner), "vertices": len(padding.interior)}


def _affine_padding(n: int) -> tuple[bool, object]:
    word = family_word("beta", "Dtilde", n)
    padding = coxeter_padding("affine_d", n)
    outer, inner = boundary_words_annulus(padding)
    glued = concatenate(padding, build_affine_d(n))
    passed = _cyclic_equal(outer, word) and inner == boundary_word(build_affine_d(n)) and boundary_word(glued) == outer
    return passed, {"outer": str(outer), "inner": str(inner), "vertices": len(padding.interior)}


def _cancellation(family: str, params: tuple) -> tuple[bool, object]:
    padding = coxeter_padding(family, *params)
    reduced = cleanup(concatenate(padding, inverse(padding)))
    return is_trivial(reduced), len(reduced.interior)


def _symmetric(builder: Callable, params: tuple, symmetry: Symmetry) -> tuple[bool, object]:
    return is_invariant(builder(*params), symmetry), symmetry.steps


for _params in _tripods(8):
    _register("padding", f"tripod {_params}", "padding as a concatenation of braid moves", partial(_tripod_padding, _params))
for _n in range(4, 7):
    _register("padding", f"affine_d {_n}", "padding as a concatenation of braid moves", partial(_affine_padding, _n))
for _family, _params in (("affine_d", (4,)), ("tripod", (1, 2, 2)), ("tripod", (2, 2, 2))):
    _register("padding", f"cleanup {_family}{_params}", "padding followed by its inverse", partial(_cancellation, _family, _params))
for _a in (1, 2):
    _register(
        "padding",
        f"symmetry tripod ({_a}, {_a}, {_a})",
        "rotational symmetry of the tripod N-graph",
        partial(_symmetric, build_tripod, (_a, _a, _a), Symmetry(steps=_a + 2)),
    )
for _n in (1, 2, 3):
    _register(
        "padding",
        f"symmetry linear {2 * _n - 1}",
        "half-turn symmetry of the linear N-graph",
        partial(_symmetric, build_linear, (2 * _n - 1,), Symmetry(steps=_n + 1, permutation=tuple(reversed(range(2 * _n - 1))))),
    )


def _unknown(kind: str, value: str):
    error_msg = format_lazy(_("Unknown verify {kind} '{value}'"), kind=kind, value=value)
    logger.warning(error_msg)
    return MalformedInput(error_msg)


def suite_names(suite: str) -> tuple[str, ...]:
    if suite == ALL:
        return SUITES
    if suite not in _REGISTRY:
        raise _unknown("suite", suite)
    return (suite,)


def check_names(suite: str, include_slow: bool = False) -> list[str]:
    """Имена проверок набора в порядке регистрации; медленные - только при include_slow."""
    return [name for name, check in _REGISTRY[suite].items() if include_slow or not check.slow]


def run_named_check(suite: str, name: str, seed: int | None = None) -> CheckResult:
    """Одна проверка; ошибки предметной области превращаются в непройденную проверку.

    seed передаётся только проверкам со случайными последовательностями.
    """
    if suite not in _REGISTRY:
        raise _unknown("suite", suite)
    if name not in _REGISTRY[suite]:
        raise _unknown("check", name)
    check = _REGISTRY[suite][name]
    try:
        passed, value = check.run(seed=seed) if check.seeded else check.run()
    except WeaveclustError as err:
        passed, value = False, {"error": type(err).__name__, "detail": str(err.detail)}
    logger.info(
        format_lazy(
            _("Check {suite}/{name}: {status}"), suite=suite, name=name, status="PASS" if passed else "FAIL"
        )
    )
    return CheckResult(suite, name, check.anchor, bool(passed), value)


def run_suite(
    suite: str = ALL, include_slow: bool = False, jobs: int = 1, seed: int | None = None
) -> list[CheckResult]:
    """Все проверки набора (или всех наборов при suite="all").

    При jobs > 1 проверки раздаются задачам Celery run_check; порядок результатов
    совпадает с порядком регистрации.
    """
    pairs = [(name, check) for name in suite_names(suite) for check in check_names(name, include_slow)]
    if jobs > 1:
        from weaveclust.tasks import run_checks_in_workers

        return [CheckResult(**data) for data in run_checks_in_workers(pairs, seed)]
    return [run_named_check(name, check, seed) for name, check in pairs]
