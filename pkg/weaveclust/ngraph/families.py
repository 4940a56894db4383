"""Семейства N-графов с циклами: линейный G(Aₙ), трипод G(a,b,c) и G(D̃ₙ).

Графы строятся по эскизу на плоскости; после вычисления вращений геометрия
забывается. Классы "+"/"-" проставлены так, что стрелки колчана идут из "+" в "-".
"""

import logging
import math

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import MalformedInput
from weaveclust.ngraph.cycles import CycleSpec, NGraphWithCycles
from weaveclust.ngraph.graph import Sketch

logger = logging.getLogger(__name__)

BLUE, RED, GREEN = 1, 2, 3
ARM_ANGLES = (90.0, 210.0, 330.0)
TRIPOD_START = 25.0
AFFINE_HEIGHT = 2.5


def _require(condition: bool, error_msg) -> None:
    if not condition:
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def _alternating(first: str, count: int) -> list[str]:
    other = "-" if first == "+" else "+"
    return [first if index % 2 == 0 else other for index in range(count)]


def build_linear(n: int) -> NGraphWithCycles:
    """Линейный 2-граф: цепочка v₀…vₙ, циклы γᵢ = vᵢ₋₁vᵢ, граница σ₁^{n+3}."""
    _require(n >= 1, format_lazy(_("Linear N-graph needs n >= 1, got {n}"), n=n))
    sketch = Sketch(2)
    chain = [sketch.trivalent(BLUE, i, 0) for i in range(n + 1)]
    links = [sketch.edge(chain[i - 1], chain[i], BLUE) for i in range(1, n + 1)]
    for angle in (150, 210):
        sketch.leg(chain[0], angle, BLUE)
    for angle in (30, 330):
        sketch.leg(chain[n], angle, BLUE)
    for i in range(1, n):
        sketch.leg(chain[i], 90 if i % 2 else 270, BLUE)
    cycles = tuple(CycleSpec((edge,), sign) for edge, sign in zip(links, _alternating("+", n)))
    return NGraphWithCycles(sketch.build(), cycles)


def _polar(radius: float, angle: float) -> tuple[float, float]:
    return radius * math.cos(math.radians(angle)), radius * math.sin(math.radians(angle))


def build_tripod(a: int, b: int, c: int) -> NGraphWithCycles:
    """Трипод: шестивалентный центр, три синих плеча с цепочками и красные ноги между ними.

    Граница, прочитанная от красной ноги перед первым плечом, равна β(a,b,c).
    Порядок циклов: центральный Y, затем I-циклы плеч a, b, c от центра наружу.
    """
    for label, value in (("a", a), ("b", b), ("c", c)):
        _require(value >= 1, format_lazy(_("Tripod parameter {label}={value} must be positive"), label=label, value=value))
    sketch = Sketch(3)
    centre = sketch.hexagon(BLUE, 0, 0)
    arms, legs = [], []
    for theta, param in zip(ARM_ANGLES, (a, b, c)):
        sketch.leg(centre, theta + 60, RED)
        last = param - 1
        chain = [sketch.trivalent(BLUE, *_polar(2 + j, theta)) for j in range(last + 1)]
        arms.append(sketch.edge(centre, chain[0], BLUE))
        for j in range(last):
            legs.append((sketch.edge(chain[j], chain[j + 1], BLUE), "-" if j % 2 == 0 else "+"))
            spread = 10 + 35 * (last - j) / last
            sketch.leg(chain[j], theta + spread if j % 2 == 0 else theta - spread, BLUE)
        sketch.leg(chain[last], theta + 5, BLUE)
        sketch.leg(chain[last], theta - 5, BLUE)
    cycles = (CycleSpec(tuple(arms), "+"), *(CycleSpec((edge,), sign) for edge, sign in legs))
    return NGraphWithCycles(sketch.build(start=TRIPOD_START), cycles)


def _affine_side(sketch: Sketch, half: float, place) -> dict:
    """Половина графа D̃ₙ: узел L с тремя красными ногами и синие вершины A, B, C, D."""
    height, width = AFFINE_HEIGHT, half + 3

    knot = sketch.hexagon(BLUE, *place(-half, 0))
    for x, y in ((-half, height), (-width, 0), (-half, -height)):
        sketch.edge(knot, sketch.boundary(RED, *place(x, y)), RED)
    a = sketch.trivalent(BLUE, *place(-half - 1, 1))
    b = sketch.trivalent(BLUE, *place(-half - 2, 1))
    c = sketch.trivalent(BLUE, *place(-half - 1, -1))
    d = sketch.trivalent(BLUE, *place(-half - 1, -1.73))
    legs = ((a, -half - 1, height), (b, -half - 2, height), (b, -width, 1), (c, -width, -1), (d, -width, -1.73), (d, -half - 1, -height))
    for vertex, x, y in legs:
        sketch.edge(vertex, sketch.boundary(BLUE, *place(x, y)), BLUE)
    return {
        "knot": knot,
        "arms": (sketch.edge(knot, a, BLUE), sketch.edge(knot, c, BLUE)),
        "upper": sketch.edge(a, b, BLUE),
        "lower": sketch.edge(c, d, BLUE),
    }


def build_affine_d(n: int) -> NGraphWithCycles:
    """4-граф типа D̃ₙ: два узла, четыре коротких ноги, синяя цепочка и зелёная прямая.

    Зелёная прямая пересекает цепочку ровно один раз (точка crossing), а также
    верхние ноги цепочки левее и нижние правее этого пересечения. Правая половина -
    образ левой при центральной симметрии (n чётно) или отражении x ↦ −x (n нечётно).
    """
    _require(n >= 4, format_lazy(_("Affine D N-graph needs n >= 4, got {n}"), n=n))
    half, height = (n - 3) / 2, AFFINE_HEIGHT
    sketch = Sketch(4)
    left = _affine_side(sketch, half, lambda x, y: (x, y))
    if n % 2 == 0:
        right = _affine_side(sketch, half, lambda x, y: (-x, -y))
        top, bottom = -half + 0.5, half - 0.5
    else:
        right = _affine_side(sketch, half, lambda x, y: (-x, y))
        top, bottom = -half + 0.75, half - 0.25
    knots = [left["knot"]] + [sketch.trivalent(BLUE, -half + j, 0) for j in range(1, n - 3)] + [right["knot"]]
    cut = (n - 3) // 2

    def green_height(x: float) -> float:
        return height - 2 * height * (x - top) / (bottom - top)

    crossing_x = top + (bottom - top) / 2
    marks = [(crossing_x, 0.0, None)]
    for j in range(1, n - 3):
        x = -half + j
        if j % 2 == 0 and x < crossing_x:
            marks.append((x, green_height(x), j))
        elif j % 2 == 1 and x > crossing_x:
            marks.append((x, green_height(x), j))
    marks.sort(key=lambda mark: mark[0])
    route = [sketch.boundary(GREEN, top, height)]
    stops = {}
    for x, y, owner in marks:
        stop = sketch.crossing((BLUE, GREEN), x, y)
        stops[owner] = stop
        route.append(stop)
    route.append(sketch.boundary(GREEN, bottom, -height))
    for first, second in zip(route, route[1:]):
        sketch.edge(first, second, GREEN)

    segments = []
    for j in range(n - 3):
        if j == cut:
            segments.append((sketch.edge(knots[j], stops[None], BLUE), sketch.edge(stops[None], knots[j + 1], BLUE)))
        else:
            segments.append((sketch.edge(knots[j], knots[j + 1], BLUE),))
    for j in range(1, n - 3):
        x = -half + j
        tip = sketch.boundary(BLUE, x, height if j % 2 == 0 else -height)
        if j in stops:
            sketch.edge(knots[j], stops[j], BLUE)
            sketch.edge(stops[j], tip, BLUE)
        else:
            sketch.edge(knots[j], tip, BLUE)

    left_legs = [CycleSpec((left["upper"],), "+"), CycleSpec((left["lower"],), "+")]
    if n == 4:
        centre = CycleSpec(left["arms"] + right["arms"] + segments[0], "-")
        path = [centre]
        right_sign = "+"
    else:
        signs = _alternating("-", n - 3)
        path = [CycleSpec(left["arms"] + segments[0], signs[0])]
        path += [CycleSpec(segments[j], signs[j]) for j in range(1, n - 4)]
        path.append(CycleSpec(right["arms"] + segments[-1], signs[-1]))
        right_sign = "-" if signs[-1] == "+" else "+"
    right_legs = [CycleSpec((right["upper"],), right_sign), CycleSpec((right["lower"],), right_sign)]
    return NGraphWithCycles(sketch.build(), tuple(left_legs + path + right_legs))
