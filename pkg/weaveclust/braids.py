"""Положительные слова кос: семейства, стабилизация, поиск эквивалентности и колчаны кирпичей.

Образующие нумеруются как в записи σ₁..σ_{N−1}: буква i означает σ_i.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from django.conf import settings
from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _

from weaveclust.exceptions import MalformedInput
from weaveclust.mutation import Quiver, classify_type

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^s(\d+)(?:\^(\d+))?$")
_FAMILY = re.compile(r"^(beta|beta0|betatilde|betatilde0)\((.*)\)$")


@dataclass(frozen=True)
class BraidWord:
    """Положительное слово в группе кос на strands нитях."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(letter) for letter in self.letters))
        if self.strands < 1:
            raise MalformedInput(_("A braid needs at least one strand"))
        for letter in self.letters:
            if not 1 <= letter < self.strands:
                error_msg = format_lazy(
                    _("Generator s{letter} is out of range for {strands} strands"),
                    letter=letter,
                    strands=self.strands,
                )
                logger.warning(error_msg)
                raise MalformedInput(error_msg)

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        """Разбор "s2 s1^3 s2" или имени семейства: beta(2,3,3), beta0(Dt5), beta(A3), betatilde0(1,2,2)."""
        text = str(text).strip()
        family = _FAMILY.match(text.replace(" ", ""))
        if family is not None:
            word = _parse_family(family[1], family[2])
            return word if strands is None else word.widened(strands)
        letters = []
        for token in text.split():
            found = _TOKEN.match(token)
            if found is None:
                error_msg = format_lazy(_("Cannot parse braid letter '{token}'"), token=token)
                logger.warning(error_msg)
                raise MalformedInput(error_msg)
            letters.extend([int(found[1])] * int(found[2] or 1))
        if strands is None:
            strands = max(letters, default=1) + 1
        return cls(strands, tuple(letters))

    def __str__(self) -> str:
        parts = []
        position = 0
        while position < len(self.letters):
            letter = self.letters[position]
            run = 1
            while position + run < len(self.letters) and self.letters[position + run] == letter:
                run += 1
            parts.append(f"s{letter}" if run == 1 else f"s{letter}^{run}")
            position += run
        return " ".join(parts)

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        strands = max(self.strands, other.strands)
        return BraidWord(strands, self.letters + other.letters)

    def widened(self, strands: int) -> "BraidWord":
        if strands < self.strands:
            raise MalformedInput(_("Cannot drop strands from a braid word"))
        return BraidWord(strands, self.letters)

    def rotated(self, steps: int = 1) -> "BraidWord":
        if not self.letters:
            return self
        steps %= len(self.letters)
        return BraidWord(self.strands, self.letters[steps:] + self.letters[:steps])

    @cached_property
    def permutation(self) -> tuple[int, ...]:
        """Перестановка концов нитей: позиция p сверху уходит в позицию permutation[p] снизу."""
        image = list(range(self.strands))
        for letter in self.letters:
            image[letter - 1], image[letter] = image[letter], image[letter - 1]
        result = [0] * self.strands
        for position, strand in enumerate(image):
            result[strand] = position
        return tuple(result)

    @cached_property
    def cycle_type(self) -> tuple[int, ...]:
        seen, lengths = set(), []
        for start in range(self.strands):
            if start in seen:
                continue
            length, point = 0, start
            while point not in seen:
                seen.add(point)
                point = self.permutation[point]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    def to_dict(self) -> dict:
        return {"strands": self.strands, "word": str(self), "letters": list(self.letters)}


def _power(letter: int, exponent: int) -> list[int]:
    return [letter] * exponent


def _check_positive(name: str, **values: int) -> None:
    for label, value in values.items():
        if value < 1:
            error_msg = format_lazy(
                _("Parameter {label}={value} of {name} must be positive"), label=label, value=value, name=name
            )
            logger.warning(error_msg)
            raise MalformedInput(error_msg)


def family_word(name: str, *params) -> BraidWord:
    """Слова семейств: beta / beta0 / betatilde / betatilde0 от (a, b, c), ("A", n) или ("Dtilde", n).

    Примеры:
        >>> str(family_word("beta", 1, 1, 1))
        's2 s1^2 s2 s1^2 s2 s1^2'
        >>> str(family_word("beta0", "A", 2))
        's1^3'
    """
    if len(params) == 2 and isinstance(params[0], str):
        kind, n = params[0], int(params[1])
        match (name, kind):
            case ("beta", "A"):
                _check_positive("beta(A)", n=n)
                return BraidWord(2, _power(1, n + 3))
            case ("beta0", "A"):
                _check_positive("beta0(A)", n=n)
                return BraidWord(2, _power(1, n + 1))
            case ("beta", "Dtilde"):
                _require_dtilde(n)
                k, ell = (n - 3) // 2, (n - 4) // 2
                return BraidWord(4, _dtilde_half(k) + _dtilde_half(ell))
            case ("beta0", "Dtilde"):
                _require_dtilde(n)
                return BraidWord(4, [3, 2, 2, 3, *_power(2, n - 4), 1, 2, 2, 1])
        error_msg = format_lazy(_("Unknown braid family {name}({kind}{n})"), name=name, kind=kind, n=n)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    if len(params) != 3:
        error_msg = format_lazy(_("Braid family {name} expects three parameters"), name=name)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    a, b, c = (int(value) for value in params)
    _check_positive(name, a=a, b=b, c=c)
    match name:
        case "beta":
            return BraidWord(3, [2, *_power(1, a + 1), 2, *_power(1, b + 1), 2, *_power(1, c + 1)])
        case "beta0":
            return BraidWord(3, [1, *_power(2, a), *_power(1, b - 1), *_power(2, c)])
        case "betatilde0":
            return BraidWord(4, [2, 1, 3, 2, *_power(2, a - 1), *_power(1, b - 1), *_power(3, c - 1)])
        case "betatilde":
            return BraidWord(4, [2, 1, 3, 2] * 3 + [*_power(2, a - 1), *_power(1, b + 1), *_power(3, c + 1)])
    error_msg = format_lazy(_("Unknown braid family '{name}'"), name=name)
    logger.warning(error_msg)
    raise MalformedInput(error_msg)


def _dtilde_half(power: int) -> list[int]:
    return [2, *_power(1, 3), 2, *_power(1, 3), 2, *_power(1, power), 3]


def _require_dtilde(n: int) -> None:
    if n < 4:
        error_msg = format_lazy(_("Dtilde{n} needs n >= 4"), n=n)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)


def _parse_family(name: str, body: str) -> BraidWord:
    found = re.match(r"^(A|Dt|Dtilde)(\d+)$", body)
    if found is not None:
        kind = "A" if found[1] == "A" else "Dtilde"
        return family_word(name, kind, int(found[2]))
    try:
        params = [int(value) for value in body.split(",")]
    except ValueError:
        error_msg = format_lazy(_("Cannot parse braid family parameters '{body}'"), body=body)
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    return family_word(name, *params)


def stabilize(word: BraidWord) -> BraidWord:
    """S(β₀) = β₀σ_N на N+1 нитях."""
    return BraidWord(word.strands + 1, word.letters + (word.strands,))


def half_twist(strands: int) -> BraidWord:
    """Δ_N = σ₁(σ₂σ₁)(σ₃σ₂σ₁)…"""
    letters = []
    for top in range(1, strands):
        letters.extend(range(top, 0, -1))
    return BraidWord(strands, letters)


def closure_word(word: BraidWord) -> BraidWord:
    """Δβ₀Δ: слово, (−1)-замыкание которого совпадает с радужным замыканием β₀."""
    twist = half_twist(word.strands)
    return twist + word + twist


def stabilize_closure(base: BraidWord) -> BraidWord:
    """S(β) для β = Δβ₀Δ: слово ΔS(β₀)Δ на N+1 нитях."""
    return closure_word(stabilize(base))


def conjugate_word(word: BraidWord) -> BraidWord:
    """σ_i ↔ σ_{N−i}."""
    return BraidWord(word.strands, tuple(word.strands - letter for letter in word.letters))


@dataclass(frozen=True)
class BraidMove:
    """Элементарный шаг: commute / braid в позиции position, rotate / unrotate на одну букву."""

    kind: str
    position: int = 0

    def apply(self, letters: tuple[int, ...]) -> tuple[int, ...]:
        p = self.position
        match self.kind:
            case "commute":
                return letters[:p] + (letters[p + 1], letters[p]) + letters[p + 2 :]
            case "braid":
                return letters[:p] + (letters[p + 1], letters[p], letters[p + 1]) + letters[p + 3 :]
            case "rotate":
                return letters[1:] + letters[:1]
            case "unrotate":
                return letters[-1:] + letters[:-1]
        raise MalformedInput(format_lazy(_("Unknown braid move '{kind}'"), kind=self.kind))

    def inverse(self) -> "BraidMove":
        match self.kind:
            case "rotate":
                return BraidMove("unrotate")
            case "unrotate":
                return BraidMove("rotate")
        return self

    def to_dict(self) -> dict:
        return {"move": self.kind, "position": self.position + 1}


def _moves(letters: tuple[int, ...], cyclic: bool) -> Iterable[BraidMove]:
    for p in range(len(letters) - 1):
        if abs(letters[p] - letters[p + 1]) >= 2:
            yield BraidMove("commute", p)
    for p in range(len(letters) - 2):
        if letters[p] == letters[p + 2] and abs(letters[p] - letters[p + 1]) == 1:
            yield BraidMove("braid", p)
    if cyclic and len(letters) > 1:
        yield BraidMove("rotate")
        yield BraidMove("unrotate")


@dataclass
class BraidEquivalence:
    """Ответ True / False / "unknown" и воспроизводимая цепочка шагов от первого слова ко второму."""

    result: bool | str
    source: BraidWord
    target: BraidWord
    trace: list[BraidMove] = field(default_factory=list)
    explored: int = 0

    def __bool__(self) -> bool:
        return self.result is True

    def replay(self) -> bool:
        letters = self.source.letters
        for move in self.trace:
            letters = move.apply(letters)
        return letters == self.target.letters

    def reversed(self) -> "BraidEquivalence":
        trace = [move.inverse() for move in reversed(self.trace)]
        return BraidEquivalence(self.result, self.target, self.source, trace, self.explored)

    def to_dict(self) -> dict:
        return {
            "equivalent": self.result,
            "source": str(self.source),
            "target": str(self.target),
            "trace": [move.to_dict() for move in self.trace],
            "explored": self.explored,
        }


def braid_equivalent(
    first: BraidWord, second: BraidWord, cyclic: bool = False, budget: int | None = None
) -> BraidEquivalence:
    """Поиск в ширину по классу слов, связанных коммутациями, braid-ходами и (при cyclic) поворотами."""
    if first.strands != second.strands:
        error_msg = format_lazy(
            _("Strand counts differ: {first} and {second}"), first=first.strands, second=second.strands
        )
        logger.warning(error_msg)
        raise MalformedInput(error_msg)
    budget = settings.WEAVECLUST_BRAID_BUDGET if budget is None else budget
    if len(first) != len(second):
        return BraidEquivalence(False, first, second)
    if cyclic:
        if first.cycle_type != second.cycle_type:
            return BraidEquivalence(False, first, second)
    elif first.permutation != second.permutation:
        return BraidEquivalence(False, first, second)

    parents: dict[tuple[int, ...], tuple[tuple[int, ...], BraidMove] | None] = {first.letters: None}
    queue = deque([first.letters])
    exhausted = True
    while queue:
        current = queue.popleft()
        if current == second.letters:
            trace = []
            while parents[current] is not None:
                current, move = parents[current]
                trace.append(move)
            trace.reverse()
            logger.debug(format_lazy(_("Braid words matched after {count} words"), count=len(parents)))
            return BraidEquivalence(True, first, second, trace, len(parents))
        for move in _moves(current, cyclic):
            child = move.apply(current)
            if child in parents:
                continue
            if len(parents) >= budget:
                exhausted = False
                continue
            parents[child] = (current, move)
            queue.append(child)
    if not exhausted:
        logger.warning(format_lazy(_("Braid search budget of {budget} words exhausted"), budget=budget))
        return BraidEquivalence("unknown", first, second, explored=len(parents))
    return BraidEquivalence(False, first, second, explored=len(parents))


@dataclass(frozen=True)
class Brick:
    level: int
    start: int
    end: int

    def to_dict(self) -> dict:
        return {"level": self.level, "interval": [self.start + 1, self.end + 1]}


@dataclass(frozen=True)
class BrickDiagram:
    """Диаграмма кирпичей: кирпич - промежуток между соседними пересечениями одного уровня."""

    word: BraidWord
    bricks: tuple[Brick, ...]

    @classmethod
    def of(cls, word: BraidWord) -> "BrickDiagram":
        crossings: dict[int, list[int]] = {}
        for position, letter in enumerate(word.letters):
            crossings.setdefault(letter, []).append(position)
        bricks = [
            Brick(level, left, right)
            for level in sorted(crossings)
            for left, right in zip(crossings[level], crossings[level][1:])
        ]
        return cls(word, tuple(bricks))

    def per_level(self) -> dict[int, int]:
        counts = {level: 0 for level in range(1, self.word.strands)}
        for brick in self.bricks:
            counts[brick.level] += 1
        return counts

    @cached_property
    def arrows(self) -> list[tuple[int, int]]:
        """Горизонтальные стрелки слева направо; вертикальные - от позже начавшегося кирпича."""
        arrows = []
        for i, brick in enumerate(self.bricks):
            for j, other in enumerate(self.bricks):
                if other.level == brick.level and other.start == brick.end:
                    arrows.append((i, j))
                elif other.level == brick.level + 1 and _interleaved(brick, other):
                    later, earlier = (i, j) if brick.start > other.start else (j, i)
                    arrows.append((later, earlier))
        return sorted(arrows)

    def to_dict(self) -> dict:
        return {
            "word": str(self.word),
            "bricks": [brick.to_dict() for brick in self.bricks],
            "arrows": [[i + 1, j + 1] for i, j in self.arrows],
        }


def _interleaved(first: Brick, second: Brick) -> bool:
    return first.start < second.start < first.end < second.end or second.start < first.start < second.end < first.end


def brick_quiver(word: BraidWord) -> Quiver:
    diagram = BrickDiagram.of(word)
    return Quiver.from_arrows(len(diagram.bricks), diagram.arrows)


def brick_type(word: BraidWord, node_budget: int | None = None):
    quiver = brick_quiver(word)
    if quiver.m == 0:
        return "unknown"
    return classify_type(quiver.to_matrix(), node_budget)
