"""Точная арифметика рациональных функций над ℤ для коэффициентов Y-сидов и кластерных переменных.

Используется поле дробей sympy (FracField) с градуированным лексикографическим
порядком: дроби всегда сокращены, а знаменатель имеет положительный старший
коэффициент, так что равенство элементов совпадает с равенством канонических форм.
"""

import logging
import re
from functools import cache
from tokenize import TokenError

from django.utils.text import format_lazy
from django.utils.translation import gettext_lazy as _
from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.domains import ZZ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex

from weaveclust.exceptions import MalformedInput

logger = logging.getLogger(__name__)

_ALLOWED = re.compile(r"^[0-9xy+\-*/^() ]*$")
_VARIABLE = re.compile(r"([xy])(\d+)")


@cache
def coefficient_field(count: int, prefix: str = "y"):
    """Поле ℚ(prefix1, …, prefixN) с порядком grlex, общее для всех сидов одного ранга."""
    names = [f"{prefix}{i}" for i in range(1, count + 1)] or [f"{prefix}0"]
    frac_field, *_generators = field(",".join(names), ZZ, grlex)
    return frac_field


class RationalFunction:
    """Сокращённая дробь P/Q с целыми коэффициентами.

    Примеры:
        >>> y1 = RationalFunction.variable(1, 2)
        >>> str((1 + y1) / y1)
        '(y1 + 1)/y1'
    """

    __slots__ = ("element",)

    def __init__(self, element: FracElement):
        self.element = element

    @classmethod
    def variable(cls, index: int, count: int, prefix: str = "y") -> "RationalFunction":
        frac_field = coefficient_field(count, prefix)
        return cls(frac_field.gens[index - 1])

    @classmethod
    def constant(cls, value: int, count: int, prefix: str = "y") -> "RationalFunction":
        return cls(coefficient_field(count, prefix)(value))

    @classmethod
    def parse(cls, text: str, count: int, prefix: str = "y") -> "RationalFunction":
        """Разбор строки по грамматике: целые, y1..yN, + − * / ^ и скобки."""
        text = str(text)
        if not _ALLOWED.match(text):
            error_msg = format_lazy(_("Illegal characters in coefficient '{text}'"), text=text)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        names = {}
        for letter, number in _VARIABLE.findall(text):
            if letter != prefix or not 1 <= int(number) <= count:
                error_msg = format_lazy(
                    _("Unknown variable {name} in '{text}'"), name=f"{letter}{number}", text=text
                )
                logger.warning(error_msg)
                raise MalformedInput(error_msg)
            names[f"{letter}{number}"] = Symbol(f"{letter}{number}")
        if re.search(r"[xy](?!\d)", text):
            error_msg = format_lazy(_("Variable without index in '{text}'"), text=text)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        frac_field = coefficient_field(count, prefix)
        try:
            expression = parse_expr(
                text,
                local_dict=names,
                transformations=standard_transformations + (convert_xor,),
                evaluate=True,
            )
            element = frac_field.from_expr(expression)
        except (SyntaxError, TokenError, TypeError, ValueError, ZeroDivisionError) as err:
            error_msg = format_lazy(_("Cannot parse coefficient '{text}': {err}"), text=text, err=err)
            logger.warning(error_msg)
            raise MalformedInput(error_msg)
        return cls(element)

    def _wrap(self, other) -> FracElement:
        if isinstance(other, RationalFunction):
            return other.element
        return self.element.field(other)

    def __add__(self, other):
        return RationalFunction(self.element + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return RationalFunction(self.element - self._wrap(other))

    def __rsub__(self, other):
        return RationalFunction(self._wrap(other) - self.element)

    def __mul__(self, other):
        return RationalFunction(self.element * self._wrap(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        divisor = self._wrap(other)
        if not divisor:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.element / divisor)

    def __rtruediv__(self, other):
        return RationalFunction(self._wrap(other) / self.element)

    def __pow__(self, exponent: int):
        return RationalFunction(self.element**exponent)

    def __neg__(self):
        return RationalFunction(-self.element)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.element == other.element
        if isinstance(other, int):
            return self.element == self.element.field(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(str(self))

    def inverse(self) -> "RationalFunction":
        return RationalFunction(1 / self.element)

    @property
    def numerator(self):
        return self.element.numer

    @property
    def denominator(self):
        return self.element.denom

    def __str__(self) -> str:
        numerator = _format_polynomial(self.element.numer)
        if self.element.denom == 1:
            return numerator
        denominator = _format_polynomial(self.element.denom)
        if len(self.element.numer.terms()) > 1:
            numerator = f"({numerator})"
        if len(self.element.denom.terms()) > 1:
            denominator = f"({denominator})"
        return f"{numerator}/{denominator}"

    __repr__ = __str__


def _format_monomial(names, exponents) -> str:
    factors = []
    for name, power in zip(names, exponents):
        if power == 1:
            factors.append(name)
        elif power:
            factors.append(f"{name}^{power}")
    return "*".join(factors)


def _format_polynomial(polynomial) -> str:
    """Запись многочлена по убыванию в порядке grlex без пробелов внутри одночленов."""
    names = [str(symbol) for symbol in polynomial.ring.symbols]
    terms = polynomial.terms(grlex)
    if not terms:
        return "0"
    parts = []
    for position, (exponents, coefficient) in enumerate(terms):
        monomial = _format_monomial(names, exponents)
        magnitude = abs(int(coefficient))
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        sign = "-" if coefficient < 0 else "+"
        if position == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
