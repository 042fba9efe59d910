"""Exact arithmetic in Z[u, u^-1], the virtual Poincare model of the Grothendieck ring."""

import logging
import re
from fractions import Fraction
from typing import Any, Callable, Iterator, Union

from ..errors import InvalidInput, PolynomialSyntaxError

logger = logging.getLogger(__name__)

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Integer Laurent polynomial in one variable u, stored as {exponent: coefficient}."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None) -> None:
        self._coeffs: dict[int, int] = {
            int(k): int(v) for k, v in sorted((coeffs or {}).items()) if v != 0
        }

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def lift(cls, value: Scalar) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot lift {type(value).__name__} to LaurentPoly")

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def degree(self) -> int | None:
        """Top exponent, or None for the zero polynomial."""
        return max(self._coeffs) if self._coeffs else None

    def low_degree(self) -> int | None:
        return min(self._coeffs) if self._coeffs else None

    def coefficient(self, exponent: int) -> int:
        return self._coeffs.get(exponent, 0)

    # ring structure

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        other = LaurentPoly.lift(other)
        result = dict(self._coeffs)
        for k, v in other.items():
            result[k] = result.get(k, 0) + v
        return LaurentPoly(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        return self + (-LaurentPoly.lift(other))

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.lift(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if not isinstance(other, (int, LaurentPoly)):
            return NotImplemented
        other = LaurentPoly.lift(other)
        result: dict[int, int] = {}
        for i, a in self.items():
            for j, b in other.items():
                result[i + j] = result.get(i + j, 0) + a * b
        return LaurentPoly(result)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._coeffs) != 1 or abs(next(iter(self._coeffs.values()))) != 1:
                raise InvalidInput(f"negative power of non-unit {self}")
            (k, c), = self.items()
            return LaurentPoly({k * n: c ** (-n)})
        result = LaurentPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by u^k."""
        return LaurentPoly({e + k: c for e, c in self.items()})

    # duality and evaluation

    def dual(self) -> "LaurentPoly":
        """Substitute u -> 1/u."""
        return LaurentPoly({-k: v for k, v in self.items()})

    def evaluate(self, x: int | Fraction) -> Fraction:
        """
        Evaluate exactly at a nonzero rational point.

        Args:
            x: Evaluation point; x = -1 gives the Euler characteristic with compact supports

        Returns:
            Exact value as a Fraction
        """
        x = Fraction(x)
        if x == 0:
            raise InvalidInput("Laurent polynomials cannot be evaluated at 0")
        return sum((Fraction(c) * x**k for k, c in self.items()), Fraction(0))

    def chi_c(self) -> int:
        return int(self.evaluate(-1))

    # comparison and printing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def format(self, var: str = "u") -> str:
        """Canonical text form, ascending exponents, e.g. '2*u^-1 + 3 - u^2'."""
        if not self._coeffs:
            return "0"
        parts: list[str] = []
        for k, c in self.items():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self.items()}


U = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Apply 'add', 'sub' or 'mul' to two Laurent polynomials."""
    operations: dict[str, Callable[[LaurentPoly, LaurentPoly], LaurentPoly]] = {
        "add": lambda x, y: x + y,
        "sub": lambda x, y: x - y,
        "mul": lambda x, y: x * y,
    }
    if op not in operations:
        raise InvalidInput(f"unknown operation: {op}")
    return operations[op](a, b)


def laurent_dual(p: LaurentPoly) -> LaurentPoly:
    return p.dual()


def laurent_eval(p: LaurentPoly, x: int | Fraction) -> Fraction:
    return p.evaluate(x)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\[[^\]]*\])|(.))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split an expression into (kind, value, position) tokens."""
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        number, name, bracket, other = match.groups()
        start = match.start(match.lastindex or 0)
        if number is not None:
            tokens.append(("num", number, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif bracket is not None:
            tokens.append(("gen", bracket[1:-1].strip(), start))
        elif other is not None:
            if other not in "+-*/^()":
                raise PolynomialSyntaxError(f"unexpected character {other!r}", start)
            tokens.append(("op", other, start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class ExpressionParser:
    """
    Recursive-descent parser for sums of products of powers.

    Subclasses supply `atom_name` and `atom_generator` to interpret identifiers and
    bracketed generator names; values only need +, -, * and integer powers.
    """

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, value: str) -> None:
        kind, text, pos = self.advance()
        if text != value or kind != "op":
            raise PolynomialSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> Any:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty expression", 0)
        value = self.expression()
        kind, _, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError("trailing input", pos)
        return value

    def expression(self) -> Any:
        negate = False
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            negate = self.advance()[1] == "-"
        value = self.product()
        if negate:
            value = -value
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self) -> Any:
        value = self.power()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                value = value * self.power()
            elif kind == "op" and text == "/":
                self.advance()
                kind, number, pos = self.advance()
                if kind != "num" or int(number) == 0:
                    raise PolynomialSyntaxError("expected nonzero integer divisor", pos)
                value = self.divide(value, int(number), pos)
            elif kind in ("num", "name", "gen") or (kind == "op" and text == "("):
                value = value * self.power()
            else:
                return value

    def power(self) -> Any:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] == "-":
                self.advance()
                sign = -1
            kind, text, pos = self.advance()
            if kind != "num":
                raise PolynomialSyntaxError("expected integer exponent", pos)
            return self.raise_power(base, sign * int(text), pos)
        return base

    def raise_power(self, base: Any, exponent: int, pos: int) -> Any:
        try:
            return base**exponent
        except InvalidInput as exc:
            raise PolynomialSyntaxError(str(exc), pos) from exc

    def divide(self, value: Any, divisor: int, pos: int) -> Any:
        raise PolynomialSyntaxError("division is not allowed here", pos)

    def atom(self) -> Any:
        kind, text, pos = self.advance()
        if kind == "num":
            return self.atom_number(int(text))
        if kind == "name":
            return self.atom_name(text, pos)
        if kind == "gen":
            return self.atom_generator(text, pos)
        if kind == "op" and text == "(":
            value = self.expression()
            self.expect(")")
            return value
        raise PolynomialSyntaxError(f"unexpected token {text!r}", pos)

    def atom_number(self, value: int) -> Any:
        return LaurentPoly.constant(value)

    def atom_name(self, name: str, pos: int) -> Any:
        if name in ("u", "L"):
            return U
        raise PolynomialSyntaxError(f"unknown symbol {name!r}", pos)

    def atom_generator(self, name: str, pos: int) -> Any:
        raise PolynomialSyntaxError("generators are not allowed here", pos)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse text such as '2*u^-1 + 3 - u^2' (L is an alias for u)."""
    return LaurentPoly.lift(ExpressionParser(text).parse())
