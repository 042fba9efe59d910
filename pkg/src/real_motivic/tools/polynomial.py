"""Multivariate integer polynomials: parsing, face restriction, weights and non-degeneracy."""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import sympy

from ..errors import InvalidInput, PolynomialSyntaxError, UnknownVariable
from .laurent_ring import ExpressionParser

logger = logging.getLogger(__name__)

Exponent = tuple[int, ...]


class MultiPoly:
    """Polynomial over Q in named variables, stored as {exponent vector: coefficient}."""

    __slots__ = ("vars", "_terms", "clearing_factor")

    def __init__(
        self,
        variables: Sequence[str],
        terms: dict[Exponent, Any] | None = None,
        clearing_factor: int = 1,
    ) -> None:
        self.vars: tuple[str, ...] = tuple(variables)
        cleaned: dict[Exponent, Any] = {}
        for exp, c in (terms or {}).items():
            if len(exp) != len(self.vars):
                raise InvalidInput(f"exponent {exp} does not match variables {self.vars}")
            if c != 0:
                c = Fraction(c)
                cleaned[tuple(exp)] = int(c) if c.denominator == 1 else c
        self._terms: dict[Exponent, Any] = dict(sorted(cleaned.items()))
        self.clearing_factor = clearing_factor

    @classmethod
    def constant(cls, variables: Sequence[str], c: Any) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        index = list(variables).index(name)
        exp = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls(variables, {exp: 1})

    @property
    def terms(self) -> dict[Exponent, Any]:
        return dict(self._terms)

    @property
    def support(self) -> list[Exponent]:
        return list(self._terms)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self._terms

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # arithmetic on aligned variable lists

    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express over a superset of the variables, in the given order."""
        variables = tuple(variables)
        missing = [v for v in self.vars if v not in variables]
        if missing:
            raise UnknownVariable(f"unknown variable(s): {', '.join(missing)}")
        index = [self.vars.index(v) if v in self.vars else None for v in variables]
        terms = {
            tuple(0 if i is None else exp[i] for i in index): c for exp, c in self._terms.items()
        }
        return MultiPoly(variables, terms, self.clearing_factor)

    def _align(self, other: Any) -> tuple["MultiPoly", "MultiPoly"]:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    def __add__(self, other: Any) -> "MultiPoly":
        a, b = self._align(other)
        terms = dict(a._terms)
        for exp, c in b._terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return MultiPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Any) -> "MultiPoly":
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other: Any) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "MultiPoly":
        a, b = self._align(other)
        terms: dict[Exponent, Any] = {}
        for e1, c1 in a._terms.items():
            for e2, c2 in b._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise InvalidInput("negative powers are not polynomials")
        result = MultiPoly.constant(self.vars, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.vars, tuple(self._terms.items())))

    # calculus and evaluation

    def derivative(self, var: int) -> "MultiPoly":
        terms = {}
        for exp, c in self._terms.items():
            if exp[var] > 0:
                new = list(exp)
                new[var] -= 1
                terms[tuple(new)] = c * exp[var]
        return MultiPoly(self.vars, terms)

    def evaluate(self, point: Sequence[Any]) -> Fraction:
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = Fraction(c)
            for x, k in zip(point, exp):
                term *= Fraction(x) ** k
            total += term
        return total

    def substitute(self, var: int, value: Any) -> "MultiPoly":
        """Fix one variable to a rational value, dropping it from the variable list."""
        rest = self.vars[:var] + self.vars[var + 1 :]
        terms: dict[Exponent, Any] = {}
        for exp, c in self._terms.items():
            e = exp[:var] + exp[var + 1 :]
            terms[e] = terms.get(e, 0) + Fraction(c) * Fraction(value) ** exp[var]
        return MultiPoly(rest, terms)

    def symbols(self) -> tuple[sympy.Symbol, ...]:
        return tuple(sympy.Symbol(v) for v in self.vars)

    def to_sympy(self) -> sympy.Poly:
        coeffs = {
            e: sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
            for e, c in self._terms.items()
        }
        return sympy.Poly.from_dict(coeffs or {(0,) * self.dim: 0}, *self.symbols(), domain="QQ")

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, variables: Sequence[str]) -> "MultiPoly":
        terms = {}
        for monom, coeff in poly.terms():
            q = sympy.Rational(poly.domain.to_sympy(coeff))
            terms[tuple(monom)] = Fraction(int(q.p), int(q.q))
        return cls(variables, terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        ordered = sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
        for exp, c in ordered:
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self}; vars={self.vars})"


class PolynomialParser(ExpressionParser):
    """Parser for integer polynomials; variables are collected in first-appearance order."""

    def __init__(self, text: str, variables: Optional[Sequence[str]] = None) -> None:
        super().__init__(text)
        self.declared = tuple(variables) if variables is not None else None
        self.seen: list[str] = list(self.declared or ())

    def atom_number(self, value: int) -> MultiPoly:
        return MultiPoly.constant((), value)

    def atom_name(self, name: str, pos: int) -> MultiPoly:
        if self.declared is not None and name not in self.declared:
            raise UnknownVariable(f"unknown variable {name!r} at position {pos}")
        if name not in self.seen:
            self.seen.append(name)
        return MultiPoly.variable((name,), name)

    def atom_generator(self, name: str, pos: int) -> Any:
        raise PolynomialSyntaxError("brackets are not allowed in polynomials", pos)

    def divide(self, value: MultiPoly, divisor: int, pos: int) -> MultiPoly:
        return value * Fraction(1, divisor)


def parse_poly(text: str, variables: Optional[Sequence[str]] = None) -> MultiPoly:
    """
    Parse a polynomial such as 'y^2+x^2*(x^2-1)'.

    Rational coefficients are cleared by the lcm of their denominators; the factor is kept in
    `clearing_factor`.

    Args:
        text: Polynomial text
        variables: Optional variable order; unknown variables are rejected

    Returns:
        MultiPoly with integer coefficients
    """
    parser = PolynomialParser(text, variables)
    value = parser.parse()
    if not isinstance(value, MultiPoly):
        raise PolynomialSyntaxError("not a polynomial", 0)
    poly = value.with_vars(parser.seen)
    if not poly.vars:
        raise InvalidInput("a polynomial needs at least one variable")
    factor = math.lcm(*[Fraction(c).denominator for c in poly.terms.values()] or [1])
    if factor != 1:
        logger.info(f"Cleared denominators of {text!r} by factor {factor}")
    scaled = MultiPoly(poly.vars, {e: Fraction(c) * factor for e, c in poly.terms.items()}, factor)
    return scaled


def face_restrict(f: MultiPoly, face_support: Iterable[Sequence[int]]) -> MultiPoly:
    """Sub-polynomial f_S supported on exactly the given exponents."""
    face = [tuple(e) for e in face_support]
    terms = f.terms
    missing = [e for e in face if e not in terms]
    if missing:
        raise InvalidInput(f"exponents {missing} are not in the support of {f}")
    return MultiPoly(f.vars, {e: terms[e] for e in face})


@dataclass(frozen=True)
class WeightVector:
    """Primitive positive weights with <w, nu> = degree on the whole support."""

    w: tuple[int, ...]
    degree: int


@dataclass(frozen=True)
class WeightAnalysis:
    weights: Optional[WeightVector]
    convenient: bool


def _primitive(vector: Sequence[Any]) -> tuple[int, ...]:
    fractions = [Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in vector]
    scale = math.lcm(*[q.denominator for q in fractions])
    ints = [int(q * scale) for q in fractions]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def find_weights(support: Sequence[Exponent]) -> Optional[WeightVector]:
    """Primitive positive integer w with <w, nu> constant on the support, if one exists."""
    if not support:
        return None
    d = len(support[0])
    base = support[0]
    rows = [[nu[i] - base[i] for i in range(d)] for nu in support[1:]]
    if not any(any(r) for r in rows):
        candidates = [tuple([1] * d)]
    else:
        nullspace = sympy.Matrix(rows).nullspace()
        if not nullspace:
            return None
        basis = [_primitive(list(v)) for v in nullspace]
        if len(basis) == 1:
            candidates = [basis[0], tuple(-x for x in basis[0])]
        else:
            candidates = []
            for combo in itertools.product(range(-4, 5), repeat=len(basis)):
                vec = [sum(c * b[i] for c, b in zip(combo, basis)) for i in range(d)]
                if any(vec):
                    candidates.append(_primitive(vec))
    positive = [w for w in candidates if all(x > 0 for x in w)]
    if not positive:
        return None
    w = min(positive, key=lambda v: (sum(v), v))
    return WeightVector(w, sum(a * b for a, b in zip(w, base)))


def is_convenient(support: Sequence[Exponent]) -> bool:
    """Every coordinate axis meets the support."""
    if not support:
        return False
    d = len(support[0])
    return all(
        any(all(nu[j] == 0 for j in range(d) if j != i) for nu in support) for i in range(d)
    )


def analyze_weights(f: MultiPoly) -> WeightAnalysis:
    """Weighted homogeneity and convenience of a nonzero polynomial."""
    if f.is_zero():
        raise InvalidInput("the zero polynomial has no weights")
    support = f.support
    if f.dim == 1:
        weights: Optional[WeightVector] = (
            WeightVector((1,), support[0][0]) if len(support) == 1 else None
        )
    else:
        weights = find_weights(support)
    return WeightAnalysis(weights, is_convenient(support))


@dataclass(frozen=True)
class NondegeneracyStatus:
    """Certified(value) when supported is True; Unsupported otherwise."""

    supported: bool
    certified: bool = False
    failing_face: Optional[tuple[Exponent, ...]] = None

    def __str__(self) -> str:
        if not self.supported:
            return "Unsupported"
        return f"Certified({str(self.certified).lower()})"


def _face_is_nondegenerate(face_poly: MultiPoly) -> bool:
    from .curve_topology import sturm_count

    support = face_poly.support
    if len(support) == 1:
        # a monomial has no zero in the torus
        return True
    if face_poly.dim == 1:
        # a univariate face with two support points cannot be compact
        g = face_poly.to_sympy()
        common = sympy.gcd(g, g.diff(g.gens[0]))
        return sturm_count(MultiPoly.from_sympy(common, face_poly.vars), exclude_zero=True) == 0
    weights = find_weights(support)
    if weights is None:
        raise InvalidInput(f"face polynomial {face_poly} is not quasi-homogeneous")
    # positive weights act on the torus, so every critical orbit meets x = +1 or x = -1
    gx, gy = face_poly.derivative(0), face_poly.derivative(1)
    for s in (1, -1):
        system = [p.substitute(0, s).to_sympy() for p in (face_poly, gx, gy)]
        nonzero = [p for p in system if not p.is_zero]
        if not nonzero:
            return False
        common = nonzero[0]
        for p in nonzero[1:]:
            common = sympy.gcd(common, p)
        if common.degree() <= 0:
            continue
        if sturm_count(MultiPoly.from_sympy(common, face_poly.vars[1:]), exclude_zero=True) > 0:
            return False
    return True


def nondegenerate_check(
    f: MultiPoly, faces: Iterable[Iterable[Sequence[int]]]
) -> NondegeneracyStatus:
    """
    Decide non-degeneracy with respect to the Newton polyhedron for d <= 2.

    Args:
        f: The polynomial
        faces: Supports of the compact faces of its Newton polyhedron

    Returns:
        Certified(true/false) for d <= 2, Unsupported for d >= 3
    """
    if f.dim >= 3:
        return NondegeneracyStatus(supported=False)
    for face in faces:
        face = tuple(tuple(e) for e in face)
        if not _face_is_nondegenerate(face_restrict(f, face)):
            logger.info(f"Face {face} of {f} has a critical zero in the torus")
            return NondegeneracyStatus(True, False, face)
    return NondegeneracyStatus(True, True)
