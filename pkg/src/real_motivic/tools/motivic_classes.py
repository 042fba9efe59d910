"""Symbolic absolute and relative Grothendieck classes with duality, link and push-forward."""

import logging
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Any, Iterable, Mapping, Optional, Union

from pydantic import BaseModel

from ..errors import (
    BaseMismatch,
    DualityUndefined,
    InvalidInput,
    PolynomialSyntaxError,
    PropernessLost,
    UnknownBaseMorphism,
    UnrepresentableProduct,
)
from .laurent_ring import ONE, U, ExpressionParser, LaurentPoly, parse_laurent

logger = logging.getLogger(__name__)

POINT = "pt"


@dataclass(frozen=True)
class Generator:
    """Class [h: X -> base] of a variety X mapped to a base."""

    name: str
    dim: int
    base: str = POINT
    proper: bool = False
    nonsingular: bool = False
    compact: bool = False
    beta: Optional[LaurentPoly] = None

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise InvalidInput(f"generator {self.name}: negative dimension")
        if self.beta is not None and not self.beta.is_zero() and self.beta.degree() != self.dim:
            raise InvalidInput(
                f"generator {self.name}: degree of beta {self.beta} differs from dim {self.dim}"
            )


class GeneratorSpec(BaseModel):
    """JSON form of a generator registry entry."""

    name: str
    dim: int
    base: str = POINT
    proper: bool = False
    nonsingular: bool = False
    compact: bool = False
    beta: Optional[str] = None

    def to_generator(self) -> Generator:
        beta = parse_laurent(self.beta) if self.beta is not None else None
        return Generator(
            name=self.name,
            dim=self.dim,
            base=self.base,
            proper=self.proper,
            nonsingular=self.nonsingular,
            compact=self.compact,
            beta=beta,
        )


@dataclass(frozen=True)
class Unknown:
    """Beta realization is unavailable because these generators carry no beta value."""

    generators: tuple[str, ...]

    def __str__(self) -> str:
        return f"Unknown{{{', '.join(self.generators)}}}"


class MotivicClass:
    """Finite sum of Laurent coefficients times generators (None = the unit class) over a base."""

    __slots__ = ("base", "_terms")

    def __init__(
        self,
        base: str = POINT,
        terms: Iterable[tuple[Optional[Generator], LaurentPoly]] = (),
    ) -> None:
        self.base = base
        collected: dict[Optional[Generator], LaurentPoly] = {}
        names: dict[str, Generator] = {}
        for gen, coeff in terms:
            if gen is not None:
                if gen.base != base:
                    raise BaseMismatch(f"generator {gen.name} lives over {gen.base}, not {base}")
                known = names.setdefault(gen.name, gen)
                if known != gen:
                    raise InvalidInput(f"conflicting generators named {gen.name}")
            collected[gen] = collected.get(gen, LaurentPoly()) + coeff
        self._terms: dict[Optional[Generator], LaurentPoly] = {
            g: c for g, c in sorted(collected.items(), key=_term_key) if not c.is_zero()
        }

    @classmethod
    def scalar(cls, value: Union[int, LaurentPoly], base: str = POINT) -> "MotivicClass":
        return cls(base, [(None, LaurentPoly.lift(value))])

    @classmethod
    def of(cls, gen: Generator, coeff: Union[int, LaurentPoly] = 1) -> "MotivicClass":
        return cls(gen.base, [(gen, LaurentPoly.lift(coeff))])

    @property
    def terms(self) -> list[tuple[Optional[Generator], LaurentPoly]]:
        return list(self._terms.items())

    @property
    def generators(self) -> list[Generator]:
        return [g for g in self._terms if g is not None]

    def is_zero(self) -> bool:
        return not self._terms

    def is_scalar(self) -> bool:
        return all(g is None for g in self._terms)

    def scalar_part(self) -> LaurentPoly:
        return self._terms.get(None, LaurentPoly())

    def coefficient(self, name: Optional[str]) -> LaurentPoly:
        for g, c in self._terms.items():
            if (g is None and name is None) or (g is not None and g.name == name):
                return c
        return LaurentPoly()

    # group and module structure

    def _check_base(self, other: "MotivicClass") -> None:
        if other.base != self.base:
            raise BaseMismatch(f"cannot combine classes over {self.base} and {other.base}")

    def __add__(self, other: Any) -> "MotivicClass":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_base(other)
        return MotivicClass(self.base, self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self) -> "MotivicClass":
        return MotivicClass(self.base, [(g, -c) for g, c in self.terms])

    def __sub__(self, other: Any) -> "MotivicClass":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "MotivicClass":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: Any) -> "MotivicClass":
        if isinstance(other, (int, LaurentPoly)):
            p = LaurentPoly.lift(other)
            return MotivicClass(self.base, [(g, c * p) for g, c in self.terms])
        if not isinstance(other, MotivicClass):
            return NotImplemented
        self._check_base(other)
        if other.is_scalar():
            return self * other.scalar_part()
        if self.is_scalar():
            return other * self.scalar_part()
        raise UnrepresentableProduct(
            f"product of generator classes {self} and {other} is not representable"
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MotivicClass":
        if not self.is_scalar():
            raise UnrepresentableProduct(f"power of a generator class {self}")
        return MotivicClass.scalar(self.scalar_part() ** n, self.base)

    def _coerce(self, other: Any) -> Optional["MotivicClass"]:
        if isinstance(other, MotivicClass):
            return other
        if isinstance(other, (int, LaurentPoly)):
            return MotivicClass.scalar(other, self.base)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = MotivicClass.scalar(other, self.base)
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self.base == other.base and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.base, tuple(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[tuple[str, str]] = []
        for g, c in self.terms:
            sign = "+"
            if len(c.coeffs) == 1 and next(iter(c.coeffs.values())) < 0:
                sign, c = "-", -c
            text = c.format("L")
            if g is None:
                body = text if len(c.coeffs) == 1 or not pieces else f"({text})"
            elif c == ONE:
                body = f"[{g.name}]"
            elif len(c.coeffs) == 1:
                body = f"{text}*[{g.name}]"
            else:
                body = f"({text})*[{g.name}]"
            pieces.append((sign, body))
        first_sign, out = pieces[0]
        out = f"-{out}" if first_sign == "-" else out
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MotivicClass({self.base}: {self})"


def _term_key(item: tuple[Optional[Generator], LaurentPoly]) -> tuple[int, str]:
    gen = item[0]
    return (0, "") if gen is None else (1, gen.name)


@dataclass(frozen=True)
class MotivicContext:
    """Immutable registry of generators and declared base morphisms (source, target) -> proper."""

    generators: Mapping[str, Generator] = field(default_factory=dict)
    morphisms: Mapping[tuple[str, str], bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", MappingProxyType(dict(self.generators)))
        object.__setattr__(self, "morphisms", MappingProxyType(dict(self.morphisms)))

    @classmethod
    def build(
        cls,
        generators: Iterable[Generator] = (),
        morphisms: Iterable[tuple[str, str, bool]] = (),
    ) -> "MotivicContext":
        registry: dict[str, Generator] = {}
        for gen in generators:
            if gen.name in registry:
                raise InvalidInput(f"duplicate generator name {gen.name}")
            registry[gen.name] = gen
        return cls(registry, {(s, t): proper for s, t, proper in morphisms})

    @classmethod
    def from_json(
        cls, registry: list[dict[str, Any]], morphisms: Iterable[Any] = ()
    ) -> "MotivicContext":
        gens = [GeneratorSpec.model_validate(entry).to_generator() for entry in registry]
        return cls.build(gens, [(s, t, bool(p)) for s, t, p in morphisms])

    def morphism(self, source: str, target: str) -> bool:
        """Properness of the declared morphism source -> target (identities are implicit)."""
        if source == target:
            return True
        if (source, target) not in self.morphisms:
            raise UnknownBaseMorphism(f"no declared base morphism {source} -> {target}")
        return self.morphisms[(source, target)]

    def parse(self, text: str, base: str = POINT) -> MotivicClass:
        return parse_class(text, self, base)


class ClassExpressionParser(ExpressionParser):
    """Parses expressions such as '[E1] + [E2] - (L+1)*[E12]' into MotivicClass values."""

    def __init__(self, text: str, context: MotivicContext, base: str) -> None:
        super().__init__(text)
        self.context = context
        self.base = base

    def atom_number(self, value: int) -> MotivicClass:
        return MotivicClass.scalar(value, self.base)

    def atom_name(self, name: str, pos: int) -> MotivicClass:
        if name in ("u", "L"):
            return MotivicClass.scalar(U, self.base)
        raise PolynomialSyntaxError(f"unknown symbol {name!r}", pos)

    def atom_generator(self, name: str, pos: int) -> MotivicClass:
        gen = self.context.generators.get(name)
        if gen is None:
            raise PolynomialSyntaxError(f"unknown generator [{name}]", pos)
        if gen.base != self.base:
            raise BaseMismatch(f"generator {name} lives over {gen.base}, not {self.base}")
        return MotivicClass.of(gen)


def parse_class(
    text: str, context: Optional[MotivicContext] = None, base: str = POINT
) -> MotivicClass:
    """Parse a class expression against a generator registry."""
    return ClassExpressionParser(text, context or MotivicContext(), base).parse()


def class_combine(x: MotivicClass, y: MotivicClass, op: str) -> MotivicClass:
    """Add, subtract or multiply two classes over the same base."""
    if x.base != y.base:
        raise BaseMismatch(f"cannot combine classes over {x.base} and {y.base}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise InvalidInput(f"unknown operation: {op}")


def beta_realize(x: MotivicClass) -> Union[LaurentPoly, Unknown]:
    """
    Virtual Poincare polynomial of a class (relative classes forget the map).

    Returns:
        The LaurentPoly realization, or Unknown listing generators without beta
    """
    missing = sorted(g.name for g in x.generators if g.beta is None)
    if missing:
        return Unknown(tuple(missing))
    total = LaurentPoly()
    for gen, coeff in x.terms:
        total = total + coeff * (ONE if gen is None else gen.beta)
    return total


def _dualizable(gen: Generator) -> bool:
    if gen.base == POINT:
        return gen.compact and gen.nonsingular
    return gen.proper and gen.nonsingular


def dual_class(x: MotivicClass) -> MotivicClass:
    """Duality D_S: L -> L^-1 and [h: X -> S] -> L^-dim X [h: X -> S] for regular proper X."""
    bad = sorted(g.name for g in x.generators if not _dualizable(g))
    if bad:
        raise DualityUndefined(bad)
    terms = []
    for gen, coeff in x.terms:
        shift = 0 if gen is None else -gen.dim
        terms.append((gen, coeff.dual().shift(shift)))
    return MotivicClass(x.base, terms)


def link_relative(x: MotivicClass) -> MotivicClass:
    """Link operator 1 + L*D_S."""
    return x + dual_class(x) * U


def pushforward_class(
    x: MotivicClass,
    target_base: str,
    mode: str = "shriek",
    context: Optional[MotivicContext] = None,
) -> MotivicClass:
    """
    Push a relative class along a declared base morphism.

    Args:
        x: Class over x.base
        target_base: Target of the declared morphism
        mode: 'shriek' composes structural maps, 'star' computes D o f_! o D
        context: Registry holding the declared morphisms

    Returns:
        Class over target_base
    """
    context = context or MotivicContext()
    if mode == "star":
        return dual_class(pushforward_class(dual_class(x), target_base, "shriek", context))
    if mode != "shriek":
        raise InvalidInput(f"unknown push-forward mode: {mode}")
    morphism_proper = context.morphism(x.base, target_base)
    terms = []
    for gen, coeff in x.terms:
        if gen is None:
            # the unit class over S is [id: S -> S]; only S = target keeps it a unit
            if x.base != target_base:
                raise InvalidInput(
                    f"unit class over {x.base} needs a generator for its total space"
                )
            terms.append((None, coeff))
            continue
        if gen.proper and not morphism_proper:
            raise PropernessLost(
                f"generator {gen.name} is proper but {x.base} -> {target_base} is not"
            )
        proper = gen.proper and morphism_proper
        compact = gen.compact or (target_base == POINT and proper)
        terms.append((replace(gen, base=target_base, proper=proper, compact=compact), coeff))
    logger.debug(f"Pushed {x} from {x.base} to {target_base}")
    return MotivicClass(target_base, terms)


def euler_parity_check(x: MotivicClass) -> bool:
    """
    True iff every term's scalar coefficient is even at L = -1.

    Images of link_relative always pass; a failure is logged as a warning.
    """
    for gen, coeff in x.terms:
        if coeff.chi_c() % 2 != 0:
            name = "1" if gen is None else gen.name
            logger.warning(f"odd Euler coefficient {coeff} on {name}: not a link image")
            return False
    return True
