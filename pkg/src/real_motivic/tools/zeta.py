"""
Motivic zeta functions with sign and motivic Milnor fibres.

Series are kept in closed rational form as sums of coefficient classes times products of blocks;
the Milnor fibre is minus the constant term of the 1/T expansion of Z(T).
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Union

from pydantic import BaseModel, Field

from ..config import EngineConfig, load_config
from ..errors import (
    DivergentBlock,
    InvalidInput,
    MissingStratumClass,
    MissingTableEntry,
    MotivicError,
    NotConvenient,
    NotWeightedHomogeneous,
    UnsupportedDimension,
    ZeroMultiplicityGenerator,
)
from .laurent_ring import ONE, U, LaurentPoly
from .motivic_classes import (
    POINT,
    Generator,
    GeneratorSpec,
    MotivicClass,
    MotivicContext,
    Unknown,
    beta_realize,
    dual_class,
)
from .polyhedra import (
    Face,
    NewtonPolyhedron,
    dual_fan,
    multiplicity,
    newton_polyhedron,
    parallelepiped_points,
    require_simplicial,
)
from .polynomial import MultiPoly, analyze_weights, nondegenerate_check

logger = logging.getLogger(__name__)

SIGNS = ("plus", "minus")
TAGS = ("plus", "minus", "zero")
TAG_SYMBOLS = {"plus": "+", "minus": "-", "zero": "0"}


# blocks


@dataclass(frozen=True)
class GeomBlock:
    """L^a T^k / (1 - L^a T^l)."""

    a: int
    k: int
    l: int  # noqa: E741

    def __post_init__(self) -> None:
        if self.k < 1 or self.l < 1:
            raise InvalidInput(f"block exponents must be positive, got k={self.k}, l={self.l}")
        if self.k > self.l:
            raise DivergentBlock(f"block with k={self.k} > l={self.l} has no limit at infinity")

    def series(self, n: int) -> dict[int, LaurentPoly]:
        terms: dict[int, LaurentPoly] = {}
        j = 0
        while self.k + j * self.l <= n:
            terms[self.k + j * self.l] = LaurentPoly.monomial(self.a * (j + 1))
            j += 1
        return terms

    def limit(self) -> LaurentPoly:
        return -ONE if self.k == self.l else LaurentPoly()

    def __str__(self) -> str:
        num = _monomial_text(self.a, self.k)
        den = _monomial_text(self.a, self.l)
        return f"{num}/(1 - {den})"


@dataclass(frozen=True)
class PipedBlock:
    """Sum over a in Q_sigma of L^-s(a) T^m(a), over prod (1 - L^-s(v) T^m(v))."""

    lattice_points: tuple[tuple[int, int], ...]
    denominator_gens: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for s, m in self.denominator_gens:
            if m <= 0:
                raise ZeroMultiplicityGenerator(f"denominator generator with s={s} has m={m}")
        bound = sum(m for _, m in self.denominator_gens)
        for s, m in self.lattice_points:
            if m > bound:
                raise DivergentBlock(f"lattice point with m={m} exceeds the generator sum {bound}")

    def series(self, n: int) -> dict[int, LaurentPoly]:
        result: dict[int, LaurentPoly] = {}
        for s, m in self.lattice_points:
            if m <= n:
                result[m] = result.get(m, LaurentPoly()) + LaurentPoly.monomial(-s)
        for s_v, m_v in self.denominator_gens:
            geometric = {j * m_v: LaurentPoly.monomial(-j * s_v) for j in range(n // m_v + 1)}
            result = _convolve(result, geometric, n)
        return result

    def limit(self) -> LaurentPoly:
        """
        Constant term of the expansion in 1/T.

        Each denominator factor is -sum_{j>=1} L^{j s} T^{-j m}, so the constant term collects
        the tuples j >= 1 with sum j_i m_i = m(a).
        """
        total = LaurentPoly()
        for s_a, m_a in self.lattice_points:
            for js in _compositions(m_a, [m for _, m in self.denominator_gens]):
                exponent = -s_a + sum(j * s for j, (s, _) in zip(js, self.denominator_gens))
                total = total + LaurentPoly.monomial(exponent)
        return total * (-1) ** len(self.denominator_gens)

    def __str__(self) -> str:
        num = " + ".join(_monomial_text(-s, m) for s, m in self.lattice_points) or "0"
        den = "".join(f"(1 - {_monomial_text(-s, m)})" for s, m in self.denominator_gens)
        return f"({num})/{den}" if den else f"({num})"


Block = Union[GeomBlock, PipedBlock]


def _monomial_text(a: int, k: int) -> str:
    power = "" if a == 0 else ("L" if a == 1 else f"L^{a}")
    t = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
    return "*".join(p for p in (power, t) if p) or "1"


def _compositions(total: int, parts: list[int]) -> Iterable[tuple[int, ...]]:
    """Tuples j with every j_i >= 1 and sum j_i * parts_i == total."""
    if not parts:
        if total == 0:
            yield ()
        return
    head, rest = parts[0], parts[1:]
    j = 1
    while j * head + sum(rest) <= total:
        for tail in _compositions(total - j * head, rest):
            yield (j,) + tail
        j += 1


def _convolve(
    a: dict[int, LaurentPoly], b: dict[int, LaurentPoly], n: int
) -> dict[int, LaurentPoly]:
    result: dict[int, LaurentPoly] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= n:
                result[i + j] = result.get(i + j, LaurentPoly()) + x * y
    return result


# series


@dataclass
class ZetaSeries:
    base: str
    summands: list[tuple[MotivicClass, tuple[Block, ...]]] = field(default_factory=list)

    def add(self, coeff: MotivicClass, blocks: Iterable[Block]) -> None:
        if coeff.base != self.base:
            raise InvalidInput(f"summand over {coeff.base} in a series over {self.base}")
        self.summands.append((coeff, tuple(blocks)))

    def format(self) -> str:
        parts = []
        for coeff, blocks in self.summands:
            if coeff.is_zero():
                continue
            factors = " * ".join(f"[{b}]" for b in blocks)
            parts.append(f"({coeff}) * {factors}" if factors else f"({coeff})")
        return " + ".join(parts) or "0"

    def __str__(self) -> str:
        return self.format()


def expand_series(z: ZetaSeries, n: int) -> list[MotivicClass]:
    """
    Coefficients of T^1 .. T^n.

    Args:
        z: Series in closed form
        n: Number of coefficients

    Returns:
        Exact MotivicClass coefficients
    """
    if n < 1:
        raise InvalidInput("expand_series needs n >= 1")
    coefficients = [MotivicClass.scalar(0, z.base) for _ in range(n)]
    for coeff, blocks in z.summands:
        product: dict[int, LaurentPoly] = {0: ONE}
        for block in blocks:
            product = _convolve(product, block.series(n), n)
        for power, value in product.items():
            if 1 <= power <= n:
                coefficients[power - 1] = coefficients[power - 1] + coeff * value
    return coefficients


def limit_at_infinity(z: ZetaSeries) -> MotivicClass:
    """Constant coefficient of the expansion of z in 1/T."""
    total = MotivicClass.scalar(0, z.base)
    for coeff, blocks in z.summands:
        value = ONE
        for block in blocks:
            value = value * block.limit()
        total = total + coeff * value
    return total


def milnor_fibre(z: ZetaSeries) -> MotivicClass:
    """psi = -lim_{T -> infinity} Z(T)."""
    return -limit_at_infinity(z)


def sphere_class(d: int) -> LaurentPoly:
    """beta of the sphere S^{d-1}."""
    if d < 1:
        raise InvalidInput("sphere_class needs d >= 1")
    return ONE + U ** (d - 1)


# resolution data


class ComponentSpec(BaseModel):
    id: str
    N: int = Field(ge=1)
    nu: int = Field(ge=1)


class StratumSpec(BaseModel):
    I: list[str] = Field(min_length=1)
    plus: Optional[str] = None
    minus: Optional[str] = None
    unsigned: Optional[str] = None


class ResolutionDatumSpec(BaseModel):
    """JSON form: components with (N, nu) and stratum classes written as class expressions."""

    base: str = POINT
    components: list[ComponentSpec]
    strata: list[StratumSpec]
    generators: list[GeneratorSpec] = Field(default_factory=list)
    morphisms: list[tuple[str, str, bool]] = Field(default_factory=list)


@dataclass(frozen=True)
class Stratum:
    I: tuple[str, ...]
    class_plus: Optional[MotivicClass]
    class_minus: Optional[MotivicClass]
    class_unsigned: Optional[MotivicClass] = None

    def signed(self, sign: str) -> Optional[MotivicClass]:
        return self.class_plus if sign == "plus" else self.class_minus


@dataclass
class ResolutionDatum:
    base: str
    components: dict[str, tuple[int, int]]
    strata: list[Stratum]
    context: MotivicContext = field(default_factory=MotivicContext)

    def __post_init__(self) -> None:
        for stratum in self.strata:
            unknown = [c for c in stratum.I if c not in self.components]
            if unknown:
                raise InvalidInput(f"stratum {stratum.I} references undeclared {unknown}")
            for cls in (stratum.class_plus, stratum.class_minus, stratum.class_unsigned):
                if cls is not None and cls.base != self.base:
                    raise InvalidInput(f"stratum {stratum.I} class lives over {cls.base}")

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "ResolutionDatum":
        spec = ResolutionDatumSpec.model_validate(data)
        context = MotivicContext.build(
            [g.to_generator() for g in spec.generators], spec.morphisms
        )

        def parse(text: Optional[str]) -> Optional[MotivicClass]:
            return None if text is None else context.parse(text, spec.base)

        strata = [
            Stratum(tuple(s.I), parse(s.plus), parse(s.minus), parse(s.unsigned))
            for s in spec.strata
        ]
        components = {c.id: (c.N, c.nu) for c in spec.components}
        return cls(spec.base, components, strata, context)


def dl_zeta(res: ResolutionDatum, sign: str) -> ZetaSeries:
    """
    Zeta function with sign from a resolution datum.

    Args:
        res: Numerical data (N, nu) per component and covering classes per stratum
        sign: 'plus' or 'minus'

    Returns:
        One summand (L-1)^{|I|-1} [E_I] prod L^-nu T^N / (1 - L^-nu T^N) per stratum
    """
    if sign not in SIGNS:
        raise InvalidInput(f"unknown sign {sign}")
    z = ZetaSeries(res.base)
    for stratum in res.strata:
        cls = stratum.signed(sign)
        if cls is None:
            raise MissingStratumClass(f"stratum {'-'.join(stratum.I)} has no {sign} class")
        coeff = cls * (U - 1) ** (len(stratum.I) - 1)
        blocks = []
        for component in stratum.I:
            N, nu = res.components[component]
            blocks.append(GeomBlock(-nu, N, N))
        z.add(coeff, blocks)
    return z


def milnor_fibre_closed_form(
    res: ResolutionDatum, sign: str, convention: str = "derived"
) -> MotivicClass:
    """
    Closed form of psi from a resolution datum.

    'derived' uses (1-L)^{|I|-1}, which agrees with -lim Z; 'printed' uses (L-1)^{|I|-1}.
    """
    if convention not in ("derived", "printed"):
        raise InvalidInput(f"unknown convention {convention}")
    factor = (ONE - U) if convention == "derived" else (U - 1)
    total = MotivicClass.scalar(0, res.base)
    for stratum in res.strata:
        cls = stratum.signed(sign)
        if cls is None:
            raise MissingStratumClass(f"stratum {'-'.join(stratum.I)} has no {sign} class")
        total = total + cls * factor ** (len(stratum.I) - 1)
    return total


# torus classes


def beta_class(name: str, beta: LaurentPoly, base: str = POINT) -> MotivicClass:
    """Class of a generator known only through its beta value."""
    if beta.is_zero():
        return MotivicClass.scalar(0, base)
    return MotivicClass.of(Generator(name=name, dim=beta.degree(), base=base, beta=beta))


def _table_key(face_id: str, tag: str) -> str:
    return f"face:{face_id}:{tag}"


@dataclass
class TorusClassTable:
    """Classes of the torus sets {f_face = +-1} and {f_face = 0}, keyed by (face id, tag)."""

    entries: dict[tuple[str, str], MotivicClass] = field(default_factory=dict)
    provenance: dict[tuple[str, str], str] = field(default_factory=dict)

    def lookup(self, face_id: str, tag: str) -> MotivicClass:
        try:
            return self.entries[(face_id, tag)]
        except KeyError:
            raise MissingTableEntry(f"no torus class for {_table_key(face_id, tag)}") from None

    def set(self, face_id: str, tag: str, value: MotivicClass, provenance: str) -> None:
        if tag not in TAGS:
            raise InvalidInput(f"unknown tag {tag}")
        self.entries[(face_id, tag)] = value
        self.provenance[(face_id, tag)] = provenance

    def merged(self, other: "TorusClassTable") -> "TorusClassTable":
        table = TorusClassTable(dict(self.entries), dict(self.provenance))
        for key, value in other.entries.items():
            table.set(*key, value, other.provenance.get(key, "user"))
        return table

    @classmethod
    def compute(cls, f: MultiPoly, np: Optional[NewtonPolyhedron] = None) -> "TorusClassTable":
        """
        Entries computed by curve topology for faces with at most two effective variables.

        Faces with three or more effective variables are left out; they must be user-supplied.
        """
        from .curve_topology import torus_class

        np = np or newton_polyhedron(f.support, f.dim)
        table = cls()
        for face in np.compact_faces:
            face_poly = reduced_face_poly(f, face)
            for tag in TAGS:
                name = f"X{TAG_SYMBOLS[tag]}{face.id}"
                try:
                    value = torus_class(face_poly, tag, face_poly.dim, name)
                except UnsupportedDimension as exc:
                    logger.info(f"Skipping {_table_key(face.id, tag)}: {exc}")
                    continue
                table.set(face.id, tag, value, "computed")
        return table

    @classmethod
    def from_json(cls, data: dict[str, str]) -> "TorusClassTable":
        """Read {"face:<id>:<tag>": "<beta>"} entries as user-provided classes."""
        from .laurent_ring import parse_laurent

        table = cls()
        for key, text in data.items():
            prefix, _, rest = key.partition(":")
            face_id, _, tag = rest.rpartition(":")
            if prefix != "face" or not face_id or tag not in TAGS:
                raise InvalidInput(f"bad table key {key!r}")
            name = f"X{TAG_SYMBOLS[tag]}{face_id}"
            table.set(face_id, tag, beta_class(name, parse_laurent(text)), "user")
        return table

    def to_json(self) -> dict[str, dict[str, str]]:
        out = {}
        for (face_id, tag), value in sorted(self.entries.items()):
            beta = beta_realize(value)
            out[_table_key(face_id, tag)] = {
                "beta": str(beta),
                "provenance": self.provenance.get((face_id, tag), "user"),
            }
        return out


def reduced_face_poly(f: MultiPoly, face: Face) -> MultiPoly:
    """Face polynomial f_face with the variables of its coordinate hyperplanes dropped."""
    terms = f.terms
    poly = MultiPoly(f.vars, {nu: terms[nu] for nu in face.support_points})
    for axis in sorted(face.hyperplane_axes, reverse=True):
        poly = poly.substitute(axis, 1)
    if poly.dim == 0:
        raise InvalidInput(f"face {face.id} lies in every coordinate hyperplane")
    return poly


# Newton route


def newton_zeta(
    f: MultiPoly,
    table: TorusClassTable,
    sign: str,
    cfg: Optional[EngineConfig] = None,
    assume_nondegenerate: bool = False,
) -> ZetaSeries:
    """
    Local zeta function with sign at the origin from the Newton polyhedron.

    Args:
        f: Polynomial with f(0) = 0, non-degenerate for its Newton polyhedron
        table: Torus classes for every compact face
        sign: 'plus' or 'minus'
        cfg: Engine configuration; qsigma selects the parallelepiped generators
        assume_nondegenerate: Accept d >= 3 inputs whose non-degeneracy cannot be certified

    Returns:
        ZetaSeries over pt with two summands per compact face
    """
    if sign not in SIGNS:
        raise InvalidInput(f"unknown sign {sign}")
    cfg = cfg or load_config()
    np = newton_polyhedron(f.support, f.dim)
    status = nondegenerate_check(f, [face.support_points for face in np.compact_faces])
    if status.supported and not status.certified:
        raise InvalidInput(f"{f} is degenerate on the face {status.failing_face}")
    if not status.supported and not assume_nondegenerate:
        raise UnsupportedDimension(
            f"non-degeneracy of {f} cannot be certified in dimension {f.dim}; assert it explicitly"
        )
    fan = dual_fan(np)
    z = ZetaSeries(POINT)
    for face, _ in fan.entries:
        cone = require_simplicial(fan, face.id)
        denominators = []
        for v in cone.positive_gens:
            m_v, _ = multiplicity(np, v)
            if m_v == 0:
                raise ZeroMultiplicityGenerator(f"generator {v} of face {face.id} has m_f = 0")
            denominators.append((sum(v), int(m_v)))
        q_gens = cone.positive_gens if cfg.qsigma == "positive-gens" else cone.generators
        points = tuple(
            (sum(a), int(multiplicity(np, a)[0])) for a in parallelepiped_points(q_gens)
        )
        block = PipedBlock(points, tuple(denominators))
        logger.debug(f"Face {face.id}: P = {block}")
        z.add(table.lookup(face.id, sign), [block])
        z.add(table.lookup(face.id, "zero"), [GeomBlock(-1, 1, 1), block])
    return z


# weighted homogeneous route


def _coordinate_faces(f: MultiPoly, np: NewtonPolyhedron) -> list[Face]:
    faces = []
    for face in np.compact_faces:
        on_face = {nu for nu in f.support if all(nu[i] == 0 for i in face.hyperplane_axes)}
        if on_face == set(face.support_points):
            faces.append(face)
    return faces


def wh_milnor(f: MultiPoly, table: TorusClassTable, sign: str) -> MotivicClass:
    """
    psi = [{f = +-1}] - [{f = 0}] + 1 for a convenient weighted homogeneous f.

    The whole-space classes are assembled from the torus pieces of the coordinate faces.
    """
    if sign not in SIGNS:
        raise InvalidInput(f"unknown sign {sign}")
    analysis = analyze_weights(f)
    if analysis.weights is None:
        raise NotWeightedHomogeneous(f"{f} has no positive weights")
    if not analysis.convenient:
        raise NotConvenient(f"{f} misses a coordinate axis")
    np = newton_polyhedron(f.support, f.dim)
    level_set = MotivicClass.scalar(0)
    zero_set = MotivicClass.scalar(1)  # the origin
    for face in _coordinate_faces(f, np):
        level_set = level_set + table.lookup(face.id, sign)
        zero_set = zero_set + table.lookup(face.id, "zero")
    return level_set - zero_set + 1


def duality_milnor_check(psi: MotivicClass, d: int) -> Optional[bool]:
    """
    Whether D(psi) = L^{1-d} psi.

    Returns:
        True or False, or None (indeterminate) when neither beta nor the symbolic dual exists
    """
    verdicts = []
    beta = beta_realize(psi)
    if not isinstance(beta, Unknown):
        verdicts.append(beta.dual() == beta.shift(1 - d))
    try:
        verdicts.append(dual_class(psi) == psi * U ** (1 - d))
    except MotivicError as exc:
        logger.debug(f"Symbolic duality unavailable: {exc}")
    if not verdicts:
        return None
    return all(verdicts)


def sphere_link_check(f: MultiPoly, table: TorusClassTable) -> bool:
    """beta(psi^+) = 1 + u^{d-1} for a nonnegative weighted homogeneous f with {f = 0} = {0}."""
    np = newton_polyhedron(f.support, f.dim)
    for face in _coordinate_faces(f, np):
        for tag in ("minus", "zero"):
            beta = beta_realize(table.lookup(face.id, tag))
            if isinstance(beta, Unknown) or not beta.is_zero():
                raise InvalidInput(
                    f"{f} is not certified nonnegative with an isolated zero ({face.id}, {tag})"
                )
    beta = beta_realize(wh_milnor(f, table, "plus"))
    if isinstance(beta, Unknown):
        raise InvalidInput(f"beta of the Milnor fibre of {f} is unknown: {beta}")
    return beta == sphere_class(f.dim)


# cross validation


class RouteResult(BaseModel):
    available: bool
    reason: Optional[str] = None
    psi: dict[str, str] = Field(default_factory=dict)
    beta: dict[str, str] = Field(default_factory=dict)
    chi_c: dict[str, int] = Field(default_factory=dict)


class ValidationReport(BaseModel):
    polynomial: str
    routes: dict[str, RouteResult]
    verdict: str
    flags: list[str] = Field(default_factory=list)
    config: dict[str, str] = Field(default_factory=dict)


def _route(compute: Any) -> RouteResult:
    result = RouteResult(available=True)
    for sign in SIGNS:
        try:
            psi = compute(sign)
        except MotivicError as exc:
            if sign == "plus":
                return RouteResult(available=False, reason=f"{type(exc).__name__}: {exc}")
            logger.info(f"Route has no {sign} value: {exc}")
            continue
        beta = beta_realize(psi)
        result.psi[sign] = str(psi)
        result.beta[sign] = str(beta)
        if not isinstance(beta, Unknown):
            result.chi_c[sign] = beta.chi_c()
    return result


def cross_validate(
    f: MultiPoly,
    res: Optional[ResolutionDatum],
    table: Optional[TorusClassTable],
    cfg: Optional[EngineConfig] = None,
    assume_nondegenerate: bool = False,
) -> ValidationReport:
    """
    Compare beta(psi) across the resolution, Newton and weighted homogeneous routes.

    Disagreements are reported, never resolved.
    """
    cfg = cfg or load_config()
    routes: dict[str, RouteResult] = {}
    flags: list[str] = []
    if res is not None:
        routes["dl"] = _route(lambda sign: milnor_fibre(dl_zeta(res, sign)))
        printed = milnor_fibre_closed_form(res, "plus", "printed")
        if beta_realize(printed) != beta_realize(milnor_fibre(dl_zeta(res, "plus"))):
            flags.append("closed form with (L-1)^{|I|-1} differs from -lim Z")
    if table is not None:
        routes["newton"] = _route(
            lambda sign: milnor_fibre(newton_zeta(f, table, sign, cfg, assume_nondegenerate))
        )
        routes["wh"] = _route(lambda sign: wh_milnor(f, table, sign))
    available = {name: r for name, r in routes.items() if r.available}
    if len(available) < 2:
        verdict = "INSUFFICIENT"
    else:
        values = {name: r.beta.get("plus") for name, r in available.items()}
        verdict = "AGREE" if len(set(values.values())) == 1 else "DISAGREE"
        if verdict == "DISAGREE":
            logger.warning(f"Routes disagree for {f}: {values}")
            flags.append(f"routes disagree: {values}")
    logger.info(f"Cross-validation of {f}: {verdict}")
    return ValidationReport(
        polynomial=str(f),
        routes=routes,
        verdict=verdict,
        flags=flags,
        config={"qsigma": cfg.qsigma, "corfib_sign": cfg.corfib_sign},
    )
