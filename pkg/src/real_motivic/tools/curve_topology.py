"""Exact real-root counting and level-curve topology for the torus classes of the Newton route."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import sympy

from ..errors import InvalidInput, SingularLevelCurve, UnsupportedDimension
from .laurent_ring import LaurentPoly, U
from .motivic_classes import Generator, MotivicClass
from .polynomial import MultiPoly, find_weights

logger = logging.getLogger(__name__)

Bound = Optional[Fraction]

# quadrants in counter-clockwise order, starting just above the positive x half-axis
QUADRANTS: tuple[tuple[int, int], ...] = ((1, 1), (-1, 1), (-1, -1), (1, -1))


def _univariate(p: MultiPoly) -> sympy.Poly:
    if p.dim != 1:
        raise InvalidInput(f"expected a univariate polynomial, got variables {p.vars}")
    if p.is_zero():
        raise InvalidInput("sturm_count of the zero polynomial")
    return p.to_sympy()


def _rational(q: Fraction) -> sympy.Rational:
    return sympy.Rational(q.numerator, q.denominator)


def _sign_variations(values: Sequence[sympy.Expr]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain: list[sympy.Poly], point: Bound, at_minus_infinity: bool = False) -> int:
    if point is None:
        values = [
            p.LC() * (-1) ** p.degree() if at_minus_infinity else p.LC() for p in chain
        ]
    else:
        values = [p.eval(_rational(point)) for p in chain]
    return _sign_variations(values)


def sturm_count(
    p: MultiPoly,
    interval: tuple[Bound, Bound] = (None, None),
    exclude_zero: bool = False,
) -> int:
    """
    Count distinct real roots in an open interval with a Sturm sequence.

    Args:
        p: Nonzero univariate polynomial
        interval: (lo, hi) with None standing for -inf / +inf
        exclude_zero: Do not count the root 0 (torus semantics)

    Returns:
        Number of distinct real roots in (lo, hi)
    """
    poly = _univariate(p)
    if poly.degree() <= 0:
        return 0
    squarefree = sympy.Poly(sympy.sqf_part(poly.as_expr()), *poly.gens, domain="QQ")
    chain = sympy.sturm(squarefree)
    lo, hi = (None if b is None else Fraction(b) for b in interval)
    # V(lo) - V(hi) counts roots in (lo, hi]
    count = _variations_at(chain, lo, at_minus_infinity=True) - _variations_at(chain, hi)
    if hi is not None and squarefree.eval(_rational(hi)) == 0:
        count -= 1
    if exclude_zero and squarefree.eval(0) == 0:
        inside = (lo is None or lo < 0) and (hi is None or hi > 0)
        if inside:
            count -= 1
    return count


def real_root_cells(p: MultiPoly, lo: Bound, hi: Bound) -> list[tuple[int, Fraction]]:
    """
    Signs of p along (lo, hi), as alternating interval samples and roots.

    Returns:
        List of (sign, rational sample) for open intervals between consecutive roots, with
        (0, isolating-interval midpoint) entries standing for the roots themselves
    """
    poly = _univariate(p)
    squarefree = sympy.Poly(sympy.sqf_part(poly.as_expr()), *poly.gens, domain="QQ")
    intervals = []
    if squarefree.degree() > 0:
        for (a, b), _ in squarefree.intervals():
            a, b = Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q))
            if (lo is None or b > lo) and (hi is None or a < hi):
                intervals.append((a, b))
    intervals.sort()
    # refine until isolating intervals stay inside (lo, hi) and disjoint from each other
    refined = []
    for a, b in intervals:
        if any(
            end is not None and a <= end <= b and squarefree.eval(_rational(end)) == 0
            for end in (lo, hi)
        ):
            # the isolated root is an endpoint of (lo, hi)
            continue
        while True:
            inside = (lo is None or a > lo) and (hi is None or b < hi)
            if inside or a == b:
                break
            if squarefree.eval(_rational(a)) == 0:
                b = a
                break
            if squarefree.eval(_rational(b)) == 0:
                a = b
                break
            mid = (a + b) / 2
            if squarefree.eval(_rational(mid)) == 0:
                a = b = mid
                break
            left_sign = squarefree.eval(_rational(a)) * squarefree.eval(_rational(mid))
            a, b = (a, mid) if left_sign <= 0 else (mid, b)
        if (lo is not None and b <= lo) or (hi is not None and a >= hi):
            continue
        refined.append((a, b))
    cells: list[tuple[int, Fraction]] = []
    boundaries = [lo] + [v for pair in refined for v in pair] + [hi]
    for index in range(len(refined) + 1):
        left, right = boundaries[2 * index], boundaries[2 * index + 1]
        sample = _sample_between(left, right)
        value = poly.eval(_rational(sample))
        cells.append((1 if value > 0 else -1 if value < 0 else 0, sample))
        if index < len(refined):
            a, b = refined[index]
            cells.append((0, (a + b) / 2))
    return cells


def _sample_between(left: Bound, right: Bound) -> Fraction:
    if left is None and right is None:
        return Fraction(0)
    if left is None:
        return right - 1
    if right is None:
        return left + 1
    return (left + right) / 2


@dataclass(frozen=True)
class CurveComponent:
    kind: str  # "circle" or "arc"
    witness: tuple[Fraction, Fraction]


@dataclass
class CurveTopologyReport:
    """Components of a level curve with the circle -> u+1, arc -> u contract."""

    components: list[CurveComponent] = field(default_factory=list)
    axis_points: int = 0

    @property
    def n_circles(self) -> int:
        return sum(1 for c in self.components if c.kind == "circle")

    @property
    def n_arcs(self) -> int:
        return sum(1 for c in self.components if c.kind == "arc")

    @property
    def beta(self) -> LaurentPoly:
        return (U + 1) * self.n_circles + U * self.n_arcs

    @property
    def chi_c(self) -> int:
        return self.beta.chi_c()

    def to_json(self) -> dict:
        return {
            "components": [
                {"kind": c.kind, "witness": [str(x) for x in c.witness]} for c in self.components
            ],
            "beta": str(self.beta),
            "chi_c": self.chi_c,
        }


def _orbit_cells(f: MultiPoly, level: int) -> list[tuple[int, tuple[Fraction, Fraction], bool]]:
    """
    Cyclic decomposition of the weighted orbit circle of the punctured plane.

    Returns:
        Entries (sign of f, representative point, on_axis) in counter-clockwise order
    """
    cells: list[tuple[int, tuple[Fraction, Fraction], bool]] = []
    axis_points = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    for axis, (sx, sy) in zip(axis_points, QUADRANTS):
        value = f.evaluate(axis)
        cells.append((1 if value > 0 else -1 if value < 0 else 0, tuple(map(Fraction, axis)), True))
        # every orbit in the quadrant meets x = sx exactly once
        section = f.substitute(0, sx)
        if section.is_zero():
            raise SingularLevelCurve(f"{f} vanishes on a whole quadrant")
        half_line = (Fraction(0), None) if sy > 0 else (None, Fraction(0))
        quadrant = [(s, (Fraction(sx), y), False) for s, y in real_root_cells(section, *half_line)]
        # counter-clockwise order runs through y ascending exactly on the x > 0 side
        if sx < 0:
            quadrant.reverse()
        cells.extend(quadrant)
    return cells


def curve_components(f: MultiPoly, level: int, domain: str = "torus") -> CurveTopologyReport:
    """
    Components of {f = level} in the plane or in the torus (R*)^2.

    Quasi-homogeneous polynomials with positive weights (every face polynomial of a compact
    Newton face) go through the weighted orbit circle, which also handles the singular origin of
    level 0. Any other polynomial is swept cylindrically and must give a nonsingular curve.

    Args:
        f: Bivariate polynomial
        level: -1, 0 or 1
        domain: 'plane' or 'torus'

    Returns:
        CurveTopologyReport with components sorted by witness
    """
    if level not in (-1, 0, 1):
        raise InvalidInput(f"unsupported level {level}: only -1, 0, 1")
    if f.dim != 2:
        raise UnsupportedDimension(f"curve topology needs 2 variables, got {f.dim}")
    if domain not in ("plane", "torus"):
        raise InvalidInput(f"unknown domain {domain}")
    report = CurveTopologyReport()
    if find_weights(f.support) is None:
        _swept_components(f, level, domain, report)
        report.components.sort(key=lambda c: c.witness)
        logger.debug(f"Level {level} of {f} in {domain} (swept): {report.to_json()}")
        return report
    cells = _orbit_cells(f, level)
    if level == 0:
        _zero_level_components(f, cells, domain, report)
    else:
        _signed_level_components(cells, level, domain, report)
    report.components.sort(key=lambda c: c.witness)
    logger.debug(f"Level {level} of {f} in {domain}: {report.to_json()}")
    return report


def _signed_level_components(
    cells: list[tuple[int, tuple[Fraction, Fraction], bool]],
    level: int,
    domain: str,
    report: CurveTopologyReport,
) -> None:
    if domain == "plane" and all(sign == level for sign, _, _ in cells):
        report.components.append(CurveComponent("circle", cells[0][1]))
        report.axis_points = sum(1 for _, _, on_axis in cells if on_axis)
        return
    if domain == "plane":
        report.axis_points = sum(1 for sign, _, on_axis in cells if on_axis and sign == level)
    # walls: orbits off the level set, plus the axis orbits in the torus
    walls = {
        i
        for i, (sign, _, on_axis) in enumerate(cells)
        if sign != level or (on_axis and domain == "torus")
    }
    n = len(cells)
    start = min(walls)
    run: list[tuple[Fraction, Fraction]] = []
    for step in range(1, n + 1):
        index = (start + step) % n
        sign, point, on_axis = cells[index]
        if index in walls:
            if run:
                report.components.append(CurveComponent("arc", min(run)))
                run = []
            continue
        run.append(point)


def _zero_level_components(
    f: MultiPoly,
    cells: list[tuple[int, tuple[Fraction, Fraction], bool]],
    domain: str,
    report: CurveTopologyReport,
) -> None:
    rays = [(point, on_axis) for sign, point, on_axis in cells if sign == 0]
    if domain == "torus":
        for point, on_axis in rays:
            if not on_axis:
                report.components.append(CurveComponent("arc", point))
        return
    origin_regular = any(sum(exp) == 1 for exp in f.support)
    if not rays:
        raise SingularLevelCurve(f"{{{f} = 0}} is an isolated point at the origin")
    if not origin_regular or len(rays) != 2:
        raise SingularLevelCurve(f"{{{f} = 0}} is singular at the origin")
    report.axis_points = sum(1 for _, on_axis in rays if on_axis)
    report.components.append(CurveComponent("arc", min(point for point, _ in rays)))


# sheared coordinates of the cylindrical sweep: x = X + t*Y, y = Y
_X, _Y = sympy.Dummy("X"), sympy.Dummy("Y")

MAX_STRIP_REFINEMENTS = 40
MAX_LINE_TRIES = 64

Node = tuple
Point = tuple[Fraction, Fraction]


def _to_fraction(q: sympy.Expr) -> Fraction:
    q = sympy.Rational(q)
    return Fraction(int(q.p), int(q.q))


def _sign(poly: sympy.Poly, q: Fraction) -> int:
    value = poly.eval(_rational(q))
    return 1 if value > 0 else -1 if value < 0 else 0


@dataclass
class _Root:
    """A real root of a squarefree polynomial, isolated in [lo, hi] (lo == hi for rational roots)."""

    poly: sympy.Poly
    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def refine(self, width: Fraction) -> None:
        while self.hi - self.lo > width:
            mid = self.mid
            sign = _sign(self.poly, mid)
            if sign == 0:
                self.lo = self.hi = mid
            elif sign == _sign(self.poly, self.lo):
                self.lo = mid
            else:
                self.hi = mid


def _isolate(poly: sympy.Poly, lo: Bound = None, hi: Bound = None) -> list[_Root]:
    """Isolated real roots inside the open interval (lo, hi); poly must not vanish at finite ends."""
    if poly.is_zero:
        raise InvalidInput("cannot isolate the roots of the zero polynomial")
    squarefree = poly.sqf_part()
    if squarefree.degree() <= 0:
        return []
    roots = []
    for (a, b), _ in squarefree.intervals():
        root = _Root(squarefree, _to_fraction(a), _to_fraction(b))
        if root.lo != root.hi:
            if _sign(squarefree, root.lo) == 0:
                root.hi = root.lo
            elif _sign(squarefree, root.hi) == 0:
                root.lo = root.hi
        while root.lo != root.hi and any(
            end is not None and root.lo <= end <= root.hi for end in (lo, hi)
        ):
            root.refine((root.hi - root.lo) / 2)
        if (lo is None or root.lo > lo) and (hi is None or root.hi < hi):
            roots.append(root)
    roots.sort(key=lambda r: r.lo)
    return roots


class _End(NamedTuple):
    side: str  # "L" or "R": the left or right fibre of a strip
    index: int
    root: _Root


def _clusters(ends: list[_End]) -> list[list[_End]]:
    """Group overlapping isolating intervals until no group holds two ends of the same fibre."""
    while True:
        clusters: list[list[_End]] = []
        reach = Fraction(0)
        for end in sorted(ends, key=lambda e: e.root.lo):
            if clusters and end.root.lo <= reach:
                clusters[-1].append(end)
                reach = max(reach, end.root.hi)
            else:
                clusters.append([end])
                reach = end.root.hi
        crowded = [
            cluster
            for cluster in clusters
            if any(sum(1 for e in cluster if e.side == side) > 1 for side in "LR")
        ]
        if not crowded:
            return clusters
        for cluster in crowded:
            for end in cluster:
                end.root.refine((end.root.hi - end.root.lo) / 2)


def _require_nonsingular(g: sympy.Expr, x: sympy.Symbol, y: sympy.Symbol) -> None:
    """Raise SingularLevelCurve unless g, g_x and g_y have no common real zero."""
    system = [g, sympy.diff(g, x), sympy.diff(g, y)]
    for gens in ((x, y), (y, x)):
        basis = sympy.groebner(system, *gens, order="lex", domain="QQ")
        if list(basis.exprs) == [1]:
            return
        last = basis.exprs[-1]
        if last.free_symbols <= {gens[1]}:
            eliminant = sympy.Poly(last, gens[1], domain="QQ")
            if eliminant.degree() > 0 and not _isolate(eliminant):
                return
    raise SingularLevelCurve(f"{{{g} = 0}} has a real singular point")


class _CurveSweep:
    """
    Cylindrical sweep of a nonsingular affine curve {g = 0}.

    The shear x = X + t*Y is chosen with g_top(t, 1) != 0, so the leading coefficient in Y is a
    nonzero constant: no vertical asymptotes, and the curve over a compact X-interval is bounded.
    Critical fibres are the real roots of resultant_Y(G, G_Y), plus in the torus the X-values of
    the points on the axes. Branches over the gaps between critical fibres are graphs and are
    linked in Y order. Around each critical fibre a strip is cut into boxes by horizontal lines;
    a box whose boundary meets the curve exactly twice holds a single piece, and strips are
    narrowed until every box does.
    """

    def __init__(self, g: sympy.Expr, x: sympy.Symbol, y: sympy.Symbol, domain: str) -> None:
        self.domain = domain
        poly = sympy.Poly(g, x, y, domain="QQ")
        degree = poly.total_degree()
        top = [(i, c) for (i, j), c in poly.terms() if i + j == degree]
        self.shear = next(
            t for t in range(1, degree + 2) if sum(c * t**i for i, c in top) != 0
        )
        self.G = sympy.expand(g.subs({x: _X + self.shear * _Y, y: _Y}, simultaneous=True))
        # X-values of points on the x-axis, and Y-values of points on the y-axis (where X = -t*Y)
        self.x_axis = sympy.Poly(g.subs({x: _X, y: 0}, simultaneous=True), _X, domain="QQ")
        self.y_axis = sympy.Poly(g.subs({x: 0, y: _Y}, simultaneous=True), _Y, domain="QQ")
        self.origin = g.subs({x: 0, y: 0}) == 0
        if domain == "torus" and (self.x_axis.is_zero or self.y_axis.is_zero):
            raise SingularLevelCurve(f"{{{g} = 0}} contains a coordinate axis")
        self._fibres: dict[Fraction, list[_Root]] = {}
        self._parent: dict[Node, Node] = {}
        self._position: dict[Node, Point] = {}
        self._open: set[Node] = set()
        self._loose: list[Point] = []

    # union-find over branch nodes

    def _node(self, key: Node, point: Point) -> Node:
        if key not in self._parent:
            self._parent[key] = key
            self._position[key] = self._lift(point)
        return key

    def _find(self, node: Node) -> Node:
        while self._parent[node] != node:
            self._parent[node] = self._parent[self._parent[node]]
            node = self._parent[node]
        return node

    def _union(self, a: Node, b: Node) -> None:
        self._parent[self._find(a)] = self._find(b)

    def _lift(self, point: Point) -> Point:
        X, Y = point
        return (X + self.shear * Y, Y)

    # exact sections

    def _fibre(self, q: Fraction) -> list[_Root]:
        if q not in self._fibres:
            section = sympy.Poly(self.G.subs(_X, _rational(q)), _Y, domain="QQ")
            self._fibres[q] = _isolate(section)
        return self._fibres[q]

    def _fibre_nodes(self, q: Fraction) -> list[Node]:
        return [
            self._node(("fibre", q, j), (q, root.mid)) for j, root in enumerate(self._fibre(q))
        ]

    def _line(self, eta: Fraction, a: Fraction, b: Fraction) -> Optional[list[_Root]]:
        """Crossings of the curve with Y = eta over (a, b), or None if the line is unusable."""
        if self.domain == "torus" and (eta == 0 or _sign(self.y_axis, eta) == 0):
            return None
        section = sympy.Poly(self.G.subs(_Y, _rational(eta)), _X, domain="QQ")
        if section.is_zero:
            return None
        if section.degree() <= 0:
            return []
        # a tangency to the line is a repeated root
        if _isolate(sympy.gcd(section, section.diff(_X)), a, b):
            return None
        return _isolate(section, a, b)

    def _critical_values(self) -> list[_Root]:
        discriminant = sympy.resultant(self.G, sympy.diff(self.G, _Y), _Y)
        critical = sympy.Poly(discriminant, _X, domain="QQ")
        if critical.is_zero:
            raise SingularLevelCurve("the level curve has a multiple component")
        if self.domain == "torus":
            on_y_axis = self.y_axis.as_expr().subs(_Y, -_X / self.shear)
            critical = critical * self.x_axis * sympy.Poly(on_y_axis, _X, domain="QQ")
        roots = _isolate(critical)
        for left, right in zip(roots, roots[1:]):
            while left.hi >= right.lo:
                left.refine((left.hi - left.lo) / 2)
                right.refine((right.hi - right.lo) / 2)
        return roots

    def _axis_points(self, a: Fraction, b: Fraction, low: Fraction, high: Fraction) -> int:
        """Points of the curve on the coordinate axes inside the box (a, b) x (low, high)."""
        if self.domain != "torus":
            return 0
        count = 0
        if low < 0 < high:
            count += len(_isolate(self.x_axis, a, b))
        y_lo, y_hi = max(low, -b / self.shear), min(high, -a / self.shear)
        if y_lo < y_hi:
            count += len(_isolate(self.y_axis, y_lo, y_hi))
        if self.origin and a < 0 < b and low < 0 < high:
            count -= 1
        return count

    # strips around critical fibres

    def _lines(
        self, a: Fraction, b: Fraction, clusters: list[list[_End]]
    ) -> Optional[list[tuple[Fraction, list[_Root]]]]:
        lowest = min(e.root.lo for e in clusters[0])
        highest = max(e.root.hi for e in clusters[-1])
        lines = [self._outer_line(a, b, lowest, -1)]
        for lower, upper in zip(clusters, clusters[1:]):
            gap_lo = max(e.root.hi for e in lower)
            gap_hi = min(e.root.lo for e in upper)
            for share in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(1, 5)):
                eta = gap_lo + (gap_hi - gap_lo) * share
                crossings = self._line(eta, a, b)
                if crossings is not None:
                    lines.append((eta, crossings))
                    break
            else:
                return None
        lines.append(self._outer_line(a, b, highest, 1))
        if any(line is None for line in lines):
            return None
        return lines

    def _outer_line(
        self, a: Fraction, b: Fraction, start: Fraction, direction: int
    ) -> Optional[tuple[Fraction, list[_Root]]]:
        """A line beyond every branch over (a, b), so that the box past it is empty."""
        step = Fraction(1)
        for _ in range(MAX_LINE_TRIES):
            eta = start + direction * step
            if self._line(eta, a, b) == []:
                return (eta, [])
            step *= 2
        return None

    def _box_pieces(self, a: Fraction, b: Fraction) -> Optional[list[tuple]]:
        """
        Pieces of the curve over the strip (a, b), or None when some box is ambiguous.

        Returns:
            Entries (end, end, axis points on the piece, box centre), where an end is a
            (node key, sheared point) pair
        """
        ends = [_End("L", j, r) for j, r in enumerate(self._fibre(a))]
        ends += [_End("R", k, r) for k, r in enumerate(self._fibre(b))]
        if not ends:
            return []
        clusters = _clusters(ends)
        lines = self._lines(a, b, clusters)
        if lines is None:
            return None
        pieces = []
        for k, cluster in enumerate(clusters):
            (low, below), (high, above) = lines[k], lines[k + 1]
            points = []
            for end in cluster:
                q = a if end.side == "L" else b
                points.append((("fibre", q, end.index), (q, end.root.mid)))
            for eta, crossings in ((low, below), (high, above)):
                for m, root in enumerate(crossings):
                    points.append((("line", a, b, eta, m), (root.mid, eta)))
            axis_count = self._axis_points(a, b, low, high)
            if not points and not axis_count:
                continue
            if len(points) != 2:
                return None
            centre = ((a + b) / 2, (low + high) / 2)
            pieces.append((points[0], points[1], axis_count, centre))
        return pieces

    def _strip(
        self, c: _Root, lo: Fraction, hi: Fraction
    ) -> tuple[Fraction, Fraction, list[tuple]]:
        a, b = lo, hi
        for _ in range(MAX_STRIP_REFINEMENTS):
            pieces = self._box_pieces(a, b)
            if pieces is not None:
                return a, b, pieces
            c.refine((b - a) / 4)
            a, b = (a + c.lo) / 2, (b + c.hi) / 2
        raise SingularLevelCurve(
            f"could not separate the branches of the level curve near X = {float(c.mid):.6g}"
        )

    def components(self) -> list[CurveComponent]:
        critical = self._critical_values()
        logger.debug(f"Sweep sheared by t = {self.shear}: {len(critical)} critical fibres")
        if not critical:
            # every branch is a graph over the whole X-line
            self._open.update(self._fibre_nodes(Fraction(0)))
            return self._collect()
        bounds = [critical[0].lo - 1]
        bounds += [(left.hi + right.lo) / 2 for left, right in zip(critical, critical[1:])]
        bounds.append(critical[-1].hi + 1)
        previous: Optional[list[Node]] = None
        for c, lo, hi in zip(critical, bounds, bounds[1:]):
            a, b, pieces = self._strip(c, lo, hi)
            left = self._fibre_nodes(a)
            if previous is None:
                self._open.update(left)
            else:
                for u, v in zip(previous, left):
                    self._union(u, v)
            for first, second, axis_count, centre in pieces:
                u, v = self._node(*first), self._node(*second)
                if axis_count == 0:
                    self._union(u, v)
                else:
                    # the axis points cut the piece; the inner stretches are arcs of their own
                    self._open.update((u, v))
                    self._loose.extend([self._lift(centre)] * (axis_count - 1))
            previous = self._fibre_nodes(b)
        self._open.update(previous or [])
        return self._collect()

    def _collect(self) -> list[CurveComponent]:
        groups: dict[Node, list[Node]] = {}
        for node in self._parent:
            groups.setdefault(self._find(node), []).append(node)
        found = [
            CurveComponent(
                "arc" if any(m in self._open for m in members) else "circle",
                min(self._position[m] for m in members),
            )
            for members in groups.values()
        ]
        found.extend(CurveComponent("arc", centre) for centre in self._loose)
        return found

    def axis_total(self) -> int:
        """Distinct points on the axes; 0 when the curve contains an axis."""
        if self.x_axis.is_zero or self.y_axis.is_zero:
            return 0
        count = len(_isolate(self.x_axis)) + len(_isolate(self.y_axis))
        return count - 1 if self.origin else count


def _swept_components(
    f: MultiPoly, level: int, domain: str, report: CurveTopologyReport
) -> None:
    shifted = f - level
    if shifted.total_degree() == 0:
        if shifted.is_zero():
            raise SingularLevelCurve(f"{f} is constant at level {level}")
        return
    x, y = f.symbols()
    g = shifted.to_sympy().as_expr()
    _require_nonsingular(g, x, y)
    sweep = _CurveSweep(g, x, y, domain)
    report.components.extend(sweep.components())
    report.axis_points = sweep.axis_total()


def axis_point_count(f: MultiPoly, level: int) -> int:
    """Points of {f = level} on the coordinate axes, origin included."""
    count = 0
    for var in range(f.dim):
        section = f
        for other in reversed(range(f.dim)):
            if other != var:
                section = section.substitute(other, 0)
        shifted = section - level
        if shifted.is_zero():
            raise SingularLevelCurve(f"{{{f} = {level}}} contains a coordinate axis")
        if shifted.total_degree() > 0:
            count += sturm_count(shifted, exclude_zero=True)
    if f.evaluate([0] * f.dim) == level:
        count += 1
    return count


TAG_LEVELS = {"plus": 1, "minus": -1, "zero": 0}


def torus_class(f_face: MultiPoly, tag: str, effective_vars: int, name: str = "") -> MotivicClass:
    """
    Class with beta of the torus set {f_face = +-1} or {f_face = 0} in the effective variables.

    Args:
        f_face: Face polynomial already restricted to its effective variables
        tag: 'plus', 'minus' or 'zero'
        effective_vars: 1 or 2
        name: Generator name for the resulting class

    Returns:
        Absolute class of a single generator carrying beta (or 0 when the set is empty)
    """
    if tag not in TAG_LEVELS:
        raise InvalidInput(f"unknown tag {tag}")
    if effective_vars not in (1, 2):
        raise UnsupportedDimension(
            f"{effective_vars} effective variables: the table entry must be user-supplied"
        )
    if f_face.dim != effective_vars:
        raise InvalidInput(f"{f_face} does not have {effective_vars} variables")
    level = TAG_LEVELS[tag]
    if effective_vars == 1:
        beta = LaurentPoly.constant(sturm_count(f_face - level, exclude_zero=True))
    elif level == 0:
        beta = curve_components(f_face, 0, "torus").beta
    else:
        # the plane curve minus its points on the axes
        plane = curve_components(f_face, level, "plane")
        beta = plane.beta - axis_point_count(f_face, level)
    if beta.is_zero():
        return MotivicClass.scalar(0)
    gen = Generator(
        name=name or f"{{{f_face} = {level}}}",
        dim=beta.degree(),
        nonsingular=level != 0,
        beta=beta,
    )
    return MotivicClass.of(gen)
