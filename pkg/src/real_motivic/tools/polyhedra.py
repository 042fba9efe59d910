"""Newton polyhedra: compact faces, multiplicities, dual fans and half-open parallelepipeds."""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

import sympy

from ..errors import InvalidInput, NonSimplicialCone, UnsupportedDimension

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]

MAX_DIMENSION = 4


def _pairing(a: Sequence[Any], nu: Sequence[int]) -> Any:
    return sum(x * y for x, y in zip(a, nu))


def _rank(rows: list[Sequence[Any]]) -> int:
    return sympy.Matrix(rows).rank() if rows else 0


def _primitive(vector: Sequence[Any]) -> Vector:
    fractions = [Fraction(int(sympy.Rational(x).p), int(sympy.Rational(x).q)) for x in vector]
    scale = math.lcm(*[q.denominator for q in fractions])
    ints = [int(q * scale) for q in fractions]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def _point_label(nu: Vector) -> str:
    return "(" + ",".join(str(x) for x in nu) + ")"


@dataclass(frozen=True)
class Face:
    """Support points lying on a face of the Newton polyhedron."""

    id: str
    support_points: tuple[Vector, ...]
    dim_face: int
    hyperplane_axes: frozenset[int]

    @property
    def p(self) -> int:
        return len(self.hyperplane_axes)

    @property
    def is_vertex(self) -> bool:
        return self.dim_face == 0


@dataclass(frozen=True)
class Cone:
    """Dual cone with primitive generators; zero_gens are the e_i with m_f(e_i) = 0."""

    generators: tuple[Vector, ...]
    simplicial: bool
    zero_gens: tuple[Vector, ...] = ()

    @property
    def positive_gens(self) -> tuple[Vector, ...]:
        return tuple(g for g in self.generators if g not in self.zero_gens)


@dataclass
class NewtonPolyhedron:
    dim_ambient: int
    support: tuple[Vector, ...]
    compact_faces: list[Face] = field(default_factory=list)
    facet_normals: list[Vector] = field(default_factory=list)

    @property
    def vertices(self) -> list[Vector]:
        return [f.support_points[0] for f in self.compact_faces if f.is_vertex]

    def face(self, face_id: str) -> Face:
        for f in self.compact_faces:
            if f.id == face_id:
                return f
        raise InvalidInput(f"no compact face {face_id}")

    def minimizers(self, a: Sequence[Any]) -> tuple[Any, tuple[Vector, ...]]:
        values = [_pairing(a, nu) for nu in self.support]
        m = min(values)
        return m, tuple(nu for nu, v in zip(self.support, values) if v == m)


@dataclass
class DualFan:
    entries: list[tuple[Face, Cone]] = field(default_factory=list)
    # faces whose dual cone is not simplicial, with the reason
    rejected: dict[str, str] = field(default_factory=dict)

    def cone(self, face_id: str) -> Cone:
        for face, cone in self.entries:
            if face.id == face_id:
                return cone
        raise InvalidInput(f"no cone for face {face_id}")


def _make_face(points: Iterable[Vector], vertices: set[Vector], d: int) -> Face:
    points = tuple(sorted(points))
    base = points[0]
    dim_face = _rank([[x - y for x, y in zip(nu, base)] for nu in points[1:]])
    corners = [nu for nu in points if nu in vertices] or list(points)
    axes = frozenset(i for i in range(d) if all(nu[i] == 0 for nu in points))
    return Face("-".join(_point_label(v) for v in corners), points, dim_face, axes)


def _facet_normals(support: tuple[Vector, ...], d: int) -> list[Vector]:
    """Primitive nonnegative normals of all facets of conv(support) + R_+^d."""
    normals: set[Vector] = set()
    unit = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
    for size in range(1, d + 1):
        for points in itertools.combinations(support, size):
            rows_points = [[x - y for x, y in zip(nu, points[0])] for nu in points[1:]]
            if _rank(rows_points) < size - 1:
                continue
            for axes in itertools.combinations(range(d), d - size):
                rows = rows_points + [list(unit[j]) for j in axes]
                nullspace = sympy.Matrix(rows).nullspace() if rows else sympy.eye(d).columnspace()
                if len(nullspace) != 1:
                    continue
                a = _primitive(list(nullspace[0]))
                if all(x <= 0 for x in a):
                    a = tuple(-x for x in a)
                if any(x < 0 for x in a) or not any(a):
                    continue
                normals.add(a)
    facets = []
    for a in sorted(normals):
        values = [_pairing(a, nu) for nu in support]
        m = min(values)
        on_facet = [nu for nu, v in zip(support, values) if v == m]
        spanning = [[x - y for x, y in zip(nu, on_facet[0])] for nu in on_facet[1:]]
        spanning += [list(unit[j]) for j in range(d) if a[j] == 0]
        if _rank(spanning) == d - 1:
            facets.append(a)
    return facets


def newton_polyhedron(
    support: Iterable[Sequence[int]], d: Optional[int] = None
) -> NewtonPolyhedron:
    """
    Newton polyhedron conv(support) + R_+^d with its compact faces.

    Args:
        support: Exponent vectors
        d: Ambient dimension; inferred from the vectors when omitted

    Returns:
        NewtonPolyhedron with compact faces sorted by (dimension, points)
    """
    points = tuple(sorted({tuple(int(x) for x in nu) for nu in support}))
    if not points:
        raise InvalidInput("empty support")
    d = d if d is not None else len(points[0])
    if any(len(nu) != d for nu in points):
        raise InvalidInput(f"support vectors must have length {d}")
    if any(x < 0 for nu in points for x in nu):
        raise InvalidInput("exponents must be nonnegative")
    if d > MAX_DIMENSION:
        raise UnsupportedDimension(f"Newton polyhedra are limited to d <= {MAX_DIMENSION}")
    normals = _facet_normals(points, d)
    facet_sets = {a: frozenset(_minimizing(points, a)) for a in normals}
    # faces are the nonempty intersections of facets
    faces: set[frozenset[Vector]] = set(facet_sets.values())
    frontier = set(faces)
    while frontier:
        new: set[frozenset[Vector]] = set()
        for s in frontier:
            for t in facet_sets.values():
                meet = s & t
                if meet and meet not in faces:
                    new.add(meet)
        faces |= new
        frontier = new
    compact = []
    for pts in faces:
        containing = [a for a, s in facet_sets.items() if pts <= s]
        if all(sum(a[i] for a in containing) > 0 for i in range(d)):
            compact.append(pts)
    vertices = {next(iter(pts)) for pts in compact if len(pts) == 1}
    result = [_make_face(pts, vertices, d) for pts in compact]
    result.sort(key=lambda f: (f.dim_face, f.support_points))
    logger.debug(f"Newton polyhedron of {points}: {[f.id for f in result]}")
    return NewtonPolyhedron(d, points, result, normals)


def _minimizing(points: tuple[Vector, ...], a: Vector) -> list[Vector]:
    values = [_pairing(a, nu) for nu in points]
    m = min(values)
    return [nu for nu, v in zip(points, values) if v == m]


def multiplicity(np: NewtonPolyhedron, a: Sequence[Any]) -> tuple[Fraction, Face]:
    """
    m_f(a) = min <a, nu> over the support and the face of minimizers.

    Args:
        np: Newton polyhedron
        a: Nonnegative nonzero rational vector

    Returns:
        (m, face); the face is a compact face whenever one has exactly these points
    """
    a = tuple(Fraction(x) for x in a)
    if len(a) != np.dim_ambient or any(x < 0 for x in a) or not any(a):
        raise InvalidInput(
            f"multiplicity needs a nonzero nonnegative vector of length {np.dim_ambient}"
        )
    m, points = np.minimizers(a)
    for face in np.compact_faces:
        if set(face.support_points) == set(points):
            return m, face
    vertices = set(np.vertices)
    return m, _make_face(points, vertices, np.dim_ambient)


def dual_fan(np: NewtonPolyhedron) -> DualFan:
    """
    Dual cones of the compact faces, with the split of coordinate generators of multiplicity 0.

    Non-simplicial cones are kept in the fan and listed in `rejected`.
    """
    fan = DualFan()
    d = np.dim_ambient
    for face in np.compact_faces:
        pts = set(face.support_points)
        gens = sorted(
            (a for a in np.facet_normals if pts <= set(_minimizing(np.support, a))), reverse=True
        )
        simplicial = _rank([list(g) for g in gens]) == len(gens)
        zero = tuple(g for g in gens if sum(g) == 1 and np.minimizers(g)[0] == 0)
        cone = Cone(tuple(gens), simplicial, zero)
        if not simplicial:
            fan.rejected[face.id] = f"dual cone of {face.id} has dependent generators {gens}"
            logger.warning(f"Non-simplicial dual cone at face {face.id}")
        fan.entries.append((face, cone))
    logger.debug(f"Dual fan with {len(fan.entries)} cones in dimension {d}")
    return fan


def require_simplicial(fan: DualFan, face_id: str) -> Cone:
    cone = fan.cone(face_id)
    if not cone.simplicial:
        raise NonSimplicialCone(fan.rejected[face_id])
    return cone


def cone_coordinates(gens: Sequence[Vector], a: Sequence[Any]) -> Optional[list[Fraction]]:
    """Exact lambda with sum lambda_i g_i = a, or None when a is outside the span."""
    matrix = sympy.Matrix([list(g) for g in gens]).T
    target = sympy.Matrix([sympy.Rational(str(Fraction(x))) for x in a])
    gram = matrix.T * matrix
    if gram.det() == 0:
        raise NonSimplicialCone(f"generators {list(gens)} are linearly dependent")
    lam = gram.inv() * matrix.T * target
    if matrix * lam != target:
        return None
    return [Fraction(int(x.p), int(x.q)) for x in lam]


def parallelepiped_points(gens: Sequence[Sequence[int]]) -> list[Vector]:
    """
    Lattice points of {sum lambda_i v_i : 0 < lambda_i <= 1}.

    Args:
        gens: Linearly independent integer vectors

    Returns:
        Sorted integer points
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    if not gens:
        return []
    d = len(gens[0])
    if _rank([list(g) for g in gens]) != len(gens):
        raise NonSimplicialCone(f"generators {gens} are linearly dependent")
    lows = [sum(min(0, g[i]) for g in gens) for i in range(d)]
    highs = [sum(max(0, g[i]) for g in gens) for i in range(d)]
    points = []
    for candidate in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(lows, highs))):
        lam = cone_coordinates(gens, candidate)
        if lam is not None and all(0 < x <= 1 for x in lam):
            points.append(tuple(candidate))
    return sorted(points)


def fan_to_json(fan: DualFan) -> dict[str, Any]:
    return {
        "faces": [
            {
                "id": face.id,
                "points": [list(p) for p in face.support_points],
                "hyperplane_axes": sorted(face.hyperplane_axes),
            }
            for face, _ in fan.entries
        ],
        "cones": [
            {
                "face_id": face.id,
                "gens": [list(g) for g in cone.generators],
                "zero_gens": [list(g) for g in cone.zero_gens],
                "simplicial": cone.simplicial,
            }
            for face, cone in fan.entries
        ],
    }
