"""Tests for Newton polyhedra, dual fans and parallelepipeds."""

import itertools
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add parent directory to path so we can import src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.real_motivic.errors import InvalidInput, NonSimplicialCone, UnsupportedDimension
from src.real_motivic.tools.polyhedra import (
    Cone,
    DualFan,
    cone_coordinates,
    dual_fan,
    fan_to_json,
    multiplicity,
    newton_polyhedron,
    parallelepiped_points,
    require_simplicial,
)
from src.real_motivic.tools.polynomial import parse_poly


def polyhedron(text: str):
    f = parse_poly(text)
    return newton_polyhedron(f.support, f.dim)


class TestNewtonPolyhedron:
    """Compact faces."""

    def test_x2_y4_faces(self) -> None:
        np = polyhedron("x^2+y^4")
        assert [f.id for f in np.compact_faces] == ["(0,4)", "(2,0)", "(0,4)-(2,0)"]
        assert sorted(np.vertices) == [(0, 4), (2, 0)]
        edge = np.face("(0,4)-(2,0)")
        assert edge.dim_face == 1
        assert edge.p == 0
        assert np.face("(0,4)").hyperplane_axes == frozenset({0})

    def test_x6_faces(self) -> None:
        np = polyhedron("x^6+x^2*y^2+y^6")
        ids = {f.id for f in np.compact_faces}
        assert ids == {"(0,6)", "(2,2)", "(6,0)", "(2,2)-(6,0)", "(0,6)-(2,2)"}
        assert sorted(np.facet_normals) == [(0, 1), (1, 0), (1, 2), (2, 1)]

    def test_interior_points_are_not_vertices(self) -> None:
        np = polyhedron("x^4+x^2*y^2+y^4")
        edge = [f for f in np.compact_faces if f.dim_face == 1]
        assert len(edge) == 1
        assert edge[0].id == "(0,4)-(4,0)"
        assert (2, 2) in edge[0].support_points

    def test_three_variables(self) -> None:
        np = polyhedron("x^2+y^2+z^2")
        top = [f for f in np.compact_faces if f.dim_face == 2]
        assert len(top) == 1
        assert len(np.vertices) == 3

    def test_invalid_support(self) -> None:
        with pytest.raises(InvalidInput):
            newton_polyhedron([])
        with pytest.raises(InvalidInput):
            newton_polyhedron([(1, -1)])
        with pytest.raises(UnsupportedDimension):
            newton_polyhedron([(1, 0, 0, 0, 0)])

    def test_unknown_face(self) -> None:
        with pytest.raises(InvalidInput):
            polyhedron("x^2+y^4").face("(1,1)")


class TestMultiplicity:
    """m_f(a) and minimizing faces."""

    def test_values(self) -> None:
        np = polyhedron("x^2+y^4")
        m, face = multiplicity(np, (2, 1))
        assert m == 4
        assert face.id == "(0,4)-(2,0)"
        m, face = multiplicity(np, (1, 1))
        assert m == 2
        assert face.id == "(2,0)"

    def test_rational_vector(self) -> None:
        np = polyhedron("x^2+y^4")
        m, _ = multiplicity(np, (Fraction(1, 2), Fraction(1, 4)))
        assert m == 1

    def test_invalid_vector(self) -> None:
        np = polyhedron("x^2+y^4")
        with pytest.raises(InvalidInput):
            multiplicity(np, (0, 0))
        with pytest.raises(InvalidInput):
            multiplicity(np, (1, -1))


class TestDualFan:
    """Cones of the compact faces."""

    def test_x2_y4_cones(self) -> None:
        fan = dual_fan(polyhedron("x^2+y^4"))
        assert fan.cone("(0,4)-(2,0)").generators == ((2, 1),)
        vertex = fan.cone("(0,4)")
        assert vertex.generators == ((2, 1), (1, 0))
        assert vertex.zero_gens == ((1, 0),)
        assert vertex.positive_gens == ((2, 1),)
        assert not fan.rejected

    def test_json_dump(self) -> None:
        dump = fan_to_json(dual_fan(polyhedron("x^2+y^4")))
        assert [c["face_id"] for c in dump["cones"]] == ["(0,4)", "(2,0)", "(0,4)-(2,0)"]
        assert dump["cones"][0]["zero_gens"] == [[1, 0]]

    def test_require_simplicial(self) -> None:
        np = polyhedron("x^2+y^4")
        fan = DualFan(
            [(np.face("(0,4)"), Cone(((1, 0), (0, 1), (1, 1)), False))],
            {"(0,4)": "dependent generators"},
        )
        with pytest.raises(NonSimplicialCone):
            require_simplicial(fan, "(0,4)")


class TestParallelepiped:
    """Half-open fundamental parallelepipeds."""

    def test_single_generator(self) -> None:
        assert parallelepiped_points([(2, 1)]) == [(2, 1)]

    def test_unimodular_pair(self) -> None:
        assert parallelepiped_points([(2, 1), (1, 0)]) == [(3, 1)]

    def test_index_two(self) -> None:
        assert parallelepiped_points([(1, 0), (1, 2)]) == [(1, 1), (2, 2)]

    def test_index_three(self) -> None:
        assert parallelepiped_points([(2, 1), (1, 2)]) == [(1, 1), (2, 2), (3, 3)]

    def test_dependent_generators(self) -> None:
        with pytest.raises(NonSimplicialCone):
            parallelepiped_points([(1, 1), (2, 2)])

    def test_cone_coordinates(self) -> None:
        assert cone_coordinates([(1, 0), (1, 2)], (1, 1)) == [Fraction(1, 2), Fraction(1, 2)]
        assert cone_coordinates([(1, 1)], (1, 0)) is None


def _eliminate(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and its pivot columns."""
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(len(rows[0]) if rows else 0):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        rows[r] = [x / rows[r][c] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                rows[i] = [x - rows[i][c] * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def _independent(gens: list[tuple[int, ...]]) -> bool:
    return len(_eliminate([[Fraction(x) for x in g] for g in gens])[1]) == len(gens)


def _coordinates(gens: list[tuple[int, ...]], point: tuple[int, ...]) -> list[Fraction] | None:
    k = len(gens)
    augmented = [[Fraction(g[i]) for g in gens] + [Fraction(point[i])] for i in range(len(point))]
    rows, pivots = _eliminate(augmented)
    if k in pivots:
        return None
    return [rows[i][k] for i in range(k)]


def _det(matrix: list[list[int]]) -> int:
    if len(matrix) == 1:
        return matrix[0][0]
    return sum(
        (-1) ** j * matrix[0][j] * _det([row[:j] + row[j + 1 :] for row in matrix[1:]])
        for j in range(len(matrix))
    )


def _lattice_index(gens: list[tuple[int, ...]]) -> int:
    """Index of the generated lattice in its saturation: gcd of the maximal minors."""
    k, d = len(gens), len(gens[0])
    minors = [
        _det([[g[i] for i in rows] for g in gens]) for rows in itertools.combinations(range(d), k)
    ]
    return math.gcd(*minors)


def _brute_force_points(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    d = len(gens[0])
    box = [
        range(sum(min(0, g[i]) for g in gens), sum(max(0, g[i]) for g in gens) + 1)
        for i in range(d)
    ]
    points = []
    for candidate in itertools.product(*box):
        lam = _coordinates(gens, candidate)
        if lam is not None and all(0 < x <= 1 for x in lam):
            points.append(candidate)
    return sorted(points)


def _random_cone(rng: random.Random) -> list[tuple[int, ...]]:
    d = rng.randint(1, 3)
    k = rng.randint(1, d)
    top = 3 if d < 3 else 2
    while True:
        gens = [tuple(rng.randint(-1, top) for _ in range(d)) for _ in range(k)]
        if _independent(gens):
            return gens


class TestParallelepipedAgainstBruteForce:
    """Enumeration against a bounding-box search with exact elimination."""

    @pytest.mark.parametrize("seed", range(4))
    def test_random_simplicial_cones(self, seed: int) -> None:
        rng = random.Random(seed)
        for _ in range(25):
            gens = _random_cone(rng)
            points = parallelepiped_points(gens)
            assert points == _brute_force_points(gens), gens
            assert len(points) == _lattice_index(gens), gens


FAN_POLYNOMIALS = [
    "x^2+y^4",
    "x^6+x^2*y^2+y^6",
    "x^3+x*y^2+y^5",
    "x^2*y+y^3+x^4",
    "x^2+y^3+z^5",
    "x^2+y^2+z^2",
]


def _in_cone(gens: tuple, a: tuple, strict: bool) -> bool:
    lam = _coordinates(list(gens), a)
    if lam is None:
        return False
    return all(x > 0 for x in lam) if strict else all(x >= 0 for x in lam)


class TestFanProperties:
    """Cones of the compact faces against the minimizing faces of random weights."""

    @pytest.mark.parametrize("text", FAN_POLYNOMIALS)
    def test_cones_partition_the_positive_orthant(self, text: str) -> None:
        np = polyhedron(text)
        fan = dual_fan(np)
        assert not fan.rejected
        rng = random.Random(text)
        for _ in range(40):
            a = tuple(rng.randint(1, 12) for _ in range(np.dim_ambient))
            owners = [f.id for f, cone in fan.entries if _in_cone(cone.generators, a, True)]
            assert owners == [multiplicity(np, a)[1].id], a

    @pytest.mark.parametrize("text", FAN_POLYNOMIALS)
    def test_face_inclusion_matches_cone_membership(self, text: str) -> None:
        np = polyhedron(text)
        fan = dual_fan(np)
        rng = random.Random(text)
        for _ in range(40):
            a = tuple(rng.randint(0, 9) for _ in range(np.dim_ambient))
            if not any(a):
                continue
            _, minimizing = np.minimizers(a)
            for face, cone in fan.entries:
                contains = set(face.support_points) <= set(minimizing)
                assert contains == _in_cone(cone.generators, a, False), (face.id, a)

    @pytest.mark.parametrize("text", FAN_POLYNOMIALS)
    def test_multiplicity_is_linear_on_cones(self, text: str) -> None:
        np = polyhedron(text)
        for face, cone in dual_fan(np).entries:
            gens = list(cone.generators)
            points = parallelepiped_points(gens)
            assert len(points) == _lattice_index(gens)
            values = [multiplicity(np, g)[0] for g in gens]
            for p in points:
                lam = _coordinates(gens, p)
                assert multiplicity(np, p)[0] == sum(x * m for x, m in zip(lam, values))
                assert set(face.support_points) <= set(np.minimizers(p)[1])
