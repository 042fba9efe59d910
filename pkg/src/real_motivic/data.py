"""
Shipped worked examples: resolution data, face curves, expected values and the torus height model.

Resolution data are JSON-compatible dictionaries so they double as CLI input samples.
"""

from fractions import Fraction
from typing import Any

from .errors import InvalidInput
from .tools.constructible import HeightedSurface, SimplicialComplex
from .tools.zeta import ResolutionDatum

# Polynomials of the worked examples
POLYNOMIALS = {
    "x2y4": "x^2+y^4",
    "x6": "x^6+x^2*y^2+y^6",
    "figure_eight": "y^2+x^2*(x^2-1)",
}

# Two successive point blow-ups: E1 (N=2, nu=2), E2 (N=4, nu=3)
X2Y4_DATUM: dict[str, Any] = {
    "base": "pt",
    "components": [{"id": "E1", "N": 2, "nu": 2}, {"id": "E2", "N": 4, "nu": 3}],
    "strata": [
        {"I": ["E1"], "plus": "2*L", "minus": "0"},
        {"I": ["E2"], "plus": "L-1", "minus": "0"},
        {"I": ["E1", "E2"], "plus": "2", "minus": "0"},
    ],
}

X6_DATUM: dict[str, Any] = {
    "base": "pt",
    "components": [{"id": "E1", "N": 4, "nu": 2}, {"id": "E2", "N": 6, "nu": 3}],
    "strata": [
        {"I": ["E1"], "plus": "2*(L-1)", "minus": "0"},
        {"I": ["E2"], "plus": "2*(L-1)", "minus": "0"},
        {"I": ["E1", "E2"], "plus": "4", "minus": "0"},
    ],
}

# Strict transform E1 (N=1, nu=1) meets the exceptional curve E2 (N=2, nu=2) in two points.
# E1o = E1 minus those points; E2t = circle minus two points over the positive interval of E2.
FIGURE_EIGHT_DATUM: dict[str, Any] = {
    "base": "X0",
    "components": [{"id": "E1", "N": 1, "nu": 1}, {"id": "E2", "N": 2, "nu": 2}],
    "strata": [
        {"I": ["E1"], "plus": "[E1o]"},
        {"I": ["E2"], "plus": "[E2t]"},
        {"I": ["E1", "E2"], "plus": "[E12]"},
    ],
    "generators": [
        {"name": "E1o", "dim": 1, "base": "X0", "nonsingular": True, "beta": "u-1"},
        {"name": "E2t", "dim": 1, "base": "X0", "nonsingular": True, "beta": "u-1"},
        {
            "name": "E12",
            "dim": 0,
            "base": "X0",
            "proper": True,
            "nonsingular": True,
            "compact": True,
            "beta": "2",
        },
        {
            "name": "E1",
            "dim": 1,
            "base": "X0",
            "proper": True,
            "nonsingular": True,
            "compact": True,
            "beta": "u+1",
        },
        {
            "name": "E2",
            "dim": 1,
            "base": "X0",
            "proper": True,
            "nonsingular": True,
            "compact": True,
            "beta": "u+1",
        },
    ],
    "morphisms": [["X0", "pt", True]],
}

DATA = {"x2y4": X2Y4_DATUM, "x6": X6_DATUM, "figure_eight": FIGURE_EIGHT_DATUM}

# psi^+ of the figure eight, open and compactified expressions
FIGURE_EIGHT_PSI = "[E1o]+[E2t]-(L-1)*[E12]"
FIGURE_EIGHT_PSI_COMPACT = "[E1]+[E2]-(L+1)*[E12]"

# Expected Milnor fibres (plus sign) as class expressions over the datum's base
EXPECTED_PSI = {"x2y4": "L+1", "x6": "0", "figure_eight": FIGURE_EIGHT_PSI}

# Leading coefficients of Z^+ for x^2+y^4: T^2, T^4, T^6
X2Y4_ZETA_COEFFICIENTS = {2: "2*L^-1", 4: "L^-2+L^-3", 6: "2*L^-4"}

# Torus classes of x^2+y^4 by (face id, tag), as computed from the level curves
X2Y4_TORUS_TABLE = {
    ("(0,4)-(2,0)", "plus"): "u-3",
    ("(0,4)-(2,0)", "minus"): "0",
    ("(0,4)-(2,0)", "zero"): "0",
    ("(2,0)", "plus"): "2",
    ("(2,0)", "minus"): "0",
    ("(2,0)", "zero"): "0",
    ("(0,4)", "plus"): "2",
    ("(0,4)", "minus"): "0",
    ("(0,4)", "zero"): "0",
}

# Printed decomposition for x^6+x^2y^2+y^6: psi^+ = 2(L-3) - 2[{x^6+x^2y^2 = 1} in the torus],
# with the residual curve claimed to have beta u-3
X6_RESIDUAL_CONSTANT = "2*(u-3)"
X6_RESIDUAL_FACE = "x^6+x^2*y^2"
X6_RESIDUAL_CLAIM = "u-3"

# Sphere-link examples: nonnegative, weighted homogeneous, isolated zero
SPHERE_LINK_POLYNOMIALS = ("x^2+y^2", "x^2+y^4", "x^4+y^4")

# Face curves with their expected component counts: (poly, level, domain, circles, arcs).
# Counts were derived by hand from the real picture of each curve; the marching-squares
# comparison in tests/test_curve_topology.py (TestCurvesAgainstMarching) rechecks them.
FACE_CURVES = (
    ("x^2+y^4", 1, "torus", 0, 4),
    ("x^2+y^4", 1, "plane", 1, 0),
    ("x^2*y^2", 1, "torus", 0, 4),
    ("x^2+y^2", 1, "plane", 1, 0),
    ("x^4+y^4", 1, "plane", 1, 0),
    ("x^6+x^2*y^2", 1, "torus", 0, 4),
)


# standing torus on a 16 x 16 grid

GRID = 16

# cos(2 pi k / 16) for k = 0..4, to nine decimals
COS_TABLE = (
    Fraction(1),
    Fraction(923879533, 10**9),
    Fraction(707106781, 10**9),
    Fraction(382683432, 10**9),
    Fraction(0),
)


def grid_cos(k: int) -> Fraction:
    k %= GRID
    if k <= 4:
        return COS_TABLE[k]
    if k <= 8:
        return -COS_TABLE[8 - k]
    return grid_cos(GRID - k)


def torus_height(i: int, j: int) -> Fraction:
    """-cos(2 pi i/16) (2 + cos(2 pi j/16))."""
    return -grid_cos(i) * (2 + grid_cos(j))


def torus_model(n: int = GRID) -> HeightedSurface:
    """
    Triangulated flat torus with the height of a torus standing on its side.

    Args:
        n: Grid size; only the shipped 16 x 16 table is available

    Returns:
        HeightedSurface with vertices (i, j) and diagonals (i, j)-(i+1, j+1)
    """
    if n != GRID:
        raise InvalidInput(f"the shipped height table covers a {GRID} x {GRID} grid")
    triangles = []
    for i in range(n):
        for j in range(n):
            a, b = (i, j), ((i + 1) % n, j)
            c, d = ((i + 1) % n, (j + 1) % n), (i, (j + 1) % n)
            triangles.extend([(a, b, c), (a, c, d)])
    heights = {(i, j): torus_height(i, j) for i in range(n) for j in range(n)}
    return HeightedSurface(SimplicialComplex(triangles), heights)


# Critical values of the shipped model: minimum, the two saddles, maximum
TORUS_MIN = torus_height(0, 0)
TORUS_SADDLE_LOW = torus_height(0, 8)
TORUS_SADDLE_HIGH = torus_height(8, 8)
TORUS_MAX = torus_height(8, 0)

# (row, level, beta of the fibre, beta of the preimage of the link of the level)
TORUS_TABLE = (
    ("outside [s-, s+]", TORUS_MIN - 1, "0", "0"),
    ("s = s-", TORUS_MIN, "1", "u+1"),
    ("s in (s-, s1)", Fraction(-3, 2), "u+1", "2*(u+1)"),
    ("s = s1", TORUS_SADDLE_LOW, "u", "3*(u+1)"),
    ("s in (s1, s2)", Fraction(0), "2*(u+1)", "4*(u+1)"),
)

# Mirror rows above the upper saddle
TORUS_TABLE_UPPER = (
    ("s = s2", TORUS_SADDLE_HIGH, "u", "3*(u+1)"),
    ("s in (s2, s+)", Fraction(3, 2), "u+1", "2*(u+1)"),
    ("s = s+", TORUS_MAX, "1", "u+1"),
    ("above s+", TORUS_MAX + 1, "0", "0"),
)


def load_datum(name: str) -> ResolutionDatum:
    """Shipped resolution datum by example name."""
    try:
        return ResolutionDatum.from_json(DATA[name])
    except KeyError:
        raise InvalidInput(f"no shipped datum {name!r}; choose from {sorted(DATA)}") from None
