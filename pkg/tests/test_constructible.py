"""Tests for Euler calculus on simplicial complexes and PL level sets."""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add parent directory to path so we can import src
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.real_motivic import data
from src.real_motivic.agents.validator import double_cover
from src.real_motivic.errors import InvalidInput, MonkeySaddle, NonSurfaceInput
from src.real_motivic.tools.constructible import (
    ComplexSpec,
    ConstructibleFunction,
    FunctionSpec,
    HeightedSurface,
    MapSpec,
    SimplicialComplex,
    SimplicialMap,
    SurfaceSpec,
    cf_dual,
    cf_integral,
    cf_is_euler,
    cf_link,
    cf_pullback,
    cf_pushforward,
    cycle_complex,
    fiber_beta,
    fiber_graph,
    fibered_product,
    level_set_beta,
    local_link,
    pi_realize,
    random_complex,
    random_function,
    random_map_onto,
    simplex_complex,
)
from src.real_motivic.tools.laurent_ring import parse_laurent


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator for the sampled identities."""
    return random.Random(11)


def octahedron(heights: dict[str, int]) -> HeightedSurface:
    """Boundary of the octahedron with poles n, s and equator a, b, c, d."""
    equator = ["a", "b", "c", "d"]
    triangles = []
    for i, v in enumerate(equator):
        w = equator[(i + 1) % 4]
        triangles.extend([("n", v, w), ("s", v, w)])
    return HeightedSurface(SimplicialComplex(triangles), heights)


class TestSimplicialComplex:
    """Complexes, links and JSON forms."""

    def test_closure_under_faces(self) -> None:
        k = simplex_complex(2)
        assert len(k.simplices) == 7
        assert k.dimension == 2
        assert frozenset([0, 2]) in k
        assert k.vertices == (0, 1, 2)

    def test_link_of_a_vertex(self) -> None:
        k = simplex_complex(2)
        assert k.link(0) == SimplicialComplex([[1, 2]])
        assert cycle_complex(5).link(0) == SimplicialComplex([[1], [4]])

    def test_subcomplexes(self) -> None:
        k = simplex_complex(3)
        face = k.full_subcomplex([0, 1, 2])
        assert face == simplex_complex(2)
        assert face.is_subcomplex_of(k)
        assert not k.is_subcomplex_of(face)

    def test_invalid_inputs(self) -> None:
        with pytest.raises(InvalidInput):
            SimplicialComplex([[]])
        with pytest.raises(InvalidInput):
            cycle_complex(2)

    def test_json_specs(self) -> None:
        spec = ComplexSpec.model_validate({"vertices": [9], "simplices": [[0, 1], [1, 2]]})
        k = spec.build()
        assert k.vertices == (0, 1, 2, 9)
        phi = FunctionSpec.model_validate({"values": {"0,1": 2, "9": -1}}).build(k)
        assert phi([0, 1]) == 2
        assert phi.to_json() == {"values": {"9": -1, "0,1": 2}}
        with pytest.raises(InvalidInput):
            FunctionSpec.model_validate({"values": {"0,7": 1}}).build(k)


class TestConstructibleFunctions:
    """Integration, duality and the link operator."""

    def test_integrals(self) -> None:
        assert cf_integral(ConstructibleFunction.constant(simplex_complex(2))) == 1
        assert cf_integral(ConstructibleFunction.constant(cycle_complex(4))) == 0
        edge = ConstructibleFunction.indicator(simplex_complex(1), [0, 1])
        assert cf_integral(edge) == -1

    def test_integral_over_subcomplex(self) -> None:
        k = simplex_complex(2)
        phi = ConstructibleFunction.constant(k, 3)
        assert cf_integral(phi, k.full_subcomplex([0, 1])) == 3
        with pytest.raises(InvalidInput):
            cf_integral(phi, simplex_complex(3))

    def test_arithmetic(self) -> None:
        k = simplex_complex(1)
        a = ConstructibleFunction.indicator(k, [0])
        b = ConstructibleFunction.closed_indicator(k, [0, 1])
        assert (b - a)([0]) == 0
        assert (a * 5)([0]) == 5
        assert (b * b) == b
        with pytest.raises(InvalidInput):
            _ = a + ConstructibleFunction.constant(cycle_complex(3))

    def test_restriction(self) -> None:
        k = simplex_complex(2)
        edge = k.full_subcomplex([0, 1])
        phi = ConstructibleFunction.closed_indicator(k, [0, 1, 2]) * 2
        restricted = phi.restrict(edge)
        assert restricted == ConstructibleFunction.constant(edge, 2)
        assert cf_integral(restricted) == 2
        with pytest.raises(InvalidInput):
            phi.restrict(simplex_complex(3))

    def test_dual_of_closed_interval(self) -> None:
        k = simplex_complex(1)
        closed = ConstructibleFunction.constant(k)
        assert cf_dual(closed) == -ConstructibleFunction.indicator(k, [0, 1])

    def test_circle_is_euler_interval_is_not(self) -> None:
        assert cf_is_euler(ConstructibleFunction.constant(cycle_complex(4)))
        assert not cf_is_euler(ConstructibleFunction.constant(simplex_complex(1)))

    def test_sampled_identities(self, rng: random.Random) -> None:
        for _ in range(40):
            k = random_complex(rng)
            phi = random_function(rng, k)
            lam = cf_link(phi)
            assert cf_dual(cf_dual(phi)) == phi
            assert cf_integral(cf_dual(phi)) == cf_integral(phi)
            assert cf_link(lam) == lam * 2
            assert cf_integral(lam) == 0
            assert cf_is_euler(lam)

    def test_link_commutes_with_dual(self, rng: random.Random) -> None:
        for _ in range(40):
            phi = random_function(rng, random_complex(rng))
            lam = cf_link(phi)
            assert cf_link(cf_dual(phi)) == cf_dual(lam) == -lam

    def test_signed_link_dual_relation_needs_zero_link(self) -> None:
        k = simplex_complex(2)
        closed = ConstructibleFunction.closed_indicator(k, [0, 1, 2])
        assert cf_link(cf_dual(closed)) != -cf_dual(cf_link(closed))
        circle = ConstructibleFunction.constant(cycle_complex(4))
        point = ConstructibleFunction.indicator(k, [0])
        assert cf_link(point) == ConstructibleFunction(k)
        assert cf_link(cf_dual(point)) == -cf_dual(cf_link(point))
        assert cf_link(circle) != ConstructibleFunction(circle.complex)


class TestSimplicialMaps:
    """Push-forward, pull-back and realization of relative classes."""

    def test_map_must_send_simplices_to_simplices(self) -> None:
        with pytest.raises(InvalidInput):
            SimplicialMap(simplex_complex(1), SimplicialComplex([[0], [1]]), {0: 0, 1: 1})
        with pytest.raises(InvalidInput):
            SimplicialMap(simplex_complex(1), simplex_complex(1), {0: 0})

    def test_pushforward_to_point_is_integral(self, rng: random.Random) -> None:
        for _ in range(20):
            k = random_complex(rng)
            phi = random_function(rng, k)
            pushed = cf_pushforward(phi, SimplicialMap.to_point(k))
            assert pushed(["pt"]) == cf_integral(phi)

    def test_pullback_along_identity(self) -> None:
        k = simplex_complex(2)
        phi = ConstructibleFunction.indicator(k, [0, 2])
        assert cf_pullback(phi, SimplicialMap.identity(k)) == phi

    def test_pullback_of_constant(self) -> None:
        cover = double_cover()
        one = ConstructibleFunction.constant(cover.target)
        assert cf_pullback(one, cover) == ConstructibleFunction.constant(cover.source)

    def test_functoriality_and_duality(self, rng: random.Random) -> None:
        for _ in range(20):
            target = random_complex(rng)
            h = random_map_onto(rng, target)
            g = random_map_onto(rng, h.source)
            chi = random_function(rng, g.source)
            assert cf_pushforward(cf_pushforward(chi, g), h) == cf_pushforward(chi, g.compose(h))
            assert cf_pushforward(cf_dual(chi), g) == cf_dual(cf_pushforward(chi, g))

    def test_double_cover(self) -> None:
        cover = double_cover()
        assert pi_realize(cover) == ConstructibleFunction.constant(cover.target, 2)
        assert local_link(cover, 0).chi_c == 4

    def test_fibered_product_is_multiplicative(self, rng: random.Random) -> None:
        cover = double_cover()
        product = fibered_product(cover, cover)
        assert pi_realize(product) == ConstructibleFunction.constant(cover.target, 4)
        for _ in range(10):
            target = random_complex(rng)
            h1 = random_map_onto(rng, target, injective=True)
            h2 = random_map_onto(rng, target, injective=True)
            assert pi_realize(fibered_product(h1, h2)) == pi_realize(h1) * pi_realize(h2)

    def test_fibered_product_needs_injective_maps(self) -> None:
        collapse = SimplicialMap(simplex_complex(1), SimplicialComplex([["p"]]), {0: "p", 1: "p"})
        with pytest.raises(InvalidInput):
            fibered_product(collapse, collapse)

    def test_map_spec(self) -> None:
        spec = MapSpec.model_validate(
            {
                "source": {"simplices": [[0, 1], [1, 2]]},
                "target": {"simplices": [["p", "q"]]},
                "vertex_map": {"0": "p", "1": "q", "2": "p"},
            }
        )
        h = spec.build()
        assert pi_realize(h)(["p", "q"]) == 2


class TestLocalLink:
    """chi_c of the preimage of a small sphere around a target vertex."""

    def test_identity_on_circle(self) -> None:
        k = cycle_complex(4)
        result = local_link(SimplicialMap.identity(k), 0)
        assert result.chi_c == 2
        assert result.preimage == SimplicialComplex([[1], [3]])

    def test_folded_edges(self) -> None:
        source = SimplicialComplex([["a", "c"], ["b", "c"]])
        h = SimplicialMap(source, simplex_complex(1), {"a": 0, "b": 0, "c": 1})
        at_fold = local_link(h, 0)
        assert at_fold.chi_c == 2
        assert len(at_fold.cells) == 2
        # the simplicial preimage of the link collapses both crossing points onto c
        assert at_fold.preimage == SimplicialComplex([["c"]])

    def test_matches_link_of_realization(self, rng: random.Random) -> None:
        for _ in range(20):
            target = random_complex(rng)
            h = random_map_onto(rng, target)
            realized = cf_link(pi_realize(h))
            for s in target.vertices:
                assert realized([s]) == local_link(h, s).chi_c

    def test_unknown_vertex(self) -> None:
        with pytest.raises(InvalidInput):
            local_link(SimplicialMap.identity(simplex_complex(1)), 5)


class TestLevelSets:
    """Level sets of heighted surfaces."""

    def test_octahedron_levels(self) -> None:
        m = octahedron({"s": -2, "a": 0, "b": 0, "c": 0, "d": 0, "n": 2})
        assert level_set_beta(m, 0).beta == parse_laurent("u+1")
        assert level_set_beta(m, 2).beta == 1
        assert level_set_beta(m, Fraction(1, 2)).beta == parse_laurent("u+1")
        assert level_set_beta(m, 5).beta == 0

    def test_level_through_a_vertex(self) -> None:
        m = octahedron({"s": -3, "a": 0, "b": 1, "c": -1, "d": 1, "n": 3})
        graph = fiber_graph(m, 0)
        assert graph.valence(("v", "a")) == 2
        assert fiber_beta(m, 0) == parse_laurent("u+1")

    def test_torus_rows(self) -> None:
        model = data.torus_model()
        for _, level, beta, beta_link in data.TORUS_TABLE + data.TORUS_TABLE_UPPER:
            result = level_set_beta(model, level)
            assert result.beta == parse_laurent(beta)
            assert result.beta_link == parse_laurent(beta_link)

    def test_torus_critical_values(self) -> None:
        assert (data.TORUS_MIN, data.TORUS_SADDLE_LOW) == (-3, -1)
        assert (data.TORUS_SADDLE_HIGH, data.TORUS_MAX) == (1, 3)
        with pytest.raises(InvalidInput):
            data.torus_model(8)

    def test_non_surfaces(self) -> None:
        with pytest.raises(NonSurfaceInput):
            HeightedSurface(simplex_complex(2), {0: 0, 1: 0, 2: 0})
        with pytest.raises(NonSurfaceInput):
            HeightedSurface(cycle_complex(3), {0: 0, 1: 0, 2: 0})

    def test_flat_triangle(self) -> None:
        m = octahedron({"s": 0, "a": 0, "b": 0, "c": 1, "d": 1, "n": 1})
        with pytest.raises(InvalidInput):
            fiber_graph(m, 0)

    def test_monkey_saddle(self) -> None:
        hexagon = ["a", "b", "c", "d", "e", "f"]
        triangles = []
        for i, v in enumerate(hexagon):
            w = hexagon[(i + 1) % 6]
            triangles.extend([("n", v, w), ("s", v, w)])
        heights = {v: (1 if i % 2 else -1) for i, v in enumerate(hexagon)}
        heights.update({"n": 0, "s": 5})
        m = HeightedSurface(SimplicialComplex(triangles), heights)
        with pytest.raises(MonkeySaddle):
            fiber_beta(m, 0)

    def test_surface_spec(self) -> None:
        spec = SurfaceSpec.model_validate(
            {
                "simplices": [
                    ["n", "a", "b"],
                    ["n", "b", "c"],
                    ["n", "c", "a"],
                    ["s", "a", "b"],
                    ["s", "b", "c"],
                    ["s", "c", "a"],
                ],
                "heights": {"n": "1", "s": "-1", "a": "0", "b": "1/2", "c": "-1/2"},
            }
        )
        m = spec.build_surface()
        assert level_set_beta(m, 0).beta == parse_laurent("u+1")
        assert level_set_beta(m, -1).beta_link == parse_laurent("u+1")
