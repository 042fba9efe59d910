"""
Euler calculus of constructible functions on finite simplicial complexes.

A constructible function is stored by its values on OPEN simplices; the Euler characteristic with
compact supports of an open k-simplex is (-1)^k, which makes integration, push-forward and
duality purely combinatorial.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Hashable, Iterable, Mapping, Optional, Union

from pydantic import BaseModel, Field

from ..errors import InvalidInput, MonkeySaddle, NonSurfaceInput
from .laurent_ring import U, LaurentPoly

logger = logging.getLogger(__name__)

Vertex = Hashable
Simplex = frozenset


def _vertex_key(v: Vertex) -> tuple[str, Any]:
    return (type(v).__name__, v)


def simplex_key(s: Simplex) -> tuple[int, tuple]:
    return (len(s), tuple(sorted((_vertex_key(v) for v in s))))


def dim(s: Simplex) -> int:
    return len(s) - 1


def faces_of(s: Simplex) -> list[Simplex]:
    """All nonempty faces of s, s included."""
    vertices = sorted(s, key=_vertex_key)
    return [
        frozenset(c) for k in range(1, len(vertices) + 1) for c in combinations(vertices, k)
    ]


class SimplicialComplex:
    """Finite abstract simplicial complex, closed under taking faces."""

    __slots__ = ("vertices", "simplices", "_lookup")

    def __init__(self, simplices: Iterable[Iterable[Vertex]]) -> None:
        closed: set[Simplex] = set()
        for s in simplices:
            s = frozenset(s)
            if not s:
                raise InvalidInput("empty simplex")
            closed.update(faces_of(s))
        self._lookup = frozenset(closed)
        self.simplices: tuple[Simplex, ...] = tuple(sorted(closed, key=simplex_key))
        self.vertices: tuple[Vertex, ...] = tuple(
            sorted((next(iter(s)) for s in self.simplices if len(s) == 1), key=_vertex_key)
        )

    @property
    def dimension(self) -> int:
        return max((dim(s) for s in self.simplices), default=-1)

    def __contains__(self, s: object) -> bool:
        return s in self._lookup

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __hash__(self) -> int:
        return hash(self.simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, dim {self.dimension})"

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._lookup <= other._lookup

    def link(self, v: Vertex) -> "SimplicialComplex":
        """Simplices tau with v not in tau and tau + v in the complex."""
        return SimplicialComplex(
            s for s in self.simplices if v not in s and (s | {v}) in self._lookup
        )

    def star(self, v: Vertex) -> list[Simplex]:
        return [s for s in self.simplices if v in s]

    def full_subcomplex(self, vertices: Iterable[Vertex]) -> "SimplicialComplex":
        keep = set(vertices)
        return SimplicialComplex(s for s in self.simplices if s <= keep)

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "simplices": [sorted(s, key=_vertex_key) for s in self.simplices],
        }


def simplex_complex(k: int) -> SimplicialComplex:
    """The closed standard k-simplex on vertices 0..k."""
    return SimplicialComplex([range(k + 1)])


def cycle_complex(n: int) -> SimplicialComplex:
    """Triangulated circle with n >= 3 vertices."""
    if n < 3:
        raise InvalidInput("a triangulated circle needs at least 3 vertices")
    return SimplicialComplex([(i, (i + 1) % n) for i in range(n)])


class ConstructibleFunction:
    """Integer values on the open simplices of a complex (missing entries are 0)."""

    __slots__ = ("complex", "_values")

    def __init__(self, complex_: SimplicialComplex, values: Mapping[Simplex, int] = None) -> None:
        self.complex = complex_
        cleaned = {}
        for s, v in (values or {}).items():
            s = frozenset(s)
            if s not in complex_:
                raise InvalidInput(f"simplex {sorted(s, key=_vertex_key)} is not in the complex")
            if v:
                cleaned[s] = int(v)
        self._values: dict[Simplex, int] = dict(
            sorted(cleaned.items(), key=lambda t: simplex_key(t[0]))
        )

    @classmethod
    def constant(cls, complex_: SimplicialComplex, c: int = 1) -> "ConstructibleFunction":
        return cls(complex_, {s: c for s in complex_.simplices})

    @classmethod
    def indicator(cls, complex_: SimplicialComplex, s: Iterable[Vertex]) -> "ConstructibleFunction":
        """1 on the open simplex s."""
        return cls(complex_, {frozenset(s): 1})

    @classmethod
    def closed_indicator(
        cls, complex_: SimplicialComplex, s: Iterable[Vertex]
    ) -> "ConstructibleFunction":
        """1 on the closed simplex s, i.e. on every face of s."""
        return cls(complex_, {f: 1 for f in faces_of(frozenset(s))})

    @classmethod
    def of_subcomplex(
        cls, complex_: SimplicialComplex, sub: SimplicialComplex
    ) -> "ConstructibleFunction":
        if not sub.is_subcomplex_of(complex_):
            raise InvalidInput("not a subcomplex")
        return cls(complex_, {s: 1 for s in sub.simplices})

    def __call__(self, s: Iterable[Vertex]) -> int:
        return self._values.get(frozenset(s), 0)

    @property
    def values(self) -> dict[Simplex, int]:
        return dict(self._values)

    def _check(self, other: "ConstructibleFunction") -> None:
        if other.complex != self.complex:
            raise InvalidInput("constructible functions live on different complexes")

    def __add__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        self._check(other)
        keys = set(self._values) | set(other._values)
        return ConstructibleFunction(self.complex, {s: self(s) + other(s) for s in keys})

    def __neg__(self) -> "ConstructibleFunction":
        return ConstructibleFunction(self.complex, {s: -v for s, v in self._values.items()})

    def __sub__(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        return self + (-other)

    def __mul__(self, other: Union[int, "ConstructibleFunction"]) -> "ConstructibleFunction":
        if isinstance(other, int):
            return ConstructibleFunction(
                self.complex, {s: v * other for s, v in self._values.items()}
            )
        self._check(other)
        return ConstructibleFunction(
            self.complex, {s: v * other(s) for s, v in self._values.items()}
        )

    __rmul__ = __mul__

    def restrict(self, sub: SimplicialComplex) -> "ConstructibleFunction":
        if not sub.is_subcomplex_of(self.complex):
            raise InvalidInput("restriction to a set that is not a subcomplex")
        return ConstructibleFunction(sub, {s: v for s, v in self._values.items() if s in sub})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstructibleFunction):
            return NotImplemented
        return self.complex == other.complex and self._values == other._values

    def __hash__(self) -> int:
        return hash((self.complex, tuple(self._values.items())))

    def __repr__(self) -> str:
        return f"ConstructibleFunction({self.to_json()['values']})"

    def to_json(self) -> dict[str, Any]:
        return {
            "values": {
                ",".join(str(v) for v in sorted(s, key=_vertex_key)): n
                for s, n in self._values.items()
            }
        }


class SimplicialMap:
    """Vertex map between complexes sending every simplex onto a simplex."""

    __slots__ = ("source", "target", "vertex_map")

    def __init__(
        self,
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Mapping[Vertex, Vertex],
    ) -> None:
        missing = [v for v in source.vertices if v not in vertex_map]
        if missing:
            raise InvalidInput(f"vertex map is undefined on {missing}")
        self.source = source
        self.target = target
        self.vertex_map = dict(vertex_map)
        for s in source.simplices:
            if self.image(s) not in target:
                raise InvalidInput(f"image of {sorted(s, key=_vertex_key)} is not a simplex")

    @classmethod
    def identity(cls, complex_: SimplicialComplex) -> "SimplicialMap":
        return cls(complex_, complex_, {v: v for v in complex_.vertices})

    @classmethod
    def to_point(cls, complex_: SimplicialComplex, point: Vertex = "pt") -> "SimplicialMap":
        return cls(complex_, SimplicialComplex([[point]]), {v: point for v in complex_.vertices})

    def image(self, s: Simplex) -> Simplex:
        return frozenset(self.vertex_map[v] for v in s)

    def compose(self, after: "SimplicialMap") -> "SimplicialMap":
        """after o self."""
        if after.source != self.target:
            raise InvalidInput("maps are not composable")
        return SimplicialMap(
            self.source,
            after.target,
            {v: after.vertex_map[w] for v, w in self.vertex_map.items()},
        )

    def is_nondegenerate(self) -> bool:
        return all(len(self.image(s)) == len(s) for s in self.source.simplices)


def cf_integral(phi: ConstructibleFunction, over: Optional[SimplicialComplex] = None) -> int:
    """
    Euler integral: sum of phi(sigma) * (-1)^dim(sigma).

    Args:
        phi: Constructible function
        over: Optional subcomplex to integrate over

    Returns:
        Exact integer
    """
    cells: Iterable[Simplex] = phi.complex.simplices
    if over is not None:
        if not over.is_subcomplex_of(phi.complex):
            raise InvalidInput("integration domain is not a subcomplex")
        cells = over.simplices
    return sum(phi(s) * (-1) ** dim(s) for s in cells)


def cf_pullback(phi: ConstructibleFunction, h: SimplicialMap) -> ConstructibleFunction:
    if phi.complex != h.target:
        raise InvalidInput("pull-back of a function on another complex")
    return ConstructibleFunction(h.source, {s: phi(h.image(s)) for s in h.source.simplices})


def cf_pushforward(phi: ConstructibleFunction, h: SimplicialMap) -> ConstructibleFunction:
    """h_! phi(sigma): sum over tau with h(tau) = sigma of phi(tau) (-1)^(dim tau - dim sigma)."""
    if phi.complex != h.source:
        raise InvalidInput("push-forward of a function on another complex")
    values: dict[Simplex, int] = {}
    for tau, v in phi.values.items():
        sigma = h.image(tau)
        values[sigma] = values.get(sigma, 0) + v * (-1) ** (dim(tau) - dim(sigma))
    return ConstructibleFunction(h.target, values)


def cf_dual(phi: ConstructibleFunction) -> ConstructibleFunction:
    """D(1_sigma) = (-1)^dim(sigma) 1_closure(sigma), extended linearly."""
    values: dict[Simplex, int] = {}
    for sigma, v in phi.values.items():
        sign = (-1) ** dim(sigma)
        for tau in faces_of(sigma):
            values[tau] = values.get(tau, 0) + sign * v
    return ConstructibleFunction(phi.complex, values)


def cf_link(phi: ConstructibleFunction) -> ConstructibleFunction:
    """Link operator id - D."""
    return phi - cf_dual(phi)


def cf_is_euler(phi: ConstructibleFunction) -> bool:
    """True iff the link takes only even values."""
    return all(v % 2 == 0 for v in cf_link(phi).values.values())


def pi_realize(h: SimplicialMap) -> ConstructibleFunction:
    """The constructible function h_!(1) representing the relative class [h]."""
    return cf_pushforward(ConstructibleFunction.constant(h.source), h)


def fibered_product(h1: SimplicialMap, h2: SimplicialMap) -> SimplicialMap:
    """
    X1 x_S X2 -> S for maps that are injective on every simplex.

    A simplex of the product is a pair of simplices with the same image, glued along that image.
    """
    if h1.target != h2.target:
        raise InvalidInput("fibered product over different targets")
    if not (h1.is_nondegenerate() and h2.is_nondegenerate()):
        raise InvalidInput("fibered products are supported for simplex-wise injective maps")
    simplices = []
    vertex_map = {}
    for t1 in h1.source.simplices:
        for t2 in h2.source.simplices:
            if h1.image(t1) != h2.image(t2):
                continue
            inverse2 = {h2.vertex_map[w]: w for w in t2}
            pairs = [(v, inverse2[h1.vertex_map[v]]) for v in t1]
            simplices.append(pairs)
            for pair in pairs:
                vertex_map[pair] = h1.vertex_map[pair[0]]
    return SimplicialMap(SimplicialComplex(simplices), h1.target, vertex_map)


# samplers for the identity suites


def random_complex(
    rng: random.Random, max_vertices: int = 6, max_simplices: int = 30
) -> SimplicialComplex:
    """Random complex of dimension <= 2 with at most max_simplices simplices."""
    n = rng.randint(1, max_vertices)
    chosen: list[tuple[int, ...]] = [(0,)]
    closed = {frozenset([0])}
    for _ in range(3 * n):
        size = rng.randint(1, min(3, n))
        s = tuple(sorted(rng.sample(range(n), size)))
        faces = set(faces_of(frozenset(s)))
        if len(closed | faces) > max_simplices:
            continue
        closed |= faces
        chosen.append(s)
    return SimplicialComplex(chosen)


def random_function(
    rng: random.Random, complex_: SimplicialComplex, bound: int = 3
) -> ConstructibleFunction:
    return ConstructibleFunction(
        complex_, {s: rng.randint(-bound, bound) for s in complex_.simplices}
    )


def random_map_onto(
    rng: random.Random,
    target: SimplicialComplex,
    max_simplices: int = 30,
    injective: bool = False,
) -> SimplicialMap:
    """
    Random simplicial map into target whose source vertices are pairs (v, k) over v.

    With injective=True every source simplex maps bijectively onto its image.
    """
    chosen = []
    closed: set[Simplex] = set()
    for _ in range(2 * len(target.simplices) + 1):
        tau = rng.choice(target.simplices)
        lifted = []
        for v in sorted(tau, key=_vertex_key):
            copies = [(v, 0), (v, 1)]
            if injective or rng.random() < 0.7:
                lifted.append(rng.choice(copies))
            else:
                lifted.extend(copies)
        faces = set(faces_of(frozenset(lifted)))
        if chosen and len(closed | faces) > max_simplices:
            continue
        closed |= faces
        chosen.append(lifted)
    source = SimplicialComplex(chosen)
    return SimplicialMap(source, target, {v: v[0] for v in source.vertices})


@dataclass
class LocalLink:
    """
    h^-1 of a small sphere around s, cut into open cells.

    Each source simplex tau with s in h(tau) != {s} meets the preimage in one open cell of
    dimension dim(tau) - 1; `cells` lists those carriers. `preimage` is the subcomplex of simplices
    mapped into lk(s), which carries the same set up to homeomorphism when h is a covering over
    the star of s.
    """

    chi_c: int
    cells: list[Simplex]
    preimage: SimplicialComplex


def local_link(h: SimplicialMap, s: Vertex) -> LocalLink:
    """
    chi_c of h^-1(lk(s, S)) for a vertex s of the target.

    Args:
        h: Simplicial map
        s: Target vertex

    Returns:
        LocalLink with the cellwise Euler characteristic
    """
    if frozenset([s]) not in h.target:
        raise InvalidInput(f"{s} is not a vertex of the target")
    cells = [t for t in h.source.simplices if s in h.image(t) and len(h.image(t)) > 1]
    chi = sum((-1) ** (dim(t) - 1) for t in cells)
    lk = set(h.target.link(s).simplices)
    preimage = SimplicialComplex(t for t in h.source.simplices if h.image(t) in lk)
    return LocalLink(chi, cells, preimage)


# heighted surfaces


class HeightedSurface:
    """Closed triangulated surface with rational vertex heights."""

    __slots__ = ("complex", "heights", "_cycles")

    def __init__(self, complex_: SimplicialComplex, heights: Mapping[Vertex, Any]) -> None:
        if complex_.dimension != 2:
            raise NonSurfaceInput("a surface complex must be 2-dimensional")
        missing = [v for v in complex_.vertices if v not in heights]
        if missing:
            raise NonSurfaceInput(f"vertices without height: {missing}")
        triangles = [s for s in complex_.simplices if len(s) == 3]
        for edge in (s for s in complex_.simplices if len(s) == 2):
            count = sum(1 for t in triangles if edge <= t)
            if count != 2:
                raise NonSurfaceInput(
                    f"edge {sorted(edge, key=_vertex_key)} lies in {count} triangles"
                )
        self.complex = complex_
        self.heights = {v: Fraction(heights[v]) for v in complex_.vertices}
        self._cycles = {v: self._link_cycle(v) for v in complex_.vertices}

    def _link_cycle(self, v: Vertex) -> list[Vertex]:
        link = self.complex.link(v)
        edges = [tuple(sorted(s, key=_vertex_key)) for s in link.simplices if len(s) == 2]
        neighbours: dict[Vertex, list[Vertex]] = {}
        for a, b in edges:
            neighbours.setdefault(a, []).append(b)
            neighbours.setdefault(b, []).append(a)
        if any(len(n) != 2 for n in neighbours.values()) or not neighbours:
            raise NonSurfaceInput(f"link of {v} is not a cycle")
        start = min(neighbours, key=_vertex_key)
        cycle = [start]
        previous, current = None, start
        while True:
            a, b = neighbours[current]
            nxt = a if a != previous else b
            if nxt == start:
                break
            cycle.append(nxt)
            previous, current = current, nxt
        if len(cycle) != len(neighbours):
            raise NonSurfaceInput(f"link of {v} is not a single cycle")
        return cycle

    def link_cycle(self, v: Vertex) -> list[Vertex]:
        return list(self._cycles[v])

    def distinct_heights(self) -> list[Fraction]:
        return sorted(set(self.heights.values()))

    def regular_level_between(self, s: Fraction, direction: int) -> Fraction:
        """A level strictly between s and the next vertex height in the given direction."""
        heights = self.distinct_heights()
        if direction < 0:
            below = [h for h in heights if h < s]
            return (below[-1] + s) / 2 if below else s - 1
        above = [h for h in heights if h > s]
        return (above[0] + s) / 2 if above else s + 1


@dataclass
class FiberGraph:
    """PL level set: nodes are on-level vertices and crossed edges, segments lie in simplices."""

    nodes: list[Any] = field(default_factory=list)
    segments: list[tuple[Any, Any, Simplex]] = field(default_factory=list)

    def valence(self, node: Any) -> int:
        return sum(1 for a, b, _ in self.segments if node in (a, b))

    @property
    def chi_c(self) -> int:
        return len(self.nodes) - len(self.segments)


def fiber_graph(m: HeightedSurface, s: Any) -> FiberGraph:
    s = Fraction(s)
    h = m.heights
    graph = FiberGraph()
    graph.nodes.extend(("v", v) for v in m.complex.vertices if h[v] == s)
    for edge in (e for e in m.complex.simplices if len(e) == 2):
        a, b = sorted(edge, key=_vertex_key)
        if (h[a] - s) * (h[b] - s) < 0:
            graph.nodes.append(("e", edge))
    seen_edges: set[Simplex] = set()
    for tri in (t for t in m.complex.simplices if len(t) == 3):
        on = [v for v in tri if h[v] == s]
        off = [v for v in tri if h[v] != s]
        if len(on) == 3:
            raise InvalidInput(f"triangle {sorted(tri, key=_vertex_key)} is flat at level {s}")
        if len(on) == 2:
            edge = frozenset(on)
            if edge not in seen_edges:
                seen_edges.add(edge)
                graph.segments.append((("v", on[0]), ("v", on[1]), edge))
        elif len(on) == 1:
            a, b = off
            if (h[a] - s) * (h[b] - s) < 0:
                graph.segments.append((("v", on[0]), ("e", frozenset(off)), tri))
        else:
            crossed = [frozenset(e) for e in combinations(sorted(tri, key=_vertex_key), 2)]
            crossed = [e for e in crossed if _crosses(e, h, s)]
            if crossed:
                graph.segments.append((("e", crossed[0]), ("e", crossed[1]), tri))
    return graph


def _crosses(edge: Simplex, h: Mapping[Vertex, Fraction], s: Fraction) -> bool:
    a, b = tuple(edge)
    return (h[a] - s) * (h[b] - s) < 0


def _branch_position(m: HeightedSurface, vertex: Vertex, carrier: Simplex) -> int:
    """Position in the cyclic star of a vertex: 2i for the edge to n_i, 2i+1 for (n_i, n_i+1)."""
    cycle = m.link_cycle(vertex)
    others = carrier - {vertex}
    for i, n in enumerate(cycle):
        if others == {n}:
            return 2 * i
        if others == {n, cycle[(i + 1) % len(cycle)]}:
            return 2 * i + 1
    raise InvalidInput(f"{sorted(carrier, key=_vertex_key)} is not in the star of {vertex}")


class _UnionFind:
    def __init__(self, items: Iterable[Any]) -> None:
        self.parent = {x: x for x in items}

    def find(self, x: Any) -> Any:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: Any, b: Any) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def classes(self) -> set[Any]:
        return {self.find(x) for x in self.parent}


def fiber_beta(m: HeightedSurface, s: Any) -> LaurentPoly:
    """
    beta of the level set h^-1(s), reading valence-4 vertices as transverse crossings.

    Each connected component contributes c(u+1) - sum over its nodes of (valence/2 - 1), where
    c counts the circles of its normalization; isolated points contribute 1.
    """
    graph = fiber_graph(m, s)
    incident: dict[Any, list[int]] = {node: [] for node in graph.nodes}
    for index, (a, b, _) in enumerate(graph.segments):
        incident[a].append(index)
        incident[b].append(index)
    circles = _UnionFind(range(len(graph.segments)))
    components = _UnionFind(graph.nodes)
    for a, b, _ in graph.segments:
        components.union(a, b)
    excess: dict[Any, int] = {}
    for node, segs in incident.items():
        val = len(segs)
        if val >= 6:
            raise MonkeySaddle(f"level {s} has a vertex of valence {val} at {node[1]}")
        if val % 2:
            raise InvalidInput(f"level {s} has odd valence {val} at {node[1]}")
        if val == 4:
            vertex = node[1]
            ordered = sorted(
                segs, key=lambda i: _branch_position(m, vertex, graph.segments[i][2])
            )
            # transverse crossing: branches opposite in the cyclic order continue each other
            circles.union(ordered[0], ordered[2])
            circles.union(ordered[1], ordered[3])
        elif val == 2:
            circles.union(segs[0], segs[1])
        excess[node] = max(val // 2 - 1, 0)
    beta = LaurentPoly()
    by_component: dict[Any, tuple[set[Any], int]] = {}
    for node in graph.nodes:
        root = components.find(node)
        loops, total = by_component.get(root, (set(), 0))
        loops.update(circles.find(i) for i in incident[node])
        by_component[root] = (loops, total + excess[node])
    for loops, total in by_component.values():
        beta = beta + (U + 1) * len(loops) - total if loops else beta + 1
    logger.debug(f"Level {s}: {len(graph.nodes)} nodes, {len(graph.segments)} segments")
    return beta


@dataclass(frozen=True)
class LevelSetBeta:
    beta: LaurentPoly
    beta_link: LaurentPoly


def level_set_beta(m: HeightedSurface, s: Any) -> LevelSetBeta:
    """
    beta of h^-1(s) and of h^-1(lk(s, R)) = h^-1(s - eps) + h^-1(s + eps).

    Args:
        m: Heighted closed surface
        s: Rational level

    Returns:
        LevelSetBeta(beta, beta_link)
    """
    s = Fraction(s)
    below = m.regular_level_between(s, -1)
    above = m.regular_level_between(s, 1)
    return LevelSetBeta(fiber_beta(m, s), fiber_beta(m, below) + fiber_beta(m, above))


# JSON forms


class ComplexSpec(BaseModel):
    vertices: list[Union[int, str]] = Field(default_factory=list)
    simplices: list[list[Union[int, str]]]

    def build(self) -> SimplicialComplex:
        complex_ = SimplicialComplex(self.simplices + [[v] for v in self.vertices])
        return complex_


def _vertex_lookup(complex_: SimplicialComplex) -> dict[str, Vertex]:
    return {str(v): v for v in complex_.vertices}


def _parse_simplex(key: str, lookup: Mapping[str, Vertex]) -> Simplex:
    try:
        return frozenset(lookup[part.strip()] for part in key.split(","))
    except KeyError as exc:
        raise InvalidInput(f"unknown vertex {exc.args[0]!r} in {key!r}") from None


class FunctionSpec(BaseModel):
    values: dict[str, int]

    def build(self, complex_: SimplicialComplex) -> ConstructibleFunction:
        lookup = _vertex_lookup(complex_)
        return ConstructibleFunction(
            complex_, {_parse_simplex(k, lookup): v for k, v in self.values.items()}
        )


class MapSpec(BaseModel):
    source: ComplexSpec
    target: ComplexSpec
    vertex_map: dict[str, Union[int, str]]

    def build(self) -> SimplicialMap:
        source, target = self.source.build(), self.target.build()
        src, tgt = _vertex_lookup(source), _vertex_lookup(target)
        try:
            mapping = {src[k]: tgt[str(v)] for k, v in self.vertex_map.items()}
        except KeyError as exc:
            raise InvalidInput(f"unknown vertex {exc.args[0]!r} in the vertex map") from None
        return SimplicialMap(source, target, mapping)


class SurfaceSpec(ComplexSpec):
    heights: dict[str, str]

    def build_surface(self) -> HeightedSurface:
        complex_ = self.build()
        lookup = _vertex_lookup(complex_)
        try:
            heights = {lookup[k]: Fraction(v) for k, v in self.heights.items()}
        except (KeyError, ValueError) as exc:
            raise InvalidInput(f"bad height entry: {exc}") from None
        return HeightedSurface(complex_, heights)
