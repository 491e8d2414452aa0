"""Reference complexes with known homology, and seeded random complexes."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations

from homloc.complex import Chain, SimplicialComplex, build
from homloc.metric import Metric

FIXTURE_NAMES = (
    "circle_n",
    "hollow_square",
    "filled_triangle",
    "cylinder_3_6",
    "annulus",
    "wedge_3_6",
    "torus_7",
    "rp2_6",
    "sphere_oct",
    "three_hole_disk",
)


@dataclass
class Fixture:
    name: str
    complex: SimplicialComplex
    metric: Metric
    betti: tuple[int, ...]
    sizes: dict[str, float] | None = None
    cycles: dict[str, Chain] = field(default_factory=dict)


def _cycle_edges(vertices: list[int]) -> list[tuple[int, int]]:
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def _loop(k: SimplicialComplex, vertices: list[int]) -> Chain:
    return Chain.from_simplices(k, _cycle_edges(vertices), 1)


def circle(n: int) -> Fixture:
    if n < 3:
        raise ValueError("a simplicial circle needs at least 3 vertices")
    verts = list(range(n))
    k = build(_cycle_edges(verts))
    return Fixture(f"circle_{n}", k, Metric.unit(k), (1, 1), {"loop": n // 2}, {"loop": _loop(k, verts)})


def filled_triangle() -> Fixture:
    k = build([(0, 1, 2)])
    return Fixture("filled_triangle", k, Metric.unit(k), (1, 0, 0), None, {"rim": _loop(k, [0, 1, 2])})


def cylinder_3_6() -> Fixture:
    """Tube between a 3-edge circle (vertices 0-2) and a 6-edge circle (3-8).

    Short vertex ``i`` is joined to long vertices 2i, 2i+1, 2i+2 (mod 6).
    """
    short = [0, 1, 2]
    long_ = [3 + j for j in range(6)]
    tris = []
    for i in range(3):
        b0, b1, b2 = (long_[(2 * i + t) % 6] for t in range(3))
        tris += [(short[i], b0, b1), (short[i], b1, b2), (short[i], short[(i + 1) % 3], b2)]
    k = build(tris)
    cycles = {"short": _loop(k, short), "long": _loop(k, long_)}
    return Fixture("cylinder_3_6", k, Metric.unit(k), (1, 1, 0), {"short": 1.0}, cycles)


def annulus() -> Fixture:
    """Annulus on which the minimal-radius cycle has twice the minimal diameter.

    Inner rim: triangle 4-5-6 (the tight cycle, diameter 1).  Outer rim:
    square 0-1-2-3 (diameter 2), plus an unfilled chord 0-2 that puts the
    whole outer rim within distance 1 of vertex 0.  Every ball of radius 1
    carries the class, and vertex 0 wins the center tie-break, but the
    radius-1 ball at 0 only contains representatives of diameter 2.
    The chord adds a second, independent class.
    """
    tris = [(0, 1, 4), (1, 4, 5), (1, 2, 5), (2, 5, 6), (2, 3, 6), (3, 4, 6), (0, 3, 4)]
    k = build(tris + [(0, 2)])
    cycles = {"tight": _loop(k, [4, 5, 6]), "wiggly": _loop(k, [0, 1, 2, 3])}
    return Fixture("annulus", k, Metric.unit(k), (1, 2, 0), {"tight": 1.0}, cycles)


def wedge_3_6() -> Fixture:
    small = [0, 1, 2]
    big = [0, 3, 4, 5, 6, 7]
    k = build(_cycle_edges(small) + _cycle_edges(big))
    cycles = {"small": _loop(k, small), "big": _loop(k, big)}
    return Fixture("wedge_3_6", k, Metric.unit(k), (1, 2), {"small": 1.0, "big": 3.0}, cycles)


def torus_7() -> Fixture:
    """Seven-vertex minimal torus; its 1-skeleton is the complete graph."""
    tris = [t for i in range(7) for t in ((i, (i + 1) % 7, (i + 3) % 7), (i, (i + 2) % 7, (i + 3) % 7))]
    k = build(tris)
    return Fixture("torus_7", k, Metric.unit(k), (1, 2, 1))


def rp2_6() -> Fixture:
    """Six-vertex minimal projective plane (half of the icosahedron)."""
    tris = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
    ]
    k = build(tris)
    return Fixture("rp2_6", k, Metric.unit(k), (1, 1, 1))


def sphere_oct() -> Fixture:
    tris = [(a, b, c) for a in (0, 1) for b in (2, 3) for c in (4, 5)]
    k = build(tris)
    return Fixture("sphere_oct", k, Metric.unit(k), (1, 0, 1))


def _three_hole_edges(arm_extra: float = 0.0) -> dict[tuple[int, int], float]:
    top = list(range(9))  # 0 .. 8, unit edges
    edges = {(a, b): 1.0 for a, b in zip(top, top[1:])}
    edges[(0, 9)] = edges[(8, 9)] = 2.0
    edges[(0, 10)] = edges[(8, 10)] = 2.0 + arm_extra
    edges[(4, 11)] = edges[(11, 12)] = edges[(4, 12)] = 1.0
    return edges


def three_hole_disk() -> Fixture:
    """Spine of a disk with three holes, tuned so the optimal basis is unstable.

    Three paths join vertex 0 to vertex 8: an 8-edge unit path 0-1-...-8
    and two arms 0-9-8 and 0-10-8 of total length 4.  A unit triangle
    4-11-12 hangs off the middle of the long path.

    * ``z1`` = loop through both arms (size 4),
    * ``z2`` = the triangle (size 1),
    * ``z3`` = long path + arm through 9 (size 5).

    ``[z3]`` and ``[z1] + [z3]`` (long path + arm through 10) have equal
    size, and tie-breaking makes the greedy basis keep ``[z1] + [z3]``.
    ``three_hole_disk_flip_metric`` lengthens the arm through 10, so
    ``[z3]`` becomes strictly smaller and the basis changes while the
    filtration does not.
    """
    edges = _three_hole_edges()
    k = build(list(edges))
    cycles = {
        "z1": _loop(k, [0, 9, 8, 10]),
        "z2": _loop(k, [4, 11, 12]),
        "z3": _loop(k, list(range(9)) + [9]),
    }
    sizes = {"z1": 4.0, "z2": 1.0, "z3": 5.0}
    return Fixture("three_hole_disk", k, Metric.from_edges(k, edges, None), (1, 3), sizes, cycles)


def three_hole_disk_flip_metric(delta: float = 0.1) -> Metric:
    """Metric of ``three_hole_disk`` with both edges of the arm 0-10-8 longer by ``delta``."""
    edges = _three_hole_edges(delta)
    return Metric.from_edges(build(list(edges)), edges, None)


_BUILDERS = {
    "hollow_square": lambda: _renamed(circle(4), "hollow_square"),
    "filled_triangle": filled_triangle,
    "cylinder_3_6": cylinder_3_6,
    "annulus": annulus,
    "wedge_3_6": wedge_3_6,
    "torus_7": torus_7,
    "rp2_6": rp2_6,
    "sphere_oct": sphere_oct,
    "three_hole_disk": three_hole_disk,
}


def _renamed(f: Fixture, name: str) -> Fixture:
    f.name = name
    return f


def fixture(name: str) -> Fixture:
    """Look up a fixture; ``circle_<n>`` builds the n-gon boundary."""
    m = re.fullmatch(r"circle_(\d+)", name)
    if m:
        return circle(int(m.group(1)))
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}") from None


def all_fixtures() -> list[Fixture]:
    return [circle(5)] + [_BUILDERS[n]() for n in _BUILDERS]


@dataclass(frozen=True)
class RandomParams:
    n_vertices: int = 7
    edge_prob: float = 0.5
    triangle_prob: float = 0.5
    max_triangles: int = 12
    min_length: float = 0.5
    max_length: float = 2.0
    tree: bool = False


def random_complex(params: RandomParams, seed: int) -> tuple[SimplicialComplex, Metric]:
    """Seeded random 2-complex with random edge lengths.

    ``tree=True`` gives a random spanning tree with no triangles.
    """
    rng = random.Random(seed)
    n = params.n_vertices
    if params.tree:
        edges = [(rng.randrange(i), i) for i in range(1, n)]
        tris: list[tuple[int, int, int]] = []
    else:
        edges = [e for e in combinations(range(n), 2) if rng.random() < params.edge_prob]
        edge_set = set(edges)
        cliques = [
            t for t in combinations(range(n), 3)
            if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= edge_set
        ]
        tris = [t for t in cliques if rng.random() < params.triangle_prob]
        rng.shuffle(tris)
        tris = sorted(tris[: params.max_triangles])
    k = build([(v,) for v in range(n)] + edges + tris, max_dim=2)
    m = Metric(tuple(rng.uniform(params.min_length, params.max_length) for _ in range(k.n(1))))
    return k, m
