"""Discrete geodesic distances, geodesic balls and cycle size functionals.

Distances are shortest-path lengths in the 1-skeleton under positive edge
lengths.  A vertex function extends to simplices by taking the maximum over
the simplex's vertices, which makes every sublevel set a subcomplex.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

from homloc.complex import Chain, SimplicialComplex, Subcomplex, skeleton_edges
from homloc.gf2 import BitVector

# Absolute slack on ball thresholds and on every "<=" check against sums of
# float edge lengths.
TOL = 1e-9


@dataclass(frozen=True)
class Metric:
    """Positive length per 1-simplex, indexed like ``k.simplices(1)``."""

    lengths: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(float(x) for x in self.lengths))
        for i, x in enumerate(self.lengths):
            if not x > 0 or math.isinf(x):
                raise ValueError(f"edge {i} has non-positive or infinite length {x}")

    @classmethod
    def unit(cls, k: SimplicialComplex) -> Metric:
        return cls((1.0,) * k.n(1))

    @classmethod
    def from_edges(
        cls, k: SimplicialComplex, lengths: Mapping[tuple[int, int], float], default: float | None = 1.0
    ) -> Metric:
        """Lengths keyed by vertex pairs; ``default`` fills the rest (None: all required)."""
        out = []
        given = {tuple(sorted(e)): v for e, v in lengths.items()}
        for e in given:
            if e not in k:
                raise KeyError(f"edge {e} not in complex")
        for e in k.simplices(1):
            if e in given:
                out.append(given[e])
            elif default is None:
                raise KeyError(f"edge {e} has no length")
            else:
                out.append(default)
        return cls(tuple(out))

    def check(self, k: SimplicialComplex) -> None:
        if len(self.lengths) != k.n(1):
            raise ValueError(f"metric has {len(self.lengths)} lengths, complex has {k.n(1)} edges")

    def length(self, k: SimplicialComplex, edge: Sequence[int]) -> float:
        return self.lengths[k.index(edge)]


@dataclass(frozen=True)
class GeodesicField:
    """Distance from ``source`` to every vertex, max-extended to simplices."""

    source: int
    vertex_values: tuple[float, ...]
    simplex_values: tuple[tuple[float, ...], ...]

    def value(self, d: int, i: int) -> float:
        return self.simplex_values[d][i]

    def distinct_values(self) -> list[float]:
        return sorted({v for level in self.simplex_values for v in level})


class WeightFunction:
    """Real weight per simplex, keyed by ``(dim, index)``."""

    def __init__(self, weights: Mapping[tuple[int, int], float]):
        self.weights = dict(weights)

    @classmethod
    def uniform(cls, k: SimplicialComplex, value: float) -> WeightFunction:
        return cls({(d, i): value for d in range(k.max_dim + 1) for i in range(k.n(d))})

    def __getitem__(self, key: tuple[int, int]) -> float:
        try:
            return self.weights[key]
        except KeyError:
            raise KeyError(f"no weight for simplex {key[1]} of dimension {key[0]}") from None


def _adjacency(k: SimplicialComplex, m: Metric) -> list[list[tuple[int, float]]]:
    adj: list[list[tuple[int, float]]] = [[] for _ in range(k.n(0))]
    for (a, b), w in zip(skeleton_edges(k), m.lengths):
        adj[a].append((b, w))
        adj[b].append((a, w))
    return adj


def _dijkstra(adj: list[list[tuple[int, float]]], src: int) -> list[float]:
    dist = [math.inf] * len(adj)
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


@lru_cache(maxsize=512)
def distance_table(k: SimplicialComplex, m: Metric) -> tuple[tuple[float, ...], ...]:
    """All-pairs geodesic distances over dense vertex indices."""
    m.check(k)
    adj = _adjacency(k, m)
    return tuple(tuple(_dijkstra(adj, s)) for s in range(k.n(0)))


def _extend(k: SimplicialComplex, values: Sequence[float]) -> tuple[tuple[float, ...], ...]:
    vi = k.vertex_index
    return tuple(
        tuple(max(values[vi[v]] for v in s) for s in k.simplices(d)) for d in range(k.max_dim + 1)
    )


def geodesic_field(k: SimplicialComplex, m: Metric, p: int) -> GeodesicField:
    """Single-source distances from vertex ``p``; unreachable vertices get +inf."""
    if p not in k.vertex_index:
        raise KeyError(f"unknown vertex id {p}")
    values = distance_table(k, m)[k.vertex_index[p]]
    return GeodesicField(p, values, _extend(k, values))


def geodesic_ball(k: SimplicialComplex, f: GeodesicField, r: float) -> Subcomplex:
    """All simplices whose field value is at most ``r``."""
    if r < 0:
        raise ValueError("ball radius must be nonnegative")
    members = []
    for d in range(k.max_dim + 1):
        bits = 0
        for i, v in enumerate(f.simplex_values[d]):
            if v <= r + TOL:
                bits |= 1 << i
        members.append(BitVector(k.n(d), bits))
    return Subcomplex(k, members)


def vol(z: Chain, w: WeightFunction | None = None) -> float:
    """Simplex count of the support, or the weight sum when ``w`` is given."""
    if w is None:
        return float(len(z))
    return float(sum(w[(z.dim, i)] for i in z.indices()))


def _support_vertices(z: Chain) -> list[int]:
    vi = z.complex.vertex_index
    verts = [vi[v] for v in z.vertices()]
    if not verts:
        raise ValueError("size of an empty chain is undefined")
    return verts


def diam(z: Chain, k: SimplicialComplex, m: Metric) -> float:
    """Largest geodesic distance between two vertices of ``z``, measured in all of ``k``."""
    verts = _support_vertices(z)
    table = distance_table(k, m)
    return max((table[a][b] for a in verts for b in verts), default=0.0)


def rad(z: Chain, k: SimplicialComplex, m: Metric) -> tuple[float, int]:
    """Smallest ``max_q dist(p, q)`` over all vertices ``p`` of ``k``.

    Returns ``(radius, center)``; among equal radii the smallest vertex id wins.
    """
    verts = _support_vertices(z)
    table = distance_table(k, m)
    best = math.inf
    center = k.vertex_ids[0]
    for p, row in enumerate(table):
        r = max(row[q] for q in verts)
        if r < best:
            best, center = r, k.vertex_ids[p]
    return best, center
