"""Localizing a homology class by a small representative cycle.

``min_radius_cycle`` is exact and polynomial: it finds the smallest geodesic
ball carrying the class and extracts a representative inside it.  The
volume and diameter versions are NP-hard in general, so they are provided
only as exhaustive searches over the class, usable on small complexes and
as test oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from homloc.complex import Chain, SimplicialComplex, Subcomplex
from homloc.errors import TrivialClassError
from homloc.homology import contain_cycle, enumerate_class, is_trivial, representative_in
from homloc.metric import Metric, WeightFunction, diam, geodesic_ball, geodesic_field, vol

OBJECTIVES = ("volume", "weighted_volume", "diameter", "radius")


@dataclass(frozen=True)
class LocalizationResult:
    cycle: Chain
    objective_value: float
    objective: str
    center: int | None = None


@dataclass(frozen=True)
class Ball:
    center: int
    radius: float
    ball: Subcomplex


def _require_nontrivial(k: SimplicialComplex, z0: Chain) -> None:
    # is_trivial also rejects non-cycles
    if is_trivial(k, z0):
        raise TrivialClassError("the class of the query cycle is trivial")


def bmin(k: SimplicialComplex, m: Metric, z0: Chain) -> Ball:
    """Smallest geodesic ball carrying the class of ``z0``.

    For each center the candidate radii are the distinct simplex values of
    its distance field; balls grow monotonically with the radius, so a
    binary search finds the first carrying one.  Only radii strictly below
    the best found so far are searched, which keeps the smallest center id
    among equal radii.
    """
    _require_nontrivial(k, z0)
    best: Ball | None = None
    for p in k.vertex_ids:
        field = geodesic_field(k, m, p)
        values = field.distinct_values()
        if best is not None:
            values = [v for v in values if v < best.radius]
        if not values:
            continue

        def carries(i: int) -> bool:
            return contain_cycle(k, geodesic_ball(k, field, values[i]), z0)

        if not carries(len(values) - 1):
            continue
        lo, hi = 0, len(values) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if carries(mid):
                hi = mid
            else:
                lo = mid + 1
        best = Ball(p, values[lo], geodesic_ball(k, field, values[lo]))
    assert best is not None, "the whole complex always carries the class"
    return best


def min_radius_cycle(k: SimplicialComplex, m: Metric, z0: Chain) -> LocalizationResult:
    """Representative of the class of ``z0`` carried by its smallest geodesic ball."""
    b = bmin(k, m, z0)
    z = representative_in(k, b.ball, z0)
    return LocalizationResult(z, b.radius, "radius", b.center)


def _argmin_over_class(k: SimplicialComplex, z0: Chain, cost: Callable[[Chain], float], cap: int | None) -> tuple[Chain, float]:
    best_key = None
    best = None
    for z in enumerate_class(k, z0, cap):
        if not z:
            continue
        key = (cost(z), z.support.lex_key())
        if best_key is None or key < best_key:
            best_key, best = key, z
    assert best is not None
    return best, best_key[0]


def min_volume_cycle_exact(
    k: SimplicialComplex, z0: Chain, w: WeightFunction | None = None, cap: int | None = None
) -> LocalizationResult:
    """Fewest simplices (or least weight) in the class, by exhaustive search."""
    _require_nontrivial(k, z0)
    z, value = _argmin_over_class(k, z0, lambda c: vol(c, w), cap)
    return LocalizationResult(z, value, "volume" if w is None else "weighted_volume")


def min_diameter_cycle_exact(k: SimplicialComplex, m: Metric, z0: Chain, cap: int | None = None) -> LocalizationResult:
    """Smallest geodesic diameter in the class, by exhaustive search."""
    _require_nontrivial(k, z0)
    z, value = _argmin_over_class(k, z0, lambda c: diam(c, k, m), cap)
    return LocalizationResult(z, value, "diameter")


def approximation_ratio(k: SimplicialComplex, m: Metric, z0: Chain, cap: int | None = None) -> float:
    """diam(min-radius cycle) / diam(min-diameter cycle); never exceeds 2."""
    zr = min_radius_cycle(k, m, z0)
    zd = min_diameter_cycle_exact(k, m, z0, cap)
    num = diam(zr.cycle, k, m)
    if zd.objective_value == 0:
        return math.inf if num else 1.0
    return num / zd.objective_value
