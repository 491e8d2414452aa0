"""Class sizes, the greedy optimal homology basis and subgroup filtrations.

The size of a class is the radius of the smallest geodesic ball carrying
it.  Sizes make the nontrivial classes a weighted matroid, so sorting them
by size and keeping each class independent of those already kept yields a
basis of minimal total size.  Prefix spans of that basis form the subgroup
filtration, which (unlike the basis itself) is stable under small metric
changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from homloc import gf2
from homloc.complex import Chain, SimplicialComplex, boundary_matrix_above
from homloc.errors import EnumerationCapError
from homloc.gf2 import BitMatrix
from homloc.homology import HomologyClass, betti, combine, homology_basis
from homloc.localize import bmin
from homloc.metric import Metric

DEFAULT_MAX_CLASSES = 4095


@dataclass(frozen=True)
class ClassSize:
    value: float
    witness_center: int
    witness_radius: float


@dataclass
class HomologyBasis:
    """Size-sorted independent classes.

    ``masks[i]`` gives class ``i`` as a combination of ``reference`` (a
    metric-independent homology basis); ``sizes_by_mask`` keeps the size of
    every nontrivial class that was ranked.
    """

    dim: int
    classes: list[tuple[HomologyClass, ClassSize]]
    masks: list[int]
    reference: list[Chain]
    sizes_by_mask: dict[int, ClassSize] = field(default_factory=dict)

    @property
    def beta(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[float]:
        return [s.value for _, s in self.classes]

    @property
    def representatives(self) -> list[Chain]:
        return [h.representative for h, _ in self.classes]

    @property
    def complex(self) -> SimplicialComplex:
        return self.reference[0].complex


@dataclass(frozen=True)
class SubgroupFiltration:
    """Nested prefix spans psi_0 <= psi_1 <= ... <= psi_beta of a basis.

    ``sizes[i]`` is the size of the i-th basis class (``sizes[0] = 0`` for
    the trivial subgroup).
    """

    basis: HomologyBasis
    sizes: tuple[float, ...]

    @property
    def beta(self) -> int:
        return self.basis.beta

    def subgroup(self, i: int) -> list[Chain]:
        """Generators of psi_i."""
        if not 0 <= i <= self.beta:
            raise IndexError(f"subgroup index {i} outside 0..{self.beta}")
        return self.basis.representatives[:i]


@dataclass(frozen=True)
class FiltrationDistance:
    value: float
    index: int
    direction: str


def class_size(k: SimplicialComplex, m: Metric, z0: Chain) -> ClassSize:
    """Radius of the smallest geodesic ball carrying the class of ``z0``."""
    b = bmin(k, m, z0)
    return ClassSize(b.radius, b.center, b.radius)


def all_class_sizes(
    k: SimplicialComplex, m: Metric, reference: Sequence[Chain], max_classes: int = DEFAULT_MAX_CLASSES
) -> dict[int, ClassSize]:
    """Size of every nontrivial class, keyed by its mask over ``reference``."""
    n_classes = (1 << len(reference)) - 1
    if n_classes > max_classes:
        raise EnumerationCapError(f"{n_classes} nontrivial classes exceed the cap of {max_classes}")
    d = reference[0].dim
    return {mask: class_size(k, m, combine(k, list(reference), mask, d)) for mask in range(1, n_classes + 1)}


def greedy_basis(k: SimplicialComplex, reference: list[Chain], sizes: dict[int, ClassSize]) -> HomologyBasis:
    """Pick classes in increasing size order, skipping dependent ones.

    Equal sizes are ordered by the representative's bit vector read from
    simplex 0 upward, so the result is deterministic.
    """
    d = reference[0].dim
    reps = {mask: combine(k, reference, mask, d) for mask in sizes}
    order = sorted(sizes, key=lambda mask: (sizes[mask].value, reps[mask].support.lex_key()))
    chosen: list[int] = []
    # independence of classes = independence of their coordinate masks
    pivots: dict[int, int] = {}
    for mask in order:
        r = mask
        while r:
            lead = r.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = r
                chosen.append(mask)
                break
            r ^= pivots[lead]
        if len(chosen) == len(reference):
            break
    classes = [(HomologyClass(reps[mask]), sizes[mask]) for mask in chosen]
    return HomologyBasis(d, classes, chosen, reference, dict(sizes))


def optimal_basis(
    k: SimplicialComplex, m: Metric, d: int, max_classes: int = DEFAULT_MAX_CLASSES
) -> HomologyBasis:
    """Minimal-total-size basis of H_d by exhaustive ranking of all classes."""
    beta = betti(k, d)
    if beta == 0:
        raise ValueError(f"H_{d} is trivial; there is no basis to optimize")
    if (1 << beta) - 1 > max_classes:
        raise EnumerationCapError(f"{(1 << beta) - 1} nontrivial classes exceed the cap of {max_classes}")
    reference = homology_basis(k, d)
    return greedy_basis(k, reference, all_class_sizes(k, m, reference, max_classes))


def filtration(b: HomologyBasis) -> SubgroupFiltration:
    return SubgroupFiltration(b, (0.0, *b.sizes))


def _contains(k: SimplicialComplex, gens: Sequence[Chain], psi: Sequence[Chain], d: int) -> bool:
    span = boundary_matrix_above(k, d)
    if gens:
        span = span.hstack(BitMatrix.from_columns(k.n(d), [g.support for g in gens]))
    return all(gf2.in_column_span(span, z.support) for z in psi)


def projection(psi: Sequence[Chain], x2: SubgroupFiltration) -> int:
    """Index of the first subgroup of ``x2`` containing the span of ``psi``."""
    k = x2.basis.complex
    d = x2.basis.dim
    for j in range(x2.beta + 1):
        if _contains(k, x2.subgroup(j), psi, d):
            return j
    raise ValueError("generators do not lie in the homology of this complex")


def filtration_distance(x1: SubgroupFiltration, x2: SubgroupFiltration) -> FiltrationDistance:
    """Largest size change between a subgroup and its projection, both ways."""
    b1, b2 = x1.basis, x2.basis
    if b1.complex != b2.complex or b1.dim != b2.dim or x1.beta != x2.beta:
        raise ValueError("filtrations are over different homology groups")
    best = FiltrationDistance(0.0, 0, "1->2")
    for src, dst, direction in ((x1, x2, "1->2"), (x2, x1, "2->1")):
        for i in range(1, src.beta + 1):
            j = projection(src.subgroup(i), dst)
            delta = abs(src.sizes[i] - dst.sizes[j])
            if delta > best.value:
                best = FiltrationDistance(delta, i, direction)
    return best
