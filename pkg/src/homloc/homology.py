"""Z2 homology: Betti numbers, carried-class tests and class enumeration."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

from homloc import gf2
from homloc.complex import (
    Chain,
    SimplicialComplex,
    Subcomplex,
    boundary_matrix,
    boundary_matrix_above,
    is_cycle,
    restrict_rows,
    restrict_vector,
)
from homloc.errors import EnumerationCapError, NotACycleError, NotCarriedError
from homloc.gf2 import BitMatrix, BitVector

DEFAULT_MAX_ENUM = 20


def max_enum() -> int:
    """Cap on n_{d+1} for exhaustive class enumeration (env ``HOMLOC_MAX_ENUM``)."""
    raw = os.environ.get("HOMLOC_MAX_ENUM")
    return int(raw) if raw else DEFAULT_MAX_ENUM


@dataclass(frozen=True)
class HomologyClass:
    """A homology class given by one representative cycle."""

    representative: Chain

    def __post_init__(self) -> None:
        _require_cycle(self.representative)

    @property
    def dim(self) -> int:
        return self.representative.dim

    @property
    def complex(self) -> SimplicialComplex:
        return self.representative.complex

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HomologyClass):
            return NotImplemented
        return homologous(self.complex, self.representative, other.representative)

    __hash__ = None  # type: ignore[assignment]


def _require_cycle(z: Chain) -> None:
    if not is_cycle(z):
        raise NotACycleError(f"chain of dimension {z.dim} has nonzero boundary")


def _rank_boundary(k: SimplicialComplex, d: int) -> int:
    if d < 1 or d > k.max_dim:
        return 0
    return gf2.rank(boundary_matrix(k, d))


def betti(k: SimplicialComplex, d: int) -> int:
    """dim Z_d - dim B_d over GF(2)."""
    if not 0 <= d <= k.max_dim:
        raise ValueError(f"dimension {d} outside 0..{k.max_dim}")
    return k.n(d) - _rank_boundary(k, d) - _rank_boundary(k, d + 1)


def contain_cycle(k: SimplicialComplex, k0: Subcomplex, z0: Chain) -> bool:
    """Does ``k0`` carry some cycle homologous to ``z0``?

    Appends ``z0`` as an extra column to the boundary of (d+1)-chains, drops
    the rows of d-simplices inside ``k0`` and compares ranks: the class is
    carried unless the extra column raises the rank by exactly one.
    """
    _require_cycle(z0)
    if z0.complex != k or k0.parent != k:
        raise ValueError("cycle, subcomplex and complex do not match")
    d = z0.dim
    bd = boundary_matrix_above(k, d)
    z_hat = bd.append_column(z0.support)
    jump = gf2.rank(restrict_rows(z_hat, k, k0, d)) - gf2.rank(restrict_rows(bd, k, k0, d))
    assert jump in (0, 1), f"rank jump {jump} outside {{0, 1}}"
    return jump != 1


def representative_in(k: SimplicialComplex, k0: Subcomplex, z0: Chain) -> Chain:
    """A cycle homologous to ``z0`` supported in ``k0``.

    Solves the boundary system restricted to the d-simplices outside ``k0``
    for a (d+1)-chain gamma, then returns ``z0 + boundary(gamma)``.  The
    canonical solution (free variables zero) is used.
    """
    _require_cycle(z0)
    d = z0.dim
    bd = boundary_matrix_above(k, d)
    gamma = gf2.solve(restrict_rows(bd, k, k0, d), restrict_vector(z0.support, k0, d))
    if gamma is None:
        raise NotCarriedError("subcomplex carries no representative of the class")
    return Chain(k, d, z0.support + bd.matvec(gamma))


def homologous(k: SimplicialComplex, z1: Chain, z2: Chain) -> bool:
    _require_cycle(z1)
    _require_cycle(z2)
    if z1.dim != z2.dim:
        raise ValueError(f"dimension mismatch: {z1.dim} vs {z2.dim}")
    return gf2.in_column_span(boundary_matrix_above(k, z1.dim), (z1 + z2).support)


def is_trivial(k: SimplicialComplex, z: Chain) -> bool:
    """True iff ``z`` is a boundary."""
    _require_cycle(z)
    return gf2.in_column_span(boundary_matrix_above(k, z.dim), z.support)


def enumerate_class(k: SimplicialComplex, z0: Chain, cap: int | None = None) -> Iterator[Chain]:
    """Yield every member of the class of ``z0`` exactly once.

    Walks all 2^{n_{d+1}} (d+1)-chains in Gray-code order, adding one
    boundary column per step, and skips repeats.  Raises
    ``EnumerationCapError`` before yielding anything when n_{d+1} > cap.
    """
    _require_cycle(z0)
    cap = max_enum() if cap is None else cap
    n_up = k.n(z0.dim + 1)
    if n_up > cap:
        raise EnumerationCapError(f"class enumeration needs 2^{n_up} steps; cap is 2^{cap}")
    return _gray_walk(k, z0, n_up)


def _gray_walk(k: SimplicialComplex, z0: Chain, n_up: int) -> Iterator[Chain]:
    d = z0.dim
    cols = [c.bits for c in boundary_matrix_above(k, d).columns()]
    n = k.n(d)
    seen = set()
    cur = z0.support.bits
    for step in range(1 << n_up):
        if step:
            # bit that flips between gray(step - 1) and gray(step)
            cur ^= cols[(step & -step).bit_length() - 1]
        if cur not in seen:
            seen.add(cur)
            yield Chain(k, d, BitVector(n, cur))


def homology_basis(k: SimplicialComplex, d: int) -> list[Chain]:
    """Deterministic basis of H_d as representative cycles.

    Takes the nullspace basis of the d-boundary (or all vertices when
    d = 0) and greedily keeps cycles independent of the (d+1)-boundaries
    and of those already kept.
    """
    if not 0 <= d <= k.max_dim:
        raise ValueError(f"dimension {d} outside 0..{k.max_dim}")
    if d == 0:
        cycles = [BitVector(k.n(0), 1 << i) for i in range(k.n(0))]
    else:
        cycles = gf2.nullspace(boundary_matrix(k, d))
    span = boundary_matrix_above(k, d)
    chosen = []
    for z in cycles:
        if not gf2.in_column_span(span, z):
            chosen.append(Chain(k, d, z))
            span = span.append_column(z)
    return chosen


def class_coordinates(k: SimplicialComplex, basis: list[Chain], z: Chain) -> int:
    """Coefficients of the class of ``z`` in ``basis``, as a bit mask."""
    _require_cycle(z)
    bd = boundary_matrix_above(k, z.dim)
    a = bd.hstack(BitMatrix.from_columns(k.n(z.dim), [b.support for b in basis]))
    x = gf2.solve(a, z.support)
    if x is None:
        raise ValueError("cycle is not in the span of the basis")
    return x.bits >> bd.n_cols


def combine(k: SimplicialComplex, basis: list[Chain], mask: int, d: int | None = None) -> Chain:
    """Sum of the basis cycles selected by ``mask``."""
    if d is None:
        d = basis[0].dim
    bits = 0
    for i, b in enumerate(basis):
        if (mask >> i) & 1:
            bits ^= b.support.bits
    return Chain(k, d, BitVector(k.n(d), bits))
