"""Simplicial complexes, Z2 chains, subcomplexes and boundary operators."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from homloc.gf2 import BitMatrix, BitVector

Simplex = tuple[int, ...]


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Sort vertex ids into a simplex, rejecting repeats and negative ids."""
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    if vs[0] < 0:
        raise ValueError(f"negative vertex id in {vs}")
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate vertex id in simplex {vs}")
    return vs


def faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces, ordered by the position of the dropped vertex."""
    if len(s) == 1:
        return []
    return [s[:i] + s[i + 1:] for i in range(len(s))]


class SimplicialComplex:
    """Face-closed set of simplices with stable per-dimension indices.

    Simplices of each dimension are kept in lexicographic order of their
    vertex tuples; the position in that list is the simplex index used by
    chains and boundary matrices.  Vertex ids are arbitrary nonnegative
    integers; ``vertex_index`` maps them to dense indices.
    """

    def __init__(self, simplices: Sequence[Sequence[Simplex]], max_dim: int):
        self._simplices = tuple(tuple(level) for level in simplices)
        self.max_dim = max_dim
        self._index = tuple({s: i for i, s in enumerate(level)} for level in self._simplices)
        self.vertex_ids = tuple(s[0] for s in self._simplices[0]) if self._simplices else ()
        self.vertex_index = {v: i for i, v in enumerate(self.vertex_ids)}
        self._boundary_cache: dict[int, BitMatrix] = {}
        self._hash = hash((max_dim, self._simplices))

    def simplices(self, d: int) -> tuple[Simplex, ...]:
        if 0 <= d <= self.max_dim:
            return self._simplices[d]
        return ()

    def n(self, d: int) -> int:
        """Number of d-simplices (0 outside ``0..max_dim``)."""
        return len(self.simplices(d))

    def index(self, s: Sequence[int]) -> int:
        s = make_simplex(s)
        try:
            return self._index[len(s) - 1][s]
        except (IndexError, KeyError):
            raise KeyError(f"simplex {s} not in complex") from None

    def __contains__(self, s: Sequence[int]) -> bool:
        try:
            self.index(s)
        except (KeyError, ValueError):
            return False
        return True

    def all_simplices(self) -> list[Simplex]:
        return [s for level in self._simplices for s in level]

    def maximal_simplices(self) -> list[Simplex]:
        """Simplices that are not a face of any other simplex."""
        covered: set[Simplex] = set()
        for level in self._simplices[1:]:
            for s in level:
                covered.update(faces(s))
        return [s for s in self.all_simplices() if s not in covered]

    def edge_list(self) -> tuple[Simplex, ...]:
        return self.simplices(1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.max_dim == other.max_dim and self._simplices == other._simplices

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        counts = ", ".join(str(self.n(d)) for d in range(self.max_dim + 1))
        return f"SimplicialComplex(max_dim={self.max_dim}, n=[{counts}])"


def build(simplices: Iterable[Iterable[int]], max_dim: int | None = None) -> SimplicialComplex:
    """Face closure of ``simplices`` with deterministic indexing.

    ``max_dim`` pads the complex with empty dimensions; it must be at least
    the largest simplex dimension present.
    """
    closure: set[Simplex] = set()
    stack = [make_simplex(s) for s in simplices]
    while stack:
        s = stack.pop()
        if s in closure:
            continue
        closure.add(s)
        stack.extend(faces(s))
    top = max((len(s) - 1 for s in closure), default=0)
    if max_dim is None:
        max_dim = top
    elif max_dim < top:
        raise ValueError(f"max_dim {max_dim} below simplex dimension {top}")
    levels: list[list[Simplex]] = [[] for _ in range(max_dim + 1)]
    for s in closure:
        levels[len(s) - 1].append(s)
    for level in levels:
        level.sort()
    return SimplicialComplex(levels, max_dim)


@dataclass(frozen=True)
class Chain:
    """A d-chain with Z2 coefficients, stored as a support bit vector."""

    complex: SimplicialComplex
    dim: int
    support: BitVector

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("negative chain dimension")
        if self.support.length != self.complex.n(self.dim):
            raise ValueError(
                f"support length {self.support.length} != n_{self.dim} = {self.complex.n(self.dim)}"
            )

    @classmethod
    def zero(cls, k: SimplicialComplex, d: int) -> Chain:
        return cls(k, d, BitVector(k.n(d)))

    @classmethod
    def from_indices(cls, k: SimplicialComplex, d: int, indices: Iterable[int]) -> Chain:
        return cls(k, d, BitVector.from_indices(k.n(d), indices))

    @classmethod
    def from_simplices(cls, k: SimplicialComplex, simplices: Iterable[Sequence[int]], d: int | None = None) -> Chain:
        simplices = [make_simplex(s) for s in simplices]
        if d is None:
            if not simplices:
                raise ValueError("cannot infer dimension of an empty chain")
            d = len(simplices[0]) - 1
        if any(len(s) - 1 != d for s in simplices):
            raise ValueError("mixed simplex dimensions in chain")
        return cls.from_indices(k, d, (k.index(s) for s in simplices))

    def __add__(self, other: Chain) -> Chain:
        if other.complex is not self.complex and other.complex != self.complex:
            raise ValueError("chains live on different complexes")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return Chain(self.complex, self.dim, self.support + other.support)

    def __bool__(self) -> bool:
        return bool(self.support)

    def __len__(self) -> int:
        return self.support.weight()

    def indices(self) -> list[int]:
        return self.support.indices()

    def simplices(self) -> list[Simplex]:
        level = self.complex.simplices(self.dim)
        return [level[i] for i in self.support.indices()]

    def vertices(self) -> list[int]:
        """Sorted external ids of all vertices touched by the chain."""
        return sorted({v for s in self.simplices() for v in s})

    def __repr__(self) -> str:
        return f"Chain(dim={self.dim}, simplices={self.simplices()})"


class Subcomplex:
    """Subset of a parent complex given by per-dimension membership bits."""

    def __init__(self, parent: SimplicialComplex, members: Sequence[BitVector]):
        if len(members) != parent.max_dim + 1:
            raise ValueError("need one membership vector per dimension")
        for d, m in enumerate(members):
            if m.length != parent.n(d):
                raise ValueError(f"membership length mismatch in dimension {d}")
        self.parent = parent
        self.members = tuple(members)

    @classmethod
    def full(cls, k: SimplicialComplex) -> Subcomplex:
        return cls(k, [BitVector(k.n(d), (1 << k.n(d)) - 1) for d in range(k.max_dim + 1)])

    @classmethod
    def empty(cls, k: SimplicialComplex) -> Subcomplex:
        return cls(k, [BitVector(k.n(d)) for d in range(k.max_dim + 1)])

    @classmethod
    def from_simplices(cls, k: SimplicialComplex, simplices: Iterable[Sequence[int]]) -> Subcomplex:
        """Face closure of ``simplices`` inside ``k``."""
        bits = [0] * (k.max_dim + 1)
        stack = [make_simplex(s) for s in simplices]
        while stack:
            s = stack.pop()
            d = len(s) - 1
            i = k.index(s)
            if (bits[d] >> i) & 1:
                continue
            bits[d] |= 1 << i
            stack.extend(faces(s))
        return cls(k, [BitVector(k.n(d), b) for d, b in enumerate(bits)])

    def contains(self, d: int, i: int) -> bool:
        return bool(self.members[d][i])

    def n(self, d: int) -> int:
        return self.members[d].weight() if d <= self.parent.max_dim else 0

    def simplices(self, d: int) -> list[Simplex]:
        level = self.parent.simplices(d)
        return [level[i] for i in self.members[d].indices()]

    def carries(self, z: Chain) -> bool:
        """True iff the support of ``z`` lies inside this subcomplex."""
        return not (z.support.bits & ~self.members[z.dim].bits)

    def is_closed(self) -> bool:
        for d in range(1, self.parent.max_dim + 1):
            for s in self.simplices(d):
                for f in faces(s):
                    if not self.contains(d - 1, self.parent.index(f)):
                        return False
        return True

    def issubset(self, other: Subcomplex) -> bool:
        return all(not (a.bits & ~b.bits) for a, b in zip(self.members, other.members))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subcomplex):
            return NotImplemented
        return self.parent == other.parent and self.members == other.members

    def __repr__(self) -> str:
        counts = ", ".join(str(m.weight()) for m in self.members)
        return f"Subcomplex(n=[{counts}])"


def boundary_matrix(k: SimplicialComplex, d: int) -> BitMatrix:
    """The n_{d-1} x n_d matrix of the boundary map on d-chains."""
    if not 1 <= d <= k.max_dim:
        raise ValueError(f"boundary dimension {d} outside 1..{k.max_dim}")
    return _boundary(k, d)


def boundary_matrix_above(k: SimplicialComplex, d: int) -> BitMatrix:
    """Boundary of (d+1)-chains; an n_d x 0 matrix when d is the top dimension."""
    if not 0 <= d <= k.max_dim:
        raise ValueError(f"dimension {d} outside 0..{k.max_dim}")
    if d == k.max_dim:
        return BitMatrix.zeros(k.n(d), 0)
    return _boundary(k, d + 1)


def _boundary(k: SimplicialComplex, d: int) -> BitMatrix:
    cached = k._boundary_cache.get(d)
    if cached is not None:
        return cached
    rows = [0] * k.n(d - 1)
    lower = k._index[d - 1]
    for j, s in enumerate(k.simplices(d)):
        for f in faces(s):
            rows[lower[f]] |= 1 << j
    m = BitMatrix(k.n(d - 1), k.n(d), tuple(rows))
    k._boundary_cache[d] = m
    return m


def boundary(z: Chain) -> Chain:
    if z.dim == 0:
        raise ValueError("0-chains have no boundary")
    m = _boundary(z.complex, z.dim)
    return Chain(z.complex, z.dim - 1, m.matvec(z.support))


def is_cycle(z: Chain) -> bool:
    """Zero boundary; every 0-chain counts as a cycle."""
    if z.dim == 0:
        return True
    return not boundary(z)


def restrict_rows(m: BitMatrix, k: SimplicialComplex, k0: Subcomplex, d: int) -> BitMatrix:
    """Keep the rows of ``m`` whose d-simplex lies outside ``k0``."""
    if m.n_rows != k.n(d):
        raise ValueError(f"matrix has {m.n_rows} rows, expected n_{d} = {k.n(d)}")
    if k0.parent is not k and k0.parent != k:
        raise ValueError("subcomplex belongs to a different complex")
    inside = k0.members[d].bits
    return m.select_rows(i for i in range(m.n_rows) if not (inside >> i) & 1)


def restrict_vector(v: BitVector, k0: Subcomplex, d: int) -> BitVector:
    """Entries of ``v`` at d-simplices outside ``k0``, in index order."""
    inside = k0.members[d].bits
    bits = 0
    pos = 0
    for i in range(v.length):
        if (inside >> i) & 1:
            continue
        if (v.bits >> i) & 1:
            bits |= 1 << pos
        pos += 1
    return BitVector(pos, bits)


def skeleton_edges(k: SimplicialComplex) -> list[tuple[int, int]]:
    """Edges as pairs of dense vertex indices, in edge-index order."""
    vi = k.vertex_index
    return [(vi[a], vi[b]) for a, b in k.simplices(1)]
