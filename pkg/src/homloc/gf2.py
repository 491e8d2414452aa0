"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row integer is the entry in column ``j``.  XOR of two row
integers is row addition mod 2, so elimination runs on machine-word chunks
without any per-entry loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2); ``bits`` holds entry ``i`` at bit ``i``."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside vector length")

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise IndexError(f"index {i} out of range for length {length}")
            bits ^= 1 << i
        return cls(length, bits)

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitVector:
        return cls.from_indices(len(values), (i for i, v in enumerate(values) if v & 1))

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"index {i} out of range for length {self.length}")
        return (self.bits >> i) & 1

    def __add__(self, other: BitVector) -> BitVector:
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVector(self.length, self.bits ^ other.bits)

    __xor__ = __add__

    def __bool__(self) -> bool:
        return self.bits != 0

    def indices(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def weight(self) -> int:
        return self.bits.bit_count()

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def lex_key(self) -> tuple[int, ...]:
        """Key ordering vectors lexicographically by entry 0, 1, 2, ..."""
        return tuple(self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix stored as a tuple of row integers."""

    n_rows: int
    n_cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("negative shape")
        if not self.rows and self.n_rows:
            object.__setattr__(self, "rows", (0,) * self.n_rows)
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise ValueError("row has bits outside column range")

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> BitMatrix:
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]], n_cols: int | None = None) -> BitMatrix:
        if n_cols is None:
            n_cols = len(entries[0]) if entries else 0
        rows = []
        for row in entries:
            if len(row) != n_cols:
                raise ValueError("ragged dense matrix")
            rows.append(sum(1 << j for j, v in enumerate(row) if v & 1))
        return cls(len(rows), n_cols, tuple(rows))

    @classmethod
    def from_columns(cls, n_rows: int, columns: Sequence[BitVector]) -> BitMatrix:
        rows = [0] * n_rows
        for j, col in enumerate(columns):
            if col.length != n_rows:
                raise ValueError(f"column {j} has length {col.length}, expected {n_rows}")
            for i in col.indices():
                rows[i] |= 1 << j
        return cls(n_rows, len(columns), tuple(rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"entry ({i}, {j}) out of range for shape {self.shape}")
        return (self.rows[i] >> j) & 1

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.get(*ij)

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.n_cols:
            raise IndexError(f"column {j} out of range")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                bits |= 1 << i
        return BitVector(self.n_rows, bits)

    def columns(self) -> list[BitVector]:
        return [self.column(j) for j in range(self.n_cols)]

    def to_dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]

    def select_rows(self, keep: Iterable[int]) -> BitMatrix:
        rows = tuple(self.rows[i] for i in keep)
        return BitMatrix(len(rows), self.n_cols, rows)

    def append_column(self, v: BitVector) -> BitMatrix:
        """Return ``[self | v]``."""
        if v.length != self.n_rows:
            raise ValueError(f"column length {v.length} != {self.n_rows} rows")
        bit = 1 << self.n_cols
        rows = tuple(r | bit if (v.bits >> i) & 1 else r for i, r in enumerate(self.rows))
        return BitMatrix(self.n_rows, self.n_cols + 1, rows)

    def hstack(self, other: BitMatrix) -> BitMatrix:
        if other.n_rows != self.n_rows:
            raise ValueError("row count mismatch")
        shift = self.n_cols
        rows = tuple(a | (b << shift) for a, b in zip(self.rows, other.rows))
        return BitMatrix(self.n_rows, self.n_cols + other.n_cols, rows)

    def matvec(self, v: BitVector) -> BitVector:
        if v.length != self.n_cols:
            raise ValueError(f"vector length {v.length} != {self.n_cols} columns")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return BitVector(self.n_rows, bits)

    def matmul(self, other: BitMatrix) -> BitMatrix:
        if other.n_rows != self.n_cols:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                low = r & -r
                acc ^= other.rows[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return BitMatrix(self.n_rows, other.n_cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)


def _row_basis(rows: Iterable[int]) -> dict[int, int]:
    # pivots keyed by leading bit; each stored row has a distinct leading bit
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            r ^= p
    return pivots


def rank(m: BitMatrix) -> int:
    """GF(2) rank of ``m``.  Empty matrices have rank 0."""
    return len(_row_basis(m.rows))


def _rref(rows: Iterable[int], n_cols: int) -> dict[int, int]:
    """Reduced row echelon form restricted to the first ``n_cols`` bits.

    Returns ``{pivot_col: row}`` where the pivot column is the lowest set bit
    of the row among the first ``n_cols`` and appears in no other stored row.
    Bits at positions >= ``n_cols`` ride along (augmented part).  Raises
    ``_Inconsistent`` if a row reduces to zero on the coefficient part but is
    nonzero on the augmented part.
    """
    mask = (1 << n_cols) - 1
    pivots: dict[int, int] = {}
    for r in rows:
        for col, prow in pivots.items():
            if (r >> col) & 1:
                r ^= prow
        coeff = r & mask
        if not coeff:
            if r:
                raise _Inconsistent
            continue
        col = (coeff & -coeff).bit_length() - 1
        for c, prow in pivots.items():
            if (prow >> col) & 1:
                pivots[c] = prow ^ r
        pivots[col] = r
    return pivots


class _Inconsistent(Exception):
    pass


def solve(a: BitMatrix, b: BitVector) -> BitVector | None:
    """Solve ``a @ x = b`` over GF(2).

    Returns the canonical solution with every free variable set to 0, or
    ``None`` when the system is inconsistent.
    """
    if b.length != a.n_rows:
        raise ValueError(f"rhs length {b.length} != {a.n_rows} rows")
    aug = 1 << a.n_cols
    rows = (r | aug if (b.bits >> i) & 1 else r for i, r in enumerate(a.rows))
    try:
        pivots = _rref(rows, a.n_cols)
    except _Inconsistent:
        return None
    bits = 0
    for col, prow in pivots.items():
        if prow & aug:
            bits |= 1 << col
    return BitVector(a.n_cols, bits)


def in_column_span(a: BitMatrix, b: BitVector) -> bool:
    """True iff ``b`` is a GF(2) combination of the columns of ``a``."""
    if b.length != a.n_rows:
        raise ValueError(f"vector length {b.length} != {a.n_rows} rows")
    if not b.bits:
        return True
    return rank(a.append_column(b)) == rank(a)


def nullspace(a: BitMatrix) -> list[BitVector]:
    """Basis of ``{x : a @ x = 0}``, one vector per free column in ascending order."""
    pivots = _rref(a.rows, a.n_cols)
    basis = []
    for free in range(a.n_cols):
        if free in pivots:
            continue
        bits = 1 << free
        for col, prow in pivots.items():
            if (prow >> free) & 1:
                bits |= 1 << col
        basis.append(BitVector(a.n_cols, bits))
    return basis


def span_rank(vectors: Sequence[BitVector]) -> int:
    """Rank of a set of equal-length vectors."""
    return len(_row_basis(v.bits for v in vectors))
