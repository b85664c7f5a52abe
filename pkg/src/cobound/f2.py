"""Linear algebra over F2 on int-packed bit-vectors.

Coordinate ``k`` of a length-``n`` vector lives at bit ``n - 1 - k`` of the
packing integer, so the vector ``"110"`` is the int ``0b110``. With this
packing, integer order *is* lexicographic order on coordinate sequences,
which is what the coset-leader tie-break relies on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch

BUDGET_ENV = "COBOUND_BUDGET"
DEFAULT_BUDGET = 1 << 22


def default_budget() -> int:
    """Enumeration budget, overridable through ``$COBOUND_BUDGET``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        return int(raw, 0)
    return DEFAULT_BUDGET


def check_budget(required: int, budget: int | None, what: str) -> None:
    if budget is None:
        budget = default_budget()
    if required > budget:
        raise BudgetExceeded(required, budget, what)


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits outside the vector length")

    @classmethod
    def from_string(cls, s: str) -> BitVector:
        s = s.strip()
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> BitVector:
        bits = 0
        for k in indices:
            if not 0 <= k < length:
                raise IndexError(k)
            bits ^= 1 << (length - 1 - k)
        return cls(length, bits)

    @classmethod
    def zeros(cls, length: int) -> BitVector:
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> BitVector:
        return cls(length, (1 << length) - 1)

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.length:
            raise IndexError(k)
        return (self.bits >> (self.length - 1 - k)) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: BitVector) -> BitVector:
        _same_length(self, other)
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: BitVector) -> BitVector:
        _same_length(self, other)
        return BitVector(self.length, self.bits & other.bits)

    def __bool__(self) -> bool:
        return self.bits != 0

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> list[int]:
        n = self.length
        return [k for k in range(n) if (self.bits >> (n - 1 - k)) & 1]

    def __str__(self) -> str:
        return format(self.bits, f"0{self.length}b") if self.length else ""


def _same_length(a: BitVector, b: BitVector) -> None:
    if a.length != b.length:
        raise DimensionMismatch(f"lengths {a.length} and {b.length} differ")


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class F2Matrix:
    """Dense F2 matrix stored as int-packed rows."""

    row_bits: tuple[int, ...]
    col_count: int

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], col_count: int | None = None) -> F2Matrix:
        if col_count is None:
            if not rows:
                raise ValueError("col_count is required for an empty matrix")
            col_count = rows[0].length
        for r in rows:
            if r.length != col_count:
                raise DimensionMismatch("rows have unequal lengths")
        return cls(tuple(r.bits for r in rows), col_count)

    @classmethod
    def from_strings(cls, rows: Sequence[str], col_count: int | None = None) -> F2Matrix:
        return cls.from_rows([BitVector.from_string(r) for r in rows], col_count)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(tuple(1 << (n - 1 - k) for k in range(n)), n)

    @property
    def row_count(self) -> int:
        return len(self.row_bits)

    @property
    def rows(self) -> list[BitVector]:
        return [BitVector(self.col_count, r) for r in self.row_bits]

    def matvec(self, v: BitVector) -> BitVector:
        if v.length != self.col_count:
            raise DimensionMismatch(f"vector length {v.length} != {self.col_count} columns")
        m = self.row_count
        out = 0
        for r, row in enumerate(self.row_bits):
            if parity(row & v.bits):
                out |= 1 << (m - 1 - r)
        return BitVector(m, out)

    def transpose(self) -> F2Matrix:
        m, n = self.row_count, self.col_count
        cols = []
        for c in range(n):
            mask = 1 << (n - 1 - c)
            col = 0
            for r, row in enumerate(self.row_bits):
                if row & mask:
                    col |= 1 << (m - 1 - r)
            cols.append(col)
        return F2Matrix(tuple(cols), m)

    def to_array(self) -> np.ndarray:
        return np.array([[int(c) for c in format(r, f"0{self.col_count}b")] if self.col_count else []
                         for r in self.row_bits], dtype=np.uint8).reshape(self.row_count, self.col_count)


@dataclass(frozen=True)
class Subspace:
    """Row-reduced basis of a subspace of F2^ambient_dim.

    ``rows[j]`` has its leading coordinate at ``pivots[j]``, pivots increase,
    and every pivot column is zero outside its own row.
    """

    ambient_dim: int
    rows: tuple[int, ...]
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.rows)

    @property
    def basis(self) -> list[BitVector]:
        return [BitVector(self.ambient_dim, r) for r in self.rows]

    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]

    def reduce(self, x: int) -> int:
        """Canonical coset representative of ``x``: zero on every pivot column."""
        n = self.ambient_dim
        for row, p in zip(self.rows, self.pivots):
            if (x >> (n - 1 - p)) & 1:
                x ^= row
        return x

    def contains(self, x: int) -> bool:
        return self.reduce(x) == 0

    def elements(self) -> Iterator[int]:
        """All 2^dim members, Gray-code order, starting at zero."""
        x = 0
        yield x
        rows = self.rows
        for t in range(1, 1 << len(rows)):
            x ^= rows[(t & -t).bit_length() - 1]
            yield x

    def __contains__(self, v: BitVector) -> bool:
        _check_ambient(self, v)
        return self.contains(v.bits)


def _check_ambient(S: Subspace, v: BitVector) -> None:
    if v.length != S.ambient_dim:
        raise DimensionMismatch(f"vector length {v.length} != ambient dimension {S.ambient_dim}")


def rref_rows(rows: Iterable[int], ncols: int) -> Subspace:
    work = [r for r in rows if r]
    out_rows: list[int] = []
    pivots: list[int] = []
    for c in range(ncols):
        if not work:
            break
        mask = 1 << (ncols - 1 - c)
        hit = next((k for k, r in enumerate(work) if r & mask), None)
        if hit is None:
            continue
        prow = work.pop(hit)
        work = [r ^ prow if r & mask else r for r in work]
        work = [r for r in work if r]
        out_rows = [r ^ prow if r & mask else r for r in out_rows]
        out_rows.append(prow)
        pivots.append(c)
    return Subspace(ncols, tuple(out_rows), tuple(pivots))


def rref(M: F2Matrix) -> Subspace:
    """Row space of ``M`` in reduced row-echelon form."""
    return rref_rows(M.row_bits, M.col_count)


def span(vectors: Sequence[BitVector], ambient_dim: int) -> Subspace:
    for v in vectors:
        if v.length != ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
    return rref_rows((v.bits for v in vectors), ambient_dim)


def kernel_rows(row_bits: Sequence[int], ncols: int) -> Subspace:
    R = rref_rows(row_bits, ncols)
    piv = R.pivots
    basis = []
    for f in R.free_columns():
        x = 1 << (ncols - 1 - f)
        for row, p in zip(R.rows, piv):
            if (row >> (ncols - 1 - f)) & 1:
                x |= 1 << (ncols - 1 - p)
        basis.append(x)
    return rref_rows(basis, ncols)


def kernel_basis(M: F2Matrix) -> Subspace:
    """All ``v`` with ``M v = 0``."""
    return kernel_rows(M.row_bits, M.col_count)


def in_span(S: Subspace, v: BitVector) -> tuple[bool, tuple[int, ...] | None]:
    """Membership test; on success also returns which basis rows sum to ``v``."""
    _check_ambient(S, v)
    n = S.ambient_dim
    x = v.bits
    used = []
    for j, (row, p) in enumerate(zip(S.rows, S.pivots)):
        if (x >> (n - 1 - p)) & 1:
            x ^= row
            used.append(j)
    if x:
        return False, None
    return True, tuple(used)


# -- vectorized helpers -------------------------------------------------------

WORD = 64
_MASK64 = (1 << WORD) - 1


def n_words(nbits: int) -> int:
    return max(1, -(-nbits // WORD))


def to_words(values: Sequence[int], W: int) -> np.ndarray:
    out = np.zeros((len(values), W), dtype=np.uint64)
    for k, x in enumerate(values):
        for w in range(W):
            out[k, w] = (x >> (WORD * w)) & _MASK64
    return out


def from_words(row: np.ndarray) -> int:
    x = 0
    for w in range(row.shape[-1] - 1, -1, -1):
        x = (x << WORD) | int(row[w])
    return x


def span_table(rows: Sequence[int], W: int) -> np.ndarray:
    """Every combination of ``rows``; entry ``t`` uses row ``j`` iff bit ``j`` of ``t``."""
    table = np.zeros((1, W), dtype=np.uint64)
    for r in to_words(rows, W):
        table = np.concatenate([table, table ^ r], axis=0)
    return table


def popcount_rows(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).sum(axis=-1, dtype=np.int64)


def combine_indices(idx: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """XOR of ``gens[j]`` over the set bits ``k-1-j`` of each index (MSB picks ``gens[0]``)."""
    k = gens.shape[0]
    out = np.zeros((idx.shape[0], gens.shape[1]), dtype=np.uint64)
    for j in range(k):
        sel = ((idx >> np.uint64(k - 1 - j)) & np.uint64(1)).astype(bool)
        out[sel] ^= gens[j]
    return out


def batch_min_weight(reps: np.ndarray, table: np.ndarray, cells: int = 1 << 21) -> np.ndarray:
    """Minimum weight over ``rep + S`` for each row of ``reps`` (``table`` spans S)."""
    m = reps.shape[0]
    out = np.empty(m, dtype=np.int64)
    step = max(1, cells // max(1, table.shape[0]))
    for s in range(0, m, step):
        block = reps[s:s + step, None, :] ^ table[None, :, :]
        out[s:s + step] = popcount_rows(block).min(axis=1)
    return out


def coset_leader_int(S: Subspace, x: int, table: np.ndarray | None = None) -> tuple[int, int]:
    """(minimum weight, lexicographically least minimizer) over ``x + S``."""
    W = n_words(S.ambient_dim)
    if table is None:
        table = span_table(S.rows, W)
    cand = to_words([x], W)[0] ^ table
    weights = popcount_rows(cand)
    best = int(weights.min())
    leader = min(from_words(cand[t]) for t in np.flatnonzero(weights == best))
    return best, leader


def coset_min_weight(S: Subspace, v: BitVector, budget: int | None = None) -> tuple[int, BitVector]:
    """Exhaustive coset-leader search over ``v + S``.

    Returns the minimum Hamming weight and the lexicographically least
    member achieving it.
    """
    _check_ambient(S, v)
    check_budget(1 << S.dim, budget, "coset enumeration")
    w, leader = coset_leader_int(S, v.bits)
    return w, BitVector(S.ambient_dim, leader)


def coset_representative_int(S: Subspace, index: int, free: Sequence[int] | None = None) -> int:
    if free is None:
        free = S.free_columns()
    k = len(free)
    n = S.ambient_dim
    x = 0
    for j, c in enumerate(free):
        if (index >> (k - 1 - j)) & 1:
            x |= 1 << (n - 1 - c)
    return x


def coset_count(S: Subspace) -> int:
    return 1 << S.codim


def coset_representatives(S: Subspace, cap: int | None = None, start: int = 0,
                          stop: int | None = None) -> Iterator[BitVector]:
    """One representative per coset of ``S``, in increasing lexicographic order.

    Representative ``t`` is supported on the non-pivot columns and spells out
    the binary digits of ``t``. ``start``/``stop`` select an index sub-range so
    the quotient can be split between workers.
    """
    total = coset_count(S)
    check_budget(total, cap, "coset representatives")
    if stop is None or stop > total:
        stop = total
    free = S.free_columns()
    for t in range(max(0, start), stop):
        yield BitVector(S.ambient_dim, coset_representative_int(S, t, free))
