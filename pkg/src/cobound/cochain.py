"""Cochains, the boundary and coboundary operators, and their matrices.

Chains and cochains share one representation: a subset of X(i), stored as a
:class:`BitVector` over the canonical face order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal

from .complex import Complex, Face, canonical_face, facets_of
from .errors import DimensionMismatch
from .f2 import BitVector, F2Matrix, parity


@dataclass(frozen=True)
class Cochain:
    dim: int
    support: BitVector

    @classmethod
    def zero(cls, X: Complex, i: int) -> Cochain:
        _check_dim(X, i)
        return cls(i, BitVector.zeros(X.count(i)))

    @classmethod
    def ones(cls, X: Complex, i: int) -> Cochain:
        _check_dim(X, i)
        return cls(i, BitVector.ones(X.count(i)))

    @classmethod
    def from_faces(cls, X: Complex, i: int, faces: Iterable[Iterable[int]]) -> Cochain:
        """Indicator of a set of i-faces; listing a face twice cancels it."""
        _check_dim(X, i)
        n = X.count(i)
        bits = 0
        for raw in faces:
            f = canonical_face(raw)
            if len(f) != i + 1 or f not in X:
                raise DimensionMismatch(f"{list(f)} is not a {i}-face of the complex")
            bits ^= 1 << (n - 1 - X.index(f))
        return cls(i, BitVector(n, bits))

    @classmethod
    def from_bits(cls, X: Complex, i: int, bits: int) -> Cochain:
        _check_dim(X, i)
        return cls(i, BitVector(X.count(i), bits))

    def faces(self, X: Complex) -> list[Face]:
        _check_fits(X, self)
        fs = X.faces(self.dim)
        return [fs[k] for k in self.support.indices()]

    @property
    def weight(self) -> int:
        return self.support.weight

    @property
    def bits(self) -> int:
        return self.support.bits

    def __add__(self, other: Cochain) -> Cochain:
        if self.dim != other.dim:
            raise DimensionMismatch("cochains of different dimension")
        return Cochain(self.dim, self.support ^ other.support)

    __xor__ = __add__
    __sub__ = __add__

    def __getitem__(self, k: int) -> int:
        return self.support[k]


def _check_dim(X: Complex, i: int) -> None:
    if i < -1 or i > X.dim:
        raise DimensionMismatch(f"dimension {i} outside -1..{X.dim}")


def _check_fits(X: Complex, c: Cochain) -> None:
    _check_dim(X, c.dim)
    if c.support.length != X.count(c.dim):
        raise DimensionMismatch(
            f"{c.dim}-cochain of length {c.support.length} does not fit |X({c.dim})| = {X.count(c.dim)}")


def coboundary_columns(X: Complex, i: int) -> tuple[int, ...]:
    """For each i-face F, the packed set of (i+1)-faces containing F (δ of its indicator)."""
    def build():
        m = X.count(i + 1)
        cols = [0] * X.count(i)
        for r, G in enumerate(X.faces(i + 1)):
            bit = 1 << (m - 1 - r)
            for F in facets_of(G):
                cols[X.index(F)] |= bit
        return tuple(cols)
    return X.memo(("cob_cols", i), build)


def boundary_columns(X: Complex, i: int) -> tuple[int, ...]:
    """For each i-face G, the packed set of its facets (∂ of its indicator)."""
    def build():
        m = X.count(i - 1)
        return tuple(
            sum(1 << (m - 1 - X.index(F)) for F in facets_of(G)) for G in X.faces(i))
    return X.memo(("bd_cols", i), build)


def apply_columns(cols: tuple[int, ...], x: int) -> int:
    n = len(cols)
    out = 0
    while x:
        low = x & -x
        out ^= cols[n - low.bit_length()]
        x ^= low
    return out


def coboundary(X: Complex, f: Cochain) -> Cochain:
    """δ_i f, with (δf)(G) the F2 sum of f over the facets of G."""
    _check_fits(X, f)
    i = f.dim
    if i >= X.dim:
        raise DimensionMismatch(f"δ_{i} needs (i+1)-faces; complex has dimension {X.dim}")
    return Cochain(i + 1, BitVector(X.count(i + 1), apply_columns(coboundary_columns(X, i), f.bits)))


def boundary(X: Complex, c: Cochain) -> Cochain:
    """∂_i c: each face contributes the sum of its facets."""
    _check_fits(X, c)
    i = c.dim
    if i < 0:
        raise DimensionMismatch("∂ is defined from dimension 0 upward")
    return Cochain(i - 1, BitVector(X.count(i - 1), apply_columns(boundary_columns(X, i), c.bits)))


def inner_product(a: Cochain, b: Cochain) -> int:
    if a.dim != b.dim or a.support.length != b.support.length:
        raise DimensionMismatch("inner product of cochains on different spaces")
    return parity(a.bits & b.bits)


def norm(X: Complex, f: Cochain) -> Fraction:
    """Fraction of i-faces in the support."""
    _check_fits(X, f)
    n = X.count(f.dim)
    return Fraction(f.weight, n) if n else Fraction(0)


def _transpose_cols(cols: tuple[int, ...], nrows: int) -> tuple[int, ...]:
    n = len(cols)
    rows = [0] * nrows
    for c, col in enumerate(cols):
        bit = 1 << (n - 1 - c)
        x = col
        while x:
            low = x & -x
            rows[nrows - low.bit_length()] |= bit
            x ^= low
    return tuple(rows)


def operator_matrix(X: Complex, i: int,
                    which: Literal["boundary", "coboundary"] = "coboundary") -> F2Matrix:
    """Matrix of δ_i (|X(i+1)| x |X(i)|) or ∂_i (|X(i-1)| x |X(i)|) in canonical face order."""
    if which == "coboundary":
        if i < -1 or i >= X.dim:
            raise DimensionMismatch(f"δ_{i} undefined for a {X.dim}-complex")
        return F2Matrix(_transpose_cols(coboundary_columns(X, i), X.count(i + 1)), X.count(i))
    if which == "boundary":
        if i < 0 or i > X.dim:
            raise DimensionMismatch(f"∂_{i} undefined for a {X.dim}-complex")
        return F2Matrix(_transpose_cols(boundary_columns(X, i), X.count(i - 1)), X.count(i))
    raise ValueError(f"unknown operator {which!r}")
