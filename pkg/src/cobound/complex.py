"""Finite simplicial complexes with a canonical per-dimension face order."""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

import numpy as np

from .errors import DuplicateVertexInFace, EmptyInput, InvalidDimension

Face = tuple[int, ...]
T = TypeVar("T")

EMPTY_FACE: Face = ()


def face_dim(face: Face) -> int:
    return len(face) - 1


def canonical_face(vertices: Iterable[int]) -> Face:
    vs = list(vertices)
    for v in vs:
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or v < 0:
            raise ValueError(f"vertex ids must be non-negative integers, got {v!r}")
    face = tuple(sorted(int(v) for v in vs))
    if len(set(face)) != len(face):
        raise DuplicateVertexInFace(f"face {list(vs)} repeats a vertex")
    return face


def facets_of(face: Face) -> list[Face]:
    """The codimension-one subfaces, obtained by deleting one vertex each."""
    return [face[:k] + face[k + 1:] for k in range(len(face))]


class Complex:
    """Downward-closed family of faces, indexed per dimension.

    ``faces(i)`` is sorted lexicographically and ``index(face)`` is its
    inverse. ``X(-1)`` always holds the empty face. Instances are immutable;
    derived data (operator columns, subspaces) is memoized per instance.
    """

    __slots__ = ("vertex_count", "_faces", "_index", "_memo", "_lock")

    def __init__(self, faces: Iterable[Face], vertex_count: int | None = None):
        by_dim: dict[int, set[Face]] = {-1: {EMPTY_FACE}}
        for f in faces:
            by_dim.setdefault(len(f) - 1, set()).add(f)
        top = max(by_dim)
        self._faces: tuple[tuple[Face, ...], ...] = tuple(
            tuple(sorted(by_dim.get(i, ()))) for i in range(-1, top + 1))
        self._index: tuple[dict[Face, int], ...] = tuple(
            {f: k for k, f in enumerate(fs)} for fs in self._faces)
        if vertex_count is None:
            vertex_count = 1 + max((f[0] for f in self._faces[1]), default=-1) if top >= 0 else 0
        self.vertex_count = vertex_count
        self._memo: dict[Hashable, object] = {}
        self._lock = threading.RLock()

    # -- indexing ---------------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self._faces) - 2

    def faces(self, i: int) -> tuple[Face, ...]:
        if i < -1 or i > self.dim:
            return ()
        return self._faces[i + 1]

    def count(self, i: int) -> int:
        return len(self.faces(i))

    def index(self, face: Face) -> int:
        return self._index[len(face)][face]

    def __contains__(self, face) -> bool:
        face = tuple(face)
        return len(face) < len(self._index) and face in self._index[len(face)]

    def f_vector(self) -> list[int]:
        """Face counts for dimensions 0..dim."""
        return [self.count(i) for i in range(self.dim + 1)]

    def all_faces(self) -> Iterable[Face]:
        for fs in self._faces:
            yield from fs

    def vertices(self) -> list[int]:
        return [f[0] for f in self.faces(0)]

    def maximal_faces(self) -> list[Face]:
        """Faces contained in no larger face, sorted lexicographically."""
        covered = set()
        for fs in self._faces[2:]:
            for f in fs:
                covered.update(facets_of(f))
        return sorted((f for fs in self._faces[1:] for f in fs if f not in covered))

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._faces == other._faces \
            and self.vertex_count == other.vertex_count

    def __hash__(self) -> int:
        return hash((self._faces, self.vertex_count))

    def __repr__(self) -> str:
        return f"Complex(dim={self.dim}, f_vector={self.f_vector()})"

    # -- memo -------------------------------------------------------------------
    def memo(self, key: Hashable, compute: Callable[[], T]) -> T:
        """Compute-once cache; concurrent callers block until the value exists."""
        try:
            return self._memo[key]  # type: ignore[return-value]
        except KeyError:
            pass
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]  # type: ignore[return-value]

    # -- structure tests ----------------------------------------------------------
    def is_complete(self, d: int | None = None) -> bool:
        """True if X equals the complete complex on vertices 0..n-1 up to dimension d."""
        d = self.dim if d is None else d
        n = self.vertex_count
        if self.dim != d or n < d + 1:
            return False
        return all(self.count(i) == comb(n, i + 1) for i in range(d + 1)) \
            and self.faces(0) == tuple((v,) for v in range(n))


def from_maximal_faces(face_list: Sequence[Sequence[int]], vertex_count: int | None = None) -> Complex:
    """Downward closure of the given faces."""
    if not face_list:
        raise EmptyInput("no faces given")
    closure: set[Face] = set()
    for raw in face_list:
        if len(raw) == 0:
            raise EmptyInput("faces must be non-empty")
        top = canonical_face(raw)
        if top in closure:
            continue
        for r in range(1, len(top) + 1):
            closure.update(combinations(top, r))
    return Complex(closure, vertex_count)


def complete_complex(n: int, d: int) -> Complex:
    """All subsets of {0..n-1} with at most d+1 elements."""
    if d < 0 or d >= n:
        raise InvalidDimension(f"need 0 <= d < n, got n={n}, d={d}")
    faces = (f for r in range(1, d + 2) for f in combinations(range(n), r))
    return Complex(faces, n)


def skeleton(X: Complex, k: int) -> Complex:
    if k < 0 or k > X.dim:
        raise InvalidDimension(f"skeleton dimension {k} outside 0..{X.dim}")
    return Complex((f for i in range(k + 1) for f in X.faces(i)), X.vertex_count)


def random_subcomplex(n: int, d: int, p, seed: int) -> Complex:
    """Full (d-1)-skeleton of K_n^(d) plus each d-face independently with probability p.

    ``p`` is converted to an exact fraction and each coin is an integer draw
    below its denominator, so the output depends only on (n, d, p, seed).
    """
    if d < 0 or d >= n:
        raise InvalidDimension(f"need 0 <= d < n, got n={n}, d={d}")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.Generator(np.random.PCG64(seed))
    top = list(combinations(range(n), d + 1))
    draws = rng.integers(0, p.denominator, size=len(top)) if top else []
    keep = [f for f, u in zip(top, draws) if u < p.numerator]
    lower = (f for r in range(1, d + 1) for f in combinations(range(n), r))
    return Complex([*lower, *keep], n)
