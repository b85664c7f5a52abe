"""Concrete testers built on the cocycle tester.

Each tester here reduces to the i-cocycle tester on a complex:

* constant functions on a graph G: the 0-cocycle tester on G;
* sum functions on K_m, ±1 tensor powers, Seidel equivalence: the
  1-cocycle (triangle) tester on K_m^(2).

Graphs are 1-dimensional :class:`Complex` objects; build them with
:func:`graph_from_edges` so that isolated vertices are kept.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .cochain import Cochain, _check_fits, coboundary
from .cohomology import cycle_space, distance_to_coboundaries, is_coboundary
from .complex import Complex, complete_complex, from_maximal_faces
from .errors import (BadDiagonal, BadEntry, BudgetExceeded, NotAGraph, NotComplete,
                     NotSymmetric, VertexOutOfRange, VertexSetMismatch)
from .expansion import epsilon_graph_cheeger
from .f2 import BitVector, check_budget
from .tester import TesterReport, exact_rejection_probability, run_cocycle_tester

Graph = Complex


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Graph on vertices 0..n-1 (isolated vertices included)."""
    edges = [tuple(e) for e in edges]
    for e in edges:
        if len(e) != 2:
            raise NotAGraph(f"{list(e)} is not an edge")
        if not all(0 <= v < n for v in e):
            raise VertexOutOfRange(f"edge {list(e)} leaves 0..{n - 1}")
    return from_maximal_faces([(v,) for v in range(n)] + edges, vertex_count=n)


def as_graph(G: Complex) -> Graph:
    if G.dim > 1:
        raise NotAGraph(f"complex has dimension {G.dim}")
    return G


def edge_cochain(G: Graph) -> Cochain:
    """Indicator of E(G) as a 1-cochain on K_n."""
    K = complete_complex(G.vertex_count, 1)
    return Cochain.from_faces(K, 1, G.faces(1))


@lru_cache(maxsize=32)
def _triangle_complex(m: int) -> Complex:
    return complete_complex(m, 2)


def _lift_to_k2(X: Complex, f: Cochain) -> tuple[Complex, Cochain]:
    """Carry a 1-cochain on K_m (or K_m^(2)) over to K_m^(2); face orders coincide."""
    m = X.vertex_count
    if not (X.is_complete(1) or X.is_complete(2)) or f.dim != 1:
        raise NotComplete("expected a 1-cochain on the complete graph K_m")
    _check_fits(X, f)
    return _triangle_complex(m), f


# -- constant functions -------------------------------------------------------------

def constant_function_test(G: Graph, f: Cochain, trials: int | None = None, seed: int = 0,
                           budget: int | None = None) -> TesterReport:
    """Edge test for constancy: sample an edge, reject if f differs at its ends.

    Exact mode (``trials=None``) reports |E(S, S̄)| / |E| and
    min(|S|, |S̄|) / |V| for S = support(f), against ε_0 = the normalized
    Cheeger constant.
    """
    as_graph(G)
    if f.dim != 0:
        raise NotAGraph("constant-function testing takes a vertex function")
    _check_fits(G, f)
    try:
        eps = epsilon_graph_cheeger(G, budget)
    except BudgetExceeded:
        eps = None
    if trials is not None:
        return run_cocycle_tester(G, f, trials, seed, budget, epsilon_bound=eps)
    rate = exact_rejection_probability(G, f)
    dist = distance_to_coboundaries(G, f).normalized
    return TesterReport(
        i=0, queries=2, trials=0, seed=None, rejections=0, sampled_rate=None, exact_rate=rate,
        distance_normalized=dist, epsilon_bound=eps,
        bound_satisfied=None if eps is None else rate >= eps * dist,
        member=is_coboundary(G, f))


# -- sum functions ----------------------------------------------------------------

def sum_function_encode(g: Sequence[int], G: Graph) -> Cochain:
    """f(uv) = g(u) + g(v) mod 2 on every edge of G, i.e. δ_0 g."""
    as_graph(G)
    verts = G.vertices()
    if len(g) != G.vertex_count and len(g) != len(verts):
        raise VertexSetMismatch("g must assign a bit to every vertex")
    if len(g) == G.vertex_count:
        g = [g[v] for v in verts]
    gc = Cochain(0, BitVector.from_indices(len(verts), [k for k, b in enumerate(g) if b & 1]))
    return coboundary(G, gc)


def sum_function_test(X: Complex, f: Cochain, trials: int | None = None, seed: int = 0,
                      budget: int | None = None) -> TesterReport:
    """Triangle test on K_m: accept iff f(rj) + f(jk) + f(kr) = 0 on a random triple.

    The bound checked is rate ≥ 1 · distance, the guarantee for complete
    complexes (ε_1(K_m^(2)) ≥ m/(m-2) ≥ 1).
    """
    K, f = _lift_to_k2(X, f)
    if trials is not None:
        return run_cocycle_tester(K, f, trials, seed, budget, epsilon_bound=Fraction(1))
    rate = exact_rejection_probability(K, f)
    dist = distance_to_coboundaries(K, f, budget).normalized
    return TesterReport(
        i=1, queries=3, trials=0, seed=None, rejections=0, sampled_rate=None, exact_rate=rate,
        distance_normalized=dist, epsilon_bound=Fraction(1), bound_satisfied=rate >= dist,
        member=is_coboundary(K, f))


# -- girth vs. cycle-space weight ------------------------------------------------------

@dataclass(frozen=True)
class GirthReport:
    girth: float  # math.inf when acyclic
    min_cycle_weight: float | None  # None if the exhaustive scan was skipped
    cycle_space_dim: int


def girth(G: Graph) -> float:
    """Shortest cycle length by BFS from every vertex; ``math.inf`` for forests."""
    as_graph(G)
    adj: dict[int, list[int]] = {v: [] for v in G.vertices()}
    for a, b in G.faces(1):
        adj[a].append(b)
        adj[b].append(a)
    best = math.inf
    for root in adj:
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def min_cycle_weight(G: Graph, budget: int | None = None) -> float:
    """Minimum weight of a non-zero element of Z_1(G), exhaustively."""
    Z = cycle_space(as_graph(G), 1) if G.dim >= 1 else None
    if Z is None or Z.dim == 0:
        return math.inf
    check_budget(1 << Z.dim, budget, "cycle space")
    return min(x.bit_count() for x in Z.elements() if x)


def girth_and_min_cycle(G: Graph, budget: int | None = None) -> GirthReport:
    """Girth and minimum cycle-space weight; they agree whenever both are finite.

    BudgetExceeded carries ``partial['girth']`` when only the scan is refused.
    """
    g = girth(G)
    zdim = cycle_space(G, 1).dim if G.dim >= 1 else 0
    try:
        w = min_cycle_weight(G, budget)
    except BudgetExceeded as exc:
        exc.partial["girth"] = g
        raise
    return GirthReport(g, w, zdim)


# -- tensor powers ----------------------------------------------------------------

@dataclass(frozen=True)
class SignMatrix:
    """Symmetric ±1 matrix with +1 on the diagonal."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        m = len(rows)
        for r in rows:
            if len(r) != m:
                raise NotSymmetric("matrix is not square")
            for x in r:
                if x not in (1, -1):
                    raise BadEntry(f"entry {x} is not ±1")
        for a in range(m):
            if rows[a][a] != 1:
                raise BadDiagonal(f"diagonal entry {a} is {rows[a][a]}")
            for b in range(a):
                if rows[a][b] != rows[b][a]:
                    raise NotSymmetric(f"entries ({a},{b}) and ({b},{a}) differ")

    @property
    def m(self) -> int:
        return len(self.entries)

    @classmethod
    def outer(cls, alpha: Sequence[int]) -> SignMatrix:
        return cls(tuple(tuple(a * b for b in alpha) for a in alpha))

    def to_cochain(self) -> tuple[Complex, Cochain]:
        """Edge cochain on K_m^(2): f(ij) = 1 exactly where M_ij = -1."""
        K = _triangle_complex(self.m)
        minus = [e for e in K.faces(1) if self.entries[e[0]][e[1]] == -1]
        return K, Cochain.from_faces(K, 1, minus)


def tensor_power_test(M: SignMatrix, trials: int | None = None, seed: int = 0,
                      budget: int | None = None) -> TesterReport:
    """Triple-product test: accept iff M_ij M_jk M_ki = 1 on a random triple.

    Report ``member`` is True iff M = ααᵀ for some ±1 vector α.
    """
    K, f = M.to_cochain()
    return sum_function_test(K, f, trials, seed, budget)


# -- Seidel switching -------------------------------------------------------------------

def seidel_switch(G: Graph, v: int) -> Graph:
    """Complement the neighbourhood of v: α ↦ α + δ_0(χ_v) on the edges of K_n."""
    as_graph(G)
    n = G.vertex_count
    if not 0 <= v < n:
        raise VertexOutOfRange(f"vertex {v} outside 0..{n - 1}")
    edges = set(G.faces(1))
    for u in range(n):
        if u != v:
            edges ^= {tuple(sorted((u, v)))}
    return graph_from_edges(n, sorted(edges))


@dataclass(frozen=True)
class SeidelReport:
    n: int
    equivalent: bool | None
    difference: Cochain
    distance: int | None
    distance_normalized: Fraction | None
    exact_rate: Fraction
    tester: TesterReport | None = None


def seidel_equivalence(G1: Graph, G2: Graph, trials: int | None = None, seed: int = 0,
                       budget: int | None = None) -> SeidelReport:
    """Decide (exact) or test (sampled) whether G2 is a switching of G1 on labelled [n].

    Equivalence holds iff α1 - α2 ∈ B^1(K_n). The sampled tester picks a random
    triangle and compares δ_1 α1 with δ_1 α2 there, which is the triangle
    test applied to α1 - α2. Distances are to B^1, not graph edit distances.
    """
    as_graph(G1), as_graph(G2)
    if G1.vertex_count != G2.vertex_count:
        raise VertexSetMismatch(f"{G1.vertex_count} vs {G2.vertex_count} vertices")
    n = G1.vertex_count
    K = _triangle_complex(n)
    diff = Cochain.from_faces(K, 1, set(G1.faces(1)) ^ set(G2.faces(1)))
    rate = exact_rejection_probability(K, diff)
    if trials is not None:
        rep = run_cocycle_tester(K, diff, trials, seed, budget, epsilon_bound=Fraction(1))
        return SeidelReport(n, None, diff, None, rep.distance_normalized, rate, rep)
    equivalent = is_coboundary(K, diff)
    if equivalent:
        return SeidelReport(n, True, diff, 0, Fraction(0), rate)
    d = distance_to_coboundaries(K, diff, budget)
    return SeidelReport(n, False, diff, d.dist, d.normalized, rate)
