"""Exact coboundary-expansion constants by enumeration of cosets.

For ε_i the search runs over cosets of B^i rather than over cochains: δf is
constant on f + B^i (because δδ = 0), and the normalized distance of f to B^i
is the minimum weight of its coset. Each chunk of coset indices is scored in
numpy; chunks reduce under the total order (ratio, leader), so the answer and
its witness do not depend on chunking or thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .cochain import Cochain, _check_fits, coboundary, coboundary_columns
from .cohomology import coboundary_space, cocycle_space, distance_to_coboundaries
from .complex import Complex
from .errors import DimensionMismatch, EmptyCodomain, NotCompleteComplex
from .f2 import (BitVector, Subspace, batch_min_weight, check_budget, coset_leader_int,
                 coset_representative_int, combine_indices, n_words, popcount_rows,
                 span_table, to_words)

CHUNK = 1 << 15


def _threads(threads: int | None) -> int:
    if threads is None:
        return os.cpu_count() or 1
    return max(1, int(threads))


class CosetScan:
    """Scores every coset of a subspace S of C^i by (|δ rep|, min weight of rep + S).

    ``S`` must satisfy δ(S) = 0 when |δ rep| is to be read as a coset
    invariant; this holds for S = B^i and S = Z^i.
    """

    def __init__(self, X: Complex, i: int, S: Subspace, budget: int | None = None,
                 label: str = "S"):
        self.X, self.i, self.S = X, i, S
        self.n = X.count(i)
        self.m = X.count(i + 1)
        check_budget(1 << S.codim, budget, f"cosets of {label}")
        check_budget(1 << S.dim, budget, f"members per coset of {label}")
        self.total = 1 << S.codim
        self.free = S.free_columns()
        cols = coboundary_columns(X, i)
        self.Wn, self.Wm = n_words(self.n), n_words(self.m)
        self.gens = to_words([1 << (self.n - 1 - c) for c in self.free], self.Wn)
        self.cob_gens = to_words([cols[c] for c in self.free], self.Wm)
        self.table = span_table(S.rows, self.Wn)

    def representative(self, t: int) -> int:
        return coset_representative_int(self.S, t, self.free)

    def score(self, start: int, stop: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(indices, coboundary weights, coset minimum weights) for a range."""
        idx = np.arange(start, stop, dtype=np.uint64)
        reps = combine_indices(idx, self.gens)
        cob = popcount_rows(combine_indices(idx, self.cob_gens))
        dist = batch_min_weight(reps, self.table)
        return idx, cob, dist

    def ranges(self, chunk: int = CHUNK) -> Iterator[tuple[int, int]]:
        for s in range(0, self.total, chunk):
            yield s, min(s + chunk, self.total)

    def leader(self, t: int) -> tuple[int, int]:
        return coset_leader_int(self.S, self.representative(t), self.table)

    def map_ranges(self, fn, threads: int | None = None, chunk: int = CHUNK):
        ranges = list(self.ranges(chunk))
        workers = min(_threads(threads), len(ranges))
        if workers <= 1:
            return [fn(*r) for r in ranges]
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda r: fn(*r), ranges))


def _extreme_pairs(num: np.ndarray, den: np.ndarray, want_max: bool) -> tuple[Fraction, np.ndarray]:
    """Exact extreme of num/den over rows, and the mask of rows attaining it."""
    pairs = np.unique(np.stack([num, den], axis=1), axis=0)
    fracs = [Fraction(int(a), int(b)) for a, b in pairs]
    best = max(fracs) if want_max else min(fracs)
    hit = [tuple(p) for p, f in zip(pairs, fracs) if f == best]
    mask = np.zeros(num.shape[0], dtype=bool)
    for a, b in hit:
        mask |= (num == a) & (den == b)
    return best, mask


@dataclass(frozen=True)
class ExpansionResult:
    i: int
    epsilon: Fraction
    witness: Cochain
    witness_dist: int
    witness_coboundary_weight: int
    cosets_enumerated: int
    h_nonzero: bool


def _check_expansion_dim(X: Complex, i: int) -> None:
    if i < 0 or i > X.dim:
        raise DimensionMismatch(f"dimension {i} outside 0..{X.dim}")
    if X.count(i + 1) == 0:
        raise EmptyCodomain(f"X({i + 1}) is empty; ε_{i} is not an expansion statement")


def epsilon(X: Complex, i: int, budget: int | None = None,
            threads: int | None = None) -> ExpansionResult:
    """ε_i(X) = min over f ∉ B^i of ||δf|| / dist̄(f, B^i), exactly, with a witness."""
    _check_expansion_dim(X, i)
    B = coboundary_space(X, i)
    scan = CosetScan(X, i, B, budget, label=f"B^{i}")
    if scan.total == 1:
        raise ValueError(f"B^{i} is all of C^{i}; there is nothing to minimize over")

    def best_in(start: int, stop: int):
        idx, cob, dist = scan.score(max(start, 1), stop)
        if idx.size == 0:
            return None
        ratio, mask = _extreme_pairs(cob, dist, want_max=False)
        cands = []
        for t in idx[mask]:
            w, lead = scan.leader(int(t))
            cands.append((lead, int(t), w))
        lead, t, w = min(cands)
        return ratio, lead, int(cob[t - idx[0]]), w

    results = [r for r in scan.map_ranges(best_in, threads) if r is not None]
    ratio, lead, cob_w, dist = min(results, key=lambda r: (r[0], r[1]))
    n, m = scan.n, scan.m
    eps = Fraction(cob_w * n, dist * m)
    return ExpansionResult(
        i=i, epsilon=eps, witness=Cochain(i, BitVector(n, lead)), witness_dist=dist,
        witness_coboundary_weight=cob_w, cosets_enumerated=scan.total - 1,
        h_nonzero=(eps == 0))


def epsilon_graph_cheeger(X: Complex, cap: int | None = None) -> Fraction:
    """Normalized edge expansion (|V|/|E|) min_A |E(A, Ā)| / min(|A|, |Ā|), by subset enumeration."""
    if X.dim < 1:
        raise DimensionMismatch("a graph needs at least one edge")
    verts = X.vertices()
    nv = len(verts)
    check_budget(1 << nv, cap, "vertex subsets")
    pos = {v: k for k, v in enumerate(verts)}
    edges = [(pos[a], pos[b]) for a, b in X.faces(1)]
    masks = np.arange(1, (1 << nv) - 1, dtype=np.int64)
    cut = np.zeros_like(masks)
    for a, b in edges:
        cut += ((masks >> a) ^ (masks >> b)) & 1
    size = np.bitwise_count(masks).astype(np.int64)
    small = np.minimum(size, nv - size)
    best, _ = _extreme_pairs(cut, small, want_max=False)
    return Fraction(nv, len(edges)) * best


def mu(X: Complex, i: int, budget: int | None = None, threads: int | None = None) -> Fraction:
    """Gromov's filling constant: max over 0 ≠ β ∈ B^{i+1} of min{||α|| : δα = β} / ||β||.

    Preimages of β form a coset of Z^i, so this is a scan over cosets of Z^i
    scored by coset minimum weight against the weight of their common image.
    """
    _check_expansion_dim(X, i)
    Z = cocycle_space(X, i)
    scan = CosetScan(X, i, Z, budget, label=f"Z^{i}")
    if scan.total == 1:
        return Fraction(0)

    def best_in(start: int, stop: int):
        idx, cob, fill = scan.score(max(start, 1), stop)
        if idx.size == 0:
            return None
        ratio, _ = _extreme_pairs(fill, cob, want_max=True)
        return ratio

    best = max(r for r in scan.map_ranges(best_in, threads) if r is not None)
    return best * Fraction(scan.m, scan.n)


# -- local views on complete 2-complexes -------------------------------------------

def _require_complete_2(X: Complex) -> None:
    if not X.is_complete(2):
        raise NotCompleteComplex("expected the complete 2-complex K_n^(2)")


def local_view(X: Complex, alpha: Cochain, u: int) -> Cochain:
    """α_u(v) = α({u, v}) for v ≠ u and α_u(u) = 0."""
    _require_complete_2(X)
    _check_fits(X, alpha)
    if alpha.dim != 1:
        raise DimensionMismatch("local views are taken of 1-cochains")
    n = X.vertex_count
    if not 0 <= u < n:
        raise DimensionMismatch(f"vertex {u} not in the complex")
    bits = 0
    for v in range(n):
        if v != u and alpha[X.index(tuple(sorted((u, v))))]:
            bits |= 1 << (n - 1 - v)
    return Cochain(0, BitVector(n, bits))


@dataclass(frozen=True)
class LocalIdentityReport:
    passed: bool
    pointwise_ok: bool
    counting_ok: bool
    bound_ok: bool
    triple_count: int          # 3 |δ_1 α|
    local_sum: int             # Σ_u |α - δ_0 α_u|
    n_times_dist: int          # n · dist(α, B^1)
    counterexample: tuple[int, tuple[int, int]] | None = None


def verify_local_identity(X: Complex, alpha: Cochain, budget: int | None = None) -> LocalIdentityReport:
    """Check the local-view identity on every (vertex, edge) pair and the counting chain.

    Pointwise: (α - δ_0 α_u)(e) equals (δ_1 α)(u ∪ e) when u ∉ e and 0 when u ∈ e.
    Counting: 3|δ_1 α| = Σ_u |α - δ_0 α_u| ≥ n · dist(α, B^1).
    """
    _require_complete_2(X)
    _check_fits(X, alpha)
    if alpha.dim != 1:
        raise DimensionMismatch("expected a 1-cochain")
    n = X.vertex_count
    d_alpha = coboundary(X, alpha)
    edges = X.faces(1)
    bad = None
    local_sum = 0
    for u in range(n):
        diff = alpha + coboundary(X, local_view(X, alpha, u))
        local_sum += diff.weight
        if bad is not None:
            continue
        for k, e in enumerate(edges):
            expect = 0 if u in e else d_alpha[X.index(tuple(sorted((u, *e))))]
            if diff[k] != expect:
                bad = (u, e)
                break
    triple = 3 * d_alpha.weight
    dist = distance_to_coboundaries(X, alpha, budget).dist
    pointwise_ok = bad is None
    counting_ok = triple == local_sum
    bound_ok = local_sum >= n * dist
    return LocalIdentityReport(pointwise_ok and counting_ok and bound_ok, pointwise_ok,
                               counting_ok, bound_ok, triple, local_sum, n * dist, bad)


def complete_complex_bound(n: int, i: int) -> Fraction:
    """Lower bound n / (n - i - 1) on ε_i of a complete complex."""
    return Fraction(n, n - i - 1)


def coboundary_weight_is_coset_invariant(X: Complex, f: Cochain, samples: int = 8,
                                         seed: int = 0) -> bool:
    """Spot check: δ agrees on ``samples`` random members of f + B^i."""
    B = coboundary_space(X, f.dim)
    rng = np.random.Generator(np.random.PCG64(seed))
    base = coboundary(X, f)
    for _ in range(samples):
        g = f.bits
        for row in B.rows:
            if rng.integers(0, 2):
                g ^= row
        if coboundary(X, Cochain(f.dim, BitVector(f.support.length, g))) != base:
            return False
    return True

