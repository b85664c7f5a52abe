"""The i-cocycle tester: exact rejection rate, seeded simulation, certificates.

The tester draws a uniform (i+1)-face F and rejects iff (δf)(F) = 1, reading
f only on the i+2 facets of F. Randomness comes from numpy's PCG64. Trials
are cut into fixed batches of ``BATCH`` and batch ``b`` draws from the
stream seeded by ``(seed, b)``, so the outcome is fixed by (seed, trials)
whatever the worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .cochain import Cochain, _check_fits, coboundary
from .cohomology import (coboundary_space, cohomology_dim, distance_to_coboundaries,
                         is_coboundary)
from .complex import Complex, facets_of
from .errors import BudgetExceeded
from .expansion import CosetScan, _check_expansion_dim, _threads, epsilon
from .f2 import BitVector

BATCH = 4096


class QueryCounter:
    """Read-only view of a cochain that counts coordinate reads."""

    def __init__(self, X: Complex, f: Cochain):
        self._bits = f.bits
        self._n = f.support.length
        self._X = X
        self.queries = 0

    def __call__(self, face) -> int:
        self.queries += 1
        return (self._bits >> (self._n - 1 - self._X.index(face))) & 1


def wilson_interval(successes: int, trials: int, confidence: float = 0.99) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class TesterReport:
    i: int
    queries: int
    trials: int
    seed: int | None
    rejections: int
    sampled_rate: Fraction | None
    exact_rate: Fraction
    distance_normalized: Fraction | None
    epsilon_bound: Fraction | None
    bound_satisfied: bool | None
    member: bool | None = None
    queries_made: int = 0
    wilson99: tuple[float, float] | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def exact_rejection_probability(X: Complex, f: Cochain) -> Fraction:
    """||δ_i f||: the fraction of (i+1)-faces on which the tester rejects."""
    _check_fits(X, f)
    _check_expansion_dim(X, f.dim)
    return Fraction(coboundary(X, f).weight, X.count(f.dim + 1))


def batch_stream(seed: int, batch: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, batch])))


def _run_batch(X: Complex, f: Cochain, seed: int, batch: int, size: int) -> tuple[int, int]:
    top = X.faces(f.dim + 1)
    picks = batch_stream(seed, batch).integers(0, len(top), size=size)
    read = QueryCounter(X, f)
    rejections = 0
    for k in picks:
        total = 0
        for F in facets_of(top[k]):
            total ^= read(F)
        rejections += total
    return rejections, read.queries


def simulate(X: Complex, f: Cochain, trials: int, seed: int,
             threads: int | None = 1) -> tuple[int, int]:
    """(rejections, coordinates read) over ``trials`` seeded draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_fits(X, f)
    _check_expansion_dim(X, f.dim)
    sizes = [min(BATCH, trials - s) for s in range(0, trials, BATCH)]
    jobs = list(enumerate(sizes))
    workers = min(_threads(threads), len(jobs))
    if workers <= 1:
        out = [_run_batch(X, f, seed, b, s) for b, s in jobs]
    else:
        with ThreadPoolExecutor(workers) as pool:
            out = list(pool.map(lambda j: _run_batch(X, f, seed, *j), jobs))
    return sum(r for r, _ in out), sum(q for _, q in out)


def run_cocycle_tester(X: Complex, f: Cochain, trials: int, seed: int,
                       budget: int | None = None, threads: int | None = 1,
                       epsilon_bound: Fraction | None = None) -> TesterReport:
    """Simulate the tester and attach the exact quantities it is judged against.

    The distance to B^i and ε_i are exhaustive computations; if either
    exceeds ``budget`` those fields are None and sampling still runs. A
    caller may supply a known ``epsilon_bound`` (e.g. from a theorem)
    instead of computing ε_i.
    """
    rejections, reads = simulate(X, f, trials, seed, threads)
    exact = exact_rejection_probability(X, f)
    notes = []
    dist = eps = ok = None
    try:
        dist = distance_to_coboundaries(X, f, budget).normalized
        eps = epsilon_bound if epsilon_bound is not None else _cached_epsilon(X, f.dim, budget)
        ok = exact >= eps * dist
    except BudgetExceeded as exc:
        notes.append(f"exact fields unavailable: {exc}")
    return TesterReport(
        i=f.dim, queries=f.dim + 2, trials=trials, seed=seed, rejections=rejections,
        sampled_rate=Fraction(rejections, trials), exact_rate=exact,
        distance_normalized=dist, epsilon_bound=eps, bound_satisfied=ok,
        member=is_coboundary(X, f), queries_made=reads,
        wilson99=wilson_interval(rejections, trials), notes=tuple(notes))


def exact_tester_report(X: Complex, f: Cochain, budget: int | None = None,
                        epsilon_bound: Fraction | None = None) -> TesterReport:
    """Tester report with no sampling: every field exact."""
    exact = exact_rejection_probability(X, f)
    dist = distance_to_coboundaries(X, f, budget).normalized
    eps = epsilon_bound if epsilon_bound is not None else _cached_epsilon(X, f.dim, budget)
    return TesterReport(
        i=f.dim, queries=f.dim + 2, trials=0, seed=None, rejections=0, sampled_rate=None,
        exact_rate=exact, distance_normalized=dist, epsilon_bound=eps,
        bound_satisfied=exact >= eps * dist, member=is_coboundary(X, f))


def _cached_epsilon(X: Complex, i: int, budget: int | None) -> Fraction:
    return X.memo(("epsilon", i), lambda: epsilon(X, i, budget)).epsilon


@dataclass(frozen=True)
class Certificate:
    i: int
    epsilon: Fraction
    cosets_checked: int
    violations: int
    equality_count: int
    equality_witness: Cochain | None
    equality_rate: Fraction | None
    equality_distance: Fraction | None
    h_nonzero: bool
    cocycle_witness: Cochain | None
    first_violation: Cochain | None = None

    @property
    def valid(self) -> bool:
        return self.violations == 0 and self.equality_count > 0


def testability_certificate(X: Complex, i: int, budget: int | None = None,
                            threads: int | None = None) -> Certificate:
    """Check rate ≥ ε_i · distance on every non-zero coset of B^i, exactly.

    Both directions of the expansion/testability equivalence are exercised:
    ε_i is a valid tester constant (no violations), and no larger constant is
    (some coset attains equality). When H^i ≠ 0 the cocycle witness is a
    non-coboundary that the tester accepts with probability one.
    """
    res = epsilon(X, i, budget, threads)
    eps = res.epsilon
    scan = CosetScan(X, i, coboundary_space(X, i), budget, label=f"B^{i}")
    n, m = scan.n, scan.m
    violations = equal = 0
    first_bad = None
    for start, stop in scan.ranges():
        idx, cob, dist = scan.score(max(start, 1), stop)
        # rate >= eps * dist_norm  <=>  cob * n * eps.den >= eps.num * dist * m
        lhs = cob.astype(object) * (n * eps.denominator)
        rhs = dist.astype(object) * (eps.numerator * m)
        bad = lhs < rhs
        eq = lhs == rhs
        violations += int(bad.sum())
        equal += int(eq.sum())
        if first_bad is None and bad.any():
            first_bad = int(idx[np.argmax(bad)])
    eq_witness = eq_rate = eq_dist = None
    if equal:
        eq_witness = res.witness
        eq_rate = Fraction(res.witness_coboundary_weight, m)
        eq_dist = Fraction(res.witness_dist, n)
    bad_cochain = None
    if first_bad is not None:
        bad_cochain = Cochain(i, BitVector(n, scan.leader(first_bad)[1]))
    h = cohomology_dim(X, i) > 0
    return Certificate(
        i=i, epsilon=eps, cosets_checked=scan.total - 1, violations=violations,
        equality_count=equal, equality_witness=eq_witness, equality_rate=eq_rate,
        equality_distance=eq_dist, h_nonzero=h,
        cocycle_witness=res.witness if h else None, first_violation=bad_cochain)

