import math
import random
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from cobound import Cochain, complete_complex, epsilon_graph_cheeger, skeleton
from cobound.applications import (SignMatrix, constant_function_test, edge_cochain,
                                  girth, girth_and_min_cycle, graph_from_edges, seidel_equivalence,
                                  seidel_switch, sum_function_encode, sum_function_test,
                                  tensor_power_test)
from cobound.cohomology import cocycle_space, coboundary_space
from cobound.errors import (BadDiagonal, BadEntry, BudgetExceeded, NotAGraph, NotComplete,
                            NotSymmetric, VertexOutOfRange, VertexSetMismatch)
from cobound.f2 import BitVector

from conftest import CUBE_EDGES


def vertex_fn(G, verts):
    return Cochain.from_faces(G, 0, [[v] for v in verts])


# -- constant functions --------------------------------------------------------------

def test_constant_function_examples():
    K4 = complete_complex(4, 1)
    r = constant_function_test(K4, Cochain.ones(K4, 0))
    assert (r.exact_rate, r.distance_normalized, r.member) == (0, 0, True)
    r = constant_function_test(K4, vertex_fn(K4, [2]))
    assert (r.exact_rate, r.distance_normalized) == (Fraction(1, 2), Fraction(1, 4))
    assert r.exact_rate / r.distance_normalized == 2 >= r.epsilon_bound == Fraction(4, 3)
    r = constant_function_test(K4, vertex_fn(K4, [0, 3]))
    assert (r.exact_rate, r.distance_normalized) == (Fraction(2, 3), Fraction(1, 2))
    assert r.exact_rate / r.distance_normalized == r.epsilon_bound


def test_constant_function_errors():
    K = complete_complex(4, 2)
    with pytest.raises(NotAGraph):
        constant_function_test(K, Cochain.zero(K, 0))
    G = complete_complex(4, 1)
    with pytest.raises(NotAGraph):
        constant_function_test(G, Cochain.zero(G, 1))


def test_constant_function_sampled():
    G = graph_from_edges(8, CUBE_EDGES)
    f = vertex_fn(G, [0, 1, 2, 3])
    r = constant_function_test(G, f, trials=5000, seed=3)
    assert r.exact_rate == Fraction(4, 12)
    lo, hi = r.wilson99
    assert lo <= 1 / 3 <= hi


def _exhaustive_ratio(G):
    best = None
    n = G.count(0)
    for bits in range(1, (1 << n) - 1):
        r = constant_function_test(G, Cochain(0, BitVector(n, bits)))
        assert r.bound_satisfied
        q = r.exact_rate / r.distance_normalized
        best = q if best is None or q < best else best
    return best


@pytest.mark.parametrize("name", ["K4", "cube", "C5", "K6", "petersen"])
def test_cheeger_is_tester_constant(name):
    outer = [(k, (k + 1) % 5) for k in range(5)]
    inner = [(5 + k, 5 + (k + 2) % 5) for k in range(5)]
    graphs = {
        "K4": complete_complex(4, 1), "K6": complete_complex(6, 1),
        "cube": graph_from_edges(8, CUBE_EDGES),
        "C5": graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        "petersen": graph_from_edges(10, outer + inner + [(k, k + 5) for k in range(5)]),
    }
    G = graphs[name]
    assert _exhaustive_ratio(G) == epsilon_graph_cheeger(G)


@pytest.mark.parametrize("n", range(7, 13))
def test_cheeger_on_complete_graphs_by_counting(n):
    # rate/dist for |S| = s on K_n is (s(n-s)/C(n,2)) / (min(s, n-s)/n)
    want = min(Fraction(s * (n - s) * n, math.comb(n, 2) * min(s, n - s)) for s in range(1, n))
    assert epsilon_graph_cheeger(complete_complex(n, 1)) == want
    assert want == (Fraction(n, n - 1) if n % 2 == 0 else Fraction(n + 1, n - 1))


# -- sum functions -------------------------------------------------------------------

def test_sum_function_encode_examples():
    K4 = complete_complex(4, 1)
    assert sum_function_encode([0, 0, 0, 0], K4).weight == 0
    star = sum_function_encode([0, 1, 0, 0], K4)
    assert star.faces(K4) == [(0, 1), (1, 2), (1, 3)]
    assert sum_function_encode([1, 0, 1, 0], K4) == sum_function_encode([0, 1, 0, 1], K4)
    with pytest.raises(VertexSetMismatch):
        sum_function_encode([1, 0], K4)


def test_sum_function_test_examples():
    K4, K5 = complete_complex(4, 1), complete_complex(5, 1)
    r = sum_function_test(K4, sum_function_encode([1, 1, 0, 0], K4))
    assert r.exact_rate == 0 and r.member
    r = sum_function_test(K4, Cochain.from_faces(K4, 1, [[0, 1]]))
    assert (r.exact_rate, r.distance_normalized, r.bound_satisfied) == (Fraction(1, 2), Fraction(1, 6), True)
    r = sum_function_test(K5, Cochain.from_faces(K5, 1, [[0, 1]]))
    assert (r.exact_rate, r.distance_normalized) == (Fraction(3, 10), Fraction(1, 10))
    with pytest.raises(NotComplete):
        G = graph_from_edges(4, [(0, 1), (1, 2)])
        sum_function_test(G, Cochain.zero(G, 1))


def test_sum_function_sampled_matches_cocycle_tester():
    K = complete_complex(6, 2)
    f = Cochain.from_faces(K, 1, [[0, 1], [2, 5]])
    r = sum_function_test(K, f, trials=2000, seed=11)
    assert r.queries == 3 and r.trials == 2000 and r.epsilon_bound == 1 and r.bound_satisfied


@pytest.mark.parametrize("m", [3, 4, 5])
def test_vanishing_on_triangles_iff_sum_function(m):
    K = complete_complex(m, 2)
    E = K.count(1)
    sums = {sum_function_encode(g, skeleton(K, 1)).bits for g in product((0, 1), repeat=m)}
    triangles = [[K.index(e) for e in combinations(t, 2)] for t in K.faces(2)]
    for bits in range(1 << E):
        passes = all(sum((bits >> (E - 1 - k)) & 1 for k in t) % 2 == 0 for t in triangles)
        assert passes == (bits in sums)


@pytest.mark.parametrize("m", range(3, 9))
def test_cocycles_are_coboundaries_on_complete(m):
    K = complete_complex(m, 2)
    assert cocycle_space(K, 1) == coboundary_space(K, 1)


# -- tensor powers -------------------------------------------------------------------

def test_sign_matrix_validation():
    with pytest.raises(NotSymmetric):
        SignMatrix(((1, -1), (1, 1)))
    with pytest.raises(BadDiagonal):
        SignMatrix(((-1, 1), (1, 1)))
    with pytest.raises(BadEntry):
        SignMatrix(((1, 0), (0, 1)))


def test_tensor_examples():
    r = tensor_power_test(SignMatrix.outer((1, -1, 1)))
    assert r.exact_rate == 0 and r.member
    rows = [list(r) for r in SignMatrix.outer((1, -1, -1, 1)).entries]
    rows[0][2] *= -1
    rows[2][0] *= -1
    r = tensor_power_test(SignMatrix(rows))
    assert (r.exact_rate, r.distance_normalized, r.member) == (Fraction(1, 2), Fraction(1, 6), False)
    assert tensor_power_test(SignMatrix.outer((1,) * 5)).exact_rate == 0


def _is_tensor_power_brute(M):
    m = len(M)
    A = np.array(M)
    for bits in range(1 << m):
        alpha = np.array([-1 if (bits >> k) & 1 else 1 for k in range(m)])
        if np.array_equal(np.outer(alpha, alpha), A):
            return True
    return False


@pytest.mark.parametrize("m", range(3, 13))
def test_tensor_verdict_matches_brute_force(m):
    rng = random.Random(m)
    for trial in range(4):
        alpha = [rng.choice((1, -1)) for _ in range(m)]
        rows = [list(r) for r in SignMatrix.outer(alpha).entries]
        for _ in range(trial % 3):
            a, b = rng.sample(range(m), 2)
            rows[a][b] *= -1
            rows[b][a] *= -1
        M = SignMatrix(rows)
        r = tensor_power_test(M)
        assert r.member == (r.exact_rate == 0) == _is_tensor_power_brute(M.entries)


# -- girth -------------------------------------------------------------------------

def test_girth_examples():
    C5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    r = girth_and_min_cycle(C5)
    assert (r.girth, r.min_cycle_weight, r.cycle_space_dim) == (5, 5, 1)
    tree = graph_from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    r = girth_and_min_cycle(tree)
    assert r.girth == r.min_cycle_weight == math.inf
    r = girth_and_min_cycle(complete_complex(4, 1))
    assert r.girth == r.min_cycle_weight == 3
    assert girth(graph_from_edges(8, CUBE_EDGES)) == 4


def test_girth_budget_keeps_partial():
    with pytest.raises(BudgetExceeded) as e:
        girth_and_min_cycle(complete_complex(8, 1), budget=1000)
    assert e.value.partial["girth"] == 3


def test_girth_equals_min_cycle_weight(corpus, randoms):
    graphs = [skeleton(X, 1) if X.dim > 1 else X for X in [*corpus.values(), *randoms]]
    for G in graphs:
        r = girth_and_min_cycle(G)
        assert r.girth == r.min_cycle_weight


def test_girth_rejects_higher_dims():
    with pytest.raises(NotAGraph):
        girth(complete_complex(4, 2))


# -- Seidel switching ------------------------------------------------------------------

def test_seidel_switch_examples():
    E3 = graph_from_edges(3, [])
    assert seidel_switch(E3, 0).faces(1) == ((0, 1), (0, 2))
    G = graph_from_edges(5, [(0, 1), (1, 3), (2, 4)])
    assert seidel_switch(seidel_switch(G, 3), 3) == G
    assert seidel_switch(complete_complex(4, 1), 0).faces(1) == ((1, 2), (1, 3), (2, 3))
    with pytest.raises(VertexOutOfRange):
        seidel_switch(G, 5)


def test_seidel_switch_is_coboundary_shift():
    G = graph_from_edges(6, [(0, 1), (2, 3), (1, 5)])
    K = complete_complex(6, 1)
    for v in range(6):
        moved = edge_cochain(seidel_switch(G, v))
        star = sum_function_encode([int(u == v) for u in range(6)], K)
        assert moved == edge_cochain(G) + star


def test_seidel_examples():
    G = graph_from_edges(8, [(0, 1), (1, 2), (3, 7), (4, 6)])
    H = seidel_switch(seidel_switch(G, 2), 5)
    r = seidel_equivalence(G, H)
    assert r.equivalent and r.exact_rate == 0
    r = seidel_equivalence(graph_from_edges(4, []), graph_from_edges(4, [(1, 2)]))
    assert not r.equivalent and r.exact_rate == Fraction(1, 2) and r.distance == 1
    r = seidel_equivalence(G, G)
    assert r.equivalent and r.distance == 0
    with pytest.raises(VertexSetMismatch):
        seidel_equivalence(G, graph_from_edges(7, []))


def _random_graph(n, rng):
    return graph_from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])


def test_seidel_switching_sequences():
    rng = random.Random(8)
    for k in range(1000):
        G = _random_graph(8, rng)
        H = G
        for _ in range(rng.randrange(1, 6)):
            H = seidel_switch(H, rng.randrange(8))
        assert seidel_equivalence(G, H).equivalent
        assert seidel_equivalence(H, G).equivalent
        sampled = seidel_equivalence(G, H, trials=20, seed=k)
        assert sampled.tester.rejections == 0


def test_seidel_perturbed_pair():
    rng = random.Random(3)
    for k in range(30):
        G = _random_graph(8, rng)
        H = seidel_switch(G, rng.randrange(8))
        a, b = rng.sample(range(8), 2)
        H = graph_from_edges(8, set(H.faces(1)) ^ {tuple(sorted((a, b)))})
        r = seidel_equivalence(G, H)
        assert not r.equivalent
        assert r.exact_rate >= r.distance_normalized > 0
        s = seidel_equivalence(G, H, trials=4000, seed=k)
        assert s.tester.rejections > 0 and s.tester.bound_satisfied


def test_seidel_transitivity():
    rng = random.Random(21)
    for _ in range(50):
        A = _random_graph(6, rng)
        B = seidel_switch(A, rng.randrange(6))
        C = seidel_switch(B, rng.randrange(6))
        assert seidel_equivalence(A, C).equivalent
