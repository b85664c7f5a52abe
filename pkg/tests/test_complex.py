from itertools import combinations
from math import comb

import pytest

from cobound import complete_complex, from_maximal_faces, random_subcomplex, skeleton
from cobound.errors import DuplicateVertexInFace, EmptyInput, InvalidDimension


def test_single_triangle_closure():
    X = from_maximal_faces([[0, 1, 2]])
    assert X.faces(2) == ((0, 1, 2),)
    assert X.faces(1) == ((0, 1), (0, 2), (1, 2))
    assert X.faces(0) == ((0,), (1,), (2,))
    assert X.faces(-1) == ((),)


def test_path_graph():
    X = from_maximal_faces([[0, 1], [1, 2]])
    assert X.dim == 1
    assert X.f_vector() == [3, 2]
    assert X.vertex_count == 3


def test_mixed_dimension():
    X = from_maximal_faces([[0, 1, 2], [2, 3]])
    assert X.count(1) == 4
    assert X.maximal_faces() == [(0, 1, 2), (2, 3)]


def test_unsorted_input_is_canonicalized():
    assert from_maximal_faces([[2, 0, 1]]) == from_maximal_faces([[0, 1, 2]])


def test_errors():
    with pytest.raises(DuplicateVertexInFace):
        from_maximal_faces([[0, 1, 1]])
    with pytest.raises(EmptyInput):
        from_maximal_faces([])
    with pytest.raises(InvalidDimension):
        complete_complex(3, 3)
    with pytest.raises(InvalidDimension):
        complete_complex(3, -1)
    with pytest.raises(InvalidDimension):
        skeleton(complete_complex(4, 2), 3)


@pytest.mark.parametrize("n,d,i,expected", [(4, 2, 0, 4), (4, 2, 1, 6), (4, 2, 2, 4),
                                            (5, 2, 2, 10), (6, 3, 3, 15)])
def test_complete_counts(n, d, i, expected):
    assert complete_complex(n, d).count(i) == expected


@pytest.mark.parametrize("n", range(1, 11))
def test_complete_counts_binomial(n):
    for d in range(min(n, 4)):
        X = complete_complex(n, d)
        assert [X.count(i) for i in range(-1, d + 1)] == [comb(n, i + 1) for i in range(-1, d + 1)]


def test_skeleton():
    assert skeleton(complete_complex(4, 2), 1) == complete_complex(4, 1)
    assert skeleton(complete_complex(5, 2), 0).f_vector() == [5]
    X = from_maximal_faces([[0, 1, 2], [2, 3]])
    assert skeleton(X, X.dim) == X


def test_random_subcomplex_extremes():
    assert random_subcomplex(5, 2, 1, seed=3) == complete_complex(5, 2)
    X = random_subcomplex(5, 2, 0, seed=3)
    assert X == complete_complex(5, 1)


def test_random_subcomplex_deterministic():
    a = random_subcomplex(6, 2, "1/2", seed=7)
    b = random_subcomplex(6, 2, "1/2", seed=7)
    assert a == b
    assert a.faces(2) == b.faces(2)
    assert 0 < a.count(2) < 20


def test_invariants_on_random(randoms):
    for X in randoms:
        for i in range(X.dim + 1):
            for k, F in enumerate(X.faces(i)):
                assert X.index(F) == k
                for G in combinations(F, len(F) - 1):
                    assert G in X
            assert list(X.faces(i)) == sorted(X.faces(i))
