from __future__ import annotations

from fractions import Fraction

import pytest

from cobound import complete_complex, from_maximal_faces, random_subcomplex
from cobound.applications import graph_from_edges

CUBE_EDGES = [(a, b) for a in range(8) for b in range(a + 1, 8) if (a ^ b).bit_count() == 1]


def one_triangle_k4():
    """K_4's 1-skeleton plus the single triangle 012: H^1 has dimension 2."""
    return from_maximal_faces([[0, 1, 2], [0, 3], [1, 3], [2, 3]])


def octahedron():
    # boundary of the octahedron, a 2-sphere: antipodal pairs (0,1), (2,3), (4,5)
    return from_maximal_faces([[a, b, c] for a in (0, 1) for b in (2, 3) for c in (4, 5)])


def named_corpus():
    return {
        "K4^(2)": complete_complex(4, 2),
        "K5^(2)": complete_complex(5, 2),
        "K5^(3)": complete_complex(5, 3),
        "K6^(1)": complete_complex(6, 1),
        "K6^(2)": complete_complex(6, 2),
        "one_triangle_K4": one_triangle_k4(),
        "octahedron": octahedron(),
        "C5": graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        "two_edges": from_maximal_faces([[0, 1], [2, 3]]),
        "three_components": graph_from_edges(6, [(0, 1), (2, 3)]),
        "cube": graph_from_edges(8, CUBE_EDGES),
        "path": from_maximal_faces([[0, 1], [1, 2]]),
        "mixed": from_maximal_faces([[0, 1, 2], [2, 3]]),
        "bowtie": from_maximal_faces([[0, 1, 2], [2, 3, 4]]),
        "hollow_tetra": from_maximal_faces([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]),
    }


def random_corpus(count: int = 100):
    out = []
    probs = [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)]
    for seed in range(count):
        n = 4 + seed % 4
        d = 1 + (seed // 4) % 3
        d = min(d, n - 1)
        out.append(random_subcomplex(n, d, probs[seed % 3], seed))
    return out


@pytest.fixture(scope="session")
def corpus():
    return named_corpus()


@pytest.fixture(scope="session")
def randoms():
    return random_corpus()
