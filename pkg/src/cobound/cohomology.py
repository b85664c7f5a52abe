"""Coboundary/cocycle and boundary/cycle spaces, (co)homology, distance to B^i.

Reduced conventions throughout: the empty face is present, so B^0 is
{0, all-ones} and dim H^0 counts connected components minus one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cochain import Cochain, _check_fits, boundary_columns, coboundary_columns, operator_matrix
from .complex import Complex
from .errors import DimensionMismatch
from .f2 import BitVector, Subspace, check_budget, coset_leader_int, kernel_rows, parity, rref_rows


def _check_i(X: Complex, i: int) -> None:
    if i < 0 or i > X.dim:
        raise DimensionMismatch(f"dimension {i} outside 0..{X.dim}")


def coboundary_space(X: Complex, i: int) -> Subspace:
    """B^i, the image of δ_{i-1} (δ_{-1} included)."""
    _check_i(X, i)
    return X.memo(("B^", i), lambda: rref_rows(coboundary_columns(X, i - 1), X.count(i)))


def cocycle_space(X: Complex, i: int) -> Subspace:
    """Z^i, the kernel of δ_i; all of C^i in the top dimension."""
    _check_i(X, i)

    def build():
        n = X.count(i)
        if i == X.dim:
            return rref_rows((1 << k for k in range(n)), n)
        return kernel_rows(operator_matrix(X, i, "coboundary").row_bits, n)
    return X.memo(("Z^", i), build)


def boundary_space(X: Complex, i: int) -> Subspace:
    """B_i, the image of ∂_{i+1}; zero in the top dimension."""
    _check_i(X, i)

    def build():
        n = X.count(i)
        if i == X.dim:
            return rref_rows((), n)
        return rref_rows(boundary_columns(X, i + 1), n)
    return X.memo(("B_", i), build)


def cycle_space(X: Complex, i: int) -> Subspace:
    """Z_i, the kernel of ∂_i (augmented: ∂_0 sends each vertex to the empty face)."""
    _check_i(X, i)
    return X.memo(("Z_", i), lambda: kernel_rows(operator_matrix(X, i, "boundary").row_bits,
                                                 X.count(i)))


def cohomology_dim(X: Complex, i: int) -> int:
    return cocycle_space(X, i).dim - coboundary_space(X, i).dim


def homology_dim(X: Complex, i: int) -> int:
    return cycle_space(X, i).dim - boundary_space(X, i).dim


def is_coboundary(X: Complex, f: Cochain) -> bool:
    _check_fits(X, f)
    return coboundary_space(X, f.dim).contains(f.bits)


def is_cocycle(X: Complex, f: Cochain) -> bool:
    _check_fits(X, f)
    return cocycle_space(X, f.dim).contains(f.bits)


@dataclass(frozen=True)
class Distance:
    dist: int
    normalized: Fraction
    leader: Cochain


def distance_to_coboundaries(X: Complex, f: Cochain, budget: int | None = None) -> Distance:
    """Hamming distance from f to B^i, normalized by |X(i)|, with the coset leader."""
    _check_fits(X, f)
    B = coboundary_space(X, f.dim)
    check_budget(1 << B.dim, budget, f"coset of B^{f.dim}")
    w, leader = coset_leader_int(B, f.bits)
    n = X.count(f.dim)
    return Distance(w, Fraction(w, n), Cochain(f.dim, BitVector(n, leader)))


@dataclass(frozen=True)
class OrthogonalityReport:
    i: int
    passed: bool
    size: int
    dims: dict
    counterexample: tuple[str, BitVector, BitVector] | None = None


def _orthogonal_pair(name: str, U: Subspace, V: Subspace, n: int):
    for u in U.rows:
        for v in V.rows:
            if parity(u & v):
                return False, (name, BitVector(n, u), BitVector(n, v))
    if U.dim + V.dim != n:
        return False, (name, BitVector.zeros(n), BitVector.zeros(n))
    return True, None


def orthogonality_report(X: Complex, i: int) -> OrthogonalityReport:
    """Check B_i ⊥ Z^i and Z_i ⊥ B^i with complementary dimensions."""
    _check_i(X, i)
    n = X.count(i)
    Bl, Zu = boundary_space(X, i), cocycle_space(X, i)
    Zl, Bu = cycle_space(X, i), coboundary_space(X, i)
    dims = {"B_i": Bl.dim, "Z^i": Zu.dim, "Z_i": Zl.dim, "B^i": Bu.dim}
    ok, bad = _orthogonal_pair("B_i vs Z^i", Bl, Zu, n)
    if ok:
        ok, bad = _orthogonal_pair("Z_i vs B^i", Zl, Bu, n)
    return OrthogonalityReport(i, ok, n, dims, bad)
