"""F2 cohomology, exact coboundary expansion, and cocycle testers."""

from .complex import Complex, complete_complex, from_maximal_faces, random_subcomplex, skeleton
from .cochain import Cochain, boundary, coboundary, inner_product, norm, operator_matrix
from .cohomology import (boundary_space, coboundary_space, cocycle_space, cohomology_dim,
                         cycle_space, distance_to_coboundaries, homology_dim, is_coboundary,
                         orthogonality_report)
from .expansion import (ExpansionResult, epsilon, epsilon_graph_cheeger, local_view, mu,
                        verify_local_identity)
from .f2 import (BitVector, F2Matrix, Subspace, coset_min_weight, coset_representatives,
                 in_span, kernel_basis, rref)
from .tester import (TesterReport, exact_rejection_probability, run_cocycle_tester,
                     testability_certificate)

__version__ = "0.1.0"
