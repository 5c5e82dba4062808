"""Certified lower bounds for spectral gaps and Kazhdan constants.

The pipeline: pick a group backend (finitely presented with bounded
rewriting, exact matrices, or monomial matrices), enumerate a word-metric
ball, assemble the sum-of-squares semidefinite program for the group
Laplacian, solve it numerically, and certify the bound with exact
rational arithmetic so that the reported numbers are true lower bounds.
"""

from .backends import (Backend, FinitelyPresentedBackend, MatrixBackend,
                       MatrixGroupSpec, MonomialBackend, MonomialGroupSpec,
                       elementary_matrix, special_linear_spec)
from .balls import Ball, enumerate_ball
from .certify import (Certificate, CertificationError, certify,
                      exact_ldl_with_shift, kappa_truncated, residual,
                      round_and_project)
from .presentations import (PresentationError, PresentationSpec,
                            free_group_spec, parse_presentation, presentation)
from .rewriting import RewriteBudget, RewriteSystem, bounded_completion
from .ring import LaplacianBundle, RingElem, laplacian
from .sdp import (AssemblyError, GramSolution, SdpProblem, SolverParams,
                  assemble, solve_internal, validate_solution)

__version__ = "0.1.0"

__all__ = [
    "Backend", "FinitelyPresentedBackend", "MatrixBackend", "MatrixGroupSpec",
    "MonomialBackend", "MonomialGroupSpec", "elementary_matrix",
    "special_linear_spec", "Ball", "enumerate_ball", "Certificate",
    "CertificationError", "certify", "exact_ldl_with_shift",
    "kappa_truncated", "residual", "round_and_project", "PresentationError",
    "PresentationSpec", "free_group_spec", "parse_presentation",
    "presentation", "RewriteBudget", "RewriteSystem", "bounded_completion",
    "LaplacianBundle", "RingElem", "laplacian", "AssemblyError",
    "GramSolution", "SdpProblem", "SolverParams", "assemble",
    "solve_internal", "validate_solution",
]
