"""Weight-graded relative Gel'fand-Fuks cohomology of formal Hamiltonian
vector fields on the symplectic plane, over exact rationals."""

from .cochain import CochainVector, Shape, enumerate_shapes, wedge
from .coboundary import apply_d, coboundary_matrix
from .invariants import character_multiplicity, trivial_basis
from .linformgb import (EchelonBasis, LinearForm, SparseMatrix, echelon,
                        image_basis, kernel_basis, normal_form, quotient_basis,
                        rank)
from .pipeline import (FactorizationReport, Workspace, cohomology_table,
                       factorize, generator, omega_cochain)
from .polyalg import MonomialDual, poisson_bracket
from .rationals import Q

__version__ = "0.1.0"

__all__ = [
    "CochainVector", "Shape", "enumerate_shapes", "wedge",
    "apply_d", "coboundary_matrix",
    "character_multiplicity", "trivial_basis",
    "EchelonBasis", "LinearForm", "SparseMatrix", "echelon",
    "image_basis", "kernel_basis", "normal_form", "quotient_basis", "rank",
    "FactorizationReport", "Workspace", "cohomology_table", "factorize",
    "generator", "omega_cochain",
    "MonomialDual", "poisson_bracket", "Q",
    "__version__",
]
