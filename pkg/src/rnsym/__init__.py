"""Symmetries of R[n]-bundles over finite cdga models of manifolds.

Exact rational computations for graded algebras, derivations, Cartan calculus,
the dgla of bundle symmetries, derived brackets, lifts of Lie algebra actions
and the cohomology of the resulting complexes.
"""
from .algebra import CoeffPoly, Generator, GradedAlgebra, GradedElement
from .bundle import (RnBundle, SymElement, are_equivalent, build_bundle, bracket_H, gauge,
                     map_F, sym_bracket, sym_d, sym_element)
from .cohomology import AlgebraComplex, betti, betti_numbers, is_exact, sym_cohomology
from .derivation import Derivation, apply, commutator, is_homological
from .derived import derived_bracket, ham_bracket, hamiltonian_vector_field, poisson, rogers_bracket
from .errors import (DecodeError, DegreeError, ForeignGeneratorError, JacobiError, MembershipError,
                     NotClosedError, NotHomomorphismError, NotVectorFieldError, ParseError,
                     RnSymError)
from .expr import parse_element, parse_vector_field
from .lie import (LieAction, LieAlgebra, abelian, brst_differential, cartan_differential,
                  ce_differential, su2, weil_differential)
from .lifts import (AlphaAssignment, SigmaLadder, cartan_equivalence, check_brst_lift,
                    check_leibniz, check_sigma_ladder, check_strict, equivalence_of_lifts)
from .models import CdgaModel, VectorField, affine, point, sphere_even, torus

__version__ = "0.1.0"

__all__ = ["CoeffPoly", "Generator", "GradedAlgebra", "GradedElement", "RnBundle", "SymElement",
           "are_equivalent", "build_bundle", "bracket_H", "gauge", "map_F", "sym_bracket",
           "sym_d", "sym_element", "AlgebraComplex", "betti", "betti_numbers", "is_exact",
           "sym_cohomology", "Derivation", "apply", "commutator", "is_homological",
           "derived_bracket", "ham_bracket", "hamiltonian_vector_field", "poisson",
           "rogers_bracket", "DecodeError", "DegreeError", "ForeignGeneratorError", "JacobiError",
           "MembershipError", "NotClosedError", "NotHomomorphismError", "NotVectorFieldError",
           "ParseError", "RnSymError", "parse_element", "parse_vector_field", "LieAction",
           "LieAlgebra", "abelian", "brst_differential", "cartan_differential", "ce_differential",
           "su2", "weil_differential", "AlphaAssignment", "SigmaLadder", "cartan_equivalence",
           "check_brst_lift", "check_leibniz", "check_sigma_ladder", "check_strict",
           "equivalence_of_lifts", "CdgaModel", "VectorField", "affine", "point", "sphere_even",
           "torus"]
