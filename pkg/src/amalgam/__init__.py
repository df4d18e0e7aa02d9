"""Exact computations with finite commutative rings and amalgamated algebras.

The subpackages build rings, ideals and modules over finite carriers,
form amalgamations R >< ^f J (with duplications and trivial extensions as
special cases), decide Prufer-type predicates, and check the transfer
results for these predicates on concrete instances.
"""

from .constructions import (AmalgamInstance, amalgamation, duplication, has_condition_star,
                            lemma_conditions, localization_iso, prime_lifts, star_sets,
                            trivial_extension)
from .errors import (AmalgamError, InconsistencyError, InputError, InvariantError,
                     PreconditionError, QueryError, ResourceCapError, ValidationError)
from .ideals import Ideal, all_ideals, ideal_generated, jacobson, max_spec, spec
from .predicates import (gaussian_direct_check, gaussian_witness, is_arithmetical,
                         is_chain_ring, is_gaussian, is_prufer, is_total_quotient_ring,
                         is_valuation_domain)
from .rings import (FiniteRing, Polynomial, RingHom, make_gf, make_hom, make_poly_quotient,
                    make_product, make_quotient, make_zmod)

__version__ = "0.1.0"

__all__ = [
    "AmalgamInstance", "amalgamation", "duplication", "has_condition_star",
    "lemma_conditions", "localization_iso", "prime_lifts", "star_sets", "trivial_extension",
    "AmalgamError", "InconsistencyError", "InputError", "InvariantError", "PreconditionError",
    "QueryError", "ResourceCapError", "ValidationError", "Ideal", "all_ideals",
    "ideal_generated", "jacobson", "max_spec", "spec", "gaussian_direct_check",
    "gaussian_witness", "is_arithmetical", "is_chain_ring", "is_gaussian", "is_prufer",
    "is_total_quotient_ring", "is_valuation_domain", "FiniteRing", "Polynomial", "RingHom",
    "make_gf", "make_hom", "make_poly_quotient", "make_product", "make_quotient", "make_zmod",
]
