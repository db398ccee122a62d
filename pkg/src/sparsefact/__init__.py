"""Deterministic factorization of sparse multivariate polynomials over
finite fields, with a Newton-polytope engine for factor-sparsity analytics."""

from .field import make_field, FieldCtx, FieldElem
from .sparsepoly import (SparsePoly, Factorization, parse_poly, format_poly,
                         make_monic, sparse_divide, phi_score,
                         restrict_to_line, normalize_scalar)
from .polytope import (SBConfig, in_hull, support_of, newton_vertices,
                       minkowski_sum, sparsity_cap, caratheodory_check,
                       hadamard_example)
from .hitting import HittingSet, gen_hitting_set, gen_anchor_set
from .unifactor import UniPoly, UniFactorization, factor_univariate, \
    squarefree_decompose, is_irreducible
from .resultant import (sylvester_matrix, resultant_univariate,
                        resultant_at_point)
from .bifactor import factor_bivariate, hensel_lift, bi_gcd
from .factorizer import (FactorCfg, factor, factor_monic, blackbox_eval,
                         reconstruct_sparse, verify_factorization)

__all__ = [
    "make_field", "FieldCtx", "FieldElem",
    "SparsePoly", "Factorization", "parse_poly", "format_poly",
    "make_monic", "sparse_divide", "phi_score", "restrict_to_line",
    "normalize_scalar",
    "SBConfig", "in_hull", "support_of", "newton_vertices", "minkowski_sum",
    "sparsity_cap", "caratheodory_check", "hadamard_example",
    "HittingSet", "gen_hitting_set", "gen_anchor_set",
    "UniPoly", "UniFactorization", "factor_univariate",
    "squarefree_decompose", "is_irreducible",
    "sylvester_matrix", "resultant_univariate", "resultant_at_point",
    "factor_bivariate", "hensel_lift", "bi_gcd",
    "FactorCfg", "factor", "factor_monic", "blackbox_eval",
    "reconstruct_sparse", "verify_factorization",
]
