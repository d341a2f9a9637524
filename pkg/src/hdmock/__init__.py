"""Exact and numeric tools for level one modular forms, their cohomology and shadows."""

__version__ = "0.1.0"

from .series import QSeries, series_add, series_mul, series_Dq, series_invert
from .modforms import (
    FormSpace, basis_space, bernoulli, delta, dim_M, dim_S, eisenstein,
    j_invariant, reduce_in_space,
)
from .bol import BolQuotientReport, ConsistencyError, bol_operator, bol_quotient_dim
from .cohomology import (
    GammaMatrix, RepElement, Cocycle, S, T, U, h0_dim, h1_dim,
    quotient_invariants_dim, slash_rep,
)
from .analytic import (
    HPoint, eval_series, modular_residual, period_polynomial, eichler_star,
    e2_completion_residual,
)
from .graded import (
    GrAlgebra, GrBasisLabel, GrElement, Variant, gr_dimension, gr_product,
    h1_mult, is_pure, shadow_of,
)
