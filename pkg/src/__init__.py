#!/usr/bin/env python3
"""
fbm - Factorial Basis Method
Definite-sum solutions of linear recurrences through factorial polynomial bases
"""

__version__ = "1.0.0"
__author__ = "Kiko Cisneros"

from .algebra import ratfunc, ratfunc_arith, ratfunc_eval, solve_linear_system
from .bases import (
    SectionedBasis,
    binomial_basis,
    d_compat_degree,
    e_compat_bound,
    expand_polynomial,
    expand_sequence,
    falling_basis,
    generalized_binomial,
    power_basis,
    product_basis,
    quasi_triangular_witness,
    scale_hypergeometric,
    shuffled_basis,
)
from .compatibility import e_compatibility, verify_compatibility, x_compatibility
from .ore import OreMatrix, OreOp, PolyOp, clear_negative, gcrd, ore_apply, ore_mul, right_divmod
from .parser import parse_basis, parse_operator, parse_ore_operator, parse_ratfunc
from .pipeline import (
    associated_matrix,
    associated_operator,
    evaluate_solution,
    first_column,
    promote,
    reduction_of_order,
    sectioned_matrices,
    solve_section0,
    verify_annihilation,
)
