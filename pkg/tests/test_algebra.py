#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests for the exact arithmetic kernel.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

from fractions import Fraction

import pytest
from sympy import QQ

from src.algebra import (
    K,
    X,
    integer_roots,
    is_negative,
    poly,
    poly_coefficients,
    poly_eval,
    poly_to_ratfunc,
    rat,
    ratfunc,
    ratfunc_arith,
    ratfunc_eval,
    ratfunc_to_poly,
    render_poly,
    render_rat,
    render_ratfunc,
    shift,
    solve_linear_system,
    substitute,
)
from src.errors import AlgebraError, PoleError, SingularSystemError


def test_rat_reduces_inputs():
    assert rat("3/6") == QQ(1, 2)
    assert rat(Fraction(2, 8)) == QQ(1, 4)
    assert rat(6, 4) == QQ(3, 2)
    assert rat(" -7 ") == -7


def test_rat_rejects_zero_denominator():
    with pytest.raises(AlgebraError):
        rat(1, 0)


def test_ratfunc_arith_reduces():
    quotient = ratfunc_arith(K ** 2 - 1, K + 1, "div")
    assert quotient == K - 1
    assert ratfunc_arith(1 / K, 1 / (K + 1), "sub") == 1 / (K * (K + 1))


def test_ratfunc_arith_errors():
    with pytest.raises(AlgebraError):
        ratfunc_arith(K, 0, "div")
    with pytest.raises(AlgebraError):
        ratfunc_arith(K, K, "pow")


def test_ratfunc_eval_and_poles():
    f = (2 * K + 1) / (K - 2)
    assert ratfunc_eval(f, 3) == 7
    assert ratfunc_eval(f, QQ(1, 2)) == QQ(-4, 3)
    with pytest.raises(PoleError) as info:
        ratfunc_eval(f, 2)
    assert info.value.point == 2


def test_substitute_and_shift():
    f = (K + 1) / (K - 1)
    assert substitute(f, 2, 1) == (K + 1) / K
    assert shift(K ** 2, 1) == (K + 1) ** 2
    assert shift(f, 0) == f
    assert shift(f, -1) == K / (K - 2)


def test_is_negative():
    assert is_negative(-K / (K + 1))
    assert not is_negative(1 / (K + 1))
    assert not is_negative(ratfunc(0))


def test_polynomial_helpers():
    p = poly([1, 2, 3])
    assert p == 3 * X ** 2 + 2 * X + 1
    assert poly_coefficients(p) == [1, 2, 3]
    assert poly_coefficients(poly([])) == []
    assert poly_eval(X ** 2 - 1, 3) == 8


def test_poly_ratfunc_renaming():
    assert poly_to_ratfunc(X ** 2 + 1) == K ** 2 + 1
    assert ratfunc_to_poly(K ** 2 + 1) == X ** 2 + 1
    assert ratfunc_to_poly(ratfunc(0)) == 0
    with pytest.raises(AlgebraError):
        ratfunc_to_poly(1 / K)


def test_solve_linear_system():
    solution = solve_linear_system([[K, 1], [1, -1]], [K ** 2 + 1, K - 1])
    assert solution == [K, 1]


def test_solve_linear_system_with_rational_entries():
    matrix = [[1 / (K + 1), 1], [0, K]]
    solution = solve_linear_system(matrix, [2, K ** 2])
    assert solution == [(2 - K) * (K + 1), K]


def test_singular_system_reports_rank():
    with pytest.raises(SingularSystemError) as info:
        solve_linear_system([[1, K], [2, 2 * K]], [1, 2])
    assert info.value.rank == 1
    assert info.value.size == 2


def test_rendering():
    assert render_rat(QQ(-3, 4)) == "-3/4"
    assert render_rat(5) == "5"
    assert render_poly(X ** 2 - 2 * X + 1) == "x^2-2*x+1"
    assert render_ratfunc((2 * K + 1) / (K + 1)) == "(2*k+1)/(k+1)"
    assert render_ratfunc(K - 1) == "k-1"
    assert render_ratfunc(1 / K) == "1/k"


def test_integer_roots():
    assert integer_roots(X ** 3 - X) == [-1, 0, 1]
    assert integer_roots(X * (2 * X - 1)) == [0]
    assert integer_roots(X ** 2 + 1) == []
    with pytest.raises(AlgebraError):
        integer_roots(poly([]))
