#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Tests for shift operators, operator matrices and recurrence operators.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

from math import factorial

import pytest

from src.algebra import K, X
from src.errors import OperatorError, PoleError
from src.ore import (
    OreMatrix,
    OreOp,
    PolyOp,
    canonical,
    clear_negative,
    gcrd,
    mat_arith,
    ore_apply,
    ore_mul,
    ore_pow,
    primitive_part,
    right_divmod,
)

S = OreOp.shift_power(1)
S_INV = OreOp.shift_power(-1)
k = OreOp.monomial(K)


def test_commutation_rule():
    assert S * k == OreOp.monomial(K + 1, 1)
    assert S_INV * k * S == k - 1
    assert k * S != S * k


def test_trimming_and_orders():
    op = OreOp([0, 1, K, 0], -1)
    assert op.coorder == 0
    assert op.order == 1
    assert op.coefficient(1) == K
    assert OreOp().order == -1
    mixed = OreOp.from_terms({-1: K, 2: 1})
    assert (mixed.coorder, mixed.order) == (-1, 2)
    assert list(mixed.terms()) == [(-1, K), (2, 1)]


def test_powers():
    assert ore_pow(S + 1, 2) == S * S + 2 * S + 1
    assert (S + k) ** 0 == OreOp.monomial(1)
    with pytest.raises(OperatorError):
        ore_pow(S + 1, -1)


def test_apply_to_sequences():
    factorial_ratio = S - (k + 1)
    for k0 in range(10):
        assert ore_apply(factorial_ratio, factorial, k0) == 0
    assert ore_apply(S_INV, [5, 6], 0) == 0
    assert (S + S_INV).apply([1, 2, 3], 1) == 4


def test_apply_reports_poles():
    op = OreOp.monomial(1 / (K - 2), 1)
    with pytest.raises(PoleError):
        op.apply(lambda i: i, 2)


def test_apply_needs_terms_in_window():
    with pytest.raises(OperatorError):
        (S + 1).apply([1], 0)


def test_clear_negative():
    t, cleared = clear_negative(OreOp.monomial(K, -2) + S)
    assert t == 2
    assert cleared == OreOp.monomial(K + 2) + OreOp.shift_power(3)


def test_canonical_form():
    op = OreOp([K / 2, K], -1)
    assert canonical(op) == OreOp([1, 2])
    assert primitive_part(-(S - K / 3)) == OreOp([-K, 3])


def test_right_division():
    divisor = S - 2
    product = (S + k) * divisor
    quotient, remainder = right_divmod(product + 1, divisor)
    assert quotient == S + k
    assert remainder == OreOp.monomial(1)


def test_right_division_errors():
    with pytest.raises(OperatorError):
        right_divmod(S, OreOp())
    with pytest.raises(OperatorError):
        right_divmod(S_INV + 1, S)


def test_gcrd_finds_common_right_factor():
    common = S - 2
    a = (S + k) * common
    b = (k * S + 1) * common
    assert gcrd([a, b]) == OreOp([-2, 1])


def test_gcrd_of_coprime_operators():
    assert gcrd([S - 1, S - 2]) == OreOp.monomial(1)


def test_gcrd_errors():
    with pytest.raises(OperatorError):
        gcrd([])
    with pytest.raises(OperatorError):
        gcrd([OreOp(), OreOp()])


def test_monic_and_rendering():
    assert (2 * S + k).monic() == S + OreOp.monomial(K / 2)
    assert str(S - k - k * S_INV) == "S - k - k*S^-1"
    assert str(OreOp.monomial((2 * K + 1) / (K + 1), 2)) == "(2*k+1)/(k+1)*S^2"
    assert str(OreOp()) == "0"


def test_operator_matrix_products():
    m = OreMatrix([[S, 1], [0, k]])
    identity = OreMatrix.identity(2)
    assert identity @ m == m
    assert m @ identity == m
    square = m @ m
    assert square[0, 0] == S * S
    assert square[0, 1] == S + k
    assert square[1, 1] == k * k
    assert (m + m)[0, 0] == 2 * S


def test_named_products_match_operators():
    assert ore_mul(S, k) == S * k
    assert ore_mul(S_INV, k * S) == OreOp.monomial(K - 1)
    assert ore_mul(OreOp(), S).is_zero
    m = OreMatrix([[S, 1], [0, k]])
    assert mat_arith(m, m, "mul") == m @ m
    assert mat_arith(m, m, "add") == m + m
    with pytest.raises(OperatorError):
        mat_arith(m, m, "div")


def test_operator_matrix_vector():
    m = OreMatrix([[S, 1], [0, k]])
    assert m.apply([OreOp.monomial(1), S]) == [2 * S, k * S]
    with pytest.raises(OperatorError):
        m.apply([S])


def test_operator_matrix_shape_errors():
    with pytest.raises(OperatorError):
        OreMatrix([[S, 1]])
    with pytest.raises(OperatorError):
        OreMatrix.identity(2) @ OreMatrix.identity(3)


def test_recurrence_operator_commutation():
    E = PolyOp([0, 1])
    x = PolyOp([X])
    assert E * x == PolyOp([0, X + 1])
    assert x * E == PolyOp([0, X])
    assert (E - 1) ** 2 == PolyOp([1, -2, 1])


def test_recurrence_operator_apply():
    op = PolyOp([-(X + 1), 1])
    assert all(op.apply(factorial, n) == 0 for n in range(10))
    assert str(PolyOp([-3, 1])) == "E - 3"


def test_recurrence_ore_conversion():
    op = PolyOp([X ** 2, 0, X + 1])
    assert PolyOp.from_ore(op.to_ore()) == op
    assert op.to_ore() == OreOp([K ** 2, 0, K + 1])
    with pytest.raises(OperatorError):
        PolyOp.from_ore(S_INV)
