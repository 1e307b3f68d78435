#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Algebra Kernel Module
--------------------
Exact arithmetic shared by every other module: big rationals (QQ), dense
polynomials in x, reduced rational functions in k, and linear solving over Q(k).
All heavy lifting is delegated to sympy's low-level polys layer.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import logging
import operator
from functools import lru_cache, reduce
from fractions import Fraction
from typing import Iterable, List, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.rings import PolyElement, ring

from . import config
from .errors import AlgebraError, PoleError, SingularSystemError

log = logging.getLogger("fbm.algebra")

# Q(k): coefficient field of shift operators
RATFUNC_FIELD, K = field(config.ORE_VARIABLE, QQ)
# Q[k]: numerators and denominators of RATFUNC_FIELD elements
K_RING = RATFUNC_FIELD.ring
# Q[x]: basis elements and recurrence coefficients
POLY_RING, X = ring(config.POLY_VARIABLE, QQ)
# Q(k)[x]: basis elements whose section index k stays symbolic
SECTION_RING, XK = ring(config.POLY_VARIABLE, RATFUNC_FIELD.to_domain())

Rat = QQ.dtype
RatFunc = FracElement
Poly = PolyElement

_ARITH = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat(numerator, denominator=1) -> Rat:
    """Build a reduced rational from integers, rationals or 'p/q' strings"""
    value = _as_rat(numerator)
    if denominator != 1:
        den = _as_rat(denominator)
        if not den:
            raise AlgebraError("zero denominator")
        value = value / den
    return value


def _as_rat(value) -> Rat:
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return rat(int(num), int(den))
        return QQ(int(text))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, bool):
        return QQ(int(value))
    try:
        return QQ.convert(value)
    except Exception as e:
        raise AlgebraError(f"cannot read {value!r} as a rational: {e}")


def ratfunc(value) -> RatFunc:
    """Coerce integers, rationals and Q[k] polynomials into Q(k)"""
    if isinstance(value, FracElement):
        if value.field != RATFUNC_FIELD:
            raise AlgebraError(f"rational function over foreign field {value.field}")
        return value
    if isinstance(value, PolyElement):
        if value.ring == K_RING:
            return RATFUNC_FIELD.new(value, K_RING.one)
        if value.ring == POLY_RING:
            return poly_to_ratfunc(value)
        raise AlgebraError(f"polynomial over foreign ring {value.ring}")
    return RATFUNC_FIELD.ground_new(_as_rat(value))


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field operation on two rational functions; results are always reduced"""
    if op not in _ARITH:
        raise AlgebraError(f"unknown operation '{op}'")
    a, b = ratfunc(a), ratfunc(b)
    if op == "div" and not b:
        raise AlgebraError("division by the zero rational function")
    return _ARITH[op](a, b)


def ratfunc_eval(f: RatFunc, x0) -> Rat:
    """Evaluate f at a rational point, raising PoleError on a pole"""
    f = ratfunc(f)
    x0 = _as_rat(x0)
    den = f.denom.evaluate(K_RING.gens[0], x0)
    if not den:
        raise PoleError(x0, f"pole of {render_ratfunc(f)} at {render_rat(x0)}")
    return f.numer.evaluate(K_RING.gens[0], x0) / den


def substitute(f: RatFunc, slope, offset) -> RatFunc:
    """f(slope*k + offset)"""
    f = ratfunc(f)
    k = K_RING.gens[0]
    image = k * _as_rat(slope) + _as_rat(offset)
    return RATFUNC_FIELD.new(f.numer.compose(k, image), f.denom.compose(k, image))


@lru_cache(maxsize=config.SHIFT_CACHE_SIZE)
def shift(f: RatFunc, d: int) -> RatFunc:
    """f(k + d)"""
    if d == 0:
        return f
    return substitute(f, 1, d)


def is_negative(f: RatFunc) -> bool:
    """Sign of the leading coefficient of the numerator (denominators are normalized positive)"""
    return bool(f) and f.numer.LC < 0


def lcm_denominators(fs: Iterable[RatFunc]) -> Poly:
    return reduce(lambda acc, f: acc.lcm(f.denom), fs, K_RING.one)


# Polynomials in x

def poly(coefficients: Sequence) -> Poly:
    """Polynomial in x from coefficients listed lowest degree first"""
    dense = [_as_rat(c) for c in reversed(list(coefficients))]
    return POLY_RING.from_list(dense) if dense else POLY_RING.zero


def poly_coefficients(p: Poly) -> List[Rat]:
    """Coefficients of p lowest degree first; empty for the zero polynomial"""
    return list(reversed(p.to_dense())) if p else []


def poly_eval(p: Poly, x0) -> Rat:
    return p.evaluate(p.ring.gens[0], _as_rat(x0))


def poly_to_ratfunc(p: Poly) -> RatFunc:
    """Rename x to k"""
    return RATFUNC_FIELD.new(K_RING.from_list(p.to_dense()) if p else K_RING.zero, K_RING.one)


def ratfunc_to_poly(f: RatFunc) -> Poly:
    """Rename k to x; f must be a polynomial"""
    f = ratfunc(f)
    if not f.denom.is_ground:
        raise AlgebraError(f"{render_ratfunc(f)} is not a polynomial")
    if not f:
        return POLY_RING.zero
    return POLY_RING.from_list(f.numer.to_dense()).quo_ground(f.denom.LC)


# Linear algebra over Q(k)

def solve_linear_system(matrix: Sequence[Sequence[RatFunc]], rhs: Sequence[RatFunc]) -> List[RatFunc]:
    """Unique solution of matrix * x = rhs over Q(k).

    Row denominators are cleared first so the elimination runs fraction-free
    over the polynomial ring Q[k].
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix) or len(rhs) != size:
        raise AlgebraError("linear system must be square with a matching right-hand side")
    if size == 0:
        return []

    rows, column = [], []
    for row, b in zip(matrix, rhs):
        entries = [ratfunc(a) for a in row] + [ratfunc(b)]
        common = lcm_denominators(entries)
        cleared = [e.numer * common.exquo(e.denom) for e in entries]
        rows.append(cleared[:-1])
        column.append([cleared[-1]])

    domain = K_RING.to_domain()
    system = DomainMatrix(rows, (size, size), domain)
    target = DomainMatrix(column, (size, 1), domain)
    try:
        numerators, denominator = system.solve_den(target, method="rref")
    except DMNonInvertibleMatrixError:
        rank = system.to_field().rank()
        log.debug("❌ Singular system: size %d, rank %d", size, rank)
        raise SingularSystemError(rank, size)

    return [RATFUNC_FIELD.new(entry[0], denominator) for entry in numerators.to_list()]


# Rendering

def render_rat(q) -> str:
    q = _as_rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _monomial(var: str, degree: int) -> str:
    if degree == 0:
        return ""
    if degree == 1:
        return var
    return f"{var}^{degree}"


def render_poly(p: Poly, var: str = None) -> str:
    """Expanded rendering with explicit '*' and '^', highest degree first"""
    var = var or str(p.ring.symbols[0])
    if not p:
        return "0"
    pieces = []
    for (degree,), coeff in sorted(p.terms(), key=lambda term: -term[0][0]):
        size = abs(coeff)
        mono = _monomial(var, degree)
        if not mono:
            body = render_rat(size)
        elif size == 1:
            body = mono
        else:
            body = f"{render_rat(size)}*{mono}"
        pieces.append(("-" if coeff < 0 else "+", body))

    text = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        text += sign + body
    return text


def render_ratfunc(f: RatFunc, var: str = None) -> str:
    """Render a reduced rational function, e.g. '(2*k+1)/(k+1)'"""
    f = ratfunc(f)
    var = var or config.ORE_VARIABLE
    num, den = f.numer, f.denom
    if den == 1:
        return render_poly(num, var)
    num_text = render_poly(num, var)
    if len(num.terms()) > 1:
        num_text = f"({num_text})"
    den_text = render_poly(den, var)
    bare = den.is_ground or (len(den.terms()) == 1 and den.LC == 1)
    if not bare:
        den_text = f"({den_text})"
    return f"{num_text}/{den_text}"


def integer_roots(p: Poly) -> List[int]:
    """Integer roots of a univariate polynomial over Q, ascending"""
    if not p:
        raise AlgebraError("the zero polynomial has every root")
    roots = set()
    for factor, _ in p.factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.to_dense()
            root = -b / a
            if root.denominator == 1:
                roots.add(int(root.numerator))
    return sorted(roots)
