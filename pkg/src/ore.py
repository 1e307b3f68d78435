#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Ore Operators Module
-------------------
Laurent shift operators over Q(k) with the commutation rule S*f(k) = f(k+1)*S,
square matrices of them, recurrence operators in Q[x]<E>, right division and
greatest common right divisors.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import logging
from functools import reduce
from math import gcd, lcm
from typing import Callable, Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np

from . import config
from .algebra import (
    POLY_RING,
    RATFUNC_FIELD,
    X,
    Poly,
    Rat,
    RatFunc,
    is_negative,
    lcm_denominators,
    poly_eval,
    poly_to_ratfunc,
    rat,
    ratfunc,
    ratfunc_eval,
    ratfunc_to_poly,
    render_ratfunc,
    shift,
)
from .errors import AlgebraError, OperatorError, PoleError

log = logging.getLogger("fbm.ore")

SequenceLike = Union[Sequence, Callable[[int], object]]


def sequence_term(seq: SequenceLike, index: int) -> Rat:
    """Exact term of a list-like or callable sequence"""
    if callable(seq):
        return rat(seq(index))
    try:
        return rat(seq[index])
    except IndexError:
        raise OperatorError(f"sequence window does not cover index {index}")


class OreOp:
    """Laurent shift operator sum c_i(k) S^i stored densely from co-order to order"""

    __slots__ = ("coorder", "coeffs", "_hash")

    def __init__(self, coeffs: Sequence = (), coorder: int = 0):
        values = [ratfunc(c) for c in coeffs]
        lo, hi = 0, len(values)
        while lo < hi and not values[lo]:
            lo += 1
        while hi > lo and not values[hi - 1]:
            hi -= 1
        self.coeffs: Tuple[RatFunc, ...] = tuple(values[lo:hi])
        self.coorder = coorder + lo if self.coeffs else 0
        self._hash = None

    @classmethod
    def from_terms(cls, terms: Dict[int, object]) -> "OreOp":
        """Build from a map exponent -> coefficient"""
        terms = {i: c for i, c in terms.items() if c}
        if not terms:
            return cls()
        low, high = min(terms), max(terms)
        return cls([terms.get(i, 0) for i in range(low, high + 1)], low)

    @classmethod
    def monomial(cls, coeff, exponent: int = 0) -> "OreOp":
        return cls([coeff], exponent)

    @classmethod
    def shift_power(cls, exponent: int = 1) -> "OreOp":
        return cls([1], exponent)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> int:
        """Highest exponent; -1 for the zero operator"""
        return self.coorder + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_scalar(self) -> bool:
        return self.is_zero or (self.coorder == 0 and len(self.coeffs) == 1)

    @property
    def leading(self) -> RatFunc:
        return self.coeffs[-1] if self.coeffs else RATFUNC_FIELD.zero

    def coefficient(self, exponent: int) -> RatFunc:
        index = exponent - self.coorder
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return RATFUNC_FIELD.zero

    def terms(self) -> Iterator[Tuple[int, RatFunc]]:
        """Nonzero (exponent, coefficient) pairs, lowest exponent first"""
        for offset, c in enumerate(self.coeffs):
            if c:
                yield self.coorder + offset, c

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        low = min(self.coorder, other.coorder)
        high = max(self.order, other.order)
        return OreOp([self.coefficient(i) + other.coefficient(i) for i in range(low, high + 1)], low)

    __radd__ = __add__

    def __neg__(self):
        return OreOp([-c for c in self.coeffs], self.coorder)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return ore_mul(self, other)

    def __rmul__(self, other):
        # scalar on the left: no shift of coefficients
        c = ratfunc(other)
        return OreOp([c * a for a in self.coeffs], self.coorder)

    def __pow__(self, exponent: int):
        return ore_pow(self, exponent)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.coorder == other.coorder and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coorder, self.coeffs))
        return self._hash

    def __str__(self):
        return render_terms(list(self.terms()), config.ORE_SHIFT, config.ORE_VARIABLE)

    def __repr__(self):
        return f"OreOp({self})"

    def monic(self) -> "OreOp":
        """Left multiple with leading coefficient 1 (display form)"""
        if self.is_zero:
            return self
        return (1 / self.leading) * self

    def apply(self, seq: SequenceLike, k0: int) -> Rat:
        return ore_apply(self, seq, k0)


def _coerce(value):
    if isinstance(value, OreOp):
        return value
    try:
        return OreOp.monomial(ratfunc(value))
    except AlgebraError:
        return NotImplemented


def render_terms(terms: List[Tuple[int, RatFunc]], shift_symbol: str, var: str) -> str:
    """Render (exponent, coefficient) pairs highest exponent first"""
    if not terms:
        return "0"
    pieces = []
    for exponent, coeff in sorted(terms, key=lambda term: -term[0]):
        negative = is_negative(coeff)
        size = -coeff if negative else coeff
        if exponent == 0:
            power = ""
        elif exponent == 1:
            power = shift_symbol
        else:
            power = f"{shift_symbol}^{exponent}"
        text = render_ratfunc(size, var)
        if size.denom == 1 and len(size.numer.terms()) > 1:
            text = f"({text})"
        if not power:
            body = text
        elif size == 1:
            body = power
        else:
            body = f"{text}*{power}"
        pieces.append((negative, body))
    head = ("-" if pieces[0][0] else "") + pieces[0][1]
    return head + "".join(f" {'-' if neg else '+'} {body}" for neg, body in pieces[1:])


def ore_mul(a: OreOp, b: OreOp) -> OreOp:
    """Product under S^i c(k) = c(k+i) S^i"""
    if a.is_zero or b.is_zero:
        return OreOp()
    out = [RATFUNC_FIELD.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for p, ai in enumerate(a.coeffs):
        if not ai:
            continue
        i = a.coorder + p
        for q, bj in enumerate(b.coeffs):
            if bj:
                out[p + q] += ai * shift(bj, i)
    return OreOp(out, a.coorder + b.coorder)


def ore_pow(a: OreOp, exponent: int) -> OreOp:
    if exponent < 0:
        raise OperatorError("negative powers are only defined for monomials")
    result, base = OreOp.monomial(1), a
    while exponent:
        if exponent & 1:
            result = result * base
        base = base * base
        exponent >>= 1
    return result


def ore_apply(op: OreOp, seq: SequenceLike, k0: int) -> Rat:
    """(op c)_{k0} with c_j = 0 for j < 0; dropped terms are never evaluated"""
    total = rat(0)
    for i, c in op.terms():
        index = k0 + i
        if index < 0:
            continue
        try:
            value = ratfunc_eval(c, k0)
        except PoleError:
            raise PoleError(k0, f"coefficient of S^{i} has a pole at k = {k0}")
        if value:
            total += value * sequence_term(seq, index)
    return total


def clear_negative(a: OreOp) -> Tuple[int, OreOp]:
    """(t, S^t * a) with t = max(0, -co-order)"""
    t = max(0, -a.coorder)
    return t, left_shift(a, t)


def left_shift(a: OreOp, t: int) -> OreOp:
    """S^t * a"""
    if a.is_zero or t == 0:
        return a
    return OreOp([shift(c, t) for c in a.coeffs], a.coorder + t)


def primitive_part(a: OreOp) -> OreOp:
    """Left multiple with coprime integer polynomial coefficients and positive leading coefficient"""
    if a.is_zero:
        return a
    common = lcm_denominators(a.coeffs)
    polys = [c.numer * common.exquo(c.denom) for c in a.coeffs]
    content = reduce(lambda acc, p: acc.gcd(p), polys)
    polys = [p.exquo(content) for p in polys]
    values = [v for p in polys for v in p.values()]
    scale = lcm(*(int(v.denominator) for v in values))
    integer = [int(v.numerator) * (scale // int(v.denominator)) for v in values]
    factor = rat(scale, gcd(*integer))
    if polys[-1].LC < 0:
        factor = -factor
    return OreOp([ratfunc(p * factor) for p in polys], a.coorder)


def canonical(a: OreOp) -> OreOp:
    """Normal form up to left units of the Laurent algebra (co-order moved to 0)"""
    if a.is_zero:
        return a
    return primitive_part(left_shift(a, -a.coorder))


def right_divmod(a: OreOp, b: OreOp) -> Tuple[OreOp, OreOp]:
    """(q, r) with a = q*b + r and order(r) < order(b)"""
    if b.is_zero:
        raise OperatorError("division by the zero operator")
    if a.coorder < 0 or b.coorder < 0:
        raise OperatorError("right division needs nonnegative co-orders; apply clear_negative first")
    quotient, remainder = OreOp(), a
    degree, lead = b.order, b.leading
    while not remainder.is_zero and remainder.order >= degree:
        d = remainder.order - degree
        term = OreOp.monomial(remainder.leading / shift(lead, d), d)
        quotient = quotient + term
        remainder = remainder - term * b
    return quotient, remainder


def _gcrd_pair(a: OreOp, b: OreOp) -> OreOp:
    a, b = canonical(a), canonical(b)
    if a.order < b.order:
        a, b = b, a
    while not b.is_zero:
        _, remainder = right_divmod(a, b)
        a, b = b, canonical(remainder)
    return a


def gcrd(ops: Sequence[OreOp]) -> OreOp:
    """Greatest common right divisor in canonical form, folded pairwise"""
    ops = list(ops)
    if not ops:
        raise OperatorError("gcrd of an empty list")
    nonzero = [clear_negative(op)[1] for op in ops if not op.is_zero]
    if not nonzero:
        raise OperatorError("gcrd of zero operators")
    result = canonical(nonzero[0])
    for op in nonzero[1:]:
        result = _gcrd_pair(result, op)
        log.debug("🔄 gcrd step -> order %d", result.order)
    return result


class OreMatrix:
    """Square matrix of shift operators"""

    def __init__(self, entries):
        rows = [list(row) for row in entries]
        m = len(rows)
        if m == 0 or any(len(row) != m for row in rows):
            raise OperatorError("operator matrix must be square and nonempty")
        self.entries = np.empty((m, m), dtype=object)
        for r in range(m):
            for j in range(m):
                value = _coerce(rows[r][j])
                if value is NotImplemented:
                    raise OperatorError(f"entry ({r}, {j}) is not an operator")
                self.entries[r, j] = value
        self.entries.flags.writeable = False

    @classmethod
    def identity(cls, m: int, scalar=1) -> "OreMatrix":
        return cls([[scalar if r == j else 0 for j in range(m)] for r in range(m)])

    @classmethod
    def zeros(cls, m: int) -> "OreMatrix":
        return cls([[0] * m for _ in range(m)])

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, index) -> OreOp:
        return self.entries[index]

    def column(self, j: int) -> List[OreOp]:
        return [self.entries[r, j] for r in range(self.m)]

    def rows(self) -> List[List[OreOp]]:
        return [list(self.entries[r]) for r in range(self.m)]

    def __add__(self, other):
        return mat_arith(self, other, "add")

    def __matmul__(self, other):
        return mat_arith(self, other, "mul")

    def __rmul__(self, scalar):
        return OreMatrix([[scalar * entry for entry in row] for row in self.rows()])

    def apply(self, vector: Sequence[OreOp]) -> List[OreOp]:
        """Matrix-vector product"""
        if len(vector) != self.m:
            raise OperatorError(f"vector of length {len(vector)} for a {self.m}x{self.m} matrix")
        out = []
        for r in range(self.m):
            acc = OreOp()
            for s in range(self.m):
                if not self.entries[r, s].is_zero and not vector[s].is_zero:
                    acc = acc + self.entries[r, s] * vector[s]
            out.append(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, OreMatrix) or other.m != self.m:
            return False
        return all(self.entries[r, j] == other.entries[r, j] for r in range(self.m) for j in range(self.m))

    def __hash__(self):
        return hash(tuple(self.entries.flat))

    def to_strings(self) -> List[List[str]]:
        return [[str(entry) for entry in row] for row in self.rows()]

    def __str__(self):
        return "\n".join("[ " + " | ".join(row) + " ]" for row in self.to_strings())

    def __repr__(self):
        return f"OreMatrix(m={self.m})"


def mat_arith(a: OreMatrix, b: OreMatrix, op: str) -> OreMatrix:
    """Entry-wise sum or row-by-column product of operator matrices"""
    if a.m != b.m:
        raise OperatorError(f"dimension mismatch: {a.m}x{a.m} vs {b.m}x{b.m}")
    m = a.m
    if op == "add":
        return OreMatrix([[a[r, j] + b[r, j] for j in range(m)] for r in range(m)])
    if op == "mul":
        rows = []
        for r in range(m):
            row = []
            for j in range(m):
                acc = OreOp()
                for s in range(m):
                    if not a[r, s].is_zero and not b[s, j].is_zero:
                        acc = acc + a[r, s] * b[s, j]
                row.append(acc)
            rows.append(row)
        return OreMatrix(rows)
    raise OperatorError(f"unknown matrix operation '{op}'")


class PolyOp:
    """Recurrence operator sum p_i(x) E^i with polynomial coefficients"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        values = [c if isinstance(c, Poly) and c.ring == POLY_RING else POLY_RING(rat(c)) for c in coeffs]
        while values and not values[-1]:
            values.pop()
        self.coeffs: Tuple[Poly, ...] = tuple(values)

    @classmethod
    def from_ore(cls, op: OreOp) -> "PolyOp":
        """Rename k to x and S to E; op needs polynomial coefficients and co-order >= 0"""
        if op.is_zero:
            return cls()
        if op.coorder < 0:
            raise OperatorError("negative powers of the shift cannot be promoted")
        coeffs = [POLY_RING.zero] * op.coorder + [ratfunc_to_poly(c) for c in op.coeffs]
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Poly:
        return self.coeffs[-1] if self.coeffs else POLY_RING.zero

    def coefficient(self, i: int) -> Poly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else POLY_RING.zero

    def to_ore(self) -> OreOp:
        return OreOp([poly_to_ratfunc(p) for p in self.coeffs])

    def __add__(self, other):
        other = other if isinstance(other, PolyOp) else PolyOp([other])
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyOp([self.coefficient(i) + other.coefficient(i) for i in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return PolyOp([-p for p in self.coeffs])

    def __sub__(self, other):
        other = other if isinstance(other, PolyOp) else PolyOp([other])
        return self + (-other)

    def __mul__(self, other):
        other = other if isinstance(other, PolyOp) else PolyOp([other])
        if self.is_zero or other.is_zero:
            return PolyOp()
        out = [POLY_RING.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if not p:
                continue
            for j, q in enumerate(other.coeffs):
                if q:
                    out[i + j] += p * q.compose(X, X + i)
        return PolyOp(out)

    def __rmul__(self, other):
        return PolyOp([other]) * self

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise OperatorError("negative powers of a recurrence operator")
        result = PolyOp([1])
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, PolyOp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(tuple(sorted(p.items())) for p in self.coeffs))

    def apply(self, seq: SequenceLike, n: int) -> Rat:
        """(L y)_n = sum_i p_i(n) y_{n+i}"""
        total = rat(0)
        for i, p in enumerate(self.coeffs):
            if p:
                total += poly_eval(p, n) * sequence_term(seq, n + i)
        return total

    def __str__(self):
        terms = [(i, poly_to_ratfunc(p)) for i, p in enumerate(self.coeffs) if p]
        return render_terms(terms, config.POLY_SHIFT, config.POLY_VARIABLE)

    def __repr__(self):
        return f"PolyOp({self})"
