#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Compatibility Module
-------------------
Compatibility tables alpha[j][i] realizing L P_{mk+j} = sum_i alpha_{k,j,i} P_{mk+j+i}
for the shift E (linear algebra over Q(k)) and the multiplication X (closed form),
plus sampled and exact certification of a table against its basis.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import logging
from dataclasses import dataclass
from math import ceil
from typing import List, Optional, Tuple

import numpy as np

from . import config
from .algebra import (
    POLY_RING,
    RATFUNC_FIELD,
    SECTION_RING,
    X,
    XK,
    Rat,
    RatFunc,
    rat,
    ratfunc,
    ratfunc_eval,
    render_ratfunc,
    solve_linear_system,
    substitute,
)
from .bases import SectionedBasis, e_compat_bound, shift_quotient_roots
from .errors import CompatibilityError, PoleError, SingularSystemError

log = logging.getLogger("fbm.compatibility")


@dataclass(frozen=True)
class Compatibility:
    """alpha[j][i + A] for i in -A..B, one row per section"""

    operator: str
    A: int
    B: int
    m: int
    alpha: Tuple[Tuple[RatFunc, ...], ...]

    def coefficient(self, j: int, i: int) -> RatFunc:
        if not -self.A <= i <= self.B:
            return RATFUNC_FIELD.zero
        return self.alpha[j][i + self.A]

    def band(self) -> range:
        return range(-self.A, self.B + 1)

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "A": self.A,
            "B": self.B,
            "m": self.m,
            "alpha": [[render_ratfunc(c) for c in row] for row in self.alpha],
        }

    def describe(self) -> List[str]:
        lines = []
        lhs = "P(x+1)" if self.operator == "E" else "x*P(x)"
        for j in range(self.m):
            terms = []
            for i in self.band():
                c = self.coefficient(j, i)
                if c:
                    index = f"{self.m}k+{j}" if i == 0 else f"{self.m}k+{j}{i:+d}"
                    terms.append(f"({render_ratfunc(c)})*P[{index}]")
            lines.append(f"{lhs}[{self.m}k+{j}] = " + " + ".join(terms))
        return lines


@dataclass(frozen=True)
class CompatibilityReport:
    passed: bool
    checked: int
    failure: Optional[Tuple[int, int, Rat]] = None

    def describe(self) -> str:
        if self.passed:
            return f"✅ compatibility identity holds on {self.checked} samples"
        j, k0, x0 = self.failure
        return f"❌ compatibility identity fails at section {j}, k = {k0}, x = {x0}"


def x_compatibility(basis: SectionedBasis) -> Compatibility:
    """x P_n = rho_{n+1} P_n + P_{n+1} / lead_ratio(n)"""
    rows = tuple((step.rho.to_ratfunc(), 1 / step.lead_ratio) for step in basis.steps)
    return Compatibility("X", 0, 1, basis.m, rows)


def _section_system(basis: SectionedBasis, j: int, width: int) -> Optional[Tuple[RatFunc, ...]]:
    """Solve P_{mk+j}(x+1) = sum_{i=-width}^{0} alpha_i P_{mk+j+i}(x) for section j"""
    roots = shift_quotient_roots(basis, j, width)
    if roots is None:
        return None
    steps = [basis.symbolic_step(s) for s in range(j - width, j)]

    # quotients P_{mk+j+i} / P_{mk+j-width}, i = -width..0
    quotients = [SECTION_RING.one]
    for rho, lead in steps:
        quotients.append(quotients[-1] * (XK - rho) * lead)

    target = SECTION_RING.one
    for _, lead in steps:
        target = target * lead
    for root, mult in roots.items():
        target = target * (XK - root.to_ratfunc()) ** mult

    zero = SECTION_RING.domain.zero
    matrix = [[q.get((d,), zero) for q in quotients] for d in range(width + 1)]
    rhs = [target.get((d,), zero) for d in range(width + 1)]
    try:
        solution = solve_linear_system(matrix, rhs)
    except SingularSystemError as e:
        log.debug("⚠️ Section %d at A = %d: %s", j, width, e.message)
        return None
    return tuple(solution)


def e_compatibility(basis: SectionedBasis, A_hint: int = None, minimize: bool = None,
                    depth: int = None) -> Compatibility:
    """E-compatibility table with B = 0 and alpha_{k,j,0} = 1"""
    minimize = config.MINIMIZE_A if minimize is None else minimize
    width = A_hint
    if width is None:
        width = e_compat_bound(basis, depth)
        if width is None:
            raise CompatibilityError(f"{basis.label} is not compatible with E: no A within the structural cap")

    rows = [_section_system(basis, j, width) for j in range(basis.m)]
    if any(row is None for row in rows):
        raise CompatibilityError(f"{basis.label} is not ({width},0)-compatible with E")

    while minimize and width > 0:
        smaller = [_section_system(basis, j, width - 1) for j in range(basis.m)]
        if any(row is None for row in smaller):
            break
        log.debug("🔄 E-compatibility also holds with A = %d", width - 1)
        rows, width = smaller, width - 1

    for j, row in enumerate(rows):
        if row[-1] != 1:
            raise CompatibilityError(f"section {j}: leading compatibility coefficient is {render_ratfunc(row[-1])}, not 1")
    log.debug("✅ %s is (%d,0)-compatible with E in %d sections", basis.label, width, basis.m)
    return Compatibility("E", width, 0, basis.m, tuple(rows))


def scaled_compatibility(compat: Compatibility, ratio) -> Compatibility:
    """Table for the basis a_n P_n with a_{n+1}/a_n = ratio(n)"""
    ratio = ratfunc(ratio)
    m = compat.m
    rows = []
    for j in range(m):
        row = []
        for i in compat.band():
            factor = RATFUNC_FIELD.one
            if i < 0:
                for t in range(j + i, j):
                    factor = factor * substitute(ratio, m, t)
            else:
                for t in range(j, j + i):
                    factor = factor / substitute(ratio, m, t)
            row.append(compat.coefficient(j, i) * factor)
        rows.append(tuple(row))
    return Compatibility(compat.operator, compat.A, compat.B, m, tuple(rows))


def first_valid_k(basis: SectionedBasis, compat: Compatibility, j: int) -> int:
    """Least k with every band index m*k + j + i nonnegative"""
    return max(0, ceil((compat.A - j) / basis.m))


def _terms_at(basis: SectionedBasis, compat: Compatibility, j: int, k0: int):
    n = basis.m * k0 + j
    for i in compat.band():
        if n + i < 0:
            continue
        c = compat.coefficient(j, i)
        if c:
            yield n + i, ratfunc_eval(c, k0)


def compatibility_identity_holds(basis: SectionedBasis, compat: Compatibility, j: int, k0: int) -> bool:
    """Exact polynomial identity in x at section j, period k0"""
    n = basis.m * k0 + j
    element = basis.element(n)
    lhs = element.compose(X, X + 1) if compat.operator == "E" else element * X
    rhs = sum((basis.element(index) * value for index, value in _terms_at(basis, compat, j, k0)), POLY_RING.zero)
    return lhs == rhs


def first_identity_failure(basis: SectionedBasis, compat: Compatibility,
                           count: int = None) -> Optional[Tuple[int, int]]:
    """(j, k0) of the first failing polynomial identity over the first count valid periods"""
    count = config.IDENTITY_CHECK_VALUES if count is None else count
    for j in range(basis.m):
        start = first_valid_k(basis, compat, j)
        for k0 in range(start, start + count):
            if not compatibility_identity_holds(basis, compat, j, k0):
                return j, k0
    return None


def _identity_at_point(basis: SectionedBasis, compat: Compatibility, j: int, k0: int, x0: Rat) -> bool:
    n = basis.m * k0 + j
    top = n + compat.B
    if compat.operator == "E":
        lhs = basis.value(n, x0 + 1)
    else:
        lhs = x0 * basis.value(n, x0)
    row = basis.values(x0, top + 1)
    rhs = sum((value * row[index] for index, value in _terms_at(basis, compat, j, k0)), rat(0))
    return lhs == rhs


def verify_compatibility(basis: SectionedBasis, compat: Compatibility, samples: int = None,
                         bound: int = None, seed: int = None) -> CompatibilityReport:
    """Check the defining identity at random (section, k, x) samples"""
    samples = config.COMPAT_SAMPLES if samples is None else samples
    bound = config.COMPAT_SAMPLE_BOUND if bound is None else bound
    rng = np.random.default_rng(config.RANDOM_SEED if seed is None else seed)
    for count in range(samples):
        j = int(rng.integers(0, basis.m))
        k0 = first_valid_k(basis, compat, j) + int(rng.integers(0, bound + 1))
        x0 = rat(int(rng.integers(0, bound + 1)))
        try:
            ok = _identity_at_point(basis, compat, j, k0, x0)
        except PoleError:
            ok = False
        if not ok:
            log.debug("❌ compatibility sample %d failed: j=%d k=%d x=%s", count, j, k0, x0)
            return CompatibilityReport(False, count + 1, (j, k0, x0))
    log.debug("✅ %d compatibility samples passed", samples)
    return CompatibilityReport(True, samples)


def compatibility_tables(basis: SectionedBasis, A_hint: int = None, minimize: bool = None,
                         depth: int = None) -> Tuple[Compatibility, Compatibility]:
    return e_compatibility(basis, A_hint, minimize, depth), x_compatibility(basis)
