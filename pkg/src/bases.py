#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Factorial Bases Module
---------------------
Factorial polynomial bases encoded by m periodic steps, each appending an
affine-in-k root and multiplying by a rational lead ratio. Provides the builtin
constructors, hypergeometric scaling, product and shuffled bases, the structural
predicates (quasi-triangularity, E- and D-compatibility bounds) and expansions.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import logging
import threading
from collections import Counter, defaultdict
from dataclasses import dataclass
from math import ceil, gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from . import config
from .algebra import (
    K,
    POLY_RING,
    X,
    Poly,
    Rat,
    RatFunc,
    rat,
    ratfunc,
    ratfunc_eval,
    render_rat,
    render_ratfunc,
    substitute,
)
from .errors import BasisError, PoleError

log = logging.getLogger("fbm.bases")


@dataclass(frozen=True)
class Affine:
    """Affine form slope*k + offset"""

    slope: Rat
    offset: Rat

    def __post_init__(self):
        object.__setattr__(self, "slope", rat(self.slope))
        object.__setattr__(self, "offset", rat(self.offset))

    def __call__(self, k) -> Rat:
        return self.slope * k + self.offset

    def reindex(self, scale, shift) -> "Affine":
        """The form evaluated at scale*k + shift"""
        return Affine(self.slope * scale, self.slope * shift + self.offset)

    def to_ratfunc(self) -> RatFunc:
        return ratfunc(self.slope) * K + ratfunc(self.offset)

    def __str__(self):
        return render_ratfunc(self.to_ratfunc())


@dataclass(frozen=True)
class SectionStep:
    """One degree step: appends the root rho(k) and multiplies by lead_ratio(k)"""

    rho: Affine
    lead_ratio: RatFunc

    def __post_init__(self):
        lead = ratfunc(self.lead_ratio)
        if not lead:
            raise BasisError("lead ratio must be a nonzero rational function")
        object.__setattr__(self, "lead_ratio", lead)

    def reindexed(self, scale: int, shift: int) -> "SectionStep":
        return SectionStep(self.rho.reindex(scale, shift), substitute(self.lead_ratio, scale, shift))


class SectionedBasis:
    """Factorial basis whose step n = m*k + j uses section j at period k"""

    def __init__(self, steps: Sequence[SectionStep], p0=1, label: str = "sectioned"):
        self.steps: Tuple[SectionStep, ...] = tuple(steps)
        if not self.steps:
            raise BasisError("a sectioned basis needs at least one section")
        self.p0 = rat(p0)
        if not self.p0:
            raise BasisError("P_0 must be a nonzero constant")
        self.label = label
        self._elements: List[Poly] = [POLY_RING(self.p0)]
        self._lock = threading.Lock()

    @property
    def m(self) -> int:
        return len(self.steps)

    def locate(self, t: int) -> Tuple[SectionStep, int]:
        """Section step and period index of global step t (P_t -> P_{t+1})"""
        return self.steps[t % self.m], t // self.m

    def symbolic_step(self, s: int) -> Tuple[RatFunc, RatFunc]:
        """(root, lead ratio) of global step m*k + s as rational functions of k"""
        q, r = divmod(s, self.m)
        step = self.steps[r]
        return step.rho.reindex(1, q).to_ratfunc(), substitute(step.lead_ratio, 1, q)

    def root(self, n: int) -> Rat:
        """rho_n, the root appended when going from P_{n-1} to P_n (n >= 1)"""
        step, k = self.locate(n - 1)
        return step.rho(k)

    def roots(self, count: int) -> List[Rat]:
        return [self.root(n) for n in range(1, count + 1)]

    def lead_ratio_at(self, t: int) -> Rat:
        step, k = self.locate(t)
        try:
            value = ratfunc_eval(step.lead_ratio, k)
        except PoleError:
            raise BasisError(f"lead ratio of section {t % self.m} has a pole at k = {k} ({self.label})")
        if not value:
            raise BasisError(f"lead ratio of section {t % self.m} vanishes at k = {k} ({self.label})")
        return value

    def element(self, n: int) -> Poly:
        """P_n(x), memoized"""
        if n < 0:
            raise BasisError("basis elements have nonnegative indices")
        with self._lock:
            while len(self._elements) <= n:
                t = len(self._elements) - 1
                factor = (X - self.root(t + 1)) * self.lead_ratio_at(t)
                self._elements.append(self._elements[-1] * factor)
            return self._elements[n]

    def leading_coefficient(self, n: int) -> Rat:
        value = self.p0
        for t in range(n):
            value *= self.lead_ratio_at(t)
        return value

    def values(self, x0, count: int) -> List[Rat]:
        """P_0(x0), ..., P_{count-1}(x0)"""
        x0 = rat(x0)
        out = []
        value = self.p0
        for t in range(count):
            out.append(value)
            if t + 1 < count:
                value = value * self.lead_ratio_at(t) * (x0 - self.root(t + 1))
        return out

    def value(self, n: int, x0) -> Rat:
        return self.values(x0, n + 1)[n]

    def __repr__(self):
        return f"SectionedBasis({self.label}, m={self.m})"

    def __str__(self):
        return self.label


# Builtin constructors

def binomial_basis(a, b=0) -> SectionedBasis:
    """Elements binom(a*x + b, n)"""
    a, b = rat(a), rat(b)
    if a.denominator != 1 or a < 1:
        raise BasisError("binomial basis needs a positive integer a")
    step = SectionStep(Affine(1 / a, -b / a), ratfunc(a) / (K + 1))
    return SectionedBasis([step], 1, f"binomial({render_rat(a)},{render_rat(b)})")


def power_basis(a, b=0) -> SectionedBasis:
    """Elements (a*x + b)^n"""
    a, b = rat(a), rat(b)
    if not a:
        raise BasisError("power basis needs a != 0")
    step = SectionStep(Affine(0, -b / a), a)
    return SectionedBasis([step], 1, f"power({render_rat(a)},{render_rat(b)})")


def falling_basis(a, b, c) -> SectionedBasis:
    """Elements prod_{j<n} (a*x + b - j*c)"""
    a, b, c = rat(a), rat(b), rat(c)
    if not a:
        raise BasisError("falling basis needs a != 0")
    step = SectionStep(Affine(c / a, -b / a), a)
    return SectionedBasis([step], 1, f"falling({render_rat(a)},{render_rat(b)},{render_rat(c)})")


def scale_hypergeometric(basis: SectionedBasis, ratio, a0=1, depth: int = None, label: str = None) -> SectionedBasis:
    """Elements a_n * P_n(x) with a_{n+1} / a_n = ratio(n) and a_0 = a0"""
    ratio = ratfunc(ratio)
    a0 = rat(a0)
    depth = config.CERTIFICATE_DEPTH if depth is None else depth
    if not a0:
        raise BasisError("scaling needs a0 != 0")
    for n in range(depth + 1):
        try:
            value = ratfunc_eval(ratio, n)
        except PoleError:
            raise BasisError(f"scaling ratio {render_ratfunc(ratio, 'n')} has a pole at n = {n}")
        if not value:
            raise BasisError(f"scaling ratio {render_ratfunc(ratio, 'n')} vanishes at n = {n}")
    m = basis.m
    steps = [
        SectionStep(step.rho, step.lead_ratio * substitute(ratio, m, j))
        for j, step in enumerate(basis.steps)
    ]
    label = label or f"scale({basis.label}, {render_ratfunc(ratio, 'n')}, {render_rat(a0)})"
    return SectionedBasis(steps, basis.p0 * a0, label)


def shuffled_basis(factors: Sequence[SectionedBasis], cycle: Sequence[int], label: str = None) -> SectionedBasis:
    """Basis taking, at position j of each period, the next step of factor cycle[j] (1-based)"""
    factors = list(factors)
    cycle = [int(c) for c in cycle]
    if not factors:
        raise BasisError("shuffle needs at least one factor")
    if not cycle:
        raise BasisError("shuffle needs a nonempty cycle")
    for c in cycle:
        if not 1 <= c <= len(factors):
            raise BasisError(f"cycle entry {c} out of range 1..{len(factors)}")

    uses = [cycle.count(i + 1) for i in range(len(factors))]
    multiplier = 1
    for factor, used in zip(factors, uses):
        if used:
            multiplier = lcm(multiplier, factor.m // gcd(factor.m, used))

    steps = []
    for tau in range(multiplier):
        seen = [0] * len(factors)
        for c in cycle:
            i = c - 1
            factor = factors[i]
            position = tau * uses[i] + seen[i]
            seen[i] += 1
            periods = multiplier * uses[i] // factor.m
            q, j = divmod(position, factor.m)
            steps.append(factor.steps[j].reindexed(periods, q))

    p0 = rat(1)
    for factor in factors:
        p0 *= factor.p0
    if label is None:
        label = f"shuffle([{', '.join(f.label for f in factors)}], [{', '.join(map(str, cycle))}])"
    log.debug("🔧 Shuffled %d factors into %d sections", len(factors), len(steps))
    return SectionedBasis(steps, p0, label)


def product_basis(factors: Sequence[SectionedBasis]) -> SectionedBasis:
    """Balanced interleaving: element m*k + j = prod_{i<=j} P^(i)_{k+1} prod_{i>j} P^(i)_k"""
    factors = list(factors)
    label = f"product({', '.join(f.label for f in factors)})"
    return shuffled_basis(factors, range(1, len(factors) + 1), label=label)


def generalized_binomial(a, b, c, m) -> SectionedBasis:
    """Elements binom(a*x + b*n + c, m*n) at indices m*n, interpolated factorially"""
    a, b, c = rat(a), rat(b), rat(c)
    if not a:
        raise BasisError("generalized binomial basis needs a != 0")
    if b.denominator != 1 or int(m) != m or m < 1 or not 0 <= b <= m:
        raise BasisError("generalized binomial basis needs integers m >= 1 and 0 <= b <= m")
    m, b = int(m), int(b)
    lower = falling_basis(a, c, 1)
    upper = falling_basis(a, c + 1, -1)
    shuffled = shuffled_basis([lower, upper], [1] * (m - b) + [2] * b)
    label = f"genbinom({render_rat(a)},{b},{render_rat(c)},{m})"
    return scale_hypergeometric(shuffled, 1 / (K + 1), 1, label=label)


def basis_element(basis: SectionedBasis, n: int) -> Poly:
    return basis.element(n)


# Root-multiset machinery

def _floor(q: Rat) -> int:
    return int(q.numerator // q.denominator)


def _collect_runs(runs) -> Optional[Dict[Affine, int]]:
    """Net multiset of signed arithmetic runs for symbolic k.

    Each run is (sign, u, v, lo, hi): the values u*t + v for lo <= t < hi, where
    lo and hi are pairs (a, b) meaning a*k + b. Returns the net roots as affine
    forms with multiplicities, or None when the net count is unbounded in k.
    """
    constants: Dict[Rat, List[int]] = defaultdict(lambda: [0, 0])
    groups = defaultdict(list)
    for sign, u, v, lo, hi in runs:
        if u == 0:
            count = constants[v]
            count[0] += sign * (hi[0] - lo[0])
            count[1] += sign * (hi[1] - lo[1])
            continue
        if u < 0:
            u = -u
            lo, hi = (-hi[0], -hi[1] + 1), (-lo[0], -lo[1] + 1)
        d = _floor(v / u)
        v0 = v - u * d
        groups[(u, v0)].append(((lo[0], lo[1] + d), sign))
        groups[(u, v0)].append(((hi[0], hi[1] + d), -sign))

    roots = Counter()
    for v, (k_count, count) in constants.items():
        if k_count:
            return None
        if count:
            roots[Affine(0, v)] += count
    for (u, v0), points in groups.items():
        by_slope = defaultdict(list)
        for (a, b), weight in points:
            by_slope[a].append((b, weight))
        for a, marks in by_slope.items():
            if sum(weight for _, weight in marks):
                return None
            marks.sort(key=lambda mark: mark[0])
            running = 0
            for (b, weight), (b_next, _) in zip(marks, marks[1:]):
                running += weight
                if running:
                    for s in range(b, b_next):
                        roots[Affine(u * a, u * s + v0)] += running
    result = {root: mult for root, mult in roots.items() if mult}
    if any(mult < 0 for mult in result.values()):
        return None
    return result


def shift_quotient_roots(basis: SectionedBasis, j: int, width: int) -> Optional[Dict[Affine, int]]:
    """Roots of P_{mk+j}(x+1) / P_{mk+j-width}(x), or None if it is not a polynomial"""
    q, r = divmod(j - width, basis.m)
    runs = []
    for f, step in enumerate(basis.steps):
        u, v = step.rho.slope, step.rho.offset
        runs.append((1, u, v - 1, (0, 0), (1, 1 if f < j else 0)))
        runs.append((-1, u, v, (0, 0), (1, q + (1 if f < r else 0))))
    return _collect_runs(runs)


def e_compat_cap(basis: SectionedBasis) -> int:
    total = 0
    for step in basis.steps:
        u = step.rho.slope
        total += 1 if u == 0 else max(1, ceil(abs(1 / u)))
    return basis.m * total


def _check_inclusion_prefix(basis: SectionedBasis, width: int, depth: int):
    roots = basis.roots(depth + width)
    balance = Counter()
    deficits = 0

    def bump(value, delta):
        nonlocal deficits
        before = balance[value]
        balance[value] = before + delta
        deficits += (balance[value] < 0) - (before < 0)

    for i in range(width):
        bump(roots[i], 1)
    for t in range(1, depth + 1):
        bump(roots[t - 1] + 1, -1)
        if t + width - 1 < len(roots):
            bump(roots[t + width - 1], 1)
        if deficits:
            raise BasisError(
                f"structural E-bound {width} disagrees with the root prefix at k = {t} ({basis.label})"
            )


def e_compat_bound(basis: SectionedBasis, depth: int = None) -> Optional[int]:
    """Least A with [rho_1+1..rho_k+1] contained in [rho_1..rho_{k+A}] for all k"""
    depth = config.CERTIFICATE_DEPTH if depth is None else depth
    cap = e_compat_cap(basis)
    for width in range(cap + 1):
        if all(shift_quotient_roots(basis, j, width) is not None for j in range(basis.m)):
            _check_inclusion_prefix(basis, width, depth)
            log.debug("✅ E-compatibility bound %d for %s", width, basis.label)
            return width
    log.debug("❌ No E-compatibility bound up to %d for %s", cap, basis.label)
    return None


def d_compat_degree(basis: SectionedBasis, depth: int = None) -> Optional[int]:
    """Least p with {rho_1..rho_n} contained in {rho_{n+1}..rho_{n+p}} for all n"""
    depth = config.CERTIFICATE_DEPTH if depth is None else depth
    if any(step.rho.slope != 0 for step in basis.steps):
        return None
    m = basis.m
    positions = defaultdict(list)
    for j, step in enumerate(basis.steps):
        positions[step.rho.offset].append(j)
    degree = 0
    for places in positions.values():
        gaps = [b - a for a, b in zip(places, places[1:])] + [places[0] + m - places[-1]]
        degree = max(degree, max(gaps))

    roots = basis.roots(depth + degree + m)
    observed = 0
    for n in range(1, depth + 1):
        for value in set(roots[:n]):
            nxt = next(i for i in range(n, len(roots)) if roots[i] == value) + 1
            observed = max(observed, nxt - n)
    if observed != degree:
        raise BasisError(f"structural D-degree {degree} disagrees with the root prefix ({observed})")
    return degree


# Quasi-triangularity

@dataclass(frozen=True)
class QuasiTriangularWitness:
    """f(n) = slope*n + offsets[n % period], except at the listed small n"""

    slope: Rat
    period: int
    offsets: Tuple[Rat, ...]
    certificate_depth: int
    exceptions: Tuple[Tuple[int, int], ...] = ()

    def __call__(self, n: int) -> int:
        for index, value in self.exceptions:
            if index == n:
                return value
        return int(self.slope * n + self.offsets[n % self.period])

    def describe(self) -> str:
        if self.period == 1 and not self.exceptions:
            return f"f(n) = {render_ratfunc(ratfunc(self.slope) * K + ratfunc(self.offsets[0]), 'n')}"
        pieces = [f"{render_rat(self.slope)}*n + {render_rat(b)} if n = {r} mod {self.period}" for r, b in enumerate(self.offsets)]
        text = "f(n) = " + "; ".join(pieces)
        if self.exceptions:
            text += "; " + ", ".join(f"f({n}) = {v}" for n, v in self.exceptions)
        return text


def _first_index(basis: SectionedBasis, n: int) -> Optional[int]:
    """Structural 1-based index where root n first appears"""
    best = None
    for j, step in enumerate(basis.steps):
        u, v = step.rho.slope, step.rho.offset
        if u == 0:
            if v != n:
                continue
            k = 0
        else:
            k = (n - v) / u
            if k.denominator != 1 or k < 0:
                continue
        index = basis.m * int(k) + j + 1
        if best is None or index < best:
            best = index
    return best


def quasi_triangular_gap(basis: SectionedBasis, depth: int = None) -> Optional[int]:
    """Least n <= depth breaking quasi-triangularity on the concrete root prefix"""
    depth = config.CERTIFICATE_DEPTH if depth is None else depth
    roots = basis.roots(max(8, basis.m) * (depth + 2))
    first = {}
    for i, value in enumerate(roots, start=1):
        if value.denominator == 1 and value >= 0 and value not in first:
            first[value] = i
    previous = -1
    for n in range(depth + 1):
        if n not in first or first[n] - 1 <= previous:
            return n
        previous = first[n] - 1
    return None


def quasi_triangular_witness(basis: SectionedBasis, depth: int = None) -> Optional[QuasiTriangularWitness]:
    """Witness f(n) = (first index of root n) - 1, derived from the affine families"""
    depth = config.CERTIFICATE_DEPTH if depth is None else depth
    families = [(j, step.rho) for j, step in enumerate(basis.steps) if step.rho.slope > 0]
    if not families:
        log.debug("❌ %s has no increasing root family (gap at n = %s)", basis.label, quasi_triangular_gap(basis, depth))
        return None
    period = lcm(*(int(rho.slope.numerator) for _, rho in families))

    winners = []
    start = 0
    for r in range(period):
        best = None
        for j, rho in families:
            k = (r - rho.offset) / rho.slope
            if k.denominator != 1:
                continue
            index_slope = basis.m / rho.slope
            intercept = basis.m * k + j - index_slope * r
            candidate = (index_slope, intercept, k)
            if best is None or candidate[:2] < best[:2]:
                best = candidate
        if best is None:
            log.debug("❌ residue %d mod %d never appears in %s", r, period, basis.label)
            return None
        winners.append(best)
        if best[2] < 0:
            # first n in this class where the winning family is active
            u = basis.m / best[0]
            start = max(start, r + period * int(ceil(-best[2] * u / period)))
    slopes = {w[0] for w in winners}
    if len(slopes) != 1:
        log.debug("❌ residue classes grow at different rates in %s", basis.label)
        return None
    slope = slopes.pop()
    offsets = tuple(w[1] for w in winners)

    finite_max = -1
    for step in basis.steps:
        u, v = step.rho.slope, step.rho.offset
        if u <= 0 and v >= 0:
            finite_max = max(finite_max, _floor(v))
    horizon = max(start, finite_max + 1)

    exceptions = []
    for n in range(horizon):
        index = _first_index(basis, n)
        if index is None:
            log.debug("❌ root %d never appears in %s", n, basis.label)
            return None
        formula = slope * n + offsets[n % period]
        if index - 1 != formula:
            exceptions.append((n, index - 1))
    witness = QuasiTriangularWitness(slope, period, offsets, depth, tuple(exceptions))

    values = [witness(n) for n in range(depth + 1)]
    if any(b <= a for a, b in zip(values, values[1:])) or values[0] < 0:
        log.debug("❌ f is not strictly increasing for %s", basis.label)
        return None
    gap = quasi_triangular_gap(basis, depth)
    if gap is not None:
        raise BasisError(f"structural witness disagrees with the root prefix at n = {gap} ({basis.label})")
    roots = basis.roots(values[-1] + 1)
    for n, value in enumerate(values):
        if roots[value] != n or n in roots[:value]:
            raise BasisError(f"structural witness disagrees with the root prefix at n = {n} ({basis.label})")
    return witness


# Expansions

def expand_polynomial(p: Poly, basis: SectionedBasis) -> List[Rat]:
    """Coefficients d_0..d_deg with p = sum d_k P_k, by leading-term elimination"""
    if not p:
        return []
    degree = p.degree()
    coefficients = [rat(0)] * (degree + 1)
    remainder = p
    while remainder:
        t = remainder.degree()
        element = basis.element(t)
        c = remainder.LC / element.LC
        coefficients[t] = c
        remainder = remainder - element * c
    return coefficients


def _witness_or_fail(basis: SectionedBasis, witness: Optional[QuasiTriangularWitness]) -> QuasiTriangularWitness:
    witness = witness or quasi_triangular_witness(basis)
    if witness is None:
        raise BasisError(f"{basis.label} is not quasi-triangular")
    return witness


def expand_sequence(values: Sequence, basis: SectionedBasis, witness: QuasiTriangularWitness = None,
                    count: int = None) -> List[Rat]:
    """Coefficients b with sum_{k<=f(n)} b_k P_k(n) = a_n for the given terms a_0..a_N.

    Indices outside f(N) are free and set to 0.
    """
    witness = _witness_or_fail(basis, witness)
    values = [rat(a) for a in values]
    if not values:
        return []
    size = witness(len(values) - 1) + 1
    coefficients = [rat(0)] * size
    for n, a in enumerate(values):
        top = witness(n)
        row = basis.values(n, top + 1)
        partial = sum((coefficients[i] * row[i] for i in range(top)), rat(0))
        coefficients[top] = (a - partial) / row[top]
    if count is not None:
        coefficients = (coefficients + [rat(0)] * count)[:count]
    return coefficients


def evaluate_series(coefficients: Sequence, basis: SectionedBasis, n: int,
                    witness: QuasiTriangularWitness = None) -> Rat:
    """sum_k b_k P_k(n), truncated at f(n)"""
    witness = _witness_or_fail(basis, witness)
    top = min(witness(n), len(coefficients) - 1)
    if top < 0:
        return rat(0)
    row = basis.values(n, top + 1)
    return sum((rat(coefficients[k]) * row[k] for k in range(top + 1)), rat(0))
