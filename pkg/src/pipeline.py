#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Recurrence Pipeline Module
-------------------------
From a recurrence operator L and a compatible factorial basis: builds the operator
matrices [RE] and [RX], substitutes L into them, extracts columns, solves the
single-section problem through a gcrd, and evaluates, verifies and extends the
resulting definite-sum solutions.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

from tqdm import tqdm

from . import config
from .algebra import (
    Poly,
    Rat,
    RatFunc,
    integer_roots,
    poly_coefficients,
    poly_eval,
    rat,
    ratfunc,
    ratfunc_eval,
    render_rat,
    render_ratfunc,
    shift,
)
from .bases import (
    QuasiTriangularWitness,
    SectionedBasis,
    expand_polynomial,
    quasi_triangular_witness,
)
from .compatibility import Compatibility, e_compatibility, x_compatibility
from .errors import BasisError, OperatorError, PipelineError, PoleError
from .ore import (
    OreMatrix,
    OreOp,
    PolyOp,
    SequenceLike,
    canonical,
    clear_negative,
    gcrd,
    primitive_part,
    sequence_term,
)

log = logging.getLogger("fbm.pipeline")


# Operator matrices

@dataclass(frozen=True)
class SectionedMatrices:
    shift: OreMatrix
    multiplication: OreMatrix
    e_compat: Compatibility
    x_compat: Compatibility


def operator_matrix(compat: Compatibility) -> OreMatrix:
    """Fold a compatibility table into an m x m operator matrix by residue class"""
    m = compat.m
    entries = [[OreOp() for _ in range(m)] for _ in range(m)]
    for j in range(m):
        for i in compat.band():
            alpha = compat.coefficient(j, i)
            if not alpha:
                continue
            q, r = divmod(j + i, m)
            entries[r][j] = entries[r][j] + OreOp.monomial(shift(alpha, -q), -q)
    return OreMatrix(entries)


def sectioned_matrices(basis: SectionedBasis, A_hint: int = None, minimize: bool = None,
                       depth: int = None) -> SectionedMatrices:
    """[RE] and [RX] for the basis"""
    e_compat = e_compatibility(basis, A_hint, minimize, depth)
    x_compat = x_compatibility(basis)
    return SectionedMatrices(operator_matrix(e_compat), operator_matrix(x_compat), e_compat, x_compat)


def _matrices(basis: SectionedBasis, matrices: Optional[SectionedMatrices]) -> SectionedMatrices:
    return matrices if matrices is not None else sectioned_matrices(basis)


def _poly_at_matrix(p: Poly, rx: OreMatrix) -> OreMatrix:
    coefficients = poly_coefficients(p)
    result = OreMatrix.zeros(rx.m)
    for c in reversed(coefficients):
        result = (result @ rx) + OreMatrix.identity(rx.m, c)
    return result


def associated_matrix(L: PolyOp, basis: SectionedBasis, matrices: SectionedMatrices = None) -> OreMatrix:
    """Image of L under E -> [RE], x -> [RX]"""
    matrices = _matrices(basis, matrices)
    m = basis.m
    if L.is_zero:
        return OreMatrix.zeros(m)
    result = OreMatrix.zeros(m)
    for p in reversed(L.coeffs):
        result = (result @ matrices.shift) + _poly_at_matrix(p, matrices.multiplication)
    return result


def associated_operator(L: PolyOp, basis: SectionedBasis, matrices: SectionedMatrices = None) -> OreOp:
    """Scalar associated operator for a single-section basis"""
    if basis.m != 1:
        raise PipelineError(f"associated_operator needs a single-section basis, {basis.label} has {basis.m}")
    return associated_matrix(L, basis, matrices)[0, 0]


def _poly_at_vector(p: Poly, rx: OreMatrix, vector: List[OreOp]) -> List[OreOp]:
    coefficients = poly_coefficients(p)
    result = [OreOp() for _ in vector]
    for c in reversed(coefficients):
        result = rx.apply(result)
        result = [acc + c * v for acc, v in zip(result, vector)]
    return result


def column(L: PolyOp, basis: SectionedBasis, j: int = 0, matrices: SectionedMatrices = None) -> List[OreOp]:
    """Column j of the associated matrix, by matrix-vector products only"""
    matrices = _matrices(basis, matrices)
    m = basis.m
    if not 0 <= j < m:
        raise PipelineError(f"section {j} out of range 0..{m - 1}")
    unit = [OreOp.monomial(1) if r == j else OreOp() for r in range(m)]
    total = [OreOp() for _ in range(m)]
    power = unit
    for i, p in enumerate(L.coeffs):
        if i:
            power = matrices.shift.apply(power)
        if p:
            total = [a + b for a, b in zip(total, _poly_at_vector(p, matrices.multiplication, power))]
    return total


def first_column(L: PolyOp, basis: SectionedBasis, matrices: SectionedMatrices = None) -> List[OreOp]:
    return column(L, basis, 0, matrices)


def sectioned_rhs(p: Poly, basis: SectionedBasis) -> List[List[Rat]]:
    """Finitely supported m-sections of the basis expansion of p"""
    coefficients = expand_polynomial(p, basis)
    m = basis.m
    return [coefficients[j::m] for j in range(m)]


# Solutions

@dataclass(frozen=True)
class HypergeomTerm:
    """c_k = 0 for k < start, c_start = initial, c_{k+1} = ratio(k) * c_k"""

    ratio: RatFunc
    initial: Rat = rat(1)
    start: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ratio", ratfunc(self.ratio))
        object.__setattr__(self, "initial", rat(self.initial))

    def values(self, count: int) -> List[Rat]:
        out = []
        value = self.initial
        for k in range(count):
            if k < self.start:
                out.append(rat(0))
                continue
            out.append(value)
            try:
                value = value * ratfunc_eval(self.ratio, k)
            except PoleError:
                if k + 1 < count:
                    raise PipelineError(f"ratio {render_ratfunc(self.ratio)} has a pole at k = {k}")
        return out

    def __call__(self, k: int) -> Rat:
        return self.values(k + 1)[k]

    def describe(self) -> str:
        text = f"c(k+1)/c(k) = {render_ratfunc(self.ratio)}, c({self.start}) = {render_rat(self.initial)}"
        return text if not self.start else text + f", c(k) = 0 for k < {self.start}"


@dataclass
class SolutionDescriptor:
    """y_n = sum_k c_k P_{mk+section}(n)"""

    basis: SectionedBasis
    section: int
    coeffs: HypergeomTerm
    witness: Optional[QuasiTriangularWitness] = None

    def __post_init__(self):
        if self.witness is None:
            self.witness = quasi_triangular_witness(self.basis)
        if self.witness is None:
            raise BasisError(f"{self.basis.label} is not quasi-triangular; sums cannot be truncated")

    def closed_form_hint(self) -> str:
        m, j = self.basis.m, self.section
        index = f"{m}*k+{j}" if m > 1 else "k"
        if m > 1 and not j:
            index = f"{m}*k"
        return f"y(n) = sum_k c(k)*P[{index}](n) with {self.coeffs.describe()}"

    def to_json(self) -> dict:
        return {
            "section": self.section,
            "ratio": render_ratfunc(self.coeffs.ratio),
            "initial": render_rat(self.coeffs.initial),
            "start": self.coeffs.start,
            "closed_form_hint": self.closed_form_hint(),
        }


@dataclass
class SectionSolution:
    section: int
    column: List[OreOp]
    gcrd: OreOp
    solutions: List[SolutionDescriptor] = field(default_factory=list)

    @property
    def needs_external_solver(self) -> bool:
        return self.gcrd.order >= 2


def hypergeometric_kernel(op: OreOp) -> HypergeomTerm:
    """Nonzero solution of a first-order operator p1(k) S + p0(k)"""
    op = canonical(op)
    if op.order != 1:
        raise PipelineError(f"expected a first-order operator, got order {op.order}")
    p1, p0 = op.coefficient(1), op.coefficient(0)
    ratio = -p0 / p1
    singular = [r for r in integer_roots(p1.numer) if r >= 0]
    start = singular[-1] + 1 if singular else 0
    return HypergeomTerm(ratio, 1, start)


def solve_section(L: PolyOp, basis: SectionedBasis, section: int = 0, matrices: SectionedMatrices = None,
                  witness: QuasiTriangularWitness = None) -> SectionSolution:
    """Definite-sum solutions supported on one section, through the gcrd of its column"""
    entries = column(L, basis, section, matrices)
    if all(entry.is_zero for entry in entries):
        raise PipelineError(f"column {section} of the associated matrix vanishes")
    divisor = gcrd(entries)
    log.debug("📊 gcrd of column %d has order %d", section, divisor.order)
    result = SectionSolution(section, entries, divisor)
    if divisor.order == 1:
        term = hypergeometric_kernel(divisor)
        result.solutions.append(SolutionDescriptor(basis, section, term, witness))
    elif divisor.order >= 2:
        log.info("⚠️ gcrd of order %d left for an external solver", divisor.order)
    return result


def solve_section0(L: PolyOp, basis: SectionedBasis, matrices: SectionedMatrices = None,
                   witness: QuasiTriangularWitness = None) -> SectionSolution:
    return solve_section(L, basis, 0, matrices, witness)


def evaluate_solution(solution: SolutionDescriptor, n: int) -> Rat:
    """Exact y_n, truncated at f(n)"""
    basis, j = solution.basis, solution.section
    top = solution.witness(n)
    if top < j:
        return rat(0)
    kmax = (top - j) // basis.m
    row = basis.values(n, top + 1)
    coefficients = solution.coeffs.values(kmax + 1)
    return sum((c * row[basis.m * k + j] for k, c in enumerate(coefficients) if c), rat(0))


def solution_values(solution: SolutionDescriptor, count: int) -> List[Rat]:
    return [evaluate_solution(solution, n) for n in range(count)]


# Verification

@dataclass(frozen=True)
class AnnihilationReport:
    passed: bool
    n_from: int
    n_to: int
    first_failure: Optional[int] = None
    residual: Optional[Rat] = None

    def describe(self) -> str:
        if self.passed:
            return f"✅ L y = 0 for n = {self.n_from}..{self.n_to}"
        return f"❌ L y = {render_rat(self.residual)} at n = {self.first_failure}"

    def to_json(self) -> dict:
        return {
            "range": [self.n_from, self.n_to],
            "status": "pass" if self.passed else "fail",
            "first_failure": self.first_failure,
        }


def verify_annihilation(L: PolyOp, y: SequenceLike, n_from: int = None, n_to: int = None,
                        show_progress: bool = None) -> AnnihilationReport:
    """Check sum_i p_i(n) y_{n+i} = 0 for n_from <= n <= n_to"""
    lo, hi = config.VERIFY_RANGE
    n_from = lo if n_from is None else n_from
    n_to = hi if n_to is None else n_to
    show_progress = config.SHOW_PROGRESS if show_progress is None else show_progress
    for n in tqdm(range(n_from, n_to + 1), desc="verify", disable=not show_progress):
        residual = L.apply(y, n)
        if residual:
            log.debug("❌ annihilation fails at n = %d", n)
            return AnnihilationReport(False, n_from, n_to, n, residual)
    return AnnihilationReport(True, n_from, n_to)


def iterate_recurrence(op: Union[PolyOp, OreOp], initial: Sequence, count: int) -> List[Rat]:
    """Terms 0..count-1 of the sequence annihilated by op with the given initial terms"""
    if isinstance(op, OreOp):
        op = clear_negative(op)[1]
        evaluate = ratfunc_eval
    else:
        evaluate = poly_eval

    def coefficient(i, n):
        return evaluate(op.coefficient(i), n)

    order = op.order
    if order < 1:
        raise PipelineError("iteration needs an operator of order >= 1")
    values = [rat(v) for v in initial]
    if len(values) < order:
        raise PipelineError(f"{order} initial terms needed, {len(values)} given")
    while len(values) < count:
        n = len(values) - order
        try:
            lead = coefficient(order, n)
            partial = sum((coefficient(i, n) * values[n + i] for i in range(order)), rat(0))
        except PoleError:
            raise PipelineError(f"coefficient pole at n = {n}")
        if not lead:
            raise PipelineError(f"leading coefficient vanishes at n = {n}; term {n + order} is free")
        values.append(-partial / lead)
    return values[:count]


# Reduction of order

@dataclass(frozen=True)
class ReducedSequence:
    values: List[Rat]
    start: int


def _proportional(a: Sequence[Rat], b: Sequence[Rat]) -> bool:
    pivot = next((i for i, v in enumerate(a) if v), None)
    if pivot is None:
        return True
    scale = b[pivot] / a[pivot]
    return all(bv == scale * av for av, bv in zip(a, b))


def _reduce(L: PolyOp, a: Sequence[Rat], start: int) -> List[Rat]:
    c1, c2 = L.coefficient(1), L.coefficient(2)
    out = []
    total, product = rat(0), rat(1)
    for n in range(len(a)):
        out.append(a[n] * total)
        if n + 1 == len(a):
            break
        if n >= start:
            denominator = poly_eval(c2, n - 1) * a[n + 1]
            if not denominator:
                raise PipelineError(f"reduction of order divides by zero at i = {n}")
            product = product * (1 + poly_eval(c1, n - 1) * a[n] / denominator)
        total += (-1) ** n * product
    return out


def reduction_of_order(L: PolyOp, a: Sequence, start: int = 1, max_retries: int = None) -> ReducedSequence:
    """Second solution b_n = a_n sum_{k<n} (-1)^k prod_{i=start}^{k} (1 + c1(i-1) a_i / (c2(i-1) a_{i+1}))"""
    if L.order != 2:
        raise PipelineError(f"reduction of order needs a second-order operator, got order {L.order}")
    max_retries = config.REDUCTION_MAX_RETRIES if max_retries is None else max_retries
    a = [rat(v) for v in a]
    for attempt in range(max_retries + 1):
        b = _reduce(L, a, start)
        if not _proportional(a[:len(b)], b):
            return ReducedSequence(b, start)
        log.debug("🔄 reduced sequence is proportional to the input; retrying with start = %d", start + 1)
        start += 1
    raise PipelineError("reduction of order only produced multiples of the input")


# Recursion and sequences

def promote(op: OreOp) -> PolyOp:
    """Turn an associated operator back into a recurrence operator (k -> x, S -> E)"""
    if op.is_zero:
        raise OperatorError("cannot promote the zero operator")
    return PolyOp.from_ore(primitive_part(clear_negative(op)[1]))


class MultisectionView:
    """(s_j^m a)_k = a_{mk+j}"""

    def __init__(self, source: SequenceLike, m: int, j: int):
        if m < 1 or not 0 <= j < m:
            raise PipelineError(f"bad multisection m = {m}, j = {j}")
        self.source, self.m, self.j = source, m, j

    def __getitem__(self, k: int) -> Rat:
        if k < 0:
            raise IndexError(k)
        return sequence_term(self.source, self.m * k + self.j)

    def __call__(self, k: int) -> Rat:
        return self[k]


class Interlaced:
    """Lambda(a^(0), ..., a^(m-1)): term mk+j is a^(j)_k"""

    def __init__(self, sources: Sequence[SequenceLike]):
        self.sources = list(sources)
        if not self.sources:
            raise PipelineError("interlace needs at least one sequence")

    @property
    def m(self) -> int:
        return len(self.sources)

    def __getitem__(self, n: int) -> Rat:
        if n < 0:
            raise IndexError(n)
        k, j = divmod(n, self.m)
        return sequence_term(self.sources[j], k)

    def __call__(self, n: int) -> Rat:
        return self[n]


def multisection(source: SequenceLike, m: int, j: int) -> MultisectionView:
    return MultisectionView(source, m, j)


def interlace(sources: Sequence[SequenceLike]) -> Interlaced:
    return Interlaced(sources)
