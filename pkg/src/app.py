#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
fbm Application Core
--------------------
Command line front end that parses operators and basis specifications, runs the
factorial-basis pipeline and prints human readable or JSON results.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import argparse
import json
import logging
import sys
import time
from typing import List, Optional, Sequence

from sympy import QQ, Symbol, SympifyError
from sympy.parsing.sympy_parser import parse_expr

from . import __version__, config
from .algebra import render_poly, render_rat
from .bases import (
    SectionedBasis,
    d_compat_degree,
    e_compat_bound,
    expand_sequence,
    quasi_triangular_gap,
    quasi_triangular_witness,
)
from .compatibility import e_compatibility, verify_compatibility, x_compatibility
from .errors import FactorialBasisError, ParseError, VerificationError
from .ore import OreOp
from .parser import (
    load_basis_file,
    parse_basis,
    parse_operator,
    parse_ore_operator,
    parse_polynomial,
    parse_values,
)
from .pipeline import (
    associated_matrix,
    associated_operator,
    promote,
    sectioned_matrices,
    sectioned_rhs,
    solve_section,
    solution_values,
    verify_annihilation,
)

log = logging.getLogger("fbm.app")


def setup_logging(verbose: bool):
    """Route fbm.* diagnostics to stderr"""
    logger = logging.getLogger("fbm")
    logger.setLevel(logging.DEBUG if verbose or config.ENABLE_DEBUG_LOGGING else logging.WARNING)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
        logger.addHandler(handler)


def parse_range(text: str) -> tuple:
    """'a..b' -> (a, b)"""
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise ParseError("expected a range of the form a..b", text, (0, len(text)))
    if lo > hi:
        raise ParseError("empty range", text, (0, len(text)))
    return lo, hi


def term_values(text: str, count: int, offset: int = 0) -> List:
    """Exact values of a closed form in n, e.g. 'Sum(binomial(n,k)**3, (k, 0, n))'"""
    n = Symbol("n", integer=True, nonnegative=True)
    try:
        expr = parse_expr(text, local_dict={"n": n})
    except (SympifyError, SyntaxError, TypeError) as e:
        raise ParseError(f"cannot read the term: {e}", text, (0, len(text)))
    values = []
    for i in range(offset, offset + count):
        value = expr.subs(n, i).doit()
        if not value.is_Rational:
            raise ParseError(f"term is not rational at n = {i}: {value}", text, (0, len(text)))
        values.append(QQ.from_sympy(value))
    return values


class FactorialBasisCLI:
    """Dispatches the fbm subcommands"""

    def __init__(self, args: argparse.Namespace, out=None):
        self.args = args
        self.out = out or sys.stdout

    # Output helpers

    def emit(self, text: str = ""):
        print(text, file=self.out)

    def emit_json(self, payload: dict):
        print(json.dumps(payload, indent=config.JSON_INDENT, ensure_ascii=False), file=self.out)

    # Input helpers

    def basis(self) -> SectionedBasis:
        if getattr(self.args, "basis_file", None):
            return load_basis_file(self.args.basis_file)
        if not getattr(self.args, "basis", None):
            raise ParseError("a basis is required (--basis or --basis-file)")
        return parse_basis(self.args.basis)

    def operator(self):
        if not getattr(self.args, "op", None):
            raise ParseError("an operator is required (--op)")
        return parse_operator(self.args.op)

    def sequence(self, count: int) -> List:
        if getattr(self.args, "values_file", None):
            try:
                with open(self.args.values_file, "r", encoding="utf-8") as f:
                    return parse_values(f.read())
            except OSError as e:
                raise FactorialBasisError(f"cannot read {self.args.values_file}: {e.strerror}")
        if getattr(self.args, "term", None):
            return term_values(self.args.term, count)
        raise ParseError("a sequence is required (--term or --values-file)")

    def verify_range(self) -> tuple:
        if getattr(self.args, "verify_range", None):
            return parse_range(self.args.verify_range)
        return config.VERIFY_RANGE

    # Commands

    def cmd_basis(self) -> int:
        basis = self.basis()
        depth = self.args.depth
        count = self.args.count
        elements = [render_poly(basis.element(n)) for n in range(count)]
        roots = [render_rat(r) for r in basis.roots(count)]
        witness = quasi_triangular_witness(basis, depth)
        bound = e_compat_bound(basis, depth)
        degree = d_compat_degree(basis, depth)
        if self.args.json:
            self.emit_json({
                "basis": basis.label,
                "m": basis.m,
                "elements": elements,
                "roots": roots,
                "quasi_triangular": witness.describe() if witness else None,
                "e_compat_bound": bound,
                "d_compat_degree": degree,
            })
            return config.EXIT_OK
        self.emit(f"📊 {basis.label} ({basis.m} section{'s' if basis.m > 1 else ''})")
        for n, text in enumerate(elements):
            self.emit(f"  P[{n}] = {text}")
        self.emit(f"  roots: {', '.join(roots)}")
        if witness:
            self.emit(f"✅ quasi-triangular: {witness.describe()}")
        else:
            self.emit(f"⚠️ not quasi-triangular (fails at n = {quasi_triangular_gap(basis, depth)})")
        self.emit(f"  E-compatibility bound: {bound if bound is not None else 'none'}")
        self.emit(f"  D-compatibility degree: {degree if degree is not None else 'none'}")
        return config.EXIT_OK

    def cmd_compat(self) -> int:
        basis = self.basis()
        if self.args.operator == "X":
            compat = x_compatibility(basis)
        else:
            compat = e_compatibility(basis, minimize=not self.args.fixed_A, depth=self.args.depth)
        report = verify_compatibility(basis, compat)
        if self.args.json:
            payload = compat.to_json()
            payload["verification"] = {"samples": report.checked, "status": "pass" if report.passed else "fail"}
            self.emit_json(payload)
        else:
            self.emit(f"📊 {basis.label}: ({compat.A},{compat.B})-compatible with {compat.operator} in {compat.m} sections")
            for line in compat.describe():
                self.emit(f"  {line}")
            self.emit(report.describe())
        if not report.passed:
            raise VerificationError(report.describe())
        return config.EXIT_OK

    def cmd_matrix(self) -> int:
        basis = self.basis()
        matrices = sectioned_matrices(basis, minimize=not self.args.fixed_A, depth=self.args.depth)
        L = parse_operator(self.args.op) if self.args.op else None
        image = associated_matrix(L, basis, matrices) if L is not None else None
        rhs = sectioned_rhs(parse_polynomial(self.args.rhs), basis) if self.args.rhs else None
        if self.args.json:
            payload = {
                "basis": basis.label,
                "E": matrices.shift.to_strings(),
                "X": matrices.multiplication.to_strings(),
            }
            if image is not None:
                payload["matrix"] = image.to_strings()
            if rhs is not None:
                payload["rhs"] = [[render_rat(v) for v in section] for section in rhs]
            self.emit_json(payload)
            return config.EXIT_OK
        self.emit("[RE] =")
        self.emit(str(matrices.shift))
        self.emit("[RX] =")
        self.emit(str(matrices.multiplication))
        if image is not None:
            self.emit("[RL] =")
            self.emit(str(image))
        if rhs is not None:
            for j, section in enumerate(rhs):
                self.emit(f"rhs section {j}: {', '.join(render_rat(v) for v in section)}")
        return config.EXIT_OK

    def cmd_solve(self) -> int:
        basis = self.basis()
        L = self.operator()
        matrices = sectioned_matrices(basis, minimize=not self.args.fixed_A, depth=self.args.depth)
        witness = quasi_triangular_witness(basis, self.args.depth)
        result = solve_section(L, basis, self.args.section, matrices, witness) if witness else None
        if result is None:
            raise FactorialBasisError(f"{basis.label} is not quasi-triangular")
        lo, hi = self.verify_range()
        reports = []
        for solution in result.solutions:
            values = solution_values(solution, hi + L.order + 1)
            reports.append(verify_annihilation(L, values, lo, hi))

        if self.args.json:
            if not reports:
                status = "skipped"
            else:
                status = "pass" if all(r.passed for r in reports) else "fail"
            self.emit_json({
                "first_column": [str(op) for op in result.column],
                "gcrd": str(result.gcrd.monic()),
                "solutions": [s.to_json() for s in result.solutions],
                "verification": {"range": [lo, hi], "status": status},
            })
        else:
            for r, op in enumerate(result.column):
                self.emit(f"L[{r},{result.section}] = {op}")
            self.emit(f"gcrd: {result.gcrd.monic()}")
            if result.needs_external_solver:
                self.emit(f"⚠️ gcrd has order {result.gcrd.order}; solve it with an external tool")
            if not result.solutions and not result.needs_external_solver:
                self.emit("❌ no definite-sum solution supported on this section")
            for solution, report in zip(result.solutions, reports):
                self.emit(f"✅ {solution.closed_form_hint()}")
                self.emit(f"  {report.describe()}")
        failed = [r for r in reports if not r.passed]
        if failed:
            raise VerificationError(failed[0].describe())
        return config.EXIT_OK

    def cmd_verify(self) -> int:
        L = self.operator()
        lo, hi = self.verify_range()
        values = self.sequence(hi + L.order + 1)
        report = verify_annihilation(L, values, lo, hi, show_progress=self.args.verbose)
        if self.args.json:
            self.emit_json({"verification": report.to_json()})
        else:
            self.emit(report.describe())
        if not report.passed:
            raise VerificationError(report.describe())
        return config.EXIT_OK

    def cmd_expand(self) -> int:
        basis = self.basis()
        witness = quasi_triangular_witness(basis, self.args.depth)
        if witness is None:
            raise FactorialBasisError(f"{basis.label} is not quasi-triangular")
        values = self.sequence(self.args.count)
        coefficients = expand_sequence(values, basis, witness)
        rendered = [render_rat(c) for c in coefficients]
        if self.args.json:
            self.emit_json({"basis": basis.label, "witness": witness.describe(), "coefficients": rendered})
        else:
            self.emit(f"📊 {witness.describe()}")
            self.emit(f"  b = {', '.join(rendered)}")
        return config.EXIT_OK

    def cmd_promote(self) -> int:
        if getattr(self.args, "basis", None) or getattr(self.args, "basis_file", None):
            basis = self.basis()
            image: OreOp = associated_operator(self.operator(), basis)
        else:
            if not self.args.op:
                raise ParseError("an operator is required (--op)")
            image = parse_ore_operator(self.args.op)
        promoted = promote(image)
        if self.args.json:
            self.emit_json({"associated": str(image), "promoted": str(promoted)})
        else:
            self.emit(f"  {image}")
            self.emit(f"→ {promoted}")
        return config.EXIT_OK

    def run(self) -> int:
        return getattr(self, f"cmd_{self.args.command}")()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--depth", type=int, default=config.CERTIFICATE_DEPTH,
                        help="prefix length for validating structural certificates")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    common.add_argument("--time", action="store_true", help="print the elapsed time")

    basis = argparse.ArgumentParser(add_help=False)
    basis.add_argument("--basis", help="basis DSL, e.g. 'product(binomial(1,0),binomial(1,0))'")
    basis.add_argument("--basis-file", help="JSON basis description")

    parser = argparse.ArgumentParser(prog="fbm", description="factorial-basis recurrence toolkit")
    parser.add_argument("--version", action="version", version=f"fbm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common, basis], help="elements, roots and structural predicates")
    p.add_argument("--count", type=int, default=config.DEFAULT_ELEMENT_COUNT)

    p = sub.add_parser("compat", parents=[common, basis], help="compatibility tables")
    p.add_argument("--operator", choices=["E", "X"], default="E")
    p.add_argument("--fixed-A", action="store_true", help="keep the structural A instead of minimizing")

    p = sub.add_parser("matrix", parents=[common, basis], help="operator matrices [RE], [RX], [RL]")
    p.add_argument("--op")
    p.add_argument("--rhs", help="polynomial right-hand side in x")
    p.add_argument("--fixed-A", action="store_true")

    p = sub.add_parser("solve", parents=[common, basis], help="definite-sum solutions on one section")
    p.add_argument("--op", required=True)
    p.add_argument("--section", type=int, default=0)
    p.add_argument("--verify-range")
    p.add_argument("--fixed-A", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="check that a sequence is annihilated")
    p.add_argument("--op", required=True)
    p.add_argument("--term", help="closed form in n")
    p.add_argument("--values-file")
    p.add_argument("--verify-range")

    p = sub.add_parser("expand", parents=[common, basis], help="expand a sequence in a quasi-triangular basis")
    p.add_argument("--term", help="closed form in n")
    p.add_argument("--values-file")
    p.add_argument("--count", type=int, default=config.DEFAULT_ELEMENT_COUNT)

    p = sub.add_parser("promote", parents=[common, basis], help="turn an associated operator into a recurrence")
    p.add_argument("--op", required=True)
    return parser


def run_command(argv: Optional[Sequence[str]] = None, out=None) -> int:
    """Run one fbm command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return config.EXIT_OK if e.code == 0 else config.EXIT_PARSE_ERROR
    setup_logging(args.verbose)
    start = time.perf_counter()
    try:
        code = FactorialBasisCLI(args, out).run()
    except ParseError as e:
        print("❌ parse error", file=sys.stderr)
        print(e.display(), file=sys.stderr)
        return e.exit_code
    except FactorialBasisError as e:
        print(f"❌ {e.message}", file=sys.stderr)
        return e.exit_code
    if args.time or config.SHOW_PROCESSING_TIME:
        print(f"⏱️ {args.command} took {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code


def main():
    sys.exit(run_command())
