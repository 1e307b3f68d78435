#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Parser Module
-------------
Text front end: recurrence operators in x and E, shift operators in k and S,
rational functions, the basis DSL and the JSON basis format.

Copyright (c) 2025 Kiko Cisneros
Licensed under the MIT License (see LICENSE file for details)
"""

import json
import logging
import re
from typing import Iterator, List, NamedTuple, Union

from . import config
from .algebra import K, X, Rat, RatFunc, rat, ratfunc, shift
from .bases import (
    Affine,
    SectionedBasis,
    SectionStep,
    binomial_basis,
    falling_basis,
    generalized_binomial,
    power_basis,
    product_basis,
    scale_hypergeometric,
    shuffled_basis,
)
from .errors import FactorialBasisError, ParseError
from .ore import OreOp, PolyOp

log = logging.getLogger("fbm.parser")

TOKENS = {
    "num": r"\d+",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "pow": r"\*\*|\^",
    "mul": r"\*",
    "div": r"/",
    "plus": r"\+",
    "minus": r"-",
    "lpar": r"\(",
    "rpar": r"\)",
    "lbrack": r"\[",
    "rbrack": r"\]",
    "comma": r",",
    "skip": r"\s+",
    "error": r".",
}
TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: Union[str, int]
    where: tuple


def tokenize(text: str, offset: int = 0, source: str = None) -> Iterator[Token]:
    for mo in TOKEN_REGEX.finditer(text):
        kind = mo.lastgroup
        value = mo.group()
        where = (mo.start() + offset, mo.end() + offset)
        if kind == "skip":
            continue
        if kind == "error":
            raise ParseError(f"unknown symbol '{value}'", source if source is not None else text, where)
        if kind == "num":
            value = int(value)
        yield Token(kind, value, where)


# Expression algebras

class _PolyOpAlgebra:
    """Values are PolyOps in x and E"""

    kind = "recurrence operator"

    def constant(self, value: int):
        return PolyOp([value])

    def name(self, token: Token):
        if token.value in config.POLY_VARIABLE_ALIASES:
            return PolyOp([X])
        if token.value == config.POLY_SHIFT:
            return PolyOp([0, 1])
        return None

    def divide(self, a, b):
        if b.order != 0 or b.leading.degree() > 0:
            return None
        return a * PolyOp([1 / b.leading.LC])

    def power(self, a, exponent: int):
        return a ** exponent if exponent >= 0 else None


class _OreAlgebra:
    """Values are OreOps in k and S"""

    kind = "shift operator"

    def constant(self, value: int):
        return OreOp.monomial(value)

    def name(self, token: Token):
        if token.value in config.ORE_VARIABLE_ALIASES:
            return OreOp.monomial(K)
        if token.value in config.ORE_SHIFT_ALIASES:
            return OreOp.shift_power(1)
        return None

    def _inverse(self, a: OreOp):
        if a.is_zero or len(a.coeffs) != 1:
            return None
        return OreOp.monomial(shift(1 / a.coeffs[0], -a.coorder), -a.coorder)

    def divide(self, a, b):
        if not b.is_scalar or b.is_zero:
            return None
        return a * self._inverse(b)

    def power(self, a, exponent: int):
        if exponent >= 0:
            return a ** exponent
        inverse = self._inverse(a)
        return None if inverse is None else inverse ** -exponent


class _RatFuncAlgebra:
    """Values are rational functions in k"""

    kind = "rational function"

    def constant(self, value: int):
        return ratfunc(value)

    def name(self, token: Token):
        if token.value in config.ORE_VARIABLE_ALIASES:
            return K
        return None

    def divide(self, a, b):
        return a / b if b else None

    def power(self, a, exponent: int):
        if exponent < 0 and not a:
            return None
        return a ** exponent


class _ExpressionParser:
    """Recursive descent for +, -, *, / and integer powers"""

    def __init__(self, text: str, algebra, offset: int = 0, source: str = None):
        self.text = text
        self.source = source if source is not None else text
        self.algebra = algebra
        self.tokens: List[Token] = list(tokenize(text, offset, self.source))
        self.index = 0
        self.end = offset + len(text)

    def error(self, message: str, where=None):
        if where is None:
            token = self.peek()
            where = token.where if token else (self.end, self.end + 1)
        return ParseError(message, self.source, where)

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def accept(self, *kinds):
        token = self.peek()
        if token is not None and token.type in kinds:
            self.index += 1
            return token
        return None

    def expect(self, kind: str, what: str):
        token = self.accept(kind)
        if token is None:
            raise self.error(f"expected {what}")
        return token

    def parse(self):
        if not self.tokens:
            raise self.error(f"empty {self.algebra.kind}", (0, 1))
        value = self.expression()
        if self.peek() is not None:
            raise self.error(f"unexpected '{self.peek().value}'")
        return value

    def expression(self):
        value = self.term()
        while True:
            if self.accept("plus"):
                value = value + self.term()
            elif self.accept("minus"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            if self.accept("mul"):
                value = value * self.factor()
            elif self.peek() is not None and self.peek().type == "div":
                token = self.accept("div")
                divisor = self.factor()
                result = self.algebra.divide(value, divisor)
                if result is None:
                    raise self.error(f"cannot divide a {self.algebra.kind} by that divisor", token.where)
                value = result
            else:
                return value

    def factor(self):
        if self.accept("minus"):
            return -self.factor()
        if self.accept("plus"):
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        token = self.accept("pow")
        if token is None:
            return base
        sign = -1 if self.accept("minus") else 1
        exponent = self.expect("num", "an integer exponent").value * sign
        result = self.algebra.power(base, exponent)
        if result is None:
            raise self.error("negative powers are only allowed for monomials", token.where)
        return result

    def atom(self):
        token = self.peek()
        if token is None:
            raise self.error("unexpected end of input")
        if self.accept("num"):
            return self.algebra.constant(token.value)
        if self.accept("name"):
            value = self.algebra.name(token)
            if value is None:
                raise self.error(f"unknown symbol '{token.value}' in a {self.algebra.kind}", token.where)
            return value
        if self.accept("lpar"):
            value = self.expression()
            self.expect("rpar", "')'")
            return value
        raise self.error(f"unexpected '{token.value}'")


def parse_operator(text: str) -> PolyOp:
    """Recurrence operator in x (or n) and E, e.g. '(x+2)^2*E^2 - (x+1)^2'"""
    return _ExpressionParser(text, _PolyOpAlgebra()).parse()


def parse_ore_operator(text: str) -> OreOp:
    """Shift operator in k (or n) and S (or E), negative powers allowed for monomials"""
    return _ExpressionParser(text, _OreAlgebra()).parse()


def parse_ratfunc(text: str, offset: int = 0, source: str = None) -> RatFunc:
    """Rational function in k (or n)"""
    return _ExpressionParser(text, _RatFuncAlgebra(), offset, source).parse()


def _constant(value: RatFunc, text: str, where) -> Rat:
    if not (value.numer.is_ground and value.denom.is_ground):
        raise ParseError("expected a rational constant", text, where)
    return rat(value.numer.LC) / rat(value.denom.LC)


# Basis DSL

class _BasisParser:
    """binomial(a,b) | power(a,b) | falling(a,b,c) | genbinom(a,b,c,m) | scale(B, ratio, a0)
    | product(B1, ..., Bk) | shuffle([B1, ..., BF], [c0, ..., c_{m-1}])"""

    ARITY = {"binomial": (1, 2), "power": (1, 2), "falling": (3, 3), "genbinom": (4, 4)}

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.index = 0

    def error(self, message: str, where=None):
        if where is None:
            token = self.peek()
            where = token.where if token else (len(self.text), len(self.text) + 1)
        return ParseError(message, self.text, where)

    def peek(self):
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def accept(self, kind: str):
        token = self.peek()
        if token is not None and token.type == kind:
            self.index += 1
            return token
        return None

    def expect(self, kind: str, what: str):
        token = self.accept(kind)
        if token is None:
            raise self.error(f"expected {what}")
        return token

    def parse(self) -> SectionedBasis:
        basis = self.basis()
        if self.peek() is not None:
            raise self.error(f"unexpected '{self.peek().value}'")
        return basis

    def span(self):
        """Raw text of one argument, up to the next top-level ',' / ')' / ']'"""
        depth, start = 0, self.index
        while True:
            token = self.peek()
            if token is None:
                raise self.error("unterminated argument list")
            if token.type in ("lpar", "lbrack"):
                depth += 1
            elif token.type in ("rpar", "rbrack"):
                if depth == 0:
                    break
                depth -= 1
            elif token.type == "comma" and depth == 0:
                break
            self.index += 1
        if self.index == start:
            raise self.error("missing argument")
        lo, hi = self.tokens[start].where[0], self.tokens[self.index - 1].where[1]
        return self.text[lo:hi], lo, hi

    def ratfunc_argument(self) -> RatFunc:
        body, lo, _ = self.span()
        return parse_ratfunc(body, lo, self.text)

    def number(self) -> Rat:
        body, lo, hi = self.span()
        return _constant(parse_ratfunc(body, lo, self.text), self.text, (lo, hi))

    def basis(self) -> SectionedBasis:
        head = self.expect("name", "a basis constructor")
        self.expect("lpar", "'('")
        kind = head.value
        try:
            if kind in self.ARITY:
                args = [self.number()]
                while self.accept("comma"):
                    args.append(self.number())
                low, high = self.ARITY[kind]
                if not low <= len(args) <= high:
                    raise self.error(f"{kind} takes {low}..{high} arguments, got {len(args)}", head.where)
                basis = {
                    "binomial": binomial_basis,
                    "power": power_basis,
                    "falling": falling_basis,
                    "genbinom": generalized_binomial,
                }[kind](*args)
            elif kind == "scale":
                inner = self.basis()
                self.expect("comma", "','")
                ratio = self.ratfunc_argument()
                a0 = self.number() if self.accept("comma") else rat(1)
                basis = scale_hypergeometric(inner, ratio, a0)
            elif kind == "product":
                factors = [self.basis()]
                while self.accept("comma"):
                    factors.append(self.basis())
                basis = product_basis(factors)
            elif kind == "shuffle":
                self.expect("lbrack", "'[' before the factor list")
                factors = [self.basis()]
                while self.accept("comma"):
                    factors.append(self.basis())
                self.expect("rbrack", "']'")
                self.expect("comma", "','")
                self.expect("lbrack", "'[' before the cycle")
                cycle = [self.expect("num", "a factor index").value]
                while self.accept("comma"):
                    cycle.append(self.expect("num", "a factor index").value)
                self.expect("rbrack", "']'")
                basis = shuffled_basis(factors, cycle)
            else:
                raise self.error(f"unknown basis constructor '{kind}'", head.where)
        except ParseError:
            raise
        except FactorialBasisError as e:
            raise ParseError(e.message, self.text, head.where)
        self.expect("rpar", "')'")
        return basis


def parse_basis(text: str) -> SectionedBasis:
    basis = _BasisParser(text).parse()
    log.debug("🔧 Parsed basis %s with %d sections", basis.label, basis.m)
    return basis


# JSON basis format

def _json_rat(value, where: str) -> Rat:
    try:
        return rat(value)
    except (FactorialBasisError, ValueError, TypeError):
        raise ParseError(f"{where}: expected a rational number, got {value!r}")


def _json_ratfunc(value, where: str) -> RatFunc:
    if isinstance(value, str):
        return parse_ratfunc(value)
    return ratfunc(_json_rat(value, where))


def basis_from_json(data: dict) -> SectionedBasis:
    """Build a basis from its JSON object form"""
    if not isinstance(data, dict) or "kind" not in data:
        raise ParseError("basis object needs a 'kind'")
    kind = data["kind"]
    try:
        if kind == "binomial":
            return binomial_basis(_json_rat(data["a"], kind), _json_rat(data.get("b", 0), kind))
        if kind == "power":
            return power_basis(_json_rat(data["a"], kind), _json_rat(data.get("b", 0), kind))
        if kind == "falling":
            return falling_basis(*(_json_rat(data[key], kind) for key in ("a", "b", "c")))
        if kind == "genbinom":
            return generalized_binomial(*(_json_rat(data[key], kind) for key in ("a", "b", "c", "m")))
        if kind == "scale":
            return scale_hypergeometric(
                basis_from_json(data["basis"]),
                _json_ratfunc(data["ratio"], kind),
                _json_rat(data.get("a0", 1), kind),
            )
        if kind == "product":
            return product_basis([basis_from_json(f) for f in data["factors"]])
        if kind == "shuffle":
            return shuffled_basis([basis_from_json(f) for f in data["factors"]], data["cycle"])
        if kind == "sectioned":
            steps = []
            for step in data["steps"]:
                slope, offset = step["rho"]
                rho = Affine(_json_rat(slope, "rho"), _json_rat(offset, "rho"))
                steps.append(SectionStep(rho, _json_ratfunc(step["lead_ratio"], "lead_ratio")))
            return SectionedBasis(steps, _json_rat(data.get("p0", 1), "p0"), data.get("label", "sectioned"))
    except KeyError as e:
        raise ParseError(f"{kind} basis is missing the field {e}")
    raise ParseError(f"unknown basis kind '{kind}'")


def load_basis_file(path: str) -> SectionedBasis:
    """Read a JSON basis description"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e.msg})", e.doc, (e.pos, e.pos + 1))
    except OSError as e:
        raise FactorialBasisError(f"cannot read {path}: {e.strerror}")
    return basis_from_json(data)


def parse_values(text: str) -> List[Rat]:
    """JSON list of rationals, or one rational per line"""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            items = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON list ({e.msg})", text, (e.pos, e.pos + 1))
        return [_json_rat(item, "values") for item in items]
    return [_json_rat(line.strip(), "values") for line in stripped.splitlines() if line.strip()]


def parse_polynomial(text: str):
    """Polynomial in x (or n)"""
    op = parse_operator(text)
    if op.order > 0:
        raise ParseError("expected a polynomial without E", text, (0, len(text)))
    return op.coefficient(0)
