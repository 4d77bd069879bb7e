"""Expression language for the CLI: parsing, evaluation and canonical printing.

Grammar (whitespace insignificant, adjacency means multiplication)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/")? unary)*
    unary   := "-" unary | power
    power   := primary ("^" "-"? INT)?
    primary := NUMBER | ATOM | "(" expr ")"
    ATOM    := r<i> | x<i> | t<i> | a | s

``r<i>`` is sqrt(p_i), ``x<i>`` the i-th group generator, ``t<i>`` the
central element x_i^2, ``a`` the element alpha and ``s`` its tail alpha_n.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .crossed import CrossedElement, CrossedModel, crossed_inv
from .laurent import format_fraction
from .numfield import PrimeBasis, radical_monomial
from .series import (
    SeriesElement,
    TruncatedSeries,
    alpha_prefix,
    series_inv,
)

MODES = ("crossed-L", "crossed-R", "series")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Atom:
    kind: str
    index: Optional[int]
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: int = field(default=0, compare=False)


Expr = Union[Num, Atom, BinOp, Neg, Pow]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<atom>[rxt]\d+|[as](?![A-Za-z0-9]))|(?P<op>[-+*/^()])|(?P<bad>\S))"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "bad":
            raise ParseError(f"unexpected character {value!r}", start)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, level: Optional[int], atoms: Optional[set[str]]):
        self.tokens = tokenize(text)
        self.i = 0
        self.level = level
        self.atoms = atoms

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Expr:
        node = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "+-":
                self.take()
                node = BinOp(v, node, self.term(), pos)
            else:
                return node

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("num", "atom") or (kind == "op" and v == "(")

    def term(self) -> Expr:
        node = self.unary()
        while True:
            kind, v, pos = self.peek()
            if kind == "op" and v in "*/":
                self.take()
                node = BinOp(v, node, self.unary(), pos)
            elif self._starts_factor():
                node = BinOp("*", node, self.unary(), pos)
            else:
                return node

    def unary(self) -> Expr:
        kind, v, pos = self.peek()
        if kind == "op" and v == "-":
            self.take()
            return Neg(self.unary(), pos)
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        kind, v, pos = self.peek()
        if kind == "op" and v == "^":
            self.take()
            sign = 1
            kind, v, p2 = self.peek()
            if kind == "op" and v == "-":
                self.take()
                sign = -1
            kind, v, p2 = self.take()
            if kind != "num" or "." in v:
                raise ParseError("exponent must be an integer", p2)
            return Pow(base, sign * int(v), pos)
        return base

    def primary(self) -> Expr:
        kind, v, pos = self.take()
        if kind == "num":
            return Num(Fraction(v), pos)
        if kind == "atom":
            name = v[0]
            index = int(v[1:]) if len(v) > 1 else None
            if self.atoms is not None and name not in self.atoms:
                raise ParseError(f"atom {v!r} is not available in this mode", pos)
            if index is not None:
                if index < 1:
                    raise ParseError(f"index of {v!r} must be positive", pos)
                if self.level is not None and index > self.level:
                    raise ParseError(f"index of {v!r} exceeds level {self.level}", pos)
            return Atom(name, index, pos)
        if kind == "op" and v == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse(text: str, level: Optional[int] = None, atoms: Optional[set[str]] = None) -> Expr:
    """Parse ``text``; ``level`` bounds atom indices, ``atoms`` restricts atom names."""
    return _Parser(text, level, atoms).parse()


@dataclass(frozen=True)
class Session:
    mode: str = "crossed-L"
    level: int = 2
    primes: Optional[PrimeBasis] = None
    budget: int = 8
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        primes = self.primes if self.primes is not None else PrimeBasis.first(self.level)
        if primes.level != self.level:
            raise ValueError(f"{primes.level} primes given for level {self.level}")
        object.__setattr__(self, "primes", primes)
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.mode == "series" and self.budget < 1:
            raise ValueError("series mode needs budget >= 1")

    @property
    def model(self) -> CrossedModel:
        return CrossedModel(self.primes, with_s=self.mode == "crossed-R")

    def atoms(self) -> set[str]:
        if self.mode == "crossed-L":
            return {"r", "x", "t"}
        if self.mode == "crossed-R":
            return {"r", "x", "t", "a", "s"}
        return {"r", "x", "t", "a"}

    def parse(self, text: str) -> Expr:
        return parse(text, self.level, self.atoms())


class EvalError(ArithmeticError):
    """Mathematical failure during evaluation (division by zero, non-invertible)."""


def evaluate(node: Expr, session: Session):
    """CrossedElement in crossed modes, TruncatedSeries in series mode."""
    if session.mode == "series":
        return _eval_series(node, session)
    return _eval_crossed(node, session.model)


def _eval_crossed(node: Expr, model: CrossedModel) -> CrossedElement:
    if isinstance(node, Num):
        return model.scalar(node.value)
    if isinstance(node, Atom):
        if node.kind == "r":
            return model.radical(node.index)
        if node.kind == "x":
            return model.gen(node.index)
        if node.kind == "t":
            return model.t(node.index)
        if node.kind == "s":
            return model.s()
        if node.kind == "a":
            return model.alpha()
    if isinstance(node, Neg):
        return -_eval_crossed(node.operand, model)
    if isinstance(node, Pow):
        base = _eval_crossed(node.base, model)
        try:
            return base ** node.exponent
        except ZeroDivisionError as exc:
            raise EvalError(f"cannot invert zero (offset {node.pos})") from exc
    if isinstance(node, BinOp):
        left = _eval_crossed(node.left, model)
        right = _eval_crossed(node.right, model)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if right.is_zero():
                raise EvalError(f"division by zero (offset {node.pos})")
            return left * crossed_inv(right)
    raise TypeError(f"unknown node {node!r}")


def _series_inverse(value: TruncatedSeries, budget: int, pos: int) -> TruncatedSeries:
    if not value.is_exact:
        raise EvalError(f"cannot invert a truncated value (offset {pos})")
    if value.body.is_zero():
        raise EvalError(f"cannot invert zero (offset {pos})")
    return series_inv(value.body, budget, window=max(value.window, value.body.max_index()))


def _eval_series(node: Expr, session: Session) -> TruncatedSeries:
    basis = session.primes
    window = session.level
    if isinstance(node, Num):
        return TruncatedSeries.exact(SeriesElement.scalar(basis, node.value), window)
    if isinstance(node, Atom):
        if node.kind == "r":
            return TruncatedSeries.exact(SeriesElement.radical(basis, node.index), window)
        if node.kind == "x":
            return TruncatedSeries.exact(SeriesElement.gen(basis, node.index), window)
        if node.kind == "t":
            return TruncatedSeries.exact(SeriesElement.gen(basis, node.index, 2), window)
        if node.kind == "a":
            return alpha_prefix(session.level, window, basis)
        raise EvalError(f"atom {node.kind!r} has no series representation")
    if isinstance(node, Neg):
        return -_eval_series(node.operand, session)
    if isinstance(node, Pow):
        base = _eval_series(node.base, session)
        k = node.exponent
        if k < 0:
            base = _series_inverse(base, session.budget, node.pos)
            k = -k
        return base ** k
    if isinstance(node, BinOp):
        left = _eval_series(node.left, session)
        right = _eval_series(node.right, session)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left * _series_inverse(right, session.budget, node.pos)
    raise TypeError(f"unknown node {node!r}")


def evaluate_text(text: str, session: Session):
    return evaluate(session.parse(text), session)


# canonical printing

def _generator_monomial(mu: int) -> str:
    names = []
    i = 1
    while mu:
        if mu & 1:
            names.append(f"x{i}")
        mu >>= 1
        i += 1
    return "*".join(names)


def format_crossed(a: CrossedElement) -> str:
    """Terms in (eps, mu) order: ``coeff*r..*x..``; coefficients use t<i> and s."""
    if a.is_zero():
        return "0"
    parts = []
    for (e, u), c in a.items():
        mono = "*".join(p for p in (radical_monomial(e), _generator_monomial(u)) if p)
        negative = False
        if c.num.is_monomial():
            lead = next(iter(c.num.terms().values()))
            if lead < 0:
                negative = True
                c = -c
        text = format_fraction(c)
        if c.is_polynomial() and not c.num.is_monomial():
            text = f"({text})"
        if not mono:
            body = text
        elif text == "1":
            body = mono
        else:
            body = f"{text}*{mono}"
        parts.append(("-" if negative else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_value(value) -> str:
    if isinstance(value, TruncatedSeries):
        return str(value.body)
    return str(value)
