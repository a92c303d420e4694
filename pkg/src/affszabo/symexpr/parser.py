"""Recursive-descent parser for rational expressions.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | atom ('^' nat)?
    atom   := nat | ident | '(' expr ')'
    ident  := letter (letter | digit | "'")*

A rational literal ``3/4`` is read as a division of two integers.
Unary minus binds looser than ``^``, so ``-u1^2`` is ``-(u1^2)``.
"""

from __future__ import annotations

import re
from typing import Iterable

from .errors import DivisionByZero, ExprSyntaxError, NegativeExponent, UnknownIdentifier
from .ratfn import RatFn, format_ratfn
from .variables import Var, base, direction, fiber, param

_SPACE = re.compile(r"\s*")
_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9']*)|(.)", re.S)


class VarTable:
    """Maps identifier text to variables.  Only declared names parse."""

    def __init__(self, names: dict | None = None):
        self.names: dict[str, Var] = dict(names or {})

    def declare(self, name: str, v: Var) -> None:
        old = self.names.get(name)
        if old is not None and old != v:
            raise ValueError(f"identifier {name!r} already bound to {old!r}")
        self.names[name] = v

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __getitem__(self, name: str) -> Var:
        return self.names[name]

    def copy(self) -> "VarTable":
        return VarTable(self.names)

    @classmethod
    def standard(cls, n: int, params: Iterable[str] = (), fibers: bool = True,
                 directions: int | None = None) -> "VarTable":
        """Canonical names: u1..un, u1'..un', a1..aN and the given parameters."""
        t = cls()
        for i in range(1, n + 1):
            t.declare(f"u{i}", base(i))
            if fibers:
                t.declare(f"u{i}'", fiber(i))
        for i in range(1, (directions or (2 * n if fibers else n)) + 1):
            t.declare(f"a{i}", direction(i))
        for p in params:
            t.declare(p, param(p))
        return t

    @classmethod
    def covering(cls, exprs: Iterable[RatFn]) -> "VarTable":
        """A table declaring the canonical name of every variable in ``exprs``."""
        t = cls()
        for x in exprs:
            for v in x.variables():
                t.declare(str(v), v)
        return t


def _tokenize(text: str):
    byte_at = []
    b = 0
    for ch in text:
        byte_at.append(b)
        b += len(ch.encode())
    byte_at.append(b)
    toks = []
    pos = 0
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        off = byte_at[pos]
        if m.group(1) is not None:
            toks.append(("num", m.group(1), off))
        elif m.group(2) is not None:
            toks.append(("ident", m.group(2), off))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", off)
            toks.append(("op", ch, off))
        pos = m.end()
    toks.append(("end", "", byte_at[-1]))
    return toks


class _Parser:
    def __init__(self, text: str, table: VarTable):
        self.toks = _tokenize(text)
        self.i = 0
        self.table = table

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at_op(self, chars: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val in chars

    def starts_operand(self) -> bool:
        kind, val, _ = self.peek()
        return kind in ("num", "ident") or (kind == "op" and val in "(-")

    def expr(self) -> RatFn:
        acc = self.term()
        while self.at_op("+-"):
            op = self.take()
            self.expect_operand(op)
            rhs = self.term()
            acc = acc + rhs if op[1] == "+" else acc - rhs
        return acc

    def term(self) -> RatFn:
        acc = self.factor()
        while self.at_op("*/"):
            op = self.take()
            self.expect_operand(op)
            rhs = self.factor()
            if op[1] == "*":
                acc = acc * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(f"division by zero at offset {op[2]}")
                acc = acc / rhs
        return acc

    def expect_operand(self, op) -> None:
        if not self.starts_operand():
            raise ExprSyntaxError(f"operator {op[1]!r} is missing its right operand", op[2])

    def factor(self) -> RatFn:
        if self.at_op("-"):
            op = self.take()
            self.expect_operand(op)
            return -self.factor()
        base_ = self.atom()
        if self.at_op("^"):
            op = self.take()
            kind, val, off = self.peek()
            if kind == "op" and val == "-":
                raise NegativeExponent("exponent must be a nonnegative integer", off)
            if kind != "num":
                raise ExprSyntaxError("expected integer exponent after '^'", op[2])
            self.take()
            return base_ ** int(val)
        return base_

    def atom(self) -> RatFn:
        kind, val, off = self.take()
        if kind == "num":
            return RatFn.const(int(val))
        if kind == "ident":
            v = self.table.names.get(val)
            if v is None:
                raise UnknownIdentifier(f"undeclared identifier {val!r}", off)
            return RatFn.var(v)
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, off2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise ExprSyntaxError("expected ')'", off2)
            return inner
        if kind == "end":
            raise ExprSyntaxError("unexpected end of expression", off)
        raise ExprSyntaxError(f"unexpected token {val!r}", off)


def parse_expr(text: str, table: VarTable) -> RatFn:
    p = _Parser(text, table)
    kind, _, off = p.peek()
    if kind == "end":
        raise ExprSyntaxError("empty expression", off)
    out = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected token {val!r}", off)
    return out


def format_expr(x: RatFn) -> str:
    return format_ratfn(x)
