"""Recursive-descent parser for the dispersion-symbol language.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom (("^" | "**") unary)?
    atom   := NUMBER | "k" | "pi" | FUNC "(" expr ")" | "(" expr ")"
    FUNC   := abs | sqrt | tanh | coth | exp | cos | sin | tanhc

Exponents must not depend on ``k``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..errors import ArityError, SymbolSyntaxError, UnknownFunctionError
from .ast import FUNCTIONS, BinOp, Call, Neg, Num, SymbolAst, Var, depends_on_k

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^(),])
    """,
    re.VERBOSE,
)

CONSTANTS = {"pi": math.pi}


@dataclass
class _Token:
    kind: str
    text: str
    offset: int  # byte offset into the UTF-8 source


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SymbolSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(_Token("end", "", len(text.encode("utf-8"))))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, *ops: str) -> _Token | None:
        if self.tok.kind == "op" and self.tok.text in ops:
            return self.advance()
        return None

    def expect(self, op: str) -> _Token:
        tok = self.accept(op)
        if tok is None:
            found = self.tok.text or "end of input"
            raise SymbolSyntaxError(f"expected {op!r}, found {found!r}", self.tok.offset)
        return tok

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise SymbolSyntaxError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return node

    def expr(self):
        node = self.term()
        while (tok := self.accept("+", "-")) is not None:
            node = BinOp(tok.text, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while (tok := self.accept("*", "/")) is not None:
            node = BinOp(tok.text, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.accept("^", "**")
        if tok is None:
            return base
        exponent = self.unary()
        if depends_on_k(exponent):
            raise SymbolSyntaxError("exponent must not depend on k", tok.offset)
        return BinOp("^", base, exponent)

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "k":
                return Var("k")
            if tok.text in CONSTANTS:
                return Num(CONSTANTS[tok.text])
            if self.tok.kind == "op" and self.tok.text == "(":
                if tok.text not in FUNCTIONS:
                    raise UnknownFunctionError(f"unknown function {tok.text!r} at byte {tok.offset}")
                self.advance()
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                if len(args) != 1:
                    raise ArityError(f"{tok.text} takes 1 argument, got {len(args)} (byte {tok.offset})")
                return Call(tok.text, args[0])
            if tok.text in FUNCTIONS:
                raise SymbolSyntaxError(f"function {tok.text!r} needs an argument list", self.tok.offset)
            raise UnknownFunctionError(f"unknown identifier {tok.text!r} at byte {tok.offset}")
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = tok.text or "end of input"
        raise SymbolSyntaxError(f"unexpected {found!r}", tok.offset)


def parse_symbol(text: str) -> SymbolAst:
    """Parse ``text`` into a :class:`SymbolAst`."""
    if not text or not text.strip():
        raise SymbolSyntaxError("empty expression", 0)
    return SymbolAst(_Parser(text).parse(), text)
