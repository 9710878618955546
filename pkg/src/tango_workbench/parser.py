"""Parser for the bundle-expression surface syntax.

Grammar (keywords case-insensitive, whitespace ignored)::

    expr     = tensor , { ( "⊕" | "+" ) , tensor } ;
    tensor   = postfix , { ( "⊗" | "@" ) , postfix } ;
    postfix  = primary , { "(" , int , ")" | "*" } ;
    primary  = "O" , "(" , int , ")"
             | "Q" | "F" | "0"
             | ( "SymQ" | "WedgeQ" | "WedgeF" ) , "[" , nat , "]"
             | ( "Sym" | "Wedge" ) , "[" , nat , "]" , "{" , [ int , { "," , int } ] , "}"
             | "(" , expr , ")" ;
    int      = [ "+" | "-" ] , nat ;
    nat      = digit , { digit } ;

``render`` in :mod:`tango_workbench.bundles` emits this syntax, and
``parse(render(e)) == e`` for every tree without one-term sums (parentheses
are grouping only, so ``(X)`` reads back as ``X``).
"""

from __future__ import annotations

import re

from .bundles import (BundleExpr, DirectSum, Dual, FBundle, Line, QBundle, SymPowLineSum,
                      SymQ, Tensor, Twist, WedgeF, WedgePowLineSum, WedgeQ)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<word>[A-Za-z]+)|(?P<sym>[()\[\]{},*+\-@⊗⊕]))")

_SUM_OPS = ("⊕", "+")
_TENSOR_OPS = ("⊗", "@")


def tokenize(text: str) -> list:
    tokens, pos = [], 0
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else (None, None, len(self.text))

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def expect(self, value):
        kind, v, _ = self.peek()
        if v != value:
            self.error(f"expected {value!r}, found {v!r}" if v else f"expected {value!r}")
        self.i += 1

    def integer(self) -> int:
        sign = 1
        _, v, _ = self.peek()
        if v in ("+", "-"):
            sign = -1 if v == "-" else 1
            self.i += 1
        kind, v, _ = self.peek()
        if kind != "num":
            self.error("expected an integer")
        self.i += 1
        return sign * int(v)

    def natural(self) -> int:
        kind, v, _ = self.peek()
        if kind != "num":
            self.error("expected a nonnegative integer")
        self.i += 1
        return int(v)

    def parse(self) -> BundleExpr:
        if not self.tokens:
            self.error("empty expression")
        e = self.expr()
        if self.i != len(self.tokens):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return e

    def expr(self) -> BundleExpr:
        terms = [self.tensor()]
        while self.peek()[1] in _SUM_OPS:
            self.i += 1
            terms.append(self.tensor())
        return terms[0] if len(terms) == 1 else DirectSum(tuple(terms))

    def tensor(self) -> BundleExpr:
        e = self.postfix()
        while self.peek()[1] in _TENSOR_OPS:
            self.i += 1
            e = Tensor(e, self.postfix())
        return e

    def postfix(self) -> BundleExpr:
        e = self.primary()
        while True:
            v = self.peek()[1]
            if v == "*":
                self.i += 1
                e = Dual(e)
            elif v == "(":
                self.i += 1
                m = self.integer()
                self.expect(")")
                e = Twist(e, m)
            else:
                return e

    def degree_list(self) -> tuple:
        self.expect("{")
        out = []
        if self.peek()[1] != "}":
            out.append(self.integer())
            while self.peek()[1] == ",":
                self.i += 1
                out.append(self.integer())
        self.expect("}")
        return tuple(out)

    def bracket_power(self) -> int:
        self.expect("[")
        q = self.natural()
        self.expect("]")
        return q

    def primary(self) -> BundleExpr:
        kind, v, _ = self.peek()
        if v == "(":
            self.i += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "num":
            if v != "0":
                self.error("only 0 may appear as a bare number")
            self.i += 1
            return DirectSum(())
        if kind != "word":
            self.error(f"unexpected token {v!r}" if v else "unexpected end of input")
        word = v.lower()
        self.i += 1
        if word == "o":
            self.expect("(")
            d = self.integer()
            self.expect(")")
            return Line(d)
        if word == "q":
            return QBundle()
        if word == "f":
            return FBundle()
        if word in ("symq", "wedgeq", "wedgef"):
            q = self.bracket_power()
            return {"symq": SymQ, "wedgeq": WedgeQ, "wedgef": WedgeF}[word](q)
        if word in ("sym", "wedge"):
            q = self.bracket_power()
            degrees = self.degree_list()
            return (SymPowLineSum if word == "sym" else WedgePowLineSum)(q, degrees)
        self.i -= 1
        self.error(f"unknown name {v!r}")


def parse(text: str) -> BundleExpr:
    """Parse the surface syntax into an expression tree; raises ParseError."""
    return _Parser(text).parse()
