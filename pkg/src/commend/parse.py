"""Polynomial expression parser for the CLI grammar.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := rational | 'w' ('^' nat)? | var ('^' nat)?
    rational := int ('/' nat)?
    var ∈ {z1, z2, x, y, s, t, e1, e2}

Whitespace insensitive.  'w' is the primitive N-th root of unity of the
session; using it with N == 1 is an error.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, RootOfUnityUndefined, UnknownVariable
from .field import Coefficient
from .mpoly import MPoly

ALLOWED_VARS = ("z1", "z2", "x", "y", "s", "t", "e1", "e2")


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        if self.pos >= len(self.text):
            return None, self.pos
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            return ("int", self.text[self.pos:j]), self.pos
        if ch.isalpha():
            j = self.pos
            while j < len(self.text) and (self.text[j].isalnum() or self.text[j] == "_"):
                j += 1
            return ("name", self.text[self.pos:j]), self.pos
        if ch in "+-*/^()":
            return ("op", ch), self.pos
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def take(self):
        tok, off = self.peek()
        if tok is not None:
            self.pos = off + len(tok[1])
        return tok, off


def parse_poly(text: str, cyclotomic_order: int = 1) -> MPoly:
    tz = _Tokenizer(text)

    def parse_nat() -> int:
        tok, off = tz.take()
        if tok is None or tok[0] != "int":
            raise ParseError("expected a number", off)
        return int(tok[1])

    def parse_factor() -> MPoly:
        tok, off = tz.take()
        if tok is None:
            raise ParseError("expected a factor", off)
        kind, val = tok
        if kind == "int":
            num = int(val)
            nxt, _ = tz.peek()
            if nxt == ("op", "/"):
                tz.take()
                den = parse_nat()
                if den == 0:
                    raise ParseError("zero denominator", off)
                return MPoly.constant(Fraction(num, den))
            return MPoly.constant(num)
        if kind == "name":
            exp = 1
            nxt, _ = tz.peek()
            if nxt == ("op", "^"):
                tz.take()
                exp = parse_nat()
            if val == "w":
                if cyclotomic_order == 1:
                    raise RootOfUnityUndefined(
                        "'w' requires a session cyclotomic order > 1")
                return MPoly.constant(
                    Coefficient.root_of_unity(cyclotomic_order, exp))
            if val not in ALLOWED_VARS:
                raise UnknownVariable(f"unknown variable {val!r}")
            return MPoly.var(val, exp)
        raise ParseError(f"unexpected token {val!r}", off)

    def parse_term() -> MPoly:
        p = parse_factor()
        while True:
            nxt, _ = tz.peek()
            if nxt == ("op", "*"):
                tz.take()
                p = p * parse_factor()
            else:
                return p

    def parse_expr() -> MPoly:
        nxt, _ = tz.peek()
        sign = 1
        if nxt == ("op", "-"):
            tz.take()
            sign = -1
        p = parse_term().scale(sign)
        while True:
            nxt, off = tz.peek()
            if nxt is None:
                return p
            if nxt == ("op", "+"):
                tz.take()
                p = p + parse_term()
            elif nxt == ("op", "-"):
                tz.take()
                p = p - parse_term()
            else:
                raise ParseError(f"unexpected token {nxt[1]!r}", off)

    p = parse_expr()
    return p


def parse_map_pair(text: str, cyclotomic_order: int = 1):
    """Parse a map literal "(p, q)" into a pair of polynomials."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("map literal must look like (p, q)", 0)
    inner = text[1:-1]
    depth = 0
    split = None
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            split = i
            break
    if split is None:
        raise ParseError("map literal needs two comma-separated components", 0)
    return (parse_poly(inner[:split], cyclotomic_order),
            parse_poly(inner[split + 1:], cyclotomic_order))
