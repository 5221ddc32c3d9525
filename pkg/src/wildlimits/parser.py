"""Recursive-descent parser for map expressions.

Grammar (explicit '*' required, so multi-character indeterminates like
"lambda" stay unambiguous):

    map    := '(' expr (',' expr)* ')'
    expr   := ['+'|'-'] term {('+'|'-') term}
    term   := factor {('*'|'/') factor}
    factor := base ['^' uint]
    base   := uint | name | '(' expr ')'

Division is legal only by expressions that are constant in the map variables
and invertible in the backend; dividing by a map variable raises
IllegalDivisor.  Names resolve to the declared map variables or to the
backend's coefficient indeterminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IllegalDivisor, MapSyntaxError, ZeroDenominator
from .maps import PolyMap
from .multipoly import MultiPoly, PolyRing


@dataclass(frozen=True)
class MapExpression:
    source: str
    map: PolyMap

    @property
    def ring(self) -> PolyRing:
        return self.map.ring


_OPS = set("()+-*/^,")


def _tokenize(text: str) -> list:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise MapSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = {v: ring.var(v) for v in ring.vars}
        for name, scalar in ring.backend.gen_names().items():
            if name not in self.names:
                self.names[name] = ring.const(scalar)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise MapSyntaxError(
                f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.advance()

    def parse_components(self) -> list:
        self.expect("(")
        comps = [self.parse_expr()]
        while self.peek()[0] == ",":
            self.advance()
            comps.append(self.parse_expr())
        self.expect(")")
        self.expect("eof")
        return comps

    def parse_single(self) -> MultiPoly:
        expr = self.parse_expr()
        self.expect("eof")
        return expr

    def parse_expr(self) -> MultiPoly:
        tok = self.peek()
        negate = False
        if tok[0] in ("+", "-"):
            self.advance()
            negate = tok[0] == "-"
        acc = self.parse_term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.parse_term()
            acc = acc - rhs if op == "-" else acc + rhs
        return acc

    def parse_term(self) -> MultiPoly:
        acc = self.parse_factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs = self.parse_factor()
            if op == "*":
                acc = acc.mul(rhs)
            else:
                acc = acc.mul(self._divisor_inverse(rhs, pos))
        return acc

    def _divisor_inverse(self, divisor: MultiPoly, pos: int) -> MultiPoly:
        ring = self.ring
        if any(any(e) for e in divisor.terms):
            raise IllegalDivisor(
                f"division by a map variable at offset {pos}")
        scalar = divisor.constant_term()
        if not scalar:
            raise ZeroDenominator(f"division by zero at offset {pos}")
        inv = ring.backend.try_divisor_inverse(scalar)
        if inv is None:
            raise IllegalDivisor(
                f"divisor {scalar!r} is not invertible in the backend "
                f"(offset {pos})")
        return ring.const(inv)

    def parse_factor(self) -> MultiPoly:
        base = self.parse_base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "num":
                raise MapSyntaxError(
                    f"expected an exponent, found {tok[1] or 'end of input'!r}",
                    tok[2])
            self.advance()
            base = base ** int(tok[1])
        return base

    def parse_base(self) -> MultiPoly:
        tok = self.peek()
        if tok[0] == "num":
            self.advance()
            return self.ring.const(Fraction(int(tok[1])))
        if tok[0] == "name":
            self.advance()
            poly = self.names.get(tok[1])
            if poly is None:
                raise MapSyntaxError(f"unknown symbol {tok[1]!r}", tok[2])
            return poly
        if tok[0] == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise MapSyntaxError(
            f"expected a value, found {tok[1] or 'end of input'!r}", tok[2])


def parse_map(text: str, ring: PolyRing) -> MapExpression:
    """Parse "(expr, ..., expr)" into a PolyMap over the declared ring."""
    parser = _Parser(text, ring)
    comps = parser.parse_components()
    if len(comps) != ring.nvars:
        raise MapSyntaxError(
            f"expected {ring.nvars} components, found {len(comps)}",
            len(text) - 1 if text else 0)
    return MapExpression(source=text, map=PolyMap(ring, comps))


def parse_poly(text: str, ring: PolyRing) -> MultiPoly:
    """Parse a single polynomial expression over the declared ring."""
    return _Parser(text, ring).parse_single()
