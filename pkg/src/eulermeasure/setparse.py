"""Parser for the set-literal grammar used by the CLI.

Grammar, loosest binding first::

    expr   := diff (('u' | '|') diff)*
    diff   := inter ('\\' inter)*
    inter  := unary ('&' unary)*
    unary  := '!' unary | atom
    atom   := interval | pointset | '(' expr ')'
    interval := ('(' | '[') bound ',' bound (')' | ']')
    pointset := '{' [rational (',' rational)*] '}'
    bound  := rational | 'inf' | '+inf' | '-inf'
    rational := ['-'] digits ['/' digits]

A '(' starts an interval when a number or infinity follows, otherwise a
parenthesized sub-expression.  Closed interval ends must be finite.
Errors report the offending position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ParseError
from .interval_sets import NEG_INF, POS_INF, ExtendedRational, PolyhedralSet1D, points, segment

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<inf>[+-]?inf)
  | (?P<number>-?\d+(?:/\d+)?)
  | (?P<union>u)
  | (?P<punct>[()\[\]{},|&\\!])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                f"syntax error at position {pos}: unexpected character {text[pos]!r}",
                pos,
            )
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def _advance(self) -> _Token:
        token = self.tokens[self.index]
        if token.kind != "end":
            self.index += 1
        return token

    def _fail(self, expected: str, token: _Token):
        found = repr(token.text) if token.kind != "end" else "end of input"
        raise ParseError(
            f"syntax error at position {token.position}: expected {expected}, found {found}",
            token.position,
        )

    def _expect_punct(self, char: str) -> _Token:
        token = self._peek()
        if token.kind == "punct" and token.text == char:
            return self._advance()
        self._fail(f"'{char}'", token)

    # -- grammar -------------------------------------------------------

    def parse(self) -> PolyhedralSet1D:
        result = self._expr()
        token = self._peek()
        if token.kind != "end":
            self._fail("'u', '|', '&', '\\' or end of input", token)
        return result

    def _expr(self) -> PolyhedralSet1D:
        left = self._diff()
        while self._is_union(self._peek()):
            self._advance()
            left = left.union(self._diff())
        return left

    @staticmethod
    def _is_union(token: _Token) -> bool:
        return token.kind == "union" or (token.kind == "punct" and token.text == "|")

    def _diff(self) -> PolyhedralSet1D:
        left = self._inter()
        while self._peek().kind == "punct" and self._peek().text == "\\":
            self._advance()
            left = left.difference(self._inter())
        return left

    def _inter(self) -> PolyhedralSet1D:
        left = self._unary()
        while self._peek().kind == "punct" and self._peek().text == "&":
            self._advance()
            left = left.intersect(self._unary())
        return left

    def _unary(self) -> PolyhedralSet1D:
        token = self._peek()
        if token.kind == "punct" and token.text == "!":
            self._advance()
            return self._unary().complement()
        return self._atom()

    def _atom(self) -> PolyhedralSet1D:
        token = self._peek()
        if token.kind != "punct":
            self._fail("a set literal", token)
        if token.text == "{":
            return self._pointset()
        if token.text == "[":
            return self._interval()
        if token.text == "(":
            nxt = self._peek(1)
            if nxt.kind in ("number", "inf"):
                return self._interval()
            self._advance()
            inner = self._expr()
            self._expect_punct(")")
            return inner
        self._fail("a set literal", token)

    def _rational(self) -> Fraction:
        token = self._peek()
        if token.kind != "number":
            self._fail("a rational number", token)
        self._advance()
        try:
            return Fraction(token.text)
        except ZeroDivisionError:
            raise ParseError(
                f"division by zero in rational literal at position {token.position}",
                token.position,
            ) from None

    def _bound(self) -> ExtendedRational:
        token = self._peek()
        if token.kind == "inf":
            self._advance()
            return NEG_INF if token.text.startswith("-") else POS_INF
        return ExtendedRational.finite(self._rational())

    def _interval(self) -> PolyhedralSet1D:
        opener = self._advance()
        include_lower = opener.text == "["
        lower = self._bound()
        self._expect_punct(",")
        upper = self._bound()
        closer = self._peek()
        if closer.kind == "punct" and closer.text in ")]":
            self._advance()
        else:
            self._fail("')' or ']'", closer)
        try:
            return segment(lower, upper, include_lower, closer.text == "]")
        except InputError as exc:
            raise ParseError(
                f"{exc} (interval starting at position {opener.position})",
                opener.position,
            ) from None

    def _pointset(self) -> PolyhedralSet1D:
        self._expect_punct("{")
        if self._peek().kind == "punct" and self._peek().text == "}":
            self._advance()
            return PolyhedralSet1D.empty()
        values = [self._rational()]
        while self._peek().kind == "punct" and self._peek().text == ",":
            self._advance()
            values.append(self._rational())
        self._expect_punct("}")
        return points(values)


def parse_set_expression(text: str) -> PolyhedralSet1D:
    """Parse a set expression to its canonical polyhedral set."""
    return _Parser(text).parse()


def to_expression(value: PolyhedralSet1D) -> str:
    """Canonical printable form; parsing it back yields an equal set."""
    return str(value)
