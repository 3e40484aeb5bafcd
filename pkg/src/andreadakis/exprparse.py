"""Parser for integer combinations of Lie brackets.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := ["-"] [INT "*"] factor | ["-"] INT
    factor := ATOM | "[" expr "," expr "]" | "(" expr ")"

Atoms are ``x<k>`` or ``t(i,j)``; the caller maps atom text to elements.
"""

from __future__ import annotations

import re
from typing import Callable, TypeVar

from .errors import ParseError

T = TypeVar("T")

_TOKENS = re.compile(r"\s*(t\(\s*\d+\s*,\s*\d+\s*\)|x\d+|\d+|[\[\],+\-*()])")


def tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        out.append(re.sub(r"\s+", "", m.group(1)))
        pos = m.end()
    return out


def parse_expression(
    text: str,
    atom: Callable[[str], T],
    bracket: Callable[[T, T], T],
    zero: T,
) -> T:
    toks = tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} at position {pos}, got {tok!r}")
        pos += 1
        return tok

    def factor():
        tok = peek()
        if tok == "[":
            take("[")
            a = expr()
            take(",")
            b = expr()
            take("]")
            return bracket(a, b)
        if tok == "(":
            take("(")
            a = expr()
            take(")")
            return a
        if tok is None or tok in "+-*,])" or tok.isdigit():
            raise ParseError(f"unexpected {tok!r}")
        try:
            return atom(take())
        except ValueError as exc:
            raise ParseError(str(exc)) from exc

    def term():
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        coeff = 1
        if peek() is not None and peek().isdigit():
            coeff = int(take())
            if peek() != "*":
                if coeff == 0:
                    return zero
                raise ParseError("bare integers other than 0 are not Lie elements")
            take("*")
        return (sign * coeff) * factor()

    def expr():
        out = term()
        while peek() in ("+", "-"):
            op = take()
            t = term()
            out = out + t if op == "+" else out - t
        return out

    if not toks:
        return zero
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos]!r}")
    return result
