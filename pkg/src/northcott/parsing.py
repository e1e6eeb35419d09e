"""Text format for integer polynomials and rational maps.

The shared format uses integer coefficients, the variable ``x`` and the
operators ``+ - * ^``, e.g. ``x^2 - x - 1``.  Implicit multiplication between
a coefficient and ``x`` (``3x^2``) and parentheses are accepted.  Rational
maps add a single top-level ``/`` between two polynomial expressions, e.g.
``(x^2+1)/x``.  Anything else (in particular non-integer coefficients) is
rejected with a position-annotated error.
"""

from __future__ import annotations

import re


class ParseError(ValueError):
    """Rejected input; ``position`` is a 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([x+\-*^()/])|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append((m.group(2), m.group(2), m.start(2)))
        else:
            raise ParseError(f"unexpected character {m.group(3)!r}", m.start(3))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token list; values are coefficient tuples."""

    def __init__(self, text: str, allow_div: bool):
        self.tokens = _tokenize(text)
        self.idx = 0
        self.allow_div = allow_div

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind: str):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    # expr := term (('+'|'-') term)*
    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            value = _add(value, rhs) if op == "+" else _add(value, _neg(rhs))
        return value

    # term := unary ('*' unary | juxtaposed unary)*
    def term(self):
        value = self.unary()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.next()
                value = _mul(value, self.unary())
            elif kind in ("x", "(", "int"):
                # implicit multiplication, e.g. "3x^2" or "2(x+1)"
                value = _mul(value, self.unary())
            else:
                return value

    # unary := '-' unary | power
    def unary(self):
        if self.peek()[0] == "-":
            self.next()
            return _neg(self.unary())
        if self.peek()[0] == "+":
            self.next()
            return self.unary()
        return self.power()

    # power := atom ('^' int)*   (right-assoc is irrelevant for int exponents)
    def power(self):
        value = self.atom()
        while self.peek()[0] == "^":
            self.next()
            tok = self.expect("int")
            value = _pow(value, int(tok[1]))
        return value

    def atom(self):
        tok = self.next()
        if tok[0] == "int":
            return (int(tok[1]),)
        if tok[0] == "x":
            return (0, 1)
        if tok[0] == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok[0] == "/":
            raise ParseError("'/' is not allowed here; polynomial coefficients must be integers", tok[2])
        raise ParseError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def _trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _add(a, b):
    n = max(len(a), len(b))
    return _trim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) for i in range(n))


def _neg(a):
    return tuple(-c for c in a)


def _mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _trim(out)


def _pow(a, n):
    out = (1,)
    for _ in range(n):
        out = _mul(out, a)
    return out


def parse_poly_coeffs(text: str) -> tuple[int, ...]:
    """Parse the shared polynomial format into an ascending coefficient tuple."""
    parser = _Parser(text, allow_div=False)
    value = parser.expr()
    end = parser.next()
    if end[0] != "end":
        raise ParseError(f"unexpected {end[1]!r} after polynomial", end[2])
    return value


def parse_map_coeffs(text: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parse ``num`` or ``num/den`` into two coefficient tuples."""
    parser = _Parser(text, allow_div=True)
    num = parser.expr()
    tok = parser.next()
    if tok[0] == "end":
        return num, (1,)
    if tok[0] != "/":
        raise ParseError(f"unexpected {tok[1]!r} after numerator", tok[2])
    den = parser.expr()
    end = parser.next()
    if end[0] != "end":
        raise ParseError(f"unexpected {end[1]!r} after denominator", end[2])
    return num, den


def format_poly_coeffs(coeffs) -> str:
    """Render an ascending coefficient tuple in the shared text format."""
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        elif i == 1:
            body = "x" if mag == 1 else f"{mag}*x"
        else:
            body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
