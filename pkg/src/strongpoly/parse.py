"""Text grammars for the command line: polynomials, braid words, matrices.

Polynomial grammar, designed to read the way the polynomials are written
everywhere else in this package:

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (['*'] factor)*
    factor := coeff | var ['^' ['-'] int] | '(' expr ')' ['^' int]
    coeff  := int ['/' int]
    var    := 'x' int        (1-based)

Multiplication by juxtaposition is allowed ("2x1", "x1 x2"), but a sign
always starts a new term, so "1 + + x1" is a syntax error rather than a
unary plus.  Negative exponents require the Laurent flag.  All errors
carry 1-based line and column positions.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .ring import LaurentPoly, Ring


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"syntax error at line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # NUM, VAR, OP, END
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\d+|x\d+|[+\-*/^()]|\S")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        for m in _TOKEN_RE.finditer(line):
            tok = m.group()
            col = m.start() + 1
            if tok.isdigit():
                kind = "NUM"
            elif tok[0] == "x" and len(tok) > 1:
                kind = "VAR"
            elif tok in "+-*/^()":
                kind = "OP"
            else:
                raise ParseError(f"unexpected character {tok!r}", lineno, col)
            tokens.append(_Token(kind, tok, lineno, col))
    last_line = text.count("\n") + 1
    last_col = len(text.split("\n")[-1]) + 1
    tokens.append(_Token("END", "", last_line, last_col))
    return tokens


class _PolyParser:
    """Recursive-descent parser building sparse term dicts keyed by
    (coefficient, exponent list); the ring is fixed only at the end, when
    the variable count is known."""

    def __init__(self, tokens: list[_Token], laurent: bool):
        self.tokens = tokens
        self.pos = 0
        self.laurent = laurent
        self.max_var = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect_op(self, op: str) -> _Token:
        t = self.peek()
        if t.kind != "OP" or t.text != op:
            raise ParseError(f"expected {op!r}", t.line, t.col)
        return self.take()

    # Terms are dicts mapping exponent tuples (over variables seen so far,
    # ragged) to Fraction coefficients; exponent tuples are padded later.

    def parse_expr(self) -> dict:
        t = self.peek()
        negate = False
        if t.kind == "OP" and t.text == "-":
            self.take()
            negate = True
        total = self.parse_term()
        if negate:
            total = {m: -c for m, c in total.items()}
        while True:
            t = self.peek()
            if t.kind == "OP" and t.text in "+-":
                self.take()
                rhs = self.parse_term()
                sign = 1 if t.text == "+" else -1
                for m, c in rhs.items():
                    s = total.get(m, Fraction(0)) + sign * c
                    if s:
                        total[m] = s
                    else:
                        total.pop(m, None)
            else:
                return total

    def parse_term(self) -> dict:
        total = self.parse_factor()
        while True:
            t = self.peek()
            if t.kind == "OP" and t.text == "*":
                self.take()
                total = self._mul(total, self.parse_factor())
            elif t.kind in ("NUM", "VAR") or (t.kind == "OP" and t.text == "("):
                total = self._mul(total, self.parse_factor())
            else:
                return total

    def _mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                n = max(len(m1), len(m2))
                e1 = m1 + (0,) * (n - len(m1))
                e2 = m2 + (0,) * (n - len(m2))
                key = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    def _int(self) -> int:
        t = self.peek()
        if t.kind != "NUM":
            raise ParseError("expected an integer", t.line, t.col)
        self.take()
        return int(t.text)

    def parse_factor(self) -> dict:
        t = self.peek()
        if t.kind == "NUM":
            self.take()
            c = Fraction(int(t.text))
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "/":
                self.take()
                d = self._int()
                if d == 0:
                    raise ParseError("zero denominator", nxt.line, nxt.col)
                c = c / d
            return {(): c} if c else {}
        if t.kind == "VAR":
            self.take()
            idx = int(t.text[1:])
            if idx < 1:
                raise ParseError("variables are numbered from x1", t.line, t.col)
            self.max_var = max(self.max_var, idx)
            exp = 1
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "^":
                self.take()
                sign = 1
                s = self.peek()
                if s.kind == "OP" and s.text == "-":
                    if not self.laurent:
                        raise ParseError(
                            "negative exponent requires the Laurent flag", s.line, s.col
                        )
                    self.take()
                    sign = -1
                exp = sign * self._int()
            mono = (0,) * (idx - 1) + (exp,)
            return {mono: Fraction(1)}
        if t.kind == "OP" and t.text == "(":
            self.take()
            inner = self.parse_expr()
            self.expect_op(")")
            nxt = self.peek()
            if nxt.kind == "OP" and nxt.text == "^":
                self.take()
                e = self._int()
                out = {(): Fraction(1)}
                for _ in range(e):
                    out = self._mul(out, inner)
                return out
            return inner
        raise ParseError("expected a coefficient, variable, or '('", t.line, t.col)


def parse_polynomial(text: str, nvars: int | None = None, laurent: bool = False) -> LaurentPoly:
    """Parse the grammar above into a polynomial.

    The variable count is the largest index mentioned unless nvars pads it
    higher.  Integer coefficients give a ZZ-domain polynomial; a fractional
    coefficient switches the domain to QQ.
    """
    tokens = _tokenize(text)
    if tokens[0].kind == "END":
        raise ParseError("empty input", tokens[0].line, tokens[0].col)
    parser = _PolyParser(tokens, laurent)
    terms = parser.parse_expr()
    end = parser.peek()
    if end.kind != "END":
        raise ParseError(f"unexpected {end.text!r}", end.line, end.col)
    n = parser.max_var
    if nvars is not None:
        if nvars < n:
            raise ValueError(f"polynomial mentions x{n} but only {nvars} variables allowed")
        n = nvars
    rational = any(c.denominator != 1 for c in terms.values())
    ring = Ring(n, laurent=laurent, domain="QQ" if rational else "ZZ")
    full = {m + (0,) * (n - len(m)): (c if rational else int(c)) for m, c in terms.items()}
    return LaurentPoly(ring, full)


_BRAID_RE = re.compile(r"s(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str) -> list[int]:
    """Braid words: whitespace-separated crossings `s1 s2^-1 s1^3`.

    Returns signed 1-based crossing indices with powers expanded.
    """
    word: list[int] = []
    col = 1
    for chunk in text.split():
        col = text.find(chunk, col - 1) + 1
        m = _BRAID_RE.match(chunk)
        if not m:
            raise ParseError(f"bad crossing {chunk!r}", 1, col)
        idx = int(m.group(1))
        if idx < 1:
            raise ParseError("crossings are numbered from s1", 1, col)
        power = int(m.group(2)) if m.group(2) else 1
        letter = idx if power >= 0 else -idx
        word.extend([letter] * abs(power))
        col += len(chunk)
    return word


def parse_exponent_pairs(text: str) -> list[tuple[int, int]]:
    """Generator lists for the localized reduction: "1,3;2,1"."""
    pairs = []
    for chunk in text.split(";"):
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 's,t' pairs separated by ';', got {chunk!r}")
        try:
            s, t = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"non-integer exponent in {chunk!r}") from None
        pairs.append((s, t))
    if not pairs:
        raise ValueError("empty generator list")
    return pairs


def parse_matrix_json(data: dict):
    """Presentation matrices as {"vars": n, "matrix": [[entry, ...], ...]}.

    Entries use the polynomial grammar with the Laurent flag on.  An empty
    matrix needs an explicit "cols" count.
    """
    from .alexander import ModulePresentation

    if not isinstance(data, dict):
        raise ValueError("matrix input must be a JSON object")
    try:
        nvars = int(data["vars"])
        matrix = data["matrix"]
    except (KeyError, TypeError, ValueError):
        raise ValueError('matrix input needs integer "vars" and a "matrix" array') from None
    if nvars < 1:
        raise ValueError("vars must be >= 1")
    if not isinstance(matrix, list) or any(not isinstance(row, list) for row in matrix):
        raise ValueError('"matrix" must be an array of arrays')
    ring = Ring(nvars, laurent=True)
    rows = []
    for row in matrix:
        rows.append(
            tuple(parse_polynomial(str(entry), nvars=nvars, laurent=True) for entry in row)
        )
    if rows:
        ncols = len(rows[0])
    else:
        if "cols" not in data:
            raise ValueError('an empty matrix needs a "cols" count')
        ncols = int(data["cols"])
    return ModulePresentation(ring, tuple(rows), ncols)
