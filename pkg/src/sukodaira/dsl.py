"""Parser and renderer for ``.acs`` structure-equation documents.

Example::

    # provenance: real equations of the 8-dimensional solvmanifold
    algebra solv8 m = 4 split k = 1
    expect integrable = true
    d p1 = 0
    d p2 = p1^p2
    d p3 = - p1^p3
    d p4 = - p2^p3

Generators are ``pJ`` (holomorphic) and ``cJ`` (conjugate).  Coefficients are
Gaussian rationals: ``3``, ``-1/2``, ``i``, ``1/4i``, ``1/2+1/2i`` or the same
in parentheses.  ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DslError
from .forms import Form, Gen, render_form
from .scalar import Scalar
from .structure import StructureEquations, d_extend

EXPECT_FLAGS = ("integrable", "pseudoholomorphic", "unimodular")

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[=+\-*^/()])|(?P<bad>.)"
)
_GEN = re.compile(r"^([pc])(\d+)$")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    col: int


@dataclass(frozen=True)
class AlgebraDoc:
    name: str
    m: int
    k: int | None
    equations: tuple[Form, ...]
    expect: tuple[tuple[str, bool], ...] = ()
    provenance: str = field(default="", compare=False)

    def structure(self) -> StructureEquations:
        return StructureEquations(self.m, self.equations, self.name)

    def expected(self, flag: str) -> bool | None:
        return dict(self.expect).get(flag)


def _tokenize(line: str, lineno: int) -> list[Token]:
    tokens = []
    for mt in _TOKEN.finditer(line):
        kind = mt.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            if mt.group() == ".":
                raise DslError("non-Gaussian-rational coefficient (decimal numbers are not allowed)", lineno, mt.start() + 1)
            raise DslError(f"unexpected character {mt.group()!r}", lineno, mt.start() + 1)
        tokens.append(Token(kind, mt.group(), mt.start() + 1))
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int, line: str, m: int | None = None):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.end_col = len(line.rstrip()) + 1
        self.m = m

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def error(self, message: str, expected=(), tok: Token | None = None):
        tok = tok if tok is not None else self.peek()
        col = tok.col if tok is not None else self.end_col
        found = repr(tok.text) if tok is not None else "end of line"
        raise DslError(f"{message}, found {found}", self.lineno, col, frozenset(expected))

    def take(self, kind: str | None = None, text: str | None = None, expected=()) -> Token:
        tok = self.peek()
        if tok is None or (kind and tok.kind != kind) or (text and tok.text != text):
            self.error("unexpected token", expected or ([text] if text else [kind]))
        self.pos += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def done(self) -> None:
        if self.peek() is not None:
            self.error("unexpected trailing input", ["end of line"])

    def integer(self) -> int:
        return int(self.take("num", expected=["INT"]).text)

    def generator(self) -> Gen:
        tok = self.peek()
        if tok is None or tok.kind != "ident":
            self.error("expected a generator", ["pINT", "cINT"])
        mt = _GEN.match(tok.text)
        if not mt:
            self.error("expected a generator", ["pINT", "cINT"])
        index = int(mt.group(2))
        if self.m is not None and not 1 <= index <= self.m:
            raise DslError(f"generator index {index} outside 1..{self.m}", self.lineno, tok.col)
        self.pos += 1
        return Gen(mt.group(1) == "c", index)

    def _non_rational(self, tok: Token):
        raise DslError(f"non-Gaussian-rational coefficient {tok.text!r}", self.lineno, tok.col)

    def literal(self) -> tuple[Scalar, bool]:
        """rational ['i'] | 'i'; returns the value and whether it was imaginary."""
        tok = self.peek()
        if tok is None:
            self.error("expected a coefficient", ["INT", "i"])
        if tok.kind == "ident" and tok.text == "i":
            self.pos += 1
            return Scalar(0, 1), True
        if tok.kind != "num":
            if tok.kind == "ident" and not _GEN.match(tok.text):
                self._non_rational(tok)
            self.error("expected a coefficient", ["INT", "i"])
        value = Fraction(int(self.take().text))
        if self.at("/"):
            self.pos += 1
            den_tok = self.peek()
            den = self.integer()
            if den == 0:
                raise DslError("zero denominator", self.lineno, den_tok.col)
            value /= den
        nxt = self.peek()
        if nxt is not None and nxt.kind == "ident":
            if nxt.text == "i":
                self.pos += 1
                return Scalar(0, value), True
            if not _GEN.match(nxt.text):
                self._non_rational(nxt)
        return Scalar(value), False

    def coefficient(self) -> Scalar:
        """literal [('+'|'-') imaginary literal], optionally parenthesised with a leading sign."""
        if self.at("("):
            self.pos += 1
            sign = 1
            if self.at("-") or self.at("+"):
                sign = -1 if self.take().text == "-" else 1
            value = self._complex(sign)
            self.take(text=")", expected=[")"])
            return value
        return self._complex()

    def _complex(self, sign: int = 1) -> Scalar:
        value, imaginary = self.literal()
        value = value * sign
        if not imaginary and (self.at("+") or self.at("-")):
            sign_tok = self.take()
            imag_tok = self.peek()
            imag, is_imag = self.literal()
            if not is_imag:
                self.error("expected an imaginary part", ["INTi", "i"], imag_tok)
            value = value + (imag if sign_tok.text == "+" else -imag)
        return value

    def term(self) -> Form:
        tok = self.peek()
        coeff = Scalar(1)
        if tok is not None and (tok.kind == "num" or tok.text in ("(", "i")):
            coeff = self.coefficient()
            self.take(text="*", expected=["*"])
        elif tok is not None and tok.kind == "ident" and not _GEN.match(tok.text):
            self._non_rational(tok)
        a = self.generator()
        self.take(text="^", expected=["^"])
        b = self.generator()
        return Form.monomial(self.m, a, b, coeff=coeff)

    def expr(self) -> Form:
        if self.peek() is not None and self.peek().text == "0" and self.peek(1) is None:
            self.pos += 1
            return Form.zero(self.m)
        total = Form.zero(self.m)
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.take().text == "-" else 1
        while True:
            t = self.term()
            total = total + (t if sign > 0 else -t)
            if self.at("+") or self.at("-"):
                sign = -1 if self.take().text == "-" else 1
                continue
            break
        return total


def parse_algebra(text: str, validate: bool = True) -> AlgebraDoc:
    """Parse a document; with ``validate`` the equations must satisfy d^2 = 0."""
    header = None
    eqs: dict[int, Form] = {}
    eq_lines: dict[int, int] = {}
    expect: dict[str, bool] = {}
    provenance = ""
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line, _, comment = raw.partition("#")
        if not provenance and comment.strip().lower().startswith("provenance:"):
            provenance = comment.strip()[len("provenance:"):].strip()
        tokens = _tokenize(line, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno, line, header[1] if header else None)
        first = tokens[0]
        if header is None:
            if first.text != "algebra":
                lp.error("document must start with a header", ["algebra"])
            lp.take()
            name = lp.take("ident", expected=["NAME"]).text
            lp.take(text="m", expected=["m"])
            lp.take(text="=", expected=["="])
            m_tok = lp.peek()
            m = lp.integer()
            if m < 1:
                raise DslError("dimension m must be positive", lineno, m_tok.col)
            k = None
            if lp.at("split"):
                lp.take()
                lp.take(text="k", expected=["k"])
                lp.take(text="=", expected=["="])
                k_tok = lp.peek()
                k = lp.integer()
                if not 1 <= k < m:
                    raise DslError(f"split k must satisfy 1 <= k < {m}", lineno, k_tok.col)
            lp.done()
            header = (name, m, k)
            continue
        if first.text == "expect":
            lp.take()
            flag_tok = lp.take("ident", expected=list(EXPECT_FLAGS))
            if flag_tok.text not in EXPECT_FLAGS:
                lp.error("unknown expectation", EXPECT_FLAGS, flag_tok)
            lp.take(text="=", expected=["="])
            val = lp.take("ident", expected=["true", "false"])
            if val.text not in ("true", "false"):
                lp.error("expected a boolean", ["true", "false"], val)
            lp.done()
            expect[flag_tok.text] = val.text == "true"
            continue
        if first.text != "d":
            lp.error("expected an equation", ["d", "expect"])
        lp.take()
        gen_tok = lp.peek()
        g = lp.generator()
        if g.barred:
            raise DslError("equations are given for holomorphic generators pJ only", lineno, gen_tok.col)
        if g.index in eqs:
            raise DslError(f"duplicate equation for p{g.index} (first on line {eq_lines[g.index]})", lineno, gen_tok.col)
        lp.take(text="=", expected=["="])
        eqs[g.index] = lp.expr()
        eq_lines[g.index] = lineno
        lp.done()
    if header is None:
        raise DslError("empty document", max(last_line, 1), 1, frozenset(["algebra"]))
    name, m, k = header
    equations = tuple(eqs.get(j, Form.zero(m)) for j in range(1, m + 1))
    doc = AlgebraDoc(name, m, k, equations, tuple(sorted(expect.items())), provenance)
    if validate:
        s = doc.structure()
        for j in range(1, m + 1):
            if not d_extend(s, equations[j - 1]).is_zero():
                raise DslError(f"structure equations violate d^2 = 0 at d p{j}", eq_lines.get(j, 1), 1)
    return doc


def render_algebra(doc: AlgebraDoc) -> str:
    lines = []
    if doc.provenance:
        lines.append(f"# provenance: {doc.provenance}")
    header = f"algebra {doc.name} m = {doc.m}"
    if doc.k is not None:
        header += f" split k = {doc.k}"
    lines.append(header)
    for flag, value in doc.expect:
        lines.append(f"expect {flag} = {'true' if value else 'false'}")
    for j, form in enumerate(doc.equations, start=1):
        lines.append(f"d p{j} = {render_form(form)}")
    return "\n".join(lines) + "\n"
