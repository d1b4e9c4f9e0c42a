"""Bigraded complex exterior algebra on generators p1..pm and their conjugates c1..cm.

Internal canonical order puts every unbarred generator before every barred
one, each group sorted by index.  So ``c1 ^ p1 ^ p2 ^ p3`` is stored as
``-p1^p2^p3^c1``.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping, NamedTuple

from .errors import DimMismatch
from .scalar import Coeff, Scalar, _join_signed, _signed


class Gen(NamedTuple):
    """A coframe generator; tuple order (barred, index) is the canonical order."""

    barred: bool
    index: int

    def conj(self) -> "Gen":
        return Gen(not self.barred, self.index)

    def __str__(self) -> str:
        return ("c" if self.barred else "p") + str(self.index)


def p(index: int) -> Gen:
    return Gen(False, index)


def c(index: int) -> Gen:
    return Gen(True, index)


def sort_with_sign(gens: Iterable[Gen]) -> tuple[int, tuple[Gen, ...]]:
    """Sort generators into canonical order; sign is the permutation parity, 0 on repeats."""
    seq = list(gens)
    if len(set(seq)) != len(seq):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def bidegree(mono: tuple[Gen, ...]) -> tuple[int, int]:
    q = sum(1 for g in mono if g.barred)
    return len(mono) - q, q


class Form:
    """Finite sum of canonical monomials with Coeff coefficients."""

    __slots__ = ("m", "_terms")

    def __init__(self, m: int, terms: Mapping[tuple, Coeff] | Iterable[tuple[tuple, object]] = ()):
        self.m = m
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for gens, coeff in items:
            for g in gens:
                if not 1 <= g.index <= m:
                    raise DimMismatch(f"generator {g} outside 1..{m}")
            sign, mono = sort_with_sign(gens)
            if not sign:
                continue
            coeff = Coeff.coerce(coeff)
            if sign < 0:
                coeff = -coeff
            acc[mono] = acc[mono] + coeff if mono in acc else coeff
        self._terms = {mono: co for mono, co in sorted(acc.items()) if co}

    @classmethod
    def zero(cls, m: int) -> "Form":
        return cls(m)

    @classmethod
    def scalar(cls, m: int, value) -> "Form":
        return cls(m, [((), value)])

    @classmethod
    def monomial(cls, m: int, *gens: Gen, coeff=1) -> "Form":
        return cls(m, [(tuple(gens), coeff)])

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, *gens: Gen) -> Coeff:
        sign, mono = sort_with_sign(gens)
        if not sign:
            return Coeff()
        co = self._terms.get(mono, Coeff())
        return co if sign > 0 else -co

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        return {bidegree(mono) for mono in self._terms}

    def degrees(self) -> set[int]:
        return {len(mono) for mono in self._terms}

    def is_constant(self) -> bool:
        return all(co.is_constant() for co in self._terms.values())

    def _check(self, other: "Form") -> None:
        if self.m != other.m:
            raise DimMismatch(f"ambient dimensions differ: {self.m} != {other.m}")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        return Form(self.m, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Form":
        return Form(self.m, [(mono, -co) for mono, co in self._terms.items()])

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Multiplication by a coefficient (Coeff, Scalar, int, Fraction or symbol)."""
        if isinstance(other, Form):
            return NotImplemented
        co = Coeff.coerce(other)
        if co is NotImplemented:
            return NotImplemented
        return Form(self.m, [(mono, c * co) for mono, c in self._terms.items()])

    __rmul__ = __mul__

    def __xor__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return wedge(self, other)

    def map_coeffs(self, fn: Callable[[Coeff], Coeff]) -> "Form":
        return Form(self.m, [(mono, fn(co)) for mono, co in self._terms.items()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.m == other.m and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.m, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"Form(m={self.m}, {render_form(self)!r})"

    def __str__(self) -> str:
        return render_form(self)


def gen_form(m: int, g: Gen) -> Form:
    return Form(m, [((g,), 1)])


def top_form(m: int) -> Form:
    """The (m,0)-form p1^...^pm."""
    return Form(m, [(tuple(p(j) for j in range(1, m + 1)), 1)])


def wedge(a: Form, b: Form) -> Form:
    a._check(b)
    terms = []
    for ma, ca in a.items():
        for mb, cb in b.items():
            terms.append((ma + mb, ca * cb))
    return Form(a.m, terms)


def wedge_all(m: int, forms: Iterable[Form]) -> Form:
    out = Form.scalar(m, 1)
    for f in forms:
        out = wedge(out, f)
    return out


def conj_form(a: Form) -> Form:
    return Form(a.m, [(tuple(g.conj() for g in mono), co.conj()) for mono, co in a.items()])


def bidegree_project(a: Form, p_deg: int, q_deg: int) -> Form:
    if not (0 <= p_deg <= a.m and 0 <= q_deg <= a.m):
        raise ValueError(f"bidegree ({p_deg},{q_deg}) outside 0..{a.m}")
    return Form(a.m, [(mono, co) for mono, co in a.items() if bidegree(mono) == (p_deg, q_deg)])


def form_is_zero(a: Form) -> bool:
    return a.is_zero()


def substitute_generators(a: Form, images: Mapping[Gen, Form]) -> Form:
    """Replace every generator by a 1-form image and re-expand; generators without an image stay."""
    out = Form.zero(a.m)
    for mono, co in a.items():
        term = Form.scalar(a.m, co)
        for g in mono:
            term = wedge(term, images[g] if g in images else gen_form(a.m, g))
        out = out + term
    return out


def render_monomial(mono: tuple[Gen, ...]) -> str:
    return "^".join(str(g) for g in mono) if mono else "1"


def render_form(a: Form) -> str:
    """Render as text, e.g. ``-1/2*p1^c2 + (1/2+1/2i)*c1^c2``."""
    if a.is_zero():
        return "0"
    parts = []
    for mono, co in a.items():
        body = render_monomial(mono) if mono else ""
        if co.is_constant():
            parts.append(_signed(co.constant_value(), body))
        elif len(co.terms) == 1:
            sign, text = _signed(co.terms[0][1], "*".join(
                str(s) if pw == 1 else f"{s}**{pw}" for s, pw in co.terms[0][0]))
            parts.append((sign, f"{text}*{body}" if body else text))
        else:
            parts.append(("+", f"({co})*{body}" if body else f"({co})"))
    return _join_signed(parts)


def scalar_form(m: int, s: Scalar) -> Form:
    return Form.scalar(m, s)
