"""Exact Gaussian-rational scalars and polynomial coefficients in formal function symbols.

Coefficients are polynomials over Q(i) whose variables are formal smooth
functions (``f2``, ``~f2`` for the conjugate) and their first derivatives along
a frame (``psi_4(f1)``, ``xi_c1(g)``).  Every value is immutable and kept in a
canonical form, so structural equality is mathematical equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DivByZero, SecondDerivative

Rational = Union[int, Fraction]


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Scalar:
    """A Gaussian rational ``re + im*i``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("re", "im"):
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError("floating point values are not allowed in exact scalars")
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, (float, complex)):
            raise TypeError("floating point values are not allowed in exact scalars")
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def is_real(self) -> bool:
        return self.im == 0

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __add__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def norm2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "Scalar":
        n = self.norm2()
        if n == 0:
            raise DivByZero("division by the zero scalar")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = Scalar.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    def __str__(self) -> str:
        if not self.im:
            return _fmt_rational(self.re)
        if abs(self.im) == 1:
            imag = "i" if self.im > 0 else "-i"
        else:
            imag = _fmt_rational(self.im) + "i"
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{_fmt_rational(self.re)}{sign}{imag}"


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Dispatch ``op`` in {add, sub, mul, div}; ``div`` raises DivByZero on a zero divisor."""
    ops = {
        "add": Scalar.__add__,
        "sub": Scalar.__sub__,
        "mul": Scalar.__mul__,
        "div": Scalar.__truediv__,
    }
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown scalar operation {op!r}") from None
    return fn(Scalar.coerce(a), Scalar.coerce(b))


ZERO = Scalar()
ONE = Scalar(Fraction(1))
I = Scalar(Fraction(0), Fraction(1))
HALF = Scalar(Fraction(1, 2))


@dataclass(frozen=True)
class FuncSymbol:
    """A formal smooth function, possibly conjugated."""

    name: str
    conjugated: bool = False

    def conj(self) -> "FuncSymbol":
        return FuncSymbol(self.name, not self.conjugated)

    @property
    def sort_key(self) -> tuple:
        return (self.name, self.conjugated, "", 0, False)

    def __str__(self) -> str:
        return ("~" if self.conjugated else "") + self.name


@dataclass(frozen=True)
class DerivSymbol:
    """First derivative of ``base`` along frame vector ``index`` (barred or not) of ``frame``.

    ``frame`` is ``"xi"`` for the frame dual to the invariant coframe and
    ``"psi"`` for the frame dual to a deformed coframe.
    """

    base: FuncSymbol
    index: int
    barred: bool = False
    frame: str = "xi"

    def conj(self) -> "DerivSymbol":
        return DerivSymbol(self.base.conj(), self.index, not self.barred, self.frame)

    @property
    def sort_key(self) -> tuple:
        return (self.base.name, self.base.conjugated, self.frame, self.index, self.barred)

    def __str__(self) -> str:
        bar = "c" if self.barred else ""
        return f"{self.frame}_{bar}{self.index}({self.base})"


Symbol = Union[FuncSymbol, DerivSymbol]
# A monomial is a sorted tuple of (symbol, power) with power >= 1.
Monomial = tuple


def _mono_key(mono: Monomial) -> tuple:
    return (sum(p for _, p in mono), tuple((s.sort_key, p) for s, p in mono))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    powers: dict = {}
    for s, p in a + b:
        powers[s] = powers.get(s, 0) + p
    return tuple(sorted(powers.items(), key=lambda sp: sp[0].sort_key))


class Coeff:
    """Canonical polynomial over Q(i) in formal function and derivative symbols."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            c = Scalar.coerce(c)
            acc[mono] = acc.get(mono, ZERO) + c
        self._terms = tuple(sorted(((m, c) for m, c in acc.items() if c), key=lambda mc: _mono_key(mc[0])))
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, value) -> "Coeff":
        return cls({(): Scalar.coerce(value)})

    @classmethod
    def sym(cls, symbol: Symbol, power: int = 1) -> "Coeff":
        return cls({((symbol, power),): ONE})

    @classmethod
    def coerce(cls, value) -> "Coeff":
        if isinstance(value, Coeff):
            return value
        if isinstance(value, (FuncSymbol, DerivSymbol)):
            return cls.sym(value)
        s = Scalar.coerce(value)
        if s is NotImplemented:
            return NotImplemented
        return cls.const(s)

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not mono for mono, _ in self._terms)

    def constant_value(self) -> Scalar:
        """The value of a constant coefficient; raises if symbols are present."""
        if not self.is_constant():
            raise ValueError(f"coefficient {self} is not constant")
        return self._terms[0][1] if self._terms else ZERO

    def symbols(self) -> set:
        return {s for mono, _ in self._terms for s, _ in mono}

    def has_derivatives(self) -> bool:
        return any(isinstance(s, DerivSymbol) for s in self.symbols())

    # ring operations
    def __add__(self, other):
        other = Coeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Coeff(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "Coeff":
        return Coeff((m, -c) for m, c in self._terms)

    def __sub__(self, other):
        other = Coeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = Coeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = Coeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Coeff(
            (_mono_mul(ma, mb), ca * cb) for ma, ca in self._terms for mb, cb in other._terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Coeff":
        out = Coeff.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "Coeff":
        return Coeff(
            (tuple(sorted(((s.conj(), p) for s, p in mono), key=lambda sp: sp[0].sort_key)), c.conj())
            for mono, c in self._terms
        )

    def substitute(self, rules: Mapping[Symbol, "Coeff"]) -> "Coeff":
        """Simultaneous substitution of symbols by coefficients."""
        rules = {k: Coeff.coerce(v) for k, v in rules.items()}
        out = Coeff()
        for mono, c in self._terms:
            term = Coeff.const(c)
            for s, p in mono:
                term = term * (rules[s] ** p if s in rules else Coeff.sym(s, p))
            out = out + term
        return out

    def derive(self, index: int, barred: bool, frame: str = "xi") -> "Coeff":
        """Apply the frame vector field ``(index, barred)`` of ``frame`` by Leibniz' rule."""
        out = Coeff()
        for mono, c in self._terms:
            for pos, (s, p) in enumerate(mono):
                if isinstance(s, DerivSymbol):
                    raise SecondDerivative(f"cannot differentiate derivative symbol {s}")
                rest = mono[:pos] + ((s, p - 1),) + mono[pos + 1:] if p > 1 else mono[:pos] + mono[pos + 1:]
                out = out + Coeff({_mono_mul(rest, ((DerivSymbol(s, index, barred, frame), 1),)): c * p})
        return out

    # comparison and display
    def __eq__(self, other) -> bool:
        other = Coeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self) -> str:
        return f"Coeff({str(self)!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms:
            factors = "*".join(str(s) if p == 1 else f"{s}**{p}" for s, p in mono)
            parts.append(_signed(c, factors))
        return _join_signed(parts)


def _signed(c: Scalar, body: str) -> tuple[str, str]:
    """Split ``c*body`` into a sign and a magnitude string for display."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = Scalar(abs(c.re))
    elif c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = Scalar(0, abs(c.im))
    else:
        sign, mag = "+", c
    if not body:
        text = str(mag)
        if c.im and c.re:
            text = f"({text})"
    elif mag == ONE:
        text = body
    else:
        text = f"({mag})*{body}" if (mag.re and mag.im) else f"{mag}*{body}"
    return sign, text


def _join_signed(parts: list[tuple[str, str]]) -> str:
    out = ""
    for n, (sign, text) in enumerate(parts):
        if n == 0:
            out = text if sign == "+" else f"-{text}"
        else:
            out += f" {sign} {text}"
    return out


def coeff_arith(a: Coeff, b: Coeff, op: str) -> Coeff:
    if op == "add":
        return Coeff.coerce(a) + Coeff.coerce(b)
    if op == "mul":
        return Coeff.coerce(a) * Coeff.coerce(b)
    raise ValueError(f"unknown coefficient operation {op!r}")


def coeff_conj(a: Coeff) -> Coeff:
    return Coeff.coerce(a).conj()


def coeff_substitute(a: Coeff, rules: Mapping[Symbol, Coeff]) -> Coeff:
    return Coeff.coerce(a).substitute(rules)
