from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sukodaira.errors import SecondDerivative
from sukodaira.scalar import I, Coeff, DerivSymbol, FuncSymbol, Scalar, scalar_arith
from strategies import scalars


def to_sympy(z: Scalar):
    return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(z.im.numerator, z.im.denominator)


@settings(max_examples=200, deadline=None)
@given(scalars, scalars)
def test_arithmetic_matches_sympy(a, b):
    for op, fn in (("add", lambda x, y: x + y), ("sub", lambda x, y: x - y), ("mul", lambda x, y: x * y)):
        assert to_sympy(scalar_arith(a, b, op)) == sympy.expand(fn(to_sympy(a), to_sympy(b)))
    if b:
        assert sympy.simplify(to_sympy(a / b) - to_sympy(a) / to_sympy(b)) == 0


@given(scalars)
def test_conj_involution_and_norm(z):
    assert z.conj().conj() == z
    assert z * z.conj() == Scalar(z.norm2())


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / Scalar(0)


def test_floats_rejected():
    with pytest.raises(TypeError):
        Scalar.coerce(0.5)


@pytest.mark.parametrize("value, text", [
    (Scalar(Fraction(1, 2)), "1/2"),
    (Scalar(0, Fraction(1, 2)), "1/2i"),
    (I, "i"),
    (-I, "-i"),
    (Scalar(Fraction(1, 2), Fraction(-1, 2)), "1/2-1/2i"),
    (Scalar(0), "0"),
])
def test_rendering(value, text):
    assert str(value) == text


f, g = FuncSymbol("f"), FuncSymbol("g")


def test_derivation_is_leibniz():
    lhs = (Coeff.sym(f) * Coeff.sym(g)).derive(2, True)
    rhs = Coeff.sym(DerivSymbol(f, 2, True)) * Coeff.sym(g) + Coeff.sym(f) * Coeff.sym(DerivSymbol(g, 2, True))
    assert lhs == rhs


def test_no_second_derivatives():
    with pytest.raises(SecondDerivative):
        Coeff.sym(DerivSymbol(f, 1, False)).derive(1, True)


def test_conjugation_flips_symbols_and_bars():
    d = DerivSymbol(f, 3, False, "psi")
    assert str(d.conj()) == "psi_c3(~f)"
    assert (Coeff.sym(d) * I).conj() == Coeff.sym(d.conj()) * (-I)


poly = st.lists(
    st.tuples(scalars, st.integers(0, 2), st.integers(0, 2)), max_size=4
).map(lambda ts: sum((Coeff.sym(f, a) * Coeff.sym(g, b) * s if a or b else Coeff.const(s) for s, a, b in ts), Coeff()))


@settings(max_examples=300)
@given(poly, poly, scalars, scalars)
def test_evaluation_is_a_ring_homomorphism(p1, p2, x, y):
    # substituting constants for symbols commutes with + and *
    rules = {f: Coeff.const(x), g: Coeff.const(y)}
    ev = lambda c: c.substitute(rules).constant_value()
    assert ev(p1 + p2) == ev(p1) + ev(p2)
    assert ev(p1 * p2) == ev(p1) * ev(p2)
    conj_rules = {f.conj(): Coeff.const(x.conj()), g.conj(): Coeff.const(y.conj())}
    assert p1.conj().substitute(conj_rules).constant_value() == ev(p1).conj()


@given(poly, poly, poly)
def test_coeff_ring_laws(a, b, cc):
    assert a * (b + cc) == a * b + a * cc
    assert (a * b) * cc == a * (b * cc)
    assert a + b == b + a
    assert a.conj().conj() == a
