import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sukodaira.catalog import catalog
from sukodaira.errors import HypothesisViolated, NotSplitting
from sukodaira.forms import Form, c, p
from sukodaira.scalar import Coeff, DerivSymbol, FuncSymbol
from sukodaira.splitting import (
    _generators,
    _matmul,
    a_coefficients,
    a_coefficients_via_brackets,
    deform_minus_infinity,
    deform_zero,
    gamma_closed_formula_deformed,
    gamma_deformed,
    gamma_deformed_raw,
    obstruction_system,
    validate_splitting,
)

SPLIT_ENTRIES = ["torus_4", "torus_6", "torus_8", "fls96_j1", "solv8", "iwasawa", "nakamura_hp"]


def structure(name):
    return catalog(name).doc.structure()


def test_validate_splitting_errors():
    s = structure("solv8")
    with pytest.raises(NotSplitting):
        validate_splitting(s, 2)
    with pytest.raises(ValueError):
        validate_splitting(s, 4)
    assert validate_splitting(structure("iwasawa"), 2).fiber == (3,)


def test_torus_hand_derivation():
    # w2 = p2 + f c1 on the flat torus: d(w1^w2) = -xi_2(f) p1^p2^c1 + (1,2)-terms and psi_2 = xi_2
    s = structure("torus_4")
    d = deform_minus_infinity(s, validate_splitting(s, 1))
    psi2 = d.dual_frame()[p(2)]
    assert psi2 == {p(2): Coeff.const(1)}
    f1 = FuncSymbol("f1")
    assert gamma_deformed(d) == Form(2, [((c(1),), -Coeff.sym(DerivSymbol(f1, 2, False, "psi")))])


@pytest.mark.parametrize("name", SPLIT_ENTRIES)
def test_expansion_routes_agree(name):
    s = structure(name)
    split = validate_splitting(s, 1)
    for d in (deform_zero(s, split), deform_minus_infinity(s, split)):
        closed = gamma_closed_formula_deformed(d)
        assert gamma_deformed_raw(d) == closed
        rules = d.constraint_rules()
        assert gamma_deformed(d) == closed.map_coeffs(lambda co: co.substitute(rules))


@pytest.mark.parametrize("name", SPLIT_ENTRIES)
def test_a_coefficients_two_routes(name):
    s = structure(name)
    assert a_coefficients(s) == a_coefficients_via_brackets(s)
    assert all(v == 0 for v in a_coefficients(s).values())


def test_obstruction_scaling():
    s = structure("solv8")
    d = deform_minus_infinity(s, validate_splitting(s, 1))
    g, f1 = FuncSymbol("g"), FuncSymbol("f1")
    for l in (1, 2, 3):
        eqs = obstruction_system(d, l).equations
        assert eqs[0].lhs == DerivSymbol(g, 1, True, "psi")
        assert eqs[0].rhs == Coeff.sym(DerivSymbol(f1, 4, False, "psi")) * Coeff.sym(g) * l
        assert all(e.rhs.is_zero() for e in eqs[1:])
    with pytest.raises(ValueError):
        obstruction_system(deform_zero(s, validate_splitting(s, 1)), 1)


def test_hypotheses_enforced():
    s = structure("fls96_j2")
    with pytest.raises(HypothesisViolated):
        deform_zero(s, validate_splitting(s, 1))


def test_iwasawa_with_two_dimensional_base():
    s = structure("iwasawa")
    split = validate_splitting(s, 2)
    assert gamma_deformed(deform_zero(s, split)).is_zero()
    d = deform_minus_infinity(s, split)
    expected = Form(3, [((c(q),), -Coeff.sym(DerivSymbol(FuncSymbol(f"f{q}"), 3, False, "psi"))) for q in (1, 2)])
    assert gamma_deformed(d) == expected


@st.composite
def deformations(draw):
    name = draw(st.sampled_from(SPLIT_ENTRIES))
    s = structure(name)
    k = draw(st.integers(1, s.m - 1))
    try:
        split = validate_splitting(s, k)
    except NotSplitting:
        split = validate_splitting(s, 1)
    names = draw(st.lists(st.sampled_from("abcdfgh"), min_size=s.m, max_size=s.m, unique=True))
    if draw(st.booleans()):
        return deform_zero(s, split, symbols=[FuncSymbol(n) for n in names[: len(split.fiber)]], enforce=False)
    return deform_minus_infinity(s, split, symbols=[FuncSymbol(n) for n in names[: split.k]], enforce=False)


@settings(max_examples=1000, deadline=None)
@given(deformations())
def test_coframe_round_trip(d):
    assert d.round_trip_ok()
    # independent of substitution: the matrix product is the identity
    prod = _matmul(d.m, d._matrix, d._inverse_matrix)
    for a in _generators(d.m):
        for b in _generators(d.m):
            assert prod[a].get(b, Coeff()) == (Coeff.const(1) if a == b else Coeff())
