import json

import pytest

from sukodaira.catalog import catalog
from sukodaira.dsl import parse_algebra
from sukodaira.errors import HypothesisViolated, InternalInconsistency
from sukodaira.kodaira import (
    KodairaReport,
    dim_P_pattern,
    kodaira_deformed,
    kodaira_invariant,
    operator_D_l,
)
from sukodaira.scalar import FuncSymbol
from sukodaira.splitting import deform_minus_infinity, deform_zero, validate_splitting

# d p2 = theta ^ p2 with theta = 1/3 p1 - 1/3 c1 closed, so d^2 = 0; the two ad-traces cancel
THIRD = "algebra third m = 2 split k = 1\nd p1 = 0\nd p2 = 1/3*p1^p2 + 1/3*p2^c1\n"
# same pattern over a two-dimensional base: gamma = -1/3 c1 + 1/2i c2
TWO_BASE = "algebra twobase m = 3 split k = 2\nd p3 = 1/3*p1^p3 + 1/3*p3^c1 + 1/2i*p2^p3 - 1/2i*p3^c2\n"


def load(text):
    doc = parse_algebra(text)
    s = doc.structure()
    return s, validate_splitting(s, doc.k)


def test_operator_examples():
    s = catalog("fls96_j2").doc.structure()
    assert operator_D_l(s, 1).components().lines() == ["xi_c1(f) = 1/2*f", "xi_c2(f) = 0", "xi_c3(f) = 0"]
    assert operator_D_l(s, 3).components().lines()[0] == "xi_c1(f) = 3/2*f"
    flat = catalog("torus_4").doc.structure()
    assert all(e.rhs.is_zero() for e in operator_D_l(flat, 5).components().equations)
    with pytest.raises(ValueError):
        operator_D_l(s, 0)


def test_operator_is_linear():
    s = catalog("fls96_j2").doc.structure()
    op = operator_D_l(s, 2)
    f = FuncSymbol("f")
    applied = op.apply(f)
    assert applied.bidegrees() == {(0, 1)}
    # D(2f) is D applied to a rescaled symbol: every coefficient is linear in f or its derivatives
    for _, co in applied.items():
        for mono, _ in co.terms:
            assert sum(power for _, power in mono) == 1


def test_j1_invariant_witness():
    r = kodaira_invariant(catalog("fls96_j1").doc.structure())
    assert (r.verdict, r.l0, r.witness["kind"]) == ("zero", 1, "invariant")


def test_j2_base_mode_witness():
    entry = catalog("fls96_j2")
    s = entry.doc.structure()
    r = kodaira_invariant(s, validate_splitting(s, 1))
    assert (r.verdict, r.l0, r.witness["mode"]) == ("zero", 1, [0, -1])
    assert [c.rule for c in r.justification] == [
        "compact-quotient", "invariant-top-form", "fiber-reduction", "base-fourier-mode", "trivial-power-gives-kappa-zero",
    ]


def test_j2_without_split_is_unresolved():
    r = kodaira_invariant(catalog("fls96_j2").doc.structure())
    assert r.verdict == "unresolved"
    assert r.gamma == "-1/2*c1"


def test_third_power():
    s, split = load(THIRD)
    r = kodaira_invariant(s, split)
    assert (r.verdict, r.l0, r.witness["mode"], r.witness["function"]) == ("zero", 3, [0, -2], "exp(-2i*x2)")
    assert r.dimP.startswith("dim P_l = 1 if 3 divides l")


def test_two_dimensional_base():
    s, split = load(TWO_BASE)
    r = kodaira_invariant(s, split)
    assert (r.verdict, r.l0, r.witness["mode"]) == ("zero", 3, [0, -2, -3, 0])


def test_fiber_supported_gamma_is_unresolved():
    # theta = 1/3 p2 - 1/3 c2 lives on a fiber direction, so gamma = -1/3 c2 is not base-supported
    s, split = load("algebra fib m = 3 split k = 1\nd p3 = 1/3*p2^p3 + 1/3*p3^c2\n")
    r = kodaira_invariant(s, split)
    assert r.verdict == "unresolved"
    assert r.gamma == "-1/3*c2"
    assert "fiber directions [2]" in r.notes[0]


def test_preconditions():
    s = parse_algebra("algebra aff m = 2\nd p2 = p1^p2\n").structure()
    with pytest.raises(HypothesisViolated):
        kodaira_invariant(s)


@pytest.mark.parametrize("l0, L, dims", [(1, 4, [1, 1, 1, 1]), (3, 7, [0, 0, 1, 0, 0, 1, 0]), (2, 2, [0, 1])])
def test_dim_pattern(l0, L, dims):
    assert [d for _, d in dim_P_pattern(l0, L)] == dims


def test_deformed_verdicts():
    s = catalog("torus_4").doc.structure()
    split = validate_splitting(s, 1)
    assert kodaira_deformed(deform_zero(catalog("fls96_j1").doc.structure(), validate_splitting(catalog("fls96_j1").doc.structure(), 1))).verdict == "zero"
    assert kodaira_deformed(deform_minus_infinity(s, split, fiber_nonconstant=True)).verdict == "minus_infinity"
    r = kodaira_deformed(deform_minus_infinity(s, split))
    assert r.verdict == "unresolved"
    assert "non-constant on the fibers" in r.notes[0]


def test_reports_are_deterministic():
    for entry in catalog():
        s = entry.doc.structure()
        split = validate_splitting(s, entry.k)
        a = json.dumps(kodaira_invariant(s, split).as_dict())
        b = json.dumps(kodaira_invariant(s, split).as_dict())
        assert a == b


def test_zero_verdict_requires_witness():
    with pytest.raises(InternalInconsistency):
        KodairaReport("zero", "0")
