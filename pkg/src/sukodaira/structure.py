"""Structure equations of left-invariant almost complex structures and their checks.

A structure is given by the constant-coefficient 2-forms ``d p_j``; the
differentials of the conjugate generators are their conjugates.  For invariant
1-forms we use ``d alpha(X, Y) = -alpha([X, Y])`` throughout, with a 2-form
evaluated by the determinant convention ``(e^a ^ e^b)(e_a, e_b) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import DimMismatch, InternalInconsistency
from .forms import Form, Gen, bidegree_project, c, conj_form, p, top_form, wedge
from .scalar import ZERO, Coeff, Scalar


@dataclass(frozen=True)
class StructureEquations:
    m: int
    table: tuple[Form, ...]
    name: str = ""
    _diffs: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("dimension m must be positive")
        table = tuple(self.table)
        if len(table) != self.m:
            raise DimMismatch(f"expected {self.m} differentials, got {len(table)}")
        for j, form in enumerate(table, start=1):
            if form.m != self.m:
                raise DimMismatch(f"d p{j} lives in dimension {form.m}, expected {self.m}")
            if form.degrees() - {2}:
                raise ValueError(f"d p{j} is not a 2-form")
            if not form.is_constant():
                raise ValueError(f"d p{j} has non-constant coefficients")
        object.__setattr__(self, "table", table)
        diffs = {}
        for j, form in enumerate(table, start=1):
            diffs[p(j)] = form
            diffs[c(j)] = conj_form(form)
        object.__setattr__(self, "_diffs", diffs)

    @classmethod
    def from_dict(cls, m: int, equations: Mapping[int, Form], name: str = "") -> "StructureEquations":
        return cls(m, tuple(equations.get(j, Form.zero(m)) for j in range(1, m + 1)), name)

    def differentials(self) -> dict[Gen, Form]:
        return dict(self._diffs)

    def d_gen(self, g: Gen) -> Form:
        return self._diffs[g]

    def generators(self) -> list[Gen]:
        return [p(j) for j in range(1, self.m + 1)] + [c(j) for j in range(1, self.m + 1)]

    def C(self, j: int, a: Gen, b: Gen) -> Scalar:
        """Coefficient of ``a ^ b`` in ``d p_j`` (sign-adjusted for non-canonical order)."""
        return self.table[j - 1].coefficient(a, b).constant_value()


def exterior_derivative(a: Form, gen_diffs: Mapping[Gen, Form], frame: str = "xi") -> Form:
    """Leibniz extension of ``d`` from generator differentials.

    Coefficient functions differentiate into derivative symbols along the
    frame dual to the generators (tag ``frame``).  Coefficients that already
    hold derivative symbols raise SecondDerivative.
    """
    m = a.m
    gens = [p(j) for j in range(1, m + 1)] + [c(j) for j in range(1, m + 1)]
    out = Form.zero(m)
    for mono, co in a.items():
        mono_form = Form(m, [(mono, 1)])
        dco = Form(m, [((g,), co.derive(g.index, g.barred, frame)) for g in gens])
        out = out + wedge(dco, mono_form)
        for i, g in enumerate(mono):
            left = Form(m, [(mono[:i], 1)])
            right = Form(m, [(mono[i + 1:], 1)])
            piece = wedge(wedge(left, gen_diffs[g]), right) * co
            out = out + (piece if i % 2 == 0 else -piece)
    return out


def d_extend(s: StructureEquations, a: Form) -> Form:
    if a.m != s.m:
        raise DimMismatch(f"form lives in dimension {a.m}, structure in {s.m}")
    return exterior_derivative(a, s.differentials(), "xi")


def jacobi_check(s: StructureEquations) -> bool:
    return all(d_extend(s, s.table[j]).is_zero() for j in range(s.m))


Vector = dict  # Gen -> Scalar


class BracketTable:
    """Complexified Lie brackets of the frame dual to ``p1..pm, c1..cm``."""

    def __init__(self, m: int, brackets: Mapping[tuple[Gen, Gen], Mapping[Gen, Scalar]]):
        self.m = m
        self._br = {k: {g: v for g, v in vec.items() if v} for k, vec in brackets.items()}

    def basis(self) -> list[Gen]:
        return [p(j) for j in range(1, self.m + 1)] + [c(j) for j in range(1, self.m + 1)]

    def bracket(self, x: Gen, y: Gen) -> dict[Gen, Scalar]:
        return dict(self._br.get((x, y), {}))

    def bracket_vec(self, u: Vector, v: Vector) -> Vector:
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                for z, w in self._br.get((x, y), {}).items():
                    out[z] = out.get(z, ZERO) + a * b * w
        return {g: val for g, val in out.items() if val}

    def is_antisymmetric(self) -> bool:
        return all(
            self.bracket(x, y) == {g: -v for g, v in self.bracket(y, x).items()}
            for x in self.basis() for y in self.basis()
        )

    def is_real(self) -> bool:
        for x in self.basis():
            for y in self.basis():
                lhs = {g.conj(): v.conj() for g, v in self.bracket(x, y).items()}
                if lhs != self.bracket(x.conj(), y.conj()):
                    return False
        return True

    def satisfies_jacobi(self) -> bool:
        basis = self.basis()
        for i, x in enumerate(basis):
            for j, y in enumerate(basis[i + 1:], start=i + 1):
                for z in basis[j + 1:]:
                    total: dict = {}
                    for a, b, cc in ((x, y, z), (y, z, x), (z, x, y)):
                        for g, v in self.bracket_vec(self.bracket(a, b), {cc: Scalar(1)}).items():
                            total[g] = total.get(g, ZERO) + v
                    if any(total.values()):
                        return False
        return True

    def ad_trace(self, x: Gen) -> Scalar:
        return sum((self.bracket(x, e).get(e, ZERO) for e in self.basis()), ZERO)


def brackets_from_d(s: StructureEquations) -> BracketTable:
    """``e^c([e_a, e_b]) = -de^c(e_a, e_b)`` over the complexified frame."""
    basis = s.generators()
    brackets = {}
    for a in basis:
        for b in basis:
            brackets[(a, b)] = {
                g: -s.d_gen(g).coefficient(a, b).constant_value() for g in basis
            } if a != b else {}
    return BracketTable(s.m, brackets)


def unimodularity_check(s: StructureEquations) -> bool:
    table = brackets_from_d(s)
    return all(table.ad_trace(x) == 0 for x in table.basis())


def integrability_check(s: StructureEquations) -> bool:
    return all((0, 2) not in form.bidegrees() for form in s.table)


def factor_top(residual: Form) -> Form:
    """Write an (m,1)-form as ``gamma ^ p1..pm`` and return the (0,1)-form gamma."""
    m = residual.m
    top = tuple(p(j) for j in range(1, m + 1))
    sign = -1 if m % 2 else 1
    terms = []
    for mono, co in residual.items():
        if mono[:m] != top or len(mono) != m + 1 or not mono[m].barred:
            raise InternalInconsistency(f"residual term on {mono} is not a multiple of the top form")
        terms.append(((mono[m],), co * sign))
    out = Form(m, terms)
    if wedge(out, top_form(m)) != residual:
        raise InternalInconsistency("factoring out the top form did not reproduce the residual")
    return out


def gamma_closed_formula(s: StructureEquations) -> Form:
    """gamma_q = -sum_j C^j_{j qbar}."""
    m = s.m
    terms = []
    for q in range(1, m + 1):
        total = sum((s.C(j, p(j), c(q)) for j in range(1, m + 1)), ZERO)
        terms.append(((c(q),), -total))
    return Form(m, terms)


def gamma_from_d(s: StructureEquations) -> Form:
    """gamma read off the (m,1)-part of d(p1^...^pm)."""
    dtop = d_extend(s, top_form(s.m))
    return factor_top(bidegree_project(dtop, s.m, 1))


def gamma_of(s: StructureEquations) -> Form:
    closed = gamma_closed_formula(s)
    derived = gamma_from_d(s)
    if closed != derived:
        raise InternalInconsistency(f"gamma mismatch: closed formula {closed} vs d-route {derived}")
    return closed


def pseudoholomorphic_check(s: StructureEquations) -> bool:
    """True iff sum_j C^j_{j qbar} = 0 for every q; cross-checked against gamma_of."""
    verdict = all(
        sum((s.C(j, p(j), c(q)) for j in range(1, s.m + 1)), ZERO) == 0 for q in range(1, s.m + 1)
    )
    if verdict != gamma_of(s).is_zero():
        raise InternalInconsistency("pseudoholomorphic check disagrees with gamma")
    return verdict


def gamma_components(gamma: Form) -> list[Coeff]:
    """Coefficients gamma_1..gamma_m of a (0,1)-form."""
    return [gamma.coefficient(c(q)) for q in range(1, gamma.m + 1)]

