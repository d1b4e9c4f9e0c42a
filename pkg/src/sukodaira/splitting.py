"""Splitting-type data and the two fiber-adapted deformations of an invariant structure.

Both deformations replace the invariant coframe ``p_j`` by a coframe ``w_j``
with function coefficients.  The Form objects below reuse the ``p``/``c``
generator labels for both bases: a coframe entry is a form in the original
basis, an inverse entry a form in the deformed one.  Derivatives of the formal
functions are taken in the deformed frame (tag ``psi``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .errors import HypothesisViolated, InternalInconsistency, NotSplitting
from .forms import (
    Form,
    Gen,
    bidegree_project,
    c,
    conj_form,
    gen_form,
    p,
    substitute_generators,
    top_form,
    wedge,
    wedge_all,
)
from .scalar import ZERO, Coeff, DerivSymbol, FuncSymbol, Scalar
from .structure import (
    StructureEquations,
    brackets_from_d,
    exterior_derivative,
    factor_top,
    jacobi_check,
    pseudoholomorphic_check,
    unimodularity_check,
)

Kind = Literal["zero", "minus_infinity"]
PSI = "psi"


@dataclass(frozen=True)
class SplittingData:
    m: int
    k: int

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(range(1, self.k + 1))

    @property
    def fiber(self) -> tuple[int, ...]:
        return tuple(range(self.k + 1, self.m + 1))


def validate_splitting(s: StructureEquations, k: int) -> SplittingData:
    if not 1 <= k < s.m:
        raise ValueError(f"base dimension k={k} must satisfy 1 <= k < m={s.m}")
    for q in range(1, k + 1):
        if not s.table[q - 1].is_zero():
            raise NotSplitting(q)
    # dual statement: no bracket has a component along a base direction
    table = brackets_from_d(s)
    for x in table.basis():
        for y in table.basis():
            br = table.bracket(x, y)
            for q in range(1, k + 1):
                if br.get(p(q), ZERO) or br.get(c(q), ZERO):
                    raise InternalInconsistency(f"[{x},{y}] has a component along base direction {q}")
    return SplittingData(s.m, k)


Matrix = dict  # Gen -> Gen -> Coeff


def _generators(m: int) -> list[Gen]:
    return [p(j) for j in range(1, m + 1)] + [c(j) for j in range(1, m + 1)]


def _matrix_of(m: int, rows: dict[Gen, Form]) -> Matrix:
    gens = _generators(m)
    out = {}
    for a in gens:
        form = rows[a]
        if form.degrees() - {1}:
            raise ValueError(f"coframe entry for {a} is not a 1-form")
        out[a] = {g: form.coefficient(g) for g in gens}
    return out


def _matmul(m: int, x: Matrix, y: Matrix) -> Matrix:
    gens = _generators(m)
    return {
        a: {h: sum((x[a][g] * y[g][h] for g in gens), Coeff()) for h in gens}
        for a in gens
    }


def _identity(m: int) -> Matrix:
    gens = _generators(m)
    return {a: {h: Coeff.const(1) if a == h else Coeff() for h in gens} for a in gens}


def _is_zero_matrix(x: Matrix) -> bool:
    return all(v.is_zero() for row in x.values() for v in row.values())


def invert_unipotent(m: int, a: Matrix) -> Matrix:
    """Inverse of ``I + N`` with N nilpotent, as the finite series ``sum (-N)^n``."""
    gens = _generators(m)
    ident = _identity(m)
    neg_n = {r: {h: ident[r][h] - a[r][h] for h in gens} for r in gens}
    inverse = ident
    power = ident
    for _ in range(2 * m + 1):
        power = _matmul(m, power, neg_n)
        if _is_zero_matrix(power):
            break
        inverse = {r: {h: inverse[r][h] + power[r][h] for h in gens} for r in gens}
    else:
        raise ValueError("coframe change is not unipotent; no finite inverse")
    if _matmul(m, a, inverse) != ident:
        raise InternalInconsistency("coframe inverse failed A*B = I")
    return inverse


def _rows_to_forms(m: int, mat: Matrix) -> dict[Gen, Form]:
    return {a: Form(m, [((g,), v) for g, v in row.items()]) for a, row in mat.items()}


@dataclass(frozen=True, eq=False)
class DeformedStructure:
    base: StructureEquations
    split: SplittingData
    kind: Kind
    symbols: tuple[FuncSymbol, ...]
    coframe: dict  # Gen -> Form in the original basis
    inverse: dict  # Gen -> Form in the deformed basis
    constraints: frozenset
    fiber_nonconstant: tuple[bool, ...] = ()
    attach_index: int = 1
    _matrix: dict = field(default=None, repr=False)
    _inverse_matrix: dict = field(default=None, repr=False)

    @property
    def m(self) -> int:
        return self.base.m

    def dual_frame(self) -> dict[Gen, dict[Gen, Coeff]]:
        """psi_a = sum_g (coefficient of w^a in p^g) xi_g, for every generator a."""
        gens = _generators(self.m)
        return {a: {g: self._inverse_matrix[g][a] for g in gens if self._inverse_matrix[g][a]} for a in gens}

    def constraint_rules(self) -> dict[DerivSymbol, Coeff]:
        return {sym: Coeff() for sym in sorted(self.constraints, key=lambda s: s.sort_key)}

    def round_trip_ok(self) -> bool:
        """Substituting each map into the other is the identity on generators."""
        for g in _generators(self.m):
            if substitute_generators(self.coframe[g], self.inverse) != gen_form(self.m, g):
                return False
            if substitute_generators(self.inverse[g], self.coframe) != gen_form(self.m, g):
                return False
        return True


def _build(s, split, kind, symbols, unbarred_rows, constraints, flags=(), attach=1) -> DeformedStructure:
    m = s.m
    rows = dict(unbarred_rows)
    for j in range(1, m + 1):
        rows[c(j)] = conj_form(rows[p(j)])
    mat = _matrix_of(m, rows)
    inv = invert_unipotent(m, mat)
    d = DeformedStructure(
        base=s,
        split=split,
        kind=kind,
        symbols=tuple(symbols),
        coframe=rows,
        inverse=_rows_to_forms(m, inv),
        constraints=frozenset(constraints),
        fiber_nonconstant=tuple(flags),
        attach_index=attach,
        _matrix=mat,
        _inverse_matrix=inv,
    )
    if not d.round_trip_ok():
        raise InternalInconsistency("coframe round trip is not the identity")
    return d


def check_hypotheses(s: StructureEquations) -> None:
    if not jacobi_check(s):
        raise HypothesisViolated("jacobi")
    if not unimodularity_check(s):
        raise HypothesisViolated("unimodular")
    if not pseudoholomorphic_check(s):
        raise HypothesisViolated("pseudoholomorphic")


def default_symbols(indices) -> tuple[FuncSymbol, ...]:
    return tuple(FuncSymbol(f"f{j}") for j in indices)


def deform_zero(
    s: StructureEquations,
    split: SplittingData,
    symbols: tuple[FuncSymbol, ...] | None = None,
    attach_index: int = 1,
    enforce: bool = True,
) -> DeformedStructure:
    """w^j = p^j + f_j c^a for fiber j, with every f_j constant along the fibers.

    ``a`` is ``attach_index`` (a base direction); the construction is only
    known to give a trivial canonical bundle for ``a = 1``.
    """
    if enforce:
        check_hypotheses(s)
    m, k = s.m, split.k
    if not 1 <= attach_index <= k:
        raise ValueError(f"attach_index must be a base direction in 1..{k}")
    fiber = split.fiber
    symbols = default_symbols(fiber) if symbols is None else tuple(symbols)
    if len(symbols) != len(fiber):
        raise ValueError(f"expected {len(fiber)} function symbols, got {len(symbols)}")
    rows = {p(j): gen_form(m, p(j)) for j in range(1, m + 1)}
    for j, f in zip(fiber, symbols):
        rows[p(j)] = gen_form(m, p(j)) + Form(m, [((c(attach_index),), Coeff.sym(f))])
    constraints = set()
    for f in symbols:
        for q in fiber:
            constraints.add(DerivSymbol(f, q, False, PSI))
            constraints.add(DerivSymbol(f.conj(), q, True, PSI))
    d = _build(s, split, "zero", symbols, rows, constraints, attach=attach_index)
    # fiber-constant means annihilated by xi_q; this is a statement about psi_q only if psi_q = xi_q
    frame = d.dual_frame()
    for q in fiber:
        if frame[p(q)] != {p(q): Coeff.const(1)}:
            raise InternalInconsistency(f"deformed frame vector psi_{q} differs from xi_{q}")
    return d


def deform_minus_infinity(
    s: StructureEquations,
    split: SplittingData,
    symbols: tuple[FuncSymbol, ...] | None = None,
    fiber_nonconstant: bool | tuple[bool, ...] = False,
    enforce: bool = True,
) -> DeformedStructure:
    """w^m = p^m + sum_{q <= k} f_q c^q, every other generator unchanged."""
    if enforce:
        check_hypotheses(s)
    m, k = s.m, split.k
    symbols = default_symbols(split.base) if symbols is None else tuple(symbols)
    if len(symbols) != k:
        raise ValueError(f"expected {k} function symbols, got {len(symbols)}")
    if isinstance(fiber_nonconstant, bool):
        flags = (fiber_nonconstant,) * k
    else:
        flags = tuple(fiber_nonconstant)
        if len(flags) != k:
            raise ValueError("one fiber_nonconstant flag per function symbol")
    rows = {p(j): gen_form(m, p(j)) for j in range(1, m + 1)}
    rows[p(m)] = gen_form(m, p(m)) + Form(m, [((c(q),), Coeff.sym(f)) for q, f in zip(split.base, symbols)])
    return _build(s, split, "minus_infinity", symbols, rows, (), flags)


def _d_function(m: int, co: Coeff) -> Form:
    return Form(m, [((g,), co.derive(g.index, g.barred, PSI)) for g in _generators(m)])


def deformed_differentials(d: DeformedStructure) -> dict[Gen, Form]:
    """dw^a written in the deformed basis, for every generator a."""
    m = d.m
    gens = _generators(m)
    base_in_new = {g: substitute_generators(d.base.d_gen(g), d.inverse) for g in gens}
    out = {}
    for a in gens:
        total = Form.zero(m)
        for g, co in d._matrix[a].items():
            if co.is_zero():
                continue
            total = total + wedge(_d_function(m, co), d.inverse[g]) + base_in_new[g] * co
        out[a] = total
    return out


def dbar_top_raw(d: DeformedStructure) -> Form:
    """(m,1)-part of d(w^1..w^m) before applying constraints; computed two ways."""
    m = d.m
    diffs = deformed_differentials(d)
    direct = bidegree_project(exterior_derivative(top_form(m), diffs, PSI), m, 1)
    summed = Form.zero(m)
    for j in range(1, m + 1):
        dbar_j = bidegree_project(diffs[p(j)], 1, 1)
        rest = wedge_all(m, [gen_form(m, p(i)) for i in range(1, m + 1) if i != j])
        piece = wedge(dbar_j, rest)
        summed = summed + (piece if j % 2 == 1 else -piece)
    if direct != summed:
        raise InternalInconsistency("Leibniz expansion of dbar(w^1..m) disagrees with the term-wise sum")
    return direct


def gamma_deformed_raw(d: DeformedStructure) -> Form:
    return factor_top(dbar_top_raw(d))


def gamma_deformed(d: DeformedStructure) -> Form:
    """gamma_F with dbar_F(w^1..m) = gamma_F ^ w^1..m, after the constraint substitutions."""
    rules = d.constraint_rules()
    residual = dbar_top_raw(d).map_coeffs(lambda co: co.substitute(rules))
    return factor_top(residual)


@dataclass(frozen=True)
class Equation:
    lhs: DerivSymbol
    rhs: Coeff

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class EquationSystem:
    l: int
    unknown: FuncSymbol
    equations: tuple[Equation, ...]

    def substitute(self, rules) -> "EquationSystem":
        return EquationSystem(self.l, self.unknown, tuple(Equation(e.lhs, e.rhs.substitute(rules)) for e in self.equations))

    def is_homogeneous_dbar(self) -> bool:
        """True when every equation reads psi_qbar(g) = 0."""
        return all(e.rhs.is_zero() for e in self.equations)

    def lines(self) -> list[str]:
        return [str(e) for e in self.equations]


def trivialization_system(gamma: Form, l: int, unknown: FuncSymbol, frame: str) -> EquationSystem:
    """Component equations of dbar g + l g gamma = 0, solved for the barred derivatives."""
    g = Coeff.sym(unknown)
    eqs = []
    for q in range(1, gamma.m + 1):
        gq = gamma.coefficient(c(q))
        eqs.append(Equation(DerivSymbol(unknown, q, True, frame), -(gq * l) * g))
    return EquationSystem(l, unknown, tuple(eqs))


def obstruction_system(d: DeformedStructure, l: int, unknown: FuncSymbol = FuncSymbol("g")) -> EquationSystem:
    """The system in g equivalent to dbar_F(g (w^1..m)^l) = 0, derived from gamma_F."""
    if d.kind != "minus_infinity":
        raise ValueError("obstruction systems are defined for the minus-infinity deformation")
    if l < 1:
        raise ValueError("power l must be >= 1")
    return trivialization_system(gamma_deformed(d), l, unknown, PSI)


# Closed-form intermediates, kept independent of the expansion above.


def a_coefficients(s: StructureEquations) -> dict[int, Scalar]:
    """A_j = sum_{2<=q<j} C^q_{qj} - sum_{j<q<=m} C^q_{jq}, for j = 2..m."""
    m = s.m
    out = {}
    for j in range(2, m + 1):
        total = sum((s.C(q, p(q), p(j)) for q in range(2, j)), ZERO)
        total -= sum((s.C(q, p(j), p(q)) for q in range(j + 1, m + 1)), ZERO)
        out[j] = total
    return out


def a_coefficients_via_brackets(s: StructureEquations) -> dict[int, Scalar]:
    """-sum_q p^q([xi_q, xi_j]), the holomorphic part of tr ad(xi_j), for j = 2..m."""
    table = brackets_from_d(s)
    return {
        j: -sum((table.bracket(p(q), p(j)).get(p(q), ZERO) for q in range(1, s.m + 1)), ZERO)
        for j in range(2, s.m + 1)
    }


def extra_20(s: StructureEquations, j: int, symbols: dict[int, FuncSymbol]) -> Form:
    """(1,1)-terms produced by the (2,0)-part of d p_j under p^q = w^q - f_q c^1 (base k = 1)."""
    m = s.m
    f = {q: Coeff.sym(symbols[q]) if q in symbols else Coeff() for q in range(1, m + 1)}
    out = Form.zero(m)
    for q in range(2, m + 1):
        out = out + Form(m, [((p(1), c(1)), -f[q] * s.C(j, p(1), p(q)))])
    for a in range(2, m + 1):
        for b in range(a + 1, m + 1):
            inner = Form(m, [((p(a),), f[b]), ((p(b),), -f[a])])
            out = out + wedge(gen_form(m, c(1)), inner) * s.C(j, p(a), p(b))
    return out


def extra_02(s: StructureEquations, j: int, symbols: dict[int, FuncSymbol]) -> Form:
    """(1,1)-terms produced by the (0,2)-part of d p_j under c^q = cw^q - conj(f_q) w^1 (base k = 1)."""
    m = s.m
    fb = {q: Coeff.sym(symbols[q].conj()) if q in symbols else Coeff() for q in range(1, m + 1)}
    out = Form.zero(m)
    for q in range(2, m + 1):
        out = out + Form(m, [((p(1), c(1)), fb[q] * s.C(j, c(1), c(q)))])
    for a in range(2, m + 1):
        for b in range(a + 1, m + 1):
            inner = Form(m, [((c(a),), fb[b]), ((c(b),), -fb[a])])
            out = out + wedge(gen_form(m, p(1)), inner) * s.C(j, c(a), c(b))
    return out


def gamma_closed_formula_deformed(d: DeformedStructure) -> Form:
    """gamma_F from the closed coefficient formulas (no constraints applied)."""
    s, m, k = d.base, d.m, d.split.k
    trace_bar = {q: sum((s.C(j, p(j), c(q)) for j in range(1, m + 1)), ZERO) for q in range(1, m + 1)}
    comps = {q: Coeff.const(-trace_bar[q]) for q in range(1, m + 1)}
    if d.kind == "zero":
        a_coef = a_coefficients(s)
        a_idx = d.attach_index
        for j, f in zip(d.split.fiber, d.symbols):
            comps[a_idx] = comps[a_idx] + Coeff.sym(f) * a_coef[j] - Coeff.sym(DerivSymbol(f, j, False, PSI))
    else:
        f = {q: Coeff.sym(sym) for q, sym in zip(d.split.base, d.symbols)}
        trace_m = sum((s.C(j, p(j), p(m)) for j in range(1, m + 1)), ZERO)
        for q in range(1, m + 1):
            fq = f.get(q, Coeff())
            extra = fq * trace_m
            for j in range(1, m + 1):
                fbj = f[j].conj() if j in f else Coeff()
                extra = extra - fbj * s.C(j, c(q), c(m)) + fq * fbj * s.C(j, p(m), c(m))
            if q in f:
                extra = extra - Coeff.sym(DerivSymbol(d.symbols[q - 1], m, False, PSI))
            comps[q] = comps[q] + extra
    return Form(m, [((c(q),), comps[q]) for q in range(1, m + 1)])
