"""Kodaira-dimension verdicts with an auditable chain of rule citations.

Analytic facts the engine cannot prove (maximum principle on fibers, the
dimension count for tensor powers of a trivial bundle) enter as named rules
with explicit applicability conditions.  When a condition fails the verdict is
``unresolved``, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HypothesisViolated, InternalInconsistency
from .forms import Form, c, p
from .fourier import BaseModeSystem, minimal_power, mode_symbol, mode_text, solve_modes
from .scalar import Coeff, DerivSymbol, FuncSymbol
from .splitting import (
    DeformedStructure,
    EquationSystem,
    SplittingData,
    gamma_deformed,
    obstruction_system,
    trivialization_system,
)
from .structure import (
    StructureEquations,
    brackets_from_d,
    gamma_of,
    integrability_check,
    jacobi_check,
    unimodularity_check,
)

ZERO_VERDICT = "zero"
MINUS_INFINITY = "minus_infinity"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Citation:
    rule: str
    detail: str

    def as_dict(self) -> dict:
        return {"rule": self.rule, "detail": self.detail}


@dataclass(frozen=True)
class KodairaReport:
    verdict: str
    gamma: str
    l0: int | None = None
    witness: dict | None = None
    dimP: str = ""
    justification: tuple[Citation, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.verdict not in (ZERO_VERDICT, MINUS_INFINITY, UNRESOLVED):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == ZERO_VERDICT and (self.l0 is None or self.witness is None):
            raise InternalInconsistency("a zero verdict needs a minimal power and a witness")

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "verdict": self.verdict,
            "l0": self.l0,
            "witness": self.witness,
            "dimP": self.dimP,
            "justification": [cit.as_dict() for cit in self.justification],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TrivializationEquation:
    """D_l(f) = dbar f + l f gamma for a (0,1)-form gamma in a given frame."""

    l: int
    gamma: Form
    frame: str = "xi"

    def apply(self, f: FuncSymbol) -> Form:
        m = self.gamma.m
        fc = Coeff.sym(f)
        terms = []
        for q in range(1, m + 1):
            dq = Coeff.sym(DerivSymbol(f, q, True, self.frame))
            terms.append(((c(q),), dq + self.gamma.coefficient(c(q)) * self.l * fc))
        return Form(m, terms)

    def components(self, f: FuncSymbol = FuncSymbol("f")) -> EquationSystem:
        return trivialization_system(self.gamma, self.l, f, self.frame)


def operator_D_l(s: StructureEquations, l: int) -> TrivializationEquation:
    if l < 1:
        raise ValueError("power l must be >= 1")
    return TrivializationEquation(l, gamma_of(s))


def dim_P_pattern(l0: int, L: int) -> list[tuple[int, int]]:
    """dim P_l for l = 1..L when the smallest trivial power is l0."""
    if l0 < 1 or L < 1:
        raise ValueError("l0 and L must be >= 1")
    return [(l, 1 if l % l0 == 0 else 0) for l in range(1, L + 1)]


def _dim_text(l0: int) -> str:
    if l0 == 1:
        return "dim P_l = 1 for every l >= 1; log dim P_l / log l -> 0"
    return f"dim P_l = 1 if {l0} divides l, else 0; limsup log dim P_l / log l = 0"


def _top_text(m: int, letter: str = "p") -> str:
    return "^".join(f"{letter}{j}" for j in range(1, m + 1))


def _check_preconditions(s: StructureEquations) -> None:
    if not jacobi_check(s):
        raise HypothesisViolated("jacobi")
    if not unimodularity_check(s):
        raise HypothesisViolated("unimodular")


def _verify_mode(s: StructureEquations, split: SplittingData, gamma: Form, l: int, mode) -> None:
    """Substitute exp(i<n,x>) into every component equation of D_l."""
    for q in range(1, s.m + 1):
        gq = gamma.coefficient(c(q)).constant_value()
        derivative = mode_symbol(q, mode) if q <= split.k else 0
        if derivative + gq * l:
            raise InternalInconsistency(f"witness mode {mode} fails component {q} of D_{l}")


def kodaira_invariant(
    s: StructureEquations, split: SplittingData | None = None, lmax: int = 64
) -> KodairaReport:
    _check_preconditions(s)
    gamma = gamma_of(s)
    m = s.m
    chain = [
        Citation("compact-quotient", "unimodular structure; invariant forms descend to any compact quotient"),
    ]
    if gamma.is_zero():
        chain += [
            Citation("invariant-top-form", f"dbar({_top_text(m)}) = 0, so gamma = 0"),
            Citation("trivial-power-gives-kappa-zero", "canonical bundle trivialized at power 1 by an invariant form"),
        ]
        return KodairaReport(
            ZERO_VERDICT,
            str(gamma),
            l0=1,
            witness={"kind": "invariant", "form": _top_text(m)},
            dimP=_dim_text(1),
            justification=tuple(chain),
        )

    chain.append(Citation("invariant-top-form", f"dbar({_top_text(m)}) = gamma ^ {_top_text(m)} with gamma = {gamma}"))
    if split is None:
        return KodairaReport(
            UNRESOLVED,
            str(gamma),
            justification=tuple(chain),
            notes=("gamma != 0 and no splitting given; dbar f + l f gamma = 0 needs manual analysis",),
        )
    fiber_support = [q for q in split.fiber if gamma.coefficient(c(q))]
    if fiber_support:
        return KodairaReport(
            UNRESOLVED,
            str(gamma),
            justification=tuple(chain),
            notes=(f"gamma has components along fiber directions {fiber_support}; fiber reduction does not apply",),
        )

    gamma_base = tuple(gamma.coefficient(c(q)).constant_value() for q in split.base)
    chain.append(Citation(
        "fiber-reduction",
        f"gamma is supported on base directions 1..{split.k}; solutions of D_l are constant on the fibers "
        f"and descend to the base torus T^{2 * split.k}",
    ))
    found = minimal_power(gamma_base, lmax)
    if found is None:
        return KodairaReport(
            UNRESOLVED,
            str(gamma),
            justification=tuple(chain),
            notes=(f"no integer base mode for l <= {lmax}",),
        )
    l0, mode = found
    _verify_mode(s, split, gamma, l0, mode)
    for smaller in range(1, l0):
        if solve_modes(BaseModeSystem(split.k, gamma_base, smaller)) is not None:
            raise InternalInconsistency(f"power {smaller} < {l0} also admits a mode")
    fn = mode_text(mode)
    eqs = "; ".join(operator_D_l(s, l0).components().lines())
    chain.append(Citation(
        "base-fourier-mode",
        f"D_{l0}: {eqs}; unique solution f = B*{fn}, B != 0, which never vanishes",
    ))
    notes = []
    if any(mode):
        if integrability_check(s):
            chain.append(Citation(
                "all-or-none-invariant",
                "integrable structure with a non-invariant trivialization: every trivialization is non-invariant",
            ))
        else:
            notes.append("constant f cannot solve D_l since gamma != 0; the trivialization is non-invariant")
    chain.append(Citation(
        "trivial-power-gives-kappa-zero",
        f"canonical bundle trivialized at power {l0} by f*({_top_text(m)})^{l0}",
    ))
    return KodairaReport(
        ZERO_VERDICT,
        str(gamma),
        l0=l0,
        witness={"kind": "base_mode", "power": l0, "mode": list(mode), "function": fn},
        dimP=_dim_text(l0),
        justification=tuple(chain),
        notes=tuple(notes),
    )


def _bracket_note(d: DeformedStructure) -> list[str]:
    table = brackets_from_d(d.base)
    nonzero = [q for q in range(2, d.m + 1) if table.bracket(p(1), p(q))]
    if not nonzero:
        return []
    listed = ", ".join(f"[xi_1, xi_{q}]" for q in nonzero)
    return [
        f"{listed} != 0 for this algebra; gamma_F was checked by direct expansion, "
        "which only needs p^1 of these brackets to vanish"
    ]


def kodaira_deformed(d: DeformedStructure) -> KodairaReport:
    gamma_f = gamma_deformed(d)
    m, k = d.m, d.split.k
    chain = [Citation(
        "deformed-top-form",
        f"dbar_F({_top_text(m, 'w')}) = gamma_F ^ {_top_text(m, 'w')} with gamma_F = {gamma_f}",
    )]
    notes: list[str] = []
    if d.kind == "zero":
        if d.constraints:
            used = ", ".join(str(sym) for sym in sorted(d.constraints, key=lambda s: s.sort_key))
            chain.insert(0, Citation("fiber-constant-functions", f"f_j constant along the fibers: {used} = 0"))
        notes += _bracket_note(d)
        if d.attach_index != 1:
            notes.append(f"attach index {d.attach_index} is experimental; only the computed gamma_F is claimed")
        if not gamma_f.is_zero():
            return KodairaReport(UNRESOLVED, str(gamma_f), justification=tuple(chain), notes=tuple(notes))
        chain.append(Citation(
            "trivial-power-gives-kappa-zero",
            f"{_top_text(m, 'w')} is a never-vanishing pseudoholomorphic section of the deformed canonical bundle",
        ))
        return KodairaReport(
            ZERO_VERDICT,
            str(gamma_f),
            l0=1,
            witness={"kind": "deformed_top_form", "form": _top_text(m, "w")},
            dimP=_dim_text(1),
            justification=tuple(chain),
            notes=tuple(notes),
        )

    expected = Form(m, [
        ((c(q),), -Coeff.sym(DerivSymbol(f, m, False, "psi"))) for q, f in zip(d.split.base, d.symbols)
    ])
    if gamma_f != expected:
        notes.append(f"gamma_F = {gamma_f} does not have the shape {expected}")
        return KodairaReport(UNRESOLVED, str(gamma_f), justification=tuple(chain), notes=tuple(notes))
    system = obstruction_system(d, 1)
    chain.append(Citation("obstruction-system", "; ".join(system.lines()) + " (rhs scales by l for power l)"))
    chain.append(Citation(
        "fiber-maximum-principle",
        f"psi_qbar(g) = 0 for q > {k} forces g to be constant on the fibers",
    ))
    if not all(d.fiber_nonconstant) or not d.fiber_nonconstant:
        missing = [str(f) for f, flag in zip(d.symbols, d.fiber_nonconstant or (False,) * k) if not flag]
        notes.append(f"the argument requires f non-constant on the fibers; not asserted for {', '.join(missing)}")
        return KodairaReport(UNRESOLVED, str(gamma_f), justification=tuple(chain), notes=tuple(notes))
    flagged = ", ".join(f"psi_{m}({f}) != 0" for f in d.symbols)
    chain.append(Citation(
        "fiber-nonconstant-obstruction",
        f"asserted {flagged}: a fiber-constant g cannot satisfy psi_qbar(g) = l g psi_{m}(f_q) for q <= {k}, any l >= 1",
    ))
    return KodairaReport(
        MINUS_INFINITY,
        str(gamma_f),
        dimP="dim P_l = 0 for every l >= 1",
        witness={"kind": "obstruction", "system": system.lines()},
        justification=tuple(chain),
        notes=tuple(notes),
    )
