"""Shared generators: random Gaussian-rational data and Jacobi-satisfying structures."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from sukodaira.forms import Form, Gen
from sukodaira.scalar import Scalar
from sukodaira.structure import StructureEquations, jacobi_check

HALF = Fraction(1, 2)
CONSTANTS = (
    Scalar(0), Scalar(1), Scalar(-1), Scalar(HALF), Scalar(-HALF), Scalar(0, HALF), Scalar(0, -HALF),
)

fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
scalars = st.builds(Scalar, fractions, fractions)


def gens(m: int):
    return st.builds(Gen, st.booleans(), st.integers(min_value=1, max_value=m))


@st.composite
def forms(draw, m: int, max_terms: int = 4, max_degree: int = 3):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        degree = draw(st.integers(0, max_degree))
        mono = tuple(draw(gens(m)) for _ in range(degree))
        terms.append((mono, draw(scalars)))
    return Form(m, terms)


def _candidate_monomials(m: int, j: int) -> list[tuple[Gen, Gen]]:
    """2-form monomials for d p^j that involve at least one generator of lower index."""
    allg = [Gen(False, i) for i in range(1, m + 1)] + [Gen(True, i) for i in range(1, m + 1)]
    out = []
    for a in range(len(allg)):
        for b in range(a + 1, len(allg)):
            x, y = allg[a], allg[b]
            if min(x.index, y.index) < j and max(x.index, y.index) <= m:
                out.append((x, y))
    return out


def random_structure(rng: random.Random, m: int, density: float = 0.12) -> StructureEquations | None:
    table = [Form.zero(m)]
    for j in range(2, m + 1):
        terms = [((x, y), rng.choice(CONSTANTS[1:])) for x, y in _candidate_monomials(m, j) if rng.random() < density]
        table.append(Form(m, terms))
    s = StructureEquations(m, tuple(table))
    return s if jacobi_check(s) else None


# sparser for larger m, otherwise almost every draw fails d^2 = 0
DENSITY = {2: 0.2, 3: 0.08, 4: 0.05}


def jacobi_structures(seed: int, count: int, max_m: int = 4) -> list[StructureEquations]:
    """``count`` non-trivial structures, cycling m = 2..max_m."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = 2 + len(out) % (max_m - 1)
        s = random_structure(rng, m, DENSITY[m])
        if s is not None and any(not f.is_zero() for f in s.table):
            out.append(s)
    return out
