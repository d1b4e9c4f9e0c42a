"""Built-in structure equations with golden expected results."""

from __future__ import annotations

from dataclasses import dataclass, field

from .dsl import AlgebraDoc, parse_algebra
from .errors import UnknownEntry


@dataclass(frozen=True)
class Expected:
    gamma: str
    checks: dict
    verdict: str
    l0: int | None
    mode: tuple[int, ...] | None = None
    # gamma_F of the minus_infinity deformation with default symbols
    gamma_minus_infinity: str | None = None
    published: bool = True


@dataclass(frozen=True)
class CatalogEntry:
    doc: AlgebraDoc
    expected: Expected
    source: str = field(repr=False, default="")

    @property
    def name(self) -> str:
        return self.doc.name

    @property
    def k(self) -> int | None:
        return self.doc.k


def _checks(integrable: bool, pseudoholomorphic: bool) -> dict:
    return {"jacobi": True, "unimodular": True, "integrable": integrable, "pseudoholomorphic": pseudoholomorphic}


def _torus(m: int) -> str:
    lines = [f"# provenance: flat torus of real dimension {2 * m}", f"algebra torus_{2 * m} m = {m} split k = 1"]
    lines += ["expect integrable = true", "expect pseudoholomorphic = true"]
    lines += [f"d p{j} = 0" for j in range(1, m + 1)]
    return "\n".join(lines) + "\n"


_SOURCES = {
    "torus_4": (_torus(2), Expected("0", _checks(True, True), "zero", 1, None, "-psi_2(f1)*c1")),
    "torus_6": (_torus(3), Expected("0", _checks(True, True), "zero", 1, None, "-psi_3(f1)*c1")),
    "torus_8": (_torus(4), Expected("0", _checks(True, True), "zero", 1, None, "-psi_4(f1)*c1")),
    "fls96_j1": (
        """\
# provenance: first invariant structure on the 6-dimensional solvable group; equations as published (phi^2, phi^3 are e5+ie6, e3+ie4)
algebra fls96_j1 m = 3 split k = 1
expect integrable = false
expect pseudoholomorphic = true
d p1 = 0
d p2 = -1/2*p1^c2 - 1/2*c1^c2
d p3 = -1/2*p1^c3 - 1/2*c1^c3 + 1/2i*p1^p2 - 1/2i*c1^p2
""",
        Expected("0", _checks(False, True), "zero", 1, None, "-psi_3(f1)*c1"),
    ),
    "fls96_j2": (
        """\
# provenance: second invariant structure on the 6-dimensional solvable group; equations re-derived from the real structure equations
algebra fls96_j2 m = 3 split k = 1
expect pseudoholomorphic = false
d p1 = 0
d p2 = -1/4*p1^p2 - 1/4*p1^c2 + 3/4*p2^c1 + 1/4*c1^c2
d p3 = 3/4*p1^p3 - 1/4*p1^c3 - 1/4*p3^c1 + 1/4*c1^c3
""",
        Expected("-1/2*c1", _checks(False, False), "zero", 1, (0, -1)),
    ),
    "solv8": (
        """\
# provenance: 8-dimensional solvmanifold with a holomorphic SU(4)-structure
algebra solv8 m = 4 split k = 1
expect integrable = true
expect pseudoholomorphic = true
d p1 = 0
d p2 = p1^p2
d p3 = - p1^p3
d p4 = - p2^p3
""",
        Expected("0", _checks(True, True), "zero", 1, None, "-psi_4(f1)*c1"),
    ),
    "iwasawa": (
        """\
# provenance: standard equations, engine-validated
algebra iwasawa m = 3 split k = 1
expect integrable = true
expect pseudoholomorphic = true
d p1 = 0
d p2 = 0
d p3 = - p1^p2
""",
        Expected("0", _checks(True, True), "zero", 1, None, "-psi_3(f1)*c1", published=False),
    ),
    "nakamura_hp": (
        """\
# provenance: standard equations, engine-validated
algebra nakamura_hp m = 3 split k = 1
expect integrable = true
expect pseudoholomorphic = true
d p1 = 0
d p2 = p1^p2
d p3 = - p1^p3
""",
        Expected("0", _checks(True, True), "zero", 1, None, "-psi_3(f1)*c1", published=False),
    ),
}

NAMES = tuple(_SOURCES)


def catalog(name: str | None = None):
    """All entries in a fixed order, or the one called ``name``."""
    if name is None:
        return [catalog(n) for n in NAMES]
    if name not in _SOURCES:
        raise UnknownEntry(name)
    text, expected = _SOURCES[name]
    return CatalogEntry(parse_algebra(text), expected, text)
