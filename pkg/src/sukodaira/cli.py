"""Command-line driver.

Exit codes: 0 success, 1 failed check / parse error / violated hypothesis,
2 internal inconsistency (an engine self-check disagreed with itself).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import NAMES, CatalogEntry, catalog
from .dsl import AlgebraDoc, parse_algebra, render_algebra
from .errors import EngineError, InternalInconsistency
from .forms import render_form
from .kodaira import KodairaReport, kodaira_deformed, kodaira_invariant
from .splitting import (
    deform_minus_infinity,
    deform_zero,
    gamma_deformed,
    obstruction_system,
    validate_splitting,
)
from .structure import (
    gamma_of,
    integrability_check,
    jacobi_check,
    pseudoholomorphic_check,
    unimodularity_check,
)

FIELDS = ("input", "checks", "gamma", "verdict", "l0", "witness", "justification", "notes")


class CheckFailed(Exception):
    pass


def load(source: str, validate: bool = True) -> AlgebraDoc:
    path = Path(source)
    if path.is_file():
        return parse_algebra(path.read_text(encoding="utf-8"), validate=validate)
    if source in NAMES:
        return catalog(source).doc
    raise CheckFailed(f"{source}: no such file or catalog entry")


def run_checks(doc: AlgebraDoc) -> tuple[dict, str | None]:
    s = doc.structure()
    checks = {"jacobi": jacobi_check(s)}
    if not checks["jacobi"]:
        return checks, None
    checks["unimodular"] = unimodularity_check(s)
    checks["integrable"] = integrability_check(s)
    checks["pseudoholomorphic"] = pseudoholomorphic_check(s)
    return checks, str(gamma_of(s))


def expectation_mismatches(doc: AlgebraDoc, checks: dict) -> list[str]:
    out = []
    for flag, value in doc.expect:
        if flag in checks and checks[flag] != value:
            out.append(f"expected {flag} = {str(value).lower()}, computed {str(checks[flag]).lower()}")
    return out


def _record(input_name: str, checks=None, gamma=None, report: KodairaReport | None = None, **extra) -> dict:
    rec = dict.fromkeys(FIELDS)
    rec.update(input=input_name, checks=checks, gamma=gamma, justification=[], notes=[])
    if report is not None:
        d = report.as_dict()
        rec.update(gamma=d["gamma"], verdict=d["verdict"], l0=d["l0"], witness=d["witness"])
        rec.update(justification=d["justification"], notes=d["notes"])
        extra = {"dimP": d["dimP"], **extra}
    rec.update(extra)
    return rec


def _text(rec: dict) -> str:
    lines = [f"input: {rec['input']}"]
    for key, val in (rec["checks"] or {}).items():
        lines.append(f"{key}: {str(val).lower()}")
    for key in ("coframe",):
        if rec.get(key):
            lines.append(f"{key}:")
            lines += [f"  {row}" for row in rec[key]]
    if rec["gamma"] is not None:
        lines.append(f"{'gamma_F' if 'gamma_F' in rec else 'gamma'}: {rec['gamma']}")
    if rec.get("obstruction_system"):
        lines.append("obstruction system (l = 1):")
        lines += [f"  {row}" for row in rec["obstruction_system"]]
    if rec["verdict"] is not None:
        lines.append(f"verdict: {rec['verdict']}")
    if rec["l0"] is not None:
        lines.append(f"l0: {rec['l0']}")
    w = rec["witness"]
    if w:
        if w["kind"] == "base_mode":
            lines.append(f"witness: base mode {tuple(w['mode'])} at power {w['power']}, f = B*{w['function']}")
        elif w["kind"] == "obstruction":
            lines.append("witness: obstruction system has no nonzero solution")
        else:
            lines.append(f"witness: {w['form']}")
    if rec.get("dimP"):
        lines.append(f"dimP: {rec['dimP']}")
    if rec["justification"]:
        lines.append("justification:")
        lines += [f"  {i}. [{c['rule']}] {c['detail']}" for i, c in enumerate(rec["justification"], start=1)]
    for note in rec["notes"]:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _emit(rec: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rec, indent=2))
    else:
        print(_text(rec))


def cmd_check(args) -> int:
    doc = load(args.source, validate=False)
    checks, gamma = run_checks(doc)
    mismatches = expectation_mismatches(doc, checks)
    rec = _record(doc.name, checks, gamma)
    rec["notes"] = mismatches
    _emit(rec, args.json)
    return 0 if checks["jacobi"] and checks["unimodular"] and not mismatches else 1


def _split_for(doc: AlgebraDoc, k: int | None, required: bool):
    k = doc.k if k is None else k
    if k is None:
        if required:
            raise CheckFailed("a splitting dimension is needed; pass --k or declare 'split k = K'")
        return None
    return validate_splitting(doc.structure(), k)


def cmd_kodaira(args) -> int:
    doc = load(args.source)
    checks, _ = run_checks(doc)
    report = kodaira_invariant(doc.structure(), _split_for(doc, args.k, False), args.lmax)
    _emit(_record(doc.name, checks, report=report), args.json)
    return 0


def cmd_deform(args) -> int:
    doc = load(args.source)
    s = doc.structure()
    split = _split_for(doc, args.k, True)
    checks, _ = run_checks(doc)
    if args.theorem == "zero":
        d = deform_zero(s, split, attach_index=args.attach_index)
    else:
        d = deform_minus_infinity(s, split, fiber_nonconstant=args.fiber_nonconstant)
    report = kodaira_deformed(d)
    coframe = [f"w{j} = {render_form(d.coframe[g])}" for j, g in enumerate(sorted(d.coframe), start=1) if not g.barred]
    extra = {"coframe": coframe, "gamma_F": str(gamma_deformed(d))}
    if d.kind == "minus_infinity":
        extra["obstruction_system"] = obstruction_system(d, 1).lines()
    _emit(_record(doc.name, checks, report=report, **extra), args.json)
    return 0


def cmd_catalog(args) -> int:
    if args.name is None:
        for entry in catalog():
            print(f"{entry.name}: m = {entry.doc.m}, k = {entry.k}; {entry.doc.provenance}")
        return 0
    entry = catalog(args.name)
    if args.json:
        exp = entry.expected
        print(json.dumps({
            "name": entry.name,
            "document": render_algebra(entry.doc),
            "expected": {
                "gamma": exp.gamma, "checks": exp.checks, "verdict": exp.verdict, "l0": exp.l0,
                "mode": list(exp.mode) if exp.mode else None,
                "gamma_minus_infinity": exp.gamma_minus_infinity, "published": exp.published,
            },
        }, indent=2))
    else:
        print(entry.source, end="")
    return 0


def verify_entry(entry: CatalogEntry) -> list[str]:
    """Mismatches between the engine and the entry's expected block."""
    exp = entry.expected
    problems = []
    checks, gamma = run_checks(entry.doc)
    if checks != exp.checks:
        problems.append(f"checks {checks} != {exp.checks}")
    if gamma != exp.gamma:
        problems.append(f"gamma {gamma} != {exp.gamma}")
    problems += expectation_mismatches(entry.doc, checks)
    s = entry.doc.structure()
    split = validate_splitting(s, entry.k) if entry.k else None
    report = kodaira_invariant(s, split)
    if (report.verdict, report.l0) != (exp.verdict, exp.l0):
        problems.append(f"verdict {report.verdict}/{report.l0} != {exp.verdict}/{exp.l0}")
    mode = tuple(report.witness["mode"]) if report.witness and "mode" in report.witness else None
    if mode != exp.mode:
        problems.append(f"mode {mode} != {exp.mode}")
    if exp.gamma_minus_infinity is not None:
        if not gamma_deformed(deform_zero(s, split)).is_zero():
            problems.append("zero deformation has gamma_F != 0")
        got = str(gamma_deformed(deform_minus_infinity(s, split)))
        if got != exp.gamma_minus_infinity:
            problems.append(f"gamma_F {got} != {exp.gamma_minus_infinity}")
    return problems


def cmd_verify_all(args) -> int:
    failed = 0
    for entry in catalog():
        problems = verify_entry(entry)
        failed += bool(problems)
        print(f"{'PASS' if not problems else 'FAIL'} {entry.name}")
        for msg in problems:
            print(f"  {msg}")
    print(f"{len(NAMES) - failed}/{len(NAMES)} entries reproduce")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sukodaira", description="Kodaira dimension of invariant almost complex structures")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="structured output")
        return sp

    sp = with_json(sub.add_parser("check", help="structural checks and gamma"))
    sp.add_argument("source", help=".acs file or catalog name")
    sp.set_defaults(func=cmd_check)

    sp = with_json(sub.add_parser("kodaira", help="Kodaira-dimension verdict"))
    sp.add_argument("source")
    sp.add_argument("--k", type=int, default=None, help="splitting dimension (defaults to the document's)")
    sp.add_argument("--lmax", type=int, default=64)
    sp.set_defaults(func=cmd_kodaira)

    sp = with_json(sub.add_parser("deform", help="deformed structure and its verdict"))
    sp.add_argument("source")
    sp.add_argument("--theorem", choices=("zero", "minus-infinity"), required=True)
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--fiber-nonconstant", action="store_true", help="assert every f_q is non-constant on the fibers")
    sp.add_argument("--attach-index", type=int, default=1, help="base direction carrying the fiber deformation (experimental)")
    sp.set_defaults(func=cmd_deform)

    sp = with_json(sub.add_parser("catalog", help="list or show built-in entries"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify-all", help="reproduce every catalog expected block")
    sp.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2
    except (EngineError, CheckFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
