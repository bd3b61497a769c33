"""Command-line front end.

    nilflux verify <scenario-file>
    nilflux reproduce-paper [--only=<preset>] [--format=human|records]
    nilflux p1 --preset <name> --connection <lc|plus|minus|chern> [--param name=p/q]...

Exit status: 0 when every check has its expected outcome, 1 on a
verification failure, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .anomaly import (
    THEOREM_IDS,
    InstantonBundle,
    abelian_cardoso,
    instanton_check,
    instanton_family_h19,
    pontrjagin_raw,
    solve_alpha_prime,
    trivial_instanton,
    verify_theorem,
)
from .connections import CurvatureError, connection, curvature, ricci_form, structural_identities
from .eom import CONFIGURATIONS, configuration, equations_of_motion_check
from .frames import AlmostComplexStructure, PresetGeometry, StructureError, d, parse_structure, preset
from .hermitian import ConventionError, HermitianStructure, balanced_check, torsion_3form
from .report import VerificationReport, form_report
from .scalar import ScalarError, format_rational, parse_scalar
from .suite import EOM_GROUP, reproduce_paper

KNOWN_CHECKS = ("balanced", "holonomy", "instanton", "anomaly", "theorems", "eom", "structural", "p1")
CONNECTION_ALIASES = {"lc": "levi_civita", "g": "levi_civita", "levi_civita": "levi_civita", "plus": "plus",
                      "+": "plus", "minus": "minus", "-": "minus", "chern": "chern", "c": "chern"}


class UsageError(Exception):
    pass


@dataclass
class Scenario:
    preset: str | None = None
    structure: str | None = None
    params: dict = field(default_factory=dict)
    connections: tuple = ("plus",)
    instanton: str = "abelian"
    checks: tuple = ()
    name: str = ""
    expect: bool = True

    def label(self) -> str:
        return self.name or self.preset or "custom"


def _rational(text: str, what: str) -> Fraction:
    try:
        value = parse_scalar(text)
    except ScalarError as exc:
        raise UsageError(f"{what}: {exc}") from None
    if not value.is_constant():
        raise UsageError(f"{what}: {text!r} is not a rational number")
    return value.constant_value()


def parse_scenario(text: str) -> Scenario:
    """Parse ``key=value`` text.

    ``#`` starts a comment and several pairs may share a line, except
    ``structure=`` which takes the rest of its line.  Reserved keys are
    preset, structure, checks, connection, instanton, name and expect;
    any other key binds a parameter to a rational.
    """
    s = Scenario()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for item in [line] if line.startswith("structure") else line.split():
            if "=" not in item:
                raise UsageError(f"line {lineno}: expected key=value, got {item!r}")
            key, value = (x.strip() for x in item.split("=", 1))
            if key in seen:
                raise UsageError(f"line {lineno}: duplicate key {key!r}")
            seen.add(key)
            if key == "preset":
                s.preset = value
            elif key == "structure":
                s.structure = value
            elif key == "checks":
                s.checks = tuple(c.strip() for c in value.split(",") if c.strip())
                unknown = [c for c in s.checks if c not in KNOWN_CHECKS]
                if unknown:
                    raise UsageError(f"line {lineno}: unknown check {unknown[0]!r} "
                                     f"(choose from {', '.join(KNOWN_CHECKS)})")
            elif key == "connection":
                try:
                    s.connections = tuple(CONNECTION_ALIASES[c.strip()] for c in value.split(","))
                except KeyError as exc:
                    raise UsageError(f"line {lineno}: unknown connection {exc.args[0]!r}") from None
            elif key == "instanton":
                if value not in ("abelian", "family", "trivial"):
                    raise UsageError(f"line {lineno}: unknown instanton {value!r} (abelian, family, trivial)")
                s.instanton = value
            elif key == "name":
                s.name = value
            elif key == "expect":
                if value not in ("pass", "fail"):
                    raise UsageError(f"line {lineno}: expect must be pass or fail")
                s.expect = value == "pass"
            else:
                s.params[key] = _rational(value, f"line {lineno}")
    if (s.preset is None) == (s.structure is None):
        raise UsageError("scenario needs exactly one of preset= or structure=")
    if not s.checks:
        raise UsageError("scenario lists no checks")
    return s


def _geometry(s: Scenario) -> PresetGeometry:
    if s.preset is not None:
        # presets stay symbolic; bindings only feed sign evaluations and sample points
        try:
            return preset(s.preset)
        except StructureError as exc:
            raise UsageError(str(exc)) from None
    try:
        eqs = parse_structure(s.structure)
    except StructureError as exc:
        raise UsageError(f"structure: {exc}") from None
    eqs = eqs.subs(s.params) if s.params else eqs
    J = AlmostComplexStructure.standard()
    return PresetGeometry("custom", eqs, J, J.kaehler_form(), tuple(sorted(eqs.parameters())))


def _instanton(s: Scenario, g: PresetGeometry) -> InstantonBundle:
    if s.instanton == "family":
        if g.name != "h19minus":
            raise UsageError("instanton=family lives on preset h19minus")
        return instanton_family_h19()
    if s.instanton == "trivial":
        return trivial_instanton()
    return abelian_cardoso(g)


def run_scenario(s: Scenario) -> list:
    """Run the requested checks in a fixed order; returns reports."""
    g = _geometry(s)
    h = HermitianStructure.from_preset(g)
    eqs = g.structure
    reports: list[VerificationReport] = []
    order = [c for c in KNOWN_CHECKS if c in s.checks]
    curvatures = {}

    def cur(kind):
        if kind not in curvatures:
            curvatures[kind] = curvature(connection(kind, eqs, h), eqs)
        return curvatures[kind]

    for check in order:
        if check == "balanced":
            res = balanced_check(h)
            reports.append(VerificationReport(f"balanced-{s.label()}", res.passed, detail=res.reason))
        elif check == "holonomy":
            reports.append(form_report(f"holonomy-su3-{s.label()}", ricci_form(cur("plus"), h)))
        elif check == "instanton":
            for kind in s.connections:
                ok = instanton_check(cur(kind), h)
                reports.append(VerificationReport(f"instanton-{s.label()}-{kind}", ok))
        elif check == "p1":
            for kind in s.connections:
                raw = pontrjagin_raw(cur(kind), eqs).raw
                reports.append(VerificationReport(f"p1-{s.label()}-{kind}", True, detail=f"8pi^2 p1 = {raw}"))
        elif check == "anomaly":
            dT = d(torsion_3form(h), eqs)
            inst = _instanton(s, g)
            p_A = inst.p1(eqs) if s.instanton != "family" else inst.p1()
            for kind in s.connections:
                args = (dT, pontrjagin_raw(cur(kind), eqs), p_A, f"anomaly-{s.label()}-{kind}-{s.instanton}")
                rep = solve_alpha_prime(*args)
                if rep.status == "undecided":
                    needed = rep.alpha_prime.variables()
                    missing = sorted(needed - set(s.params))
                    if missing:
                        raise UsageError(f"sign of alpha' = {rep.alpha_prime} needs a value for {', '.join(missing)}")
                    rep = solve_alpha_prime(*args, sample={k: s.params[k] for k in needed})
                reports.append(rep)
        elif check == "structural":
            reports.extend(replace(r, name=f"{r.name}-{s.label()}") for r in structural_identities(h))
        elif check == "theorems":
            tag = {"iwasawa": "4", "h3": "5", "h2h4h5": "6", "h6": "7", "h19minus": "8"}.get(g.name)
            sample = dict(s.params) or None
            for tid in THEOREM_IDS:
                if tag and tid.startswith("T" + tag):
                    reports.append(verify_theorem(tid, sample))
        elif check == "eom":
            for name in CONFIGURATIONS:
                if EOM_GROUP[name] == g.name:
                    reports.append(equations_of_motion_check(configuration(name, dict(s.params) or None)))
    if not s.expect:
        reports = [replace(r, expected=False) for r in reports]
    return reports


# -- output ---------------------------------------------------------------------------

def _use_color(stream) -> bool:
    if os.environ.get("NILFLUX_COLOR") == "0":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, ok: bool, color: bool) -> str:
    if not color:
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def emit(reports: Sequence[VerificationReport], fmt: str, out=None) -> int:
    out = out or sys.stdout
    color = fmt == "human" and _use_color(out)
    for r in reports:
        line = r.record() if fmt == "records" else r.human()
        print(_paint(line, r.as_expected, color), file=out)
    bad = [r for r in reports if not r.as_expected]
    if fmt == "human":
        summary = f"{len(reports)} checks, {len(reports) - len(bad)} as expected, {len(bad)} unexpected"
        print(_paint(summary, not bad, color), file=out)
    return 1 if bad else 0


def _param(text: str) -> tuple:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    name, value = text.split("=", 1)
    try:
        return name.strip(), _rational(value, name)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nilflux", description="Exact verification of heterotic solutions "
                                 "on six-dimensional nilmanifolds.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a key=value scenario file")
    v.add_argument("scenario")
    v.add_argument("--format", choices=("human", "records"), default="human")
    r = sub.add_parser("reproduce-paper", help="run the full verification suite")
    r.add_argument("--only", default=None, help="restrict to one preset")
    r.add_argument("--format", choices=("human", "records"), default="human")
    p = sub.add_parser("p1", help="print the Pontrjagin form 8pi^2 p1 of a connection")
    p.add_argument("--preset", required=True)
    p.add_argument("--connection", required=True, choices=("lc", "plus", "minus", "chern"))
    p.add_argument("--param", action="append", type=_param, default=[])
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "verify":
            try:
                with open(args.scenario, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {args.scenario}: {exc.strerror}") from None
            scenario = parse_scenario(text)
            try:
                reports = run_scenario(scenario)
            except (ValueError, ConventionError, CurvatureError) as exc:
                raise UsageError(f"{scenario.label()}: {exc}") from None
            return emit(reports, args.format)
        if args.command == "reproduce-paper":
            try:
                reports = reproduce_paper(args.only)
            except KeyError as exc:
                raise UsageError(exc.args[0]) from None
            return emit(reports, args.format)
        if args.command == "p1":
            params = dict(args.param)
            try:
                g = preset(args.preset, **params)
            except StructureError as exc:
                raise UsageError(str(exc)) from None
            except TypeError:
                raise UsageError(f"preset {args.preset!r} does not take parameters "
                                 f"{', '.join(sorted(params))}") from None
            h = HermitianStructure.from_preset(g)
            kind = CONNECTION_ALIASES[args.connection]
            raw = pontrjagin_raw(curvature(connection(kind, g.structure, h), g.structure), g.structure).raw
            bound = ",".join(f"{k}={format_rational(v)}" for k, v in sorted(params.items()))
            print(f"{g.name}{'[' + bound + ']' if bound else ''} {kind}: 8pi^2 p1 = {raw}")
            return 0
    except UsageError as exc:
        print(f"nilflux: error: {exc}", file=sys.stderr)
        return 2
    return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
