"""The full reproduction suite: every printed value and identity as a report with an expected status."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from .anomaly import (
    THEOREM_IDS,
    abelian_cardoso,
    h3_plus_other_metric,
    instanton_check,
    instanton_family_h19,
    p1_of,
    solve_alpha_prime,
    verify_theorem,
)
from .connections import connection, curvature, nabla_plus_torsion, structural_identities
from .eom import (
    CONFIGURATIONS,
    NotApplicable,
    configuration,
    equations_of_motion_check,
    identity_15_check,
    identity_16_check,
)
from .exterior import parse_form
from .frames import PRESETS, d, h3, preset
from .golden import CURVATURE_TABLES, P1_TABLES, check_curvature_table, check_p1_table
from .hermitian import HermitianStructure, balanced_check, torsion_3form
from .report import VerificationReport, form_report

PRINTED_TORSION = {
    "iwasawa": ("-t*e135 - t*e146 - t*e236 + t*e245", "-4t^2*e1234"),
    "h3": ("-2t(e12 - e34)e6", "-8t^2*e1234"),
    "h2h4h5": (None, "-4t^2(b^2 + 3)e1234"),
    "h6": ("-2t(e236 - e245)", "-8t^2*e1234"),
    "h19minus": ("2(e136 + e146 - e236 + e246)", "-8(e1234 + e1256)"),
}

THEOREM_GROUP = {"4": "iwasawa", "5": "h3", "6": "h2h4h5", "7": "h6", "8": "h19minus"}
EOM_GROUP = {"h3-two-metrics": "h3", "h3-abelian": "h3", "h2h4h5-levi-civita": "h2h4h5", "torus": "torus"}


@dataclass(frozen=True)
class SuiteCheck:
    group: str
    run: Callable[[], object]


def _hermitian(name: str) -> HermitianStructure:
    return HermitianStructure.from_preset(preset(name))


def _balanced(name: str, h: HermitianStructure | None = None, expected: bool = True) -> VerificationReport:
    h = h or _hermitian(name)
    res = balanced_check(h)
    return VerificationReport(f"balanced-{name}", res.passed, expected=expected, detail=res.reason)


def _torsion(name: str) -> list:
    T_text, dT_text = PRINTED_TORSION[name]
    h = _hermitian(name)
    T = torsion_3form(h)
    out = []
    if T_text:
        out.append(form_report(f"torsion-{name}", T - parse_form(T_text)))
    out.append(form_report(f"dT-{name}", d(T, h.structure) - parse_form(dT_text)))
    return out


def _structural(name: str) -> list:
    reports = [replace(r, name=f"{r.name}-{name}") for r in structural_identities(_hermitian(name))]
    if name == "h3":
        bad = nabla_plus_torsion(_hermitian(name))
        reports.append(VerificationReport("nabla-plus-T-parallel-h3", not bad, residual_terms=len(bad)))
    return reports


def _negative_iwasawa() -> VerificationReport:
    h = _hermitian("iwasawa")
    dT = d(torsion_3form(h), h.structure)
    rep = solve_alpha_prime(dT, p1_of("iwasawa", "plus"), abelian_cardoso().p1(), "anomaly-iwasawa-plus-abelian",
                            expected=False)
    return rep


def _chern_blocked(name: str) -> VerificationReport:
    """With ``p1(nabla^c) = 0`` the anomaly needs ``p1(A)`` to be a positive multiple of ``-dT``."""
    h = _hermitian(name)
    dT = d(torsion_3form(h), h.structure)
    rep = solve_alpha_prime(dT, p1_of(name, "chern"), abelian_cardoso().p1(), f"anomaly-{name}-chern-abelian",
                            expected=False)
    return rep


def _quadratic_identity(name: str) -> list:
    """Quadratic identity for instanton curvatures, and its reduced form on (1,1) curvatures."""
    out = []
    h = _hermitian(name)
    curvatures = [(k, curvature(connection(k, h.structure, h), h.structure))
                  for k in ("levi_civita", "plus", "minus", "chern")]
    if name == "h3":
        curvatures.append(("plus-other-metric", h3_plus_other_metric().curvature))
        curvatures.append(("abelian", abelian_cardoso().curvature))
    if name == "h19minus":
        curvatures.append(("family", instanton_family_h19().curvature))
    for label, cur in curvatures:
        i15 = identity_15_check(cur, h)
        if instanton_check(cur, h):
            out.append(VerificationReport(f"instanton-identity-{name}-{label}", i15,
                                          detail="SU(3)-instanton curvature"))
        try:
            i16 = identity_16_check(cur, h)
        except NotApplicable:
            continue
        out.append(VerificationReport(f"reduced-identity-equivalence-{name}-{label}", i15 == i16,
                                      detail=f"quadratic identity {i15}, reduced identity {i16}"))
    return out


def _eom(name: str) -> list:
    """The equations of motion, and their agreement with the quadratic identity for the curvature term."""
    cfg = configuration(name)
    rep = equations_of_motion_check(cfg)
    i15 = identity_15_check(cfg.curvature_term, cfg.geometry)
    agree = VerificationReport(f"eom-identity-equivalence-{name}", rep.passed == i15,
                               detail=f"equations of motion {rep.passed}, quadratic identity {i15}")
    return [rep, agree]


def suite_checks() -> list:
    checks = []
    for g, k in CURVATURE_TABLES:
        checks.append(SuiteCheck(g, lambda g=g, k=k: check_curvature_table(g, k)))
    for g, k in P1_TABLES:
        checks.append(SuiteCheck(g, lambda g=g, k=k: check_p1_table(g, k)))
    for name in PRESETS:
        checks.append(SuiteCheck(name, lambda name=name: _balanced(name)))
    checks.append(SuiteCheck("h3", lambda: _balanced(
        "h3_jplus", HermitianStructure.from_preset(h3(D=1)), expected=False)))
    for name in PRINTED_TORSION:
        checks.append(SuiteCheck(name, lambda name=name: _torsion(name)))
    for name in PRESETS:
        checks.append(SuiteCheck(name, lambda name=name: _structural(name)))
    for tid in THEOREM_IDS:
        checks.append(SuiteCheck(THEOREM_GROUP[tid[1]], lambda tid=tid: verify_theorem(tid)))
    checks.append(SuiteCheck("iwasawa", _negative_iwasawa))
    for name in ("iwasawa", "h3", "h2h4h5", "h6"):
        checks.append(SuiteCheck(name, lambda name=name: _chern_blocked(name)))
    for name in CONFIGURATIONS:
        checks.append(SuiteCheck(EOM_GROUP[name], lambda name=name: _eom(name)))
    for name in PRESETS:
        checks.append(SuiteCheck(name, lambda name=name: _quadratic_identity(name)))
    return checks


def resolve_group(only: str | None) -> str | None:
    if only is None:
        return None
    if only in PRESETS:
        return only
    matches = [p for p in PRESETS if p.startswith(only)]
    if len(matches) != 1:
        raise KeyError(f"--only={only!r} does not name a preset ({', '.join(PRESETS)})")
    return matches[0]


def reproduce_paper(only: str | None = None) -> list:
    group = resolve_group(only)
    reports = []
    for check in suite_checks():
        if group is not None and check.group != group:
            continue
        result = check.run()
        reports.extend(result if isinstance(result, list) else [result])
    return reports


__all__ = ["PRINTED_TORSION", "SuiteCheck", "reproduce_paper", "resolve_group", "suite_checks"]
