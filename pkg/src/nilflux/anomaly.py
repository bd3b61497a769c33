"""Pontrjagin forms, instantons and the anomaly cancellation condition.

Every Pontrjagin representative is stored as ``raw = 8 pi^2 p_1 =
sum_{i<j} Omega^i_j ^ Omega^i_j``, so ``pi`` never enters the scalar ring and
``dT = (alpha'/4) (raw(nabla) - raw(A))`` is the anomaly condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .connections import (
    Curvature,
    CurvatureError,
    connection,
    curvature,
    curvature_of_forms,
    rescale_connection,
    rescale_curvature,
)
from .exterior import INDICES, KForm, e, evaluate_basis, form_sum, pullback, wedge
from .frames import PresetGeometry, StructureEquations, d, preset
from .hermitian import HermitianStructure, torsion_3form
from .report import Ratio, VerificationReport
from .scalar import ONE, Scalar, scalar_sum

T_ = Scalar.var("t")
TP = Scalar.var("t'")
B_ = Scalar.var("b")
LAM = Scalar.var("lambda")
MU = Scalar.var("mu")


@dataclass(frozen=True)
class PontrjaginForm:
    raw: KForm

    def __post_init__(self):
        if self.raw.degree != 4 and not self.raw.is_zero():
            raise ValueError("a Pontrjagin representative is a 4-form")

    def __sub__(self, other: PontrjaginForm) -> KForm:
        return _four(self.raw) - _four(other.raw)


def _four(f: KForm) -> KForm:
    return f if f.degree == 4 else KForm.zero(4)


def pontrjagin_raw(cur: Curvature, eqs: StructureEquations | None = None) -> PontrjaginForm:
    """``sum_{i<j} Omega^i_j ^ Omega^i_j``; closedness is asserted when ``eqs`` is given."""
    n = cur.rank()
    parts = [wedge(cur.forms[i][j], cur.forms[i][j]) for i in range(n) for j in range(i + 1, n)
             if not cur.forms[i][j].is_zero()]
    raw = form_sum(parts, 4)
    if eqs is not None and not d(raw, eqs).is_zero():
        raise CurvatureError(f"Pontrjagin representative {raw} is not closed")
    return PontrjaginForm(raw)


@dataclass(frozen=True)
class InstantonBundle:
    """Gauge field data entering the anomaly and the equations of motion.

    ``curvature`` is a rank-n matrix of 2-forms; ``connection`` (the matching
    matrix of 1-forms) is present when an invariant potential is known.
    """

    kind: str
    curvature: Curvature
    connection: tuple | None = None
    parameters: Mapping[str, Scalar] = field(default_factory=dict)
    note: str = ""

    def p1(self, eqs: StructureEquations | None = None) -> PontrjaginForm:
        return pontrjagin_raw(self.curvature, eqs)

    @property
    def rank(self) -> int:
        return self.curvature.rank()

    def is_abelian(self) -> bool:
        return self.kind in ("abelian_cardoso", "trivial")


ABELIAN_TRACE = -e(1, 2, 3, 4) * 2


def abelian_cardoso(geometry: PresetGeometry | None = None) -> InstantonBundle:
    """The abelian SU(3)-instanton, represented by ``F = e^{12} - e^{34}`` in a rank-2 real bundle.

    Only its trace ``F ^ F = -2 e^{1234}`` is fixed by the construction; the
    representative is the constant-profile member consistent with that trace.
    On a geometry where ``F`` is ``d`` of an invariant 1-form the potential is
    recorded too.
    """
    F = e(1, 2) - e(3, 4)
    cur = Curvature(((KForm.zero(2), F), (-F, KForm.zero(2))), "abelian_cardoso")
    conn = None
    if geometry is not None:
        a = _invariant_potential(F, geometry.structure)
        if a is not None:
            conn = ((KForm.zero(1), a), (-a, KForm.zero(1)))
    bundle = InstantonBundle("abelian_cardoso", cur, conn,
                             note="constant-profile representative F = e12 - e34 of the trace -2e1234")
    assert bundle.p1().raw == ABELIAN_TRACE
    return bundle


def _invariant_potential(F: KForm, eqs: StructureEquations) -> KForm | None:
    """An invariant 1-form ``a = c e^k`` with ``da = F``, if a single generator suffices."""
    for k in INDICES:
        dk = eqs.d_basis((k,))
        if dk.is_zero() or set(dk.terms) != set(F.terms):
            continue
        idx = next(iter(F.terms))
        c = F.coeff(idx) * dk.coeff(idx).inverse() if dk.coeff(idx).is_monomial() else None
        if c is not None and dk * c == F:
            return e(k) * c
    return None


def trivial_instanton() -> InstantonBundle:
    z = KForm.zero(2)
    return InstantonBundle("trivial", Curvature(((z,),), "trivial"), ((KForm.zero(1),),))


def tangent_instanton(cur: Curvature, forms: tuple | None = None, note: str = "") -> InstantonBundle:
    return InstantonBundle("tangent_connection", cur, forms, note=note)


def instanton_family_h19(lam=LAM, mu=MU) -> InstantonBundle:
    """The two-parameter family ``A_{lambda,mu}`` of SU(3)-instantons on h19^-."""
    lam, mu = Scalar.coerce(lam), Scalar.coerce(mu)
    plus = e(1) * lam + e(6) * mu
    special = {(2, 3), (2, 5), (4, 5)}
    forms = [[KForm.zero(1)] * 6 for _ in range(6)]
    for i in INDICES:
        for j in INDICES:
            if i < j:
                f = -plus if (i, j) in special else plus
                forms[i - 1][j - 1] = f
                forms[j - 1][i - 1] = -f
    forms = tuple(tuple(row) for row in forms)
    eqs = preset("h19minus").structure
    cur = curvature_of_forms(forms, eqs, "family_h19", metric=True)
    return InstantonBundle("family_h19", cur, forms, {"lambda": lam, "mu": mu})


def instanton_check(cur: Curvature, h: HermitianStructure) -> bool:
    """Each curvature form is J-invariant and has zero trace against J."""
    J = h.J
    for row in cur.forms:
        for f in row:
            if f.is_zero():
                continue
            if pullback(f, J.matrix) != f:
                return False
            trace = scalar_sum(J.entry(m, k) * evaluate_basis(f, (k, m))
                               for k in INDICES for m in INDICES if J.entry(m, k))
            if trace:
                return False
    return True


def is_type_11(cur: Curvature, h: HermitianStructure) -> bool:
    return all(f.is_zero() or pullback(f, h.J.matrix) == f for row in cur.forms for f in row)


# -- anomaly cancellation ----------------------------------------------------

def solve_alpha_prime(dT: KForm, p_nabla: PontrjaginForm, p_A: PontrjaginForm, name: str = "anomaly",
                      sample: Mapping[str, object] | None = None, expected: bool = True) -> VerificationReport:
    """Solve ``dT = (alpha'/4) (p_nabla - p_A)`` for a scalar ``alpha'``.

    Status is ``valid`` (alpha' > 0), ``invalid`` (alpha' <= 0), ``undecided``
    (sign depends on parameters and no sample point was given),
    ``no-solution`` or ``unconstrained``.
    """
    dT = _four(dT)
    diff = p_nabla - p_A
    if diff.is_zero():
        status = "unconstrained" if dT.is_zero() else "no-solution"
        return VerificationReport(name, status == "unconstrained", residual=dT, status=status,
                                  expected=expected)
    key = min(diff.terms)
    num, den = dT.coeff(key) * 4, diff.coeff(key)
    # dT = (num / (4 den)) diff  <=>  4 den dT - num diff = 0
    residual = dT * (den * 4) - diff * num
    if not residual.is_zero() or set(dT.terms) - set(diff.terms):
        return VerificationReport(name, False, residual=residual, status="no-solution", expected=expected,
                                  detail="dT is not proportional to the Pontrjagin difference")
    alpha = Ratio.make(num, den)
    sign, where = alpha.sign(), "for all parameters"
    if sample is not None:
        value = alpha.evaluate(sample)
        sign, where = (value > 0) - (value < 0), "at " + _fmt_sample(sample) + f" (alpha'={value})"
    if sign is None:
        status = "undecided"
    else:
        status = "valid" if sign > 0 else "invalid"
    detail = f"alpha' {'> 0' if sign and sign > 0 else '<= 0' if sign is not None else 'sign unknown'} {where}"
    return VerificationReport(name, status == "valid", residual=residual, alpha_prime=alpha, status=status,
                              expected=expected, detail=detail)


def _fmt_sample(sample: Mapping[str, object]) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(sample.items()))


# -- theorem identities ------------------------------------------------------

@lru_cache(maxsize=None)
def _geometry(name: str, params: tuple = ()) -> tuple:
    g = preset(name, **dict(params))
    h = HermitianStructure.from_preset(g)
    T = torsion_3form(h)
    return g, h, T, d(T, g.structure)


@lru_cache(maxsize=None)
def p1_of(name: str, kind: str, params: tuple = ()) -> PontrjaginForm:
    g, h, _, _ = _geometry(name, params)
    return pontrjagin_raw(curvature(connection(kind, g.structure, h), g.structure), g.structure)


@lru_cache(maxsize=None)
def h3_plus_other_metric() -> InstantonBundle:
    """``nabla^+`` for the metric with parameter ``t'``, written in the coframe of parameter ``t``.

    The ``t'``-orthonormal coframe is ``f^i = e^i`` (i <= 5), ``f^6 = (t'/t) e^6``.
    """
    g, h, _, _ = _geometry("h3", (("t", TP),))
    conn = connection("plus", g.structure, h)
    own = curvature(conn, g.structure)
    factors = [ONE] * 5 + [TP * T_.inverse()]
    moved = rescale_connection(conn, factors)
    cur = rescale_curvature(own, factors)
    if curvature_of_forms(moved.forms, _geometry("h3")[0].structure).forms != cur.forms:
        raise CurvatureError("frame change does not commute with the curvature")
    return tangent_instanton(cur, moved.forms, "nabla^+ of the metric with parameter t'")


def _raw(name: str, kind: str, **params) -> KForm:
    return p1_of(name, kind, tuple(sorted(params.items()))).raw


def _abelian_raw() -> KForm:
    return ABELIAN_TRACE


def _tagged(parts: Mapping[str, KForm]) -> KForm:
    """Combine residual parts with formal markers, so the sum vanishes iff every part does."""
    out = [f * Scalar.var(f"_{tag}") for tag, f in parts.items() if not f.is_zero()]
    return form_sum(out, 4) if out else KForm.zero(4)


@dataclass(frozen=True)
class _Theorem:
    geometry: str
    lhs_factor: Scalar
    rhs_factor: Scalar
    nabla: str
    instanton: str
    sample: tuple
    expected_sign: int = 1
    reduction: tuple = ()  # (name, power, value): rewrite name**power as value

    def reduce(self, f: KForm) -> KForm:
        if not self.reduction:
            return f
        name, n, value = self.reduction
        return f.map_coefficients(lambda c: c.reduce_power(name, n, value))


def _p1_value(geometry: str, which: str) -> KForm:
    if which == "abelian":
        return _abelian_raw()
    if which == "plus_t'":
        return h3_plus_other_metric().p1().raw
    if which == "family":
        return instanton_family_h19().p1().raw
    if which == "flat":
        return KForm.zero(4)
    return _raw(geometry, which)


_THEOREMS = {
    "T4.3": _Theorem("iwasawa", ONE, Fraction(-2) * T_ ** 2, "plus", "abelian", (("t", 1),), -1),
    "T5.1a": _Theorem("h3", T_ ** 4 * 3 - TP ** 4 * 8, T_ ** 2, "levi_civita", "plus_t'",
                      (("t", 1), ("t'", Fraction(1, 2)))),
    "T5.1b": _Theorem("h3", T_ ** 4 - TP ** 4, T_ ** 2 * Fraction(1, 8), "plus", "plus_t'",
                      (("t", 1), ("t'", Fraction(1, 2)))),
    "T5.2a": _Theorem("h3", T_ ** 4 * 12 - 1, T_ ** 2 * 4, "levi_civita", "abelian", (("t", 1),)),
    "T5.2b": _Theorem("h3", T_ ** 4 * 32 - 1, T_ ** 2 * 4, "plus", "abelian", (("t", 1),)),
    "T6.1g": _Theorem("h2h4h5", T_ ** 4 * (B_ ** 4 + B_ ** 2 * 4 + 11) - 1, T_ ** 2 * (B_ ** 2 + 3) * 2,
                      "levi_civita", "abelian", (("b", 0), ("t", 1))),
    "T6.1p": _Theorem("h2h4h5", T_ ** 4 * (B_ ** 4 + B_ ** 2 * 5 + 10) * 4 - 1, T_ ** 2 * (B_ ** 2 + 3) * 2,
                      "plus", "abelian", (("b", 0), ("t", 1))),
    "T7.1": _Theorem("h6", T_ ** 4 * 8 - 1, T_ ** 2 * 4, "plus", "abelian", (("t", 1),)),
    "T8.2i": _Theorem("h19minus", Scalar.const(2), ONE, "plus", "family", (),
                      reduction=("mu", 2, Fraction(4, 15))),
    "T8.2ii": _Theorem("h19minus", Scalar.const(2), ONE, "chern", "flat", ()),
}

# printed Pontrjagin values, as raw forms (8 pi^2 p_1), keyed by connection kind
_PRINTED_P1 = {
    "E4.2": ("iwasawa", {"levi_civita": T_ ** 4 * 2 * e(1, 2, 3, 4), "plus": KForm.zero(4),
                         "minus": T_ ** 4 * 8 * e(1, 2, 3, 4), "chern": KForm.zero(4)}),
    "R5.3": ("h3", {"minus": KForm.zero(4), "chern": KForm.zero(4)}),
    "R6.2": ("h2h4h5", {"minus": T_ ** 4 * (B_ ** 2 + 3) * 8 * e(1, 2, 3, 4), "chern": KForm.zero(4)}),
    "R7.2": ("h6", {"levi_civita": KForm.zero(4), "minus": T_ ** 4 * 16 * e(1, 2, 3, 4),
                    "chern": KForm.zero(4)}),
}

THEOREM_IDS = ("T4.3", "T5.1a", "T5.1b", "T5.2a", "T5.2b", "T6.1g", "T6.1p", "T7.1", "T8.2i", "T8.2ii",
               "L8.1", "R5.3", "R6.2", "R7.2", "E4.2")


def verify_theorem(theorem_id: str, sample: Mapping[str, object] | None = None) -> VerificationReport:
    """Check one of :data:`THEOREM_IDS` as a cleared-denominator identity.

    For the anomaly theorems the report also carries ``alpha'`` and its sign,
    evaluated at the theorem's default sample point updated by ``sample``.
    """
    if theorem_id in _THEOREMS:
        return _verify_anomaly(theorem_id, _THEOREMS[theorem_id], sample)
    if theorem_id in _PRINTED_P1:
        geometry, values = _PRINTED_P1[theorem_id]
        parts = {kind: _raw(geometry, kind) - value for kind, value in values.items()}
        return VerificationReport(theorem_id, all(f.is_zero() for f in parts.values()), residual=_tagged(parts),
                                  detail=f"printed p1 values on {geometry}")
    if theorem_id == "L8.1":
        return _verify_family()
    raise KeyError(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREM_IDS)}")


def _verify_anomaly(theorem_id: str, th: _Theorem, sample) -> VerificationReport:
    _, _, _, dT = _geometry(th.geometry)
    p_nabla = _p1_value(th.geometry, th.nabla)
    p_A = th.reduce(_p1_value(th.geometry, th.instanton))
    residual = th.reduce(dT * th.lhs_factor - (p_nabla - p_A) * th.rhs_factor)
    solved = solve_alpha_prime(dT, PontrjaginForm(p_nabla), PontrjaginForm(p_A), theorem_id,
                               sample={**dict(th.sample), **(sample or {})} or None)
    detail = solved.detail
    if solved.status in ("valid", "invalid", "undecided") and th.expected_sign < 0:
        detail += " (expected: no valid solution)"
    return VerificationReport(theorem_id, residual.is_zero(), residual=residual, alpha_prime=solved.alpha_prime,
                              detail=detail, notes=(solved.status,))


def _verify_family() -> VerificationReport:
    bundle = instanton_family_h19()
    _, h, _, _ = _geometry("h19minus")
    residual = bundle.p1(h.structure).raw + MU ** 2 * 120 * e(1, 2, 3, 4)
    omega23 = bundle.curvature.form(2, 3) == -(e(1, 3) + e(2, 4)) * MU * 2
    inst = instanton_check(bundle.curvature, h)
    flat = instanton_family_h19(LAM, 0).curvature.is_zero()
    passed = residual.is_zero() and inst and flat and omega23
    detail = f"SU(3)-instanton: {inst}; flat at mu=0: {flat}; Omega^2_3 as printed: {omega23}"
    return VerificationReport("L8.1", passed, residual=residual, detail=detail,
                              status="pass" if passed else "fail")


__all__ = [
    "ABELIAN_TRACE", "InstantonBundle", "PontrjaginForm", "THEOREM_IDS", "abelian_cardoso", "h3_plus_other_metric",
    "instanton_check", "instanton_family_h19", "is_type_11", "p1_of", "pontrjagin_raw", "solve_alpha_prime",
    "tangent_instanton", "trivial_instanton", "verify_theorem",
]
