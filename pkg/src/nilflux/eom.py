"""Quadratic curvature identities and the string-frame equations of motion at constant dilaton.

Gauge indices are contracted with the trace normalization of the Pontrjagin
form, ``Tr(XY) = sum_{a<b} X_ab Y_ab``; with it the same ``alpha'`` solves both
the anomaly condition and the gravitino equation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .anomaly import (
    InstantonBundle,
    PontrjaginForm,
    abelian_cardoso,
    h3_plus_other_metric,
    solve_alpha_prime,
    tangent_instanton,
    trivial_instanton,
)
from .connections import (
    Connection,
    Curvature,
    connection,
    curvature,
    divergence_3form,
    levi_civita,
    ricci,
    torsion_connection,
    torsion_square,
)
from .exterior import INDICES, KForm, evaluate_basis
from .frames import d, preset
from .hermitian import HermitianStructure, torsion_3form
from .report import Ratio, VerificationReport, tensor_report
from .scalar import ONE, ZERO, Scalar, scalar_sum

QUARTER = Fraction(1, 4)


class CurvatureTensor4:
    """``R_{ijab}``: form indices ``i, j`` in 1..6, gauge indices ``a, b`` in 1..rank."""

    def __init__(self, entries: Mapping[tuple, Scalar], rank: int = 6):
        self.rank = rank
        self.entries = {k: v for k, v in entries.items() if not v.is_zero()}
        for (i, j, a, b), v in self.entries.items():
            if self.entries.get((j, i, a, b), ZERO) != -v or self.entries.get((i, j, b, a), ZERO) != -v:
                raise ValueError(f"R is not antisymmetric at {(i, j, a, b)}")
        self._gram = None

    @classmethod
    def from_curvature(cls, cur: Curvature) -> CurvatureTensor4:
        """``R_{ijab} = Omega^b_a(E_i, E_j)``."""
        n = cur.rank()
        out = {}
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                for (i, j), c in cur.forms[b - 1][a - 1].items():
                    out[(i, j, a, b)] = c
                    out[(j, i, a, b)] = -c
        return cls(out, n)

    def __call__(self, i: int, j: int, a: int, b: int) -> Scalar:
        return self.entries.get((i, j, a, b), ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def gram(self) -> dict:
        """``G[(i, j), (k, l)] = sum_{a,b} R_{ijab} R_{klab}`` (nonzero entries)."""
        if self._gram is None:
            by_pair: dict = {}
            for (i, j, a, b), v in self.entries.items():
                by_pair.setdefault((i, j), {})[(a, b)] = v
            G = {}
            for p1, r1 in by_pair.items():
                for p2, r2 in by_pair.items():
                    s = scalar_sum(v * r2[k] for k, v in r1.items() if k in r2)
                    if s:
                        G[(p1, p2)] = s
            self._gram = G
        return self._gram

    def G(self, i: int, j: int, k: int, l: int) -> Scalar:
        return self.gram().get(((i, j), (k, l)), ZERO)

    def is_type_11(self, h: HermitianStructure) -> bool:
        """``J^s_m J^p_n R_{spab} = R_{mnab}`` for all indices."""
        J = h.J
        pairs = {(a, b) for (_, _, a, b) in self.entries}
        for m in INDICES:
            for n in INDICES:
                for a, b in pairs:
                    lhs = scalar_sum(J.entry(s, m) * J.entry(p, n) * self(s, p, a, b)
                                     for s in INDICES if J.entry(s, m) for p in INDICES if J.entry(p, n))
                    if lhs != self(m, n, a, b):
                        return False
        return True


def _as_tensor(R) -> CurvatureTensor4:
    return R if isinstance(R, CurvatureTensor4) else CurvatureTensor4.from_curvature(R)


def _fpairs(h: HermitianStructure) -> list:
    return [(p, q, c) for (i, j), c in h.F.items() for p, q, c in ((i, j, c), (j, i, -c))]


def identity_15_residual(R, h: HermitianStructure) -> dict:
    """``LHS_mn - RHS_mn`` of the quadratic identity satisfied by instanton curvatures."""
    R = _as_tensor(R)
    G = R.G
    F = _fpairs(h)
    J = h.J
    out = {}
    for m in INDICES:
        for n in INDICES:
            lhs = scalar_sum(
                (G(m, s, p, q) + G(m, p, q, s) + G(m, q, s, p)) * c * J.entry(s, n)
                for s in INDICES if J.entry(s, n) for p, q, c in F
            ) * Fraction(1, 2)
            rhs = scalar_sum(G(m, p, n, p) for p in INDICES)
            out[(m, n)] = lhs - rhs
    return out


def identity_15_check(R, h: HermitianStructure) -> bool:
    return all(v.is_zero() for v in identity_15_residual(R, h).values())


class NotApplicable(Exception):
    """The curvature is not a (1,1)-form, so the reduced identity does not apply."""


def identity_16_check(R, h: HermitianStructure) -> bool:
    """``R_{mjab} R_{klab} F^{kl} = 0``; raises :class:`NotApplicable` unless R is of type (1,1)."""
    R = _as_tensor(R)
    if not R.is_type_11(h):
        raise NotApplicable("curvature is not a (1,1)-form")
    F = _fpairs(h)
    return all(
        scalar_sum(R.G(m, j, k, l) * c for k, l, c in F).is_zero() for m in INDICES for j in INDICES
    )


# -- equations of motion -------------------------------------------------------

@dataclass(frozen=True)
class MotionConfiguration:
    name: str
    geometry: HermitianStructure
    instanton: InstantonBundle
    curvature_term: Curvature
    alpha_prime: Ratio
    H: KForm | None = None
    dilaton_constant: bool = True
    sample: Mapping[str, object] | None = None
    expected: bool = True
    note: str = ""

    def torsion(self) -> KForm:
        return torsion_3form(self.geometry) if self.H is None else self.H


def _trace_square(R: CurvatureTensor4) -> dict:
    """``R_{imab} R_j^{mab}`` with the gauge trace ``sum_{a<b}``: half the full sum."""
    return {(i, j): scalar_sum(R.G(i, m, j, m) for m in INDICES) * Fraction(1, 2)
            for i in INDICES for j in INDICES}


def _gauge_divergence(inst: InstantonBundle, plus: Connection) -> dict:
    """``sum_i (nabla_{E_i} F)(E_i, E_j)`` per gauge entry; keys ``(j, a, b)``."""
    cur = inst.curvature
    n = cur.rank()
    sigma = inst.connection
    out = {}
    for j in INDICES:
        for a in range(n):
            for b in range(n):
                terms = []
                Fab = cur.forms[a][b]
                for i in INDICES:
                    for l in INDICES:
                        # -F(nabla_i E_i, E_j) - F(E_i, nabla_i E_j)
                        w_li, w_lj = plus.value(l, i, i), plus.value(l, j, i)
                        if w_li:
                            terms.append(-w_li * evaluate_basis(Fab, (l, j)))
                        if w_lj:
                            terms.append(-w_lj * evaluate_basis(Fab, (i, l)))
                    if sigma is not None:
                        for c in range(n):
                            s_ac = sigma[a][c].coeff((i,))
                            s_cb = sigma[c][b].coeff((i,))
                            if s_ac:
                                terms.append(s_ac * evaluate_basis(cur.forms[c][b], (i, j)))
                            if s_cb:
                                terms.append(-evaluate_basis(cur.forms[a][c], (i, j)) * s_cb)
                out[(j, a + 1, b + 1)] = scalar_sum(terms)
    return out


def equations_of_motion_check(cfg: MotionConfiguration) -> VerificationReport:
    """The three constant-dilaton equations, each as an exact identity in all free indices.

    (i) is multiplied through by the denominator of ``alpha'``.  With a
    sample point, every quantity is evaluated there first.
    """
    if not cfg.dilaton_constant:
        raise ValueError("only constant dilaton configurations are supported")
    inst = cfg.instanton
    if inst.connection is None and not inst.is_abelian():
        return VerificationReport(cfg.name, False, status="insufficient-data", expected=cfg.expected,
                                  detail="instanton connection forms are required for the Yang-Mills equation")
    h = cfg.geometry
    eqs = h.structure
    H = cfg.torsion()
    alpha = cfg.alpha_prime
    ricg = ricci(curvature(levi_civita(eqs), eqs))
    HH = torsion_square(H)
    FF = _trace_square(CurvatureTensor4.from_curvature(inst.curvature))
    RR = _trace_square(CurvatureTensor4.from_curvature(cfg.curvature_term))
    residuals = {}
    for i in INDICES:
        for j in INDICES:
            grav = ricg[i - 1][j - 1] - HH[i - 1][j - 1] * QUARTER
            residuals[("i", i, j)] = grav * alpha.den - alpha.num * QUARTER * (FF[(i, j)] - RR[(i, j)])
    div = divergence_3form(levi_civita(eqs), H)
    for j in INDICES:
        for k in INDICES:
            residuals[("ii", j, k)] = div[j - 1][k - 1]
    plus = torsion_connection(eqs, h, 1)
    for key, v in _gauge_divergence(inst, plus).items():
        residuals[("iii",) + key] = v
    if cfg.sample:
        residuals = {k: v.subs(cfg.sample) for k, v in residuals.items()}
    failing = sorted({k[0] for k, v in residuals.items() if not v.is_zero()}, key=len)
    where = (f"at {','.join(f'{k}={v}' for k, v in sorted(cfg.sample.items()))}"
             if cfg.sample else "for all parameter values")
    detail = where + (f"; fails ({'), ('.join(failing)})" if failing else "")
    notes = tuple(failing) + ((inst.note,) if inst.note else ())
    return tensor_report(cfg.name, residuals, expected=cfg.expected, label="(eq,...)=",
                         alpha_prime=alpha, notes=notes, detail=detail)


# -- configurations certified (or refuted) in the text ---------------------------

def _alpha(dT: KForm, p_nabla: KForm, p_A: KForm) -> Ratio:
    rep = solve_alpha_prime(dT, PontrjaginForm(p_nabla), PontrjaginForm(p_A))
    if rep.alpha_prime is None:
        raise ValueError(f"anomaly condition has no scalar solution ({rep.status})")
    return rep.alpha_prime


def configuration(name: str, sample: Mapping[str, object] | None = None) -> MotionConfiguration:
    """Named configurations: ``h3-two-metrics``, ``h3-abelian``, ``h2h4h5-levi-civita``, ``torus``."""
    from .anomaly import pontrjagin_raw

    if name == "torus":
        h = HermitianStructure.from_preset(preset("torus"))
        zero = Curvature(tuple(tuple(KForm.zero(2) for _ in INDICES) for _ in INDICES), "flat")
        return MotionConfiguration(name, h, trivial_instanton(), zero, Ratio.make(1), sample=sample)
    if name in ("h3-two-metrics", "h3-abelian"):
        g = preset("h3")
        h = HermitianStructure.from_preset(g)
        R = curvature(connection("plus", g.structure, h), g.structure)
        dT = d(torsion_3form(h), g.structure)
        if name == "h3-two-metrics":
            inst = h3_plus_other_metric()
            default = {"t": 1, "t'": Fraction(1, 2)}
        else:
            inst = abelian_cardoso(g)
            default = {"t": 1}
        alpha = _alpha(dT, pontrjagin_raw(R).raw, inst.p1().raw)
        return MotionConfiguration(name, h, inst, R, alpha, sample=default if sample is None else sample)
    if name == "h2h4h5-levi-civita":
        g = preset("h2h4h5")
        h = HermitianStructure.from_preset(g)
        R = curvature(levi_civita(g.structure), g.structure)
        dT = d(torsion_3form(h), g.structure)
        inst = abelian_cardoso(g)
        alpha = _alpha(dT, pontrjagin_raw(R).raw, inst.p1().raw)
        return MotionConfiguration(name, h, inst, R, alpha, sample={"t": 1, "b": 0} if sample is None else sample,
                                   expected=False)
    raise KeyError(f"unknown configuration {name!r}")


CONFIGURATIONS = ("h3-two-metrics", "h3-abelian", "h2h4h5-levi-civita", "torus")


__all__ = [
    "CONFIGURATIONS", "CurvatureTensor4", "MotionConfiguration", "NotApplicable", "configuration",
    "equations_of_motion_check", "identity_15_check", "identity_15_residual", "identity_16_check",
]
