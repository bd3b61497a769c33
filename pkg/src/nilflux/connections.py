"""Connection and curvature forms in an orthonormal invariant frame.

``omega^i_j(E_k) = g(nabla_{E_k} E_j, E_i)`` and
``Omega^i_j = d omega^i_j + omega^i_k ^ omega^k_j``;
the 4-index tensor is ``R_{ijkl} = Omega^l_k(E_i, E_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exterior import DIM, INDICES, KForm, evaluate_basis, form_sum, one_form, pullback, wedge
from .frames import StructureEquations, d
from .hermitian import HermitianStructure, torsion_3form
from .scalar import ZERO, Scalar, scalar_sum

HALF = Fraction(1, 2)
METRIC_KINDS = ("levi_civita", "plus", "minus", "chern")


class CurvatureError(AssertionError):
    pass


def _matrix(fn) -> tuple:
    return tuple(tuple(fn(i, j) for j in INDICES) for i in INDICES)


@dataclass(frozen=True)
class Connection:
    kind: str
    forms: tuple  # forms[i-1][j-1] = omega^i_j

    def form(self, i: int, j: int) -> KForm:
        return self.forms[i - 1][j - 1]

    def value(self, i: int, j: int, k: int) -> Scalar:
        """``omega^i_j(E_k)``."""
        return self.form(i, j).coeff((k,))

    def is_antisymmetric(self) -> bool:
        return all(self.form(i, j) == -self.form(j, i) for i in INDICES for j in INDICES)

    def subs(self, bindings) -> Connection:
        return Connection(self.kind, _matrix(lambda i, j: self.form(i, j).subs(bindings)))

    @classmethod
    def from_values(cls, kind: str, value) -> Connection:
        """Build from ``value(i, j, k) = omega^i_j(E_k)``."""
        return cls(kind, _matrix(lambda i, j: one_form([value(i, j, k) for k in INDICES])))

    @classmethod
    def zero(cls, kind: str = "custom") -> Connection:
        return cls(kind, _matrix(lambda i, j: KForm.zero(1)))


@dataclass(frozen=True)
class Curvature:
    forms: tuple  # forms[i-1][j-1] = Omega^i_j
    kind: str = "custom"

    def form(self, i: int, j: int) -> KForm:
        return self.forms[i - 1][j - 1]

    def R(self, i: int, j: int, k: int, l: int) -> Scalar:
        """``R_{ijkl} = Omega^l_k(E_i, E_j)``."""
        return evaluate_basis(self.form(l, k), (i, j))

    def tensor(self) -> dict:
        """Nonzero entries ``{(i, j, k, l): R_ijkl}``."""
        out = {}
        for k in INDICES:
            for l in INDICES:
                for (i, j), c in self.form(l, k).items():
                    out[(i, j, k, l)] = c
                    out[(j, i, k, l)] = -c
        return out

    def rank(self) -> int:
        return len(self.forms)

    def is_antisymmetric(self) -> bool:
        n = self.rank()
        return all(self.forms[i][j] == -self.forms[j][i] for i in range(n) for j in range(n))

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.forms for f in row)

    def nonzero_upper(self) -> dict:
        n = self.rank()
        return {(i + 1, j + 1): self.forms[i][j] for i in range(n) for j in range(i + 1, n)
                if not self.forms[i][j].is_zero()}

    def subs(self, bindings) -> Curvature:
        return Curvature(tuple(tuple(f.subs(bindings) for f in row) for row in self.forms), self.kind)


def levi_civita(eqs: StructureEquations) -> Connection:
    """``omega^i_j(E_k) = (a^i_{jk} - a^k_{ij} + a^j_{ki}) / 2``."""
    a = eqs.a
    return Connection.from_values(
        "levi_civita", lambda i, j, k: (a(i, j, k) - a(k, i, j) + a(j, k, i)) * HALF)


def torsion_connection(eqs: StructureEquations, h: HermitianStructure, sign: int) -> Connection:
    """Metric connection with skew torsion ``sign * T`` (``sign = +1`` is Bismut-Strominger).

    ``g(nabla^+_X Y, Z) = g(nabla^g_X Y, Z) + T(X, Y, Z) / 2``, which in the
    frame reads ``omega^+^i_j(E_k) = omega^g^i_j(E_k) - T(E_i, E_j, E_k) / 2``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    lc = levi_civita(eqs)
    T = torsion_3form(h)
    shift = -sign * HALF
    return Connection.from_values(
        "plus" if sign > 0 else "minus",
        lambda i, j, k: lc.value(i, j, k) + evaluate_basis(T, (i, j, k)) * shift)


def chern(eqs: StructureEquations, h: HermitianStructure) -> Connection:
    """``omega^c^i_j(E_k) = omega^g^i_j(E_k) - dF(J E_k, E_i, E_j) / 2``.

    Equivalently ``g(nabla^c_X Y, Z) = g(nabla^g_X Y, Z) + dF(JX, Y, Z) / 2``.
    """
    lc = levi_civita(eqs)
    dF = d(h.F, eqs)
    J = h.J

    def value(i, j, k):
        # dF(J E_k, E_i, E_j) = sum_m J^m_k dF(E_m, E_i, E_j)
        c = scalar_sum(J.entry(m, k) * evaluate_basis(dF, (m, i, j)) for m in INDICES if J.entry(m, k))
        return lc.value(i, j, k) - c * HALF

    return Connection.from_values("chern", value)


def connection(kind: str, eqs: StructureEquations, h: HermitianStructure | None = None) -> Connection:
    if kind in ("levi_civita", "lc", "g"):
        return levi_civita(eqs)
    if h is None:
        raise ValueError(f"{kind} connection needs a Hermitian structure")
    if kind in ("plus", "+"):
        return torsion_connection(eqs, h, 1)
    if kind in ("minus", "-"):
        return torsion_connection(eqs, h, -1)
    if kind in ("chern", "c"):
        return chern(eqs, h)
    raise ValueError(f"unknown connection kind {kind!r}")


def curvature_of_forms(forms: Sequence[Sequence[KForm]], eqs: StructureEquations, kind="custom",
                       metric: bool = False) -> Curvature:
    n = len(forms)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            parts = [d(forms[i][j], eqs)]
            parts += [wedge(forms[i][k], forms[k][j]) for k in range(n)
                      if not forms[i][k].is_zero() and not forms[k][j].is_zero()]
            row.append(form_sum(parts, 2))
        out.append(tuple(row))
    cur = Curvature(tuple(out), kind)
    if metric and not cur.is_antisymmetric():
        raise CurvatureError(f"curvature of metric connection {kind} is not antisymmetric")
    return cur


def curvature(c: Connection, eqs: StructureEquations) -> Curvature:
    return curvature_of_forms(c.forms, eqs, c.kind, metric=c.kind in METRIC_KINDS)


def ricci(cur: Curvature) -> tuple:
    """``Ric_{mn} = sum_i R_{imni} = sum_i Omega^i_n(E_i, E_m)`` as a 6x6 tuple (0-based)."""
    return tuple(
        tuple(scalar_sum(evaluate_basis(cur.form(i, n), (i, m)) for i in INDICES) for n in INDICES)
        for m in INDICES
    )


def ricci_form(cur: Curvature, h: HermitianStructure) -> KForm:
    """``sum_i Omega(E_i, J E_i)`` component: ``sum_{i,j} J^j_i Omega^i_j``."""
    parts = [cur.form(i, j) * h.J.entry(j, i) for i in INDICES for j in INDICES if h.J.entry(j, i)]
    return form_sum(parts, 2)


def holonomy_su3(cur: Curvature, h: HermitianStructure) -> bool:
    return ricci_form(cur, h).is_zero()


def rescale_curvature(cur: Curvature, factors: Sequence[Scalar]) -> Curvature:
    """Re-express a curvature given in coframe ``e'^i = c_i e^i`` in the coframe ``e^i``.

    ``Omega^i_j = (c_j / c_i) Omega'^i_j`` with ``e'^{ab} = c_a c_b e^{ab}``.
    """
    c = [Scalar.coerce(x) for x in factors]
    out = []
    for i in range(DIM):
        row = []
        for j in range(DIM):
            f = cur.forms[i][j]
            ratio = c[j] * c[i].inverse()
            terms = {(a, b): v * c[a - 1] * c[b - 1] * ratio for (a, b), v in f.items()}
            row.append(KForm(2, terms))
        out.append(tuple(row))
    return Curvature(tuple(out), cur.kind)


def rescale_connection(conn: Connection, factors: Sequence[Scalar]) -> Connection:
    """Connection forms of :func:`rescale_curvature`'s frame change (constant factors)."""
    c = [Scalar.coerce(x) for x in factors]
    return Connection(conn.kind, _matrix(lambda i, j: KForm(
        1, {(k,): v * c[k - 1] * c[j - 1] * c[i - 1].inverse() for (k,), v in conn.form(i, j).items()})))


def covariant_derivative_3form(conn: Connection, T: KForm) -> dict:
    """``(nabla_{E_k} T)(E_a, E_b, E_c)`` for an invariant 3-form; keys ``(k, a, b, c)``."""
    Tv = {}
    for a in INDICES:
        for b in INDICES:
            for c in INDICES:
                Tv[(a, b, c)] = evaluate_basis(T, (a, b, c))
    out = {}
    for k in INDICES:
        w = [[conn.value(i, j, k) for j in INDICES] for i in INDICES]
        for a in INDICES:
            for b in INDICES:
                for c in INDICES:
                    terms = []
                    for i in INDICES:
                        if w[i - 1][a - 1]:
                            terms.append(w[i - 1][a - 1] * Tv[(i, b, c)])
                        if w[i - 1][b - 1]:
                            terms.append(w[i - 1][b - 1] * Tv[(a, i, c)])
                        if w[i - 1][c - 1]:
                            terms.append(w[i - 1][c - 1] * Tv[(a, b, i)])
                    val = -scalar_sum(terms)
                    if val:
                        out[(k, a, b, c)] = val
    return out


def divergence_3form(conn: Connection, T: KForm) -> tuple:
    """``sum_s (nabla_{E_s} T)(E_s, E_m, E_n)`` as a 6x6 tuple (0-based)."""
    cov = covariant_derivative_3form(conn, T)
    return tuple(
        tuple(scalar_sum(cov.get((s, s, m, n), ZERO) for s in INDICES) for n in INDICES)
        for m in INDICES
    )


def torsion_square(T: KForm) -> tuple:
    """``T_{mpq} T_n^{pq}`` summed over all ``p, q`` (6x6, 0-based)."""
    vals = {}
    for m in INDICES:
        for p in INDICES:
            for q in INDICES:
                v = evaluate_basis(T, (m, p, q))
                if v:
                    vals[(m, p, q)] = v
    return tuple(
        tuple(scalar_sum(v * vals[(n, p, q)] for (mm, p, q), v in vals.items() if mm == m and (n, p, q) in vals)
              for n in INDICES)
        for m in INDICES
    )


def _entries(fn) -> dict:
    return {(m, n): fn(m, n) for m in INDICES for n in INDICES}


def structural_identities(h: HermitianStructure) -> list:
    """Exact Ricci and curvature identities of a balanced structure at constant dilaton.

    Reports, in order: ``dT`` is J-invariant (type (2,2)); ``Ric^+`` from ``dT``;
    ``Ric^g`` from ``Ric^+``, ``TT`` and ``div^+ T``; the skew part of ``Ric^+``
    equals both divergences of ``T``; ``Ric^g`` from the symmetric part of
    ``Ric^+``; ``dT_{ijkl} = 2R^+_{ijkl} - 2R^-_{klij}``; the holonomy of
    ``nabla^+`` lies in su(3).
    """
    from .report import form_report, tensor_report

    eqs = h.structure
    T = torsion_3form(h)
    dT = d(T, eqs)
    lc = levi_civita(eqs)
    plus = torsion_connection(eqs, h, 1)
    Rg = curvature(lc, eqs)
    Rp = curvature(plus, eqs)
    Rm = curvature(torsion_connection(eqs, h, -1), eqs)
    ricg, ricp = ricci(Rg), ricci(Rp)
    TT = torsion_square(T)
    divp, divg = divergence_3form(plus, T), divergence_3form(lc, T)
    J, F = h.J, h.F
    jpairs = [(s, n) for s in INDICES for n in INDICES if J.entry(s, n)]
    fpairs = [(p, q, c) for (i, j), c in F.items() for p, q, c in ((i, j, c), (j, i, -c))]

    def from_dT(m, n):
        return -scalar_sum(evaluate_basis(dT, (m, s, p, q)) * J.entry(s, nn) * c
                           for s, nn in jpairs if nn == n for p, q, c in fpairs) * Fraction(1, 4)

    g = lambda M, m, n: M[m - 1][n - 1]
    reports = [
        form_report("dT-type-22", pullback(dT, J.matrix) - dT),
        tensor_report("ricci-plus-from-dT", _entries(lambda m, n: g(ricp, m, n) - from_dT(m, n)), label="(m,n)="),
        tensor_report("ricci-lc-from-plus", _entries(
            lambda m, n: g(ricg, m, n) - g(ricp, m, n) - g(TT, m, n) * Fraction(1, 4) + g(divp, m, n) * HALF),
            label="(m,n)="),
        tensor_report("ricci-plus-skew-divergence", {
            **{(1, m, n): g(ricp, m, n) - g(ricp, n, m) - g(divp, m, n) for m in INDICES for n in INDICES},
            **{(2, m, n): g(divp, m, n) - g(divg, m, n) for m in INDICES for n in INDICES},
        }, label="(part,m,n)="),
        tensor_report("ricci-lc-symmetric-plus", _entries(
            lambda m, n: g(ricg, m, n) - (g(ricp, m, n) + g(ricp, n, m)) * HALF - g(TT, m, n) * Fraction(1, 4)),
            label="(m,n)="),
        tensor_report("dT-curvature-pair", {
            (i, j, k, l): evaluate_basis(dT, (i, j, k, l)) - 2 * Rp.R(i, j, k, l) + 2 * Rm.R(k, l, i, j)
            for i in INDICES for j in INDICES if i < j for k in INDICES for l in INDICES if k < l
        }, label="(i,j,k,l)="),
        form_report("holonomy-su3", ricci_form(Rp, h)),
    ]
    return reports


def nabla_plus_torsion(h: HermitianStructure) -> dict:
    """Nonzero entries of ``nabla^+ T``; empty when the torsion is parallel."""
    return covariant_derivative_3form(torsion_connection(h.structure, h, 1), torsion_3form(h))


__all__ = [
    "Connection", "Curvature", "CurvatureError", "chern", "connection", "covariant_derivative_3form",
    "curvature", "curvature_of_forms", "divergence_3form", "holonomy_su3", "levi_civita", "rescale_connection", "rescale_curvature",
    "nabla_plus_torsion", "ricci", "ricci_form", "structural_identities", "torsion_connection",
    "torsion_square",
]
