"""Hermitian data on invariant frames: Nijenhuis tensor, balance, Lee form, torsion."""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import DIM, INDICES, KForm, Vector, hodge_star, pullback, wedge
from .frames import (
    AlmostComplexStructure,
    ComplexEquations,
    PresetGeometry,
    StructureEquations,
    StructureError,
    UnsupportedConfiguration,
    d,
)
from .scalar import ONE, ZERO, Complex, I, Scalar


class ConventionError(AssertionError):
    """Two formulas that must agree under the fixed sign conventions disagree."""


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    reason: str = ""

    def __bool__(self):
        return self.passed


def _cplx(value) -> Complex:
    if isinstance(value, Complex):
        return value
    if isinstance(value, tuple):
        return Complex(*value)
    return Complex(value, 0)


def _nonzero(name: str, value: Scalar) -> Scalar:
    value = Scalar.coerce(value)
    if value.is_zero():
        raise StructureError(f"{name} must be nonzero")
    return value


@dataclass(frozen=True)
class BalancedParameterSet:
    """Coefficients of the complex structure equations and of the Hermitian form ``2F``.

    ``nilpotent_35``:   ``dw^3 = rho w^{12} + w^{1 1bar} + B w^{1 2bar} + D w^{2 2bar}``
    ``nonnilpotent_36``: ``dw^2 = E w^{13} + w^{1 3bar}``,
    ``dw^3 = C w^{1 1bar} + i a w^{1 2bar} - i a conj(E) w^{2 1bar}``.
    """

    family: str
    rho: int = 0
    B: Complex = Complex()
    D: Complex = Complex(-1)
    u: Complex = Complex()
    v: Complex = Complex()
    z: Complex = Complex()
    E: Complex = Complex(1)
    C: Complex = Complex()
    r: Scalar = ONE
    s: Scalar = ONE
    t: Scalar = ONE
    a: Scalar = ONE

    def __post_init__(self):
        if self.family not in ("nilpotent_35", "nonnilpotent_36"):
            raise StructureError(f"unknown family {self.family!r}")
        for name in ("B", "D", "u", "v", "z", "E", "C"):
            object.__setattr__(self, name, _cplx(getattr(self, name)))
        for name in ("r", "s", "t"):
            object.__setattr__(self, name, _nonzero(name, getattr(self, name)))
        object.__setattr__(self, "a", Scalar.coerce(self.a))
        if self.family == "nilpotent_35" and self.rho not in (0, 1):
            raise StructureError("rho must be 0 or 1")
        if self.family == "nonnilpotent_36":
            _nonzero("a", self.a)
            if self.E.norm2() != 1:
                raise StructureError("|E| must be 1")
            if self.C.conj() != self.C * self.E:
                raise StructureError("need conj(C) = C E")

    @classmethod
    def nilpotent(cls, rho=0, B=0, D=-1, u=0, v=0, z=0, r=1, s=1, t=1) -> BalancedParameterSet:
        return cls("nilpotent_35", rho=rho, B=B, D=D, u=u, v=v, z=z, r=r, s=s, t=t)

    @classmethod
    def nonnilpotent(cls, E=1, C=0, a=1, u=0, v=0, z=0, r=1, s=1, t=1) -> BalancedParameterSet:
        return cls("nonnilpotent_36", E=E, C=C, a=a, u=u, v=v, z=z, r=r, s=s, t=t)

    def is_diagonal(self) -> bool:
        return self.u.is_zero() and self.v.is_zero() and self.z.is_zero()

    def complex_equations(self) -> ComplexEquations:
        if not self.is_diagonal():
            raise UnsupportedConfiguration("only diagonal Hermitian forms (u = v = z = 0) can be realified")
        scales = (self.r, self.s, self.t)
        if self.family == "nilpotent_35":
            terms = {3: ((Complex(self.rho), 1, 2), (Complex(1), 1, -1), (self.B, 1, -2), (self.D, 2, -2))}
        else:
            ia = I * Complex(self.a)
            terms = {
                2: ((self.E, 1, 3), (Complex(1), 1, -3)),
                3: ((self.C, 1, -1), (ia, 1, -2), (-(ia * self.E.conj()), 2, -1)),
            }
        return ComplexEquations(terms, scales)


def proposition31_check(p: BalancedParameterSet) -> bool:
    """Algebraic balance criterion on the complex coefficients."""
    s2 = Complex(p.s * p.s)
    if p.family == "nonnilpotent_36":
        # z = -i u v / s^2, written as s^2 z + i u v = 0 to stay in the ring
        first = s2 * p.z + I * p.u * p.v
        second = p.C * s2 + Complex(p.a) * p.E.conj() * p.u + Complex(p.a) * p.u.conj()
        return first.is_zero() and second.is_zero()
    t2 = Complex(p.t * p.t)
    r2 = Complex(p.r * p.r)
    lhs = s2 * t2 - Complex(p.v.norm2()) + p.D * (r2 * t2 - Complex(p.z.norm2()))
    rhs = p.B * (I * t2 * p.u.conj() - p.v * p.z.conj())
    return lhs == rhs


@dataclass(frozen=True)
class HermitianStructure:
    structure: StructureEquations
    J: AlmostComplexStructure
    F: KForm
    name: str = ""

    def __post_init__(self):
        if not self.J.squares_to_minus_one():
            raise StructureError("J^2 != -1")
        if not self.J.is_orthogonal():
            raise StructureError("J is not orthogonal for the frame metric")
        if self.F != self.J.kaehler_form():
            raise StructureError("F is not g(., J.)")

    @classmethod
    def from_preset(cls, p: PresetGeometry) -> HermitianStructure:
        return cls(p.structure, p.J, p.F, p.name)

    @classmethod
    def with_J(cls, eqs: StructureEquations, J: AlmostComplexStructure, name: str = "") -> HermitianStructure:
        return cls(eqs, J, J.kaehler_form(), name)

    @property
    def dF(self) -> KForm:
        return d(self.F, self.structure)


class NijenhuisTensor:
    """``N(X, Y) = [JX, JY] - [X, Y] - J[JX, Y] - J[X, JY]`` as a bilinear map."""

    def __init__(self, J: AlmostComplexStructure, eqs: StructureEquations):
        self.J, self.eqs = J, eqs
        self.values = {(i, j): self._compute(Vector.basis(i), Vector.basis(j))
                       for i in INDICES for j in INDICES if i < j}

    def _bracket(self, X: Vector, Y: Vector) -> Vector:
        out = Vector()
        for i in INDICES:
            if not X[i]:
                continue
            for j in INDICES:
                if i != j and Y[j]:
                    out = out + self.eqs.bracket(i, j) * (X[i] * Y[j])
        return out

    def _compute(self, X: Vector, Y: Vector) -> Vector:
        J = self.J.apply
        return (self._bracket(J(X), J(Y)) - self._bracket(X, Y)
                - J(self._bracket(J(X), Y)) - J(self._bracket(X, J(Y))))

    def __call__(self, X: Vector, Y: Vector) -> Vector:
        out = Vector()
        for (i, j), v in self.values.items():
            coeff = X[i] * Y[j] - X[j] * Y[i]
            if coeff:
                out = out + v * coeff
        return out

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())


def nijenhuis(J: AlmostComplexStructure, eqs: StructureEquations) -> NijenhuisTensor:
    return NijenhuisTensor(J, eqs)


def lee_form(h: HermitianStructure) -> KForm:
    """``theta(X) = (delta F)(JX)`` with ``delta = -*d*``."""
    delta_F = -hodge_star(d(hodge_star(h.F), h.structure))
    return pullback(delta_F, h.J.matrix)


def balanced_check(h: HermitianStructure) -> CheckResult:
    if not nijenhuis(h.J, h.structure).is_zero():
        return CheckResult(False, "J is not integrable")
    d_star_F = d(hodge_star(h.F), h.structure)
    d_FF = d(wedge(h.F, h.F), h.structure)
    if d_star_F.is_zero() != d_FF.is_zero():
        raise ConventionError("d*F and d(F^F) disagree on vanishing")
    theta = lee_form(h)
    if theta.is_zero() != d_star_F.is_zero():
        raise ConventionError("Lee form and d*F disagree on vanishing")
    if not d_star_F.is_zero():
        return CheckResult(False, f"d*F = {d_star_F}")
    return CheckResult(True)


def torsion_3form(h: HermitianStructure) -> KForm:
    """``T = JdF = -dF(J., J., J.)``, cross-checked against the Hodge dual of ``dF``.

    With the volume form ``e^{123456}`` the Hodge route reads ``T = *dF`` on
    every balanced integrable structure; off the balanced locus the two differ
    by a Lee-form term and only ``JdF`` is returned.
    """
    dF = h.dF
    T = -pullback(dF, h.J.matrix)
    if T != hodge_star(dF) and balanced_check(h).passed:
        raise ConventionError(f"JdF = {T} but *dF = {hodge_star(dF)}")
    return T


__all__ = [
    "BalancedParameterSet", "CheckResult", "ConventionError", "HermitianStructure", "NijenhuisTensor",
    "balanced_check", "lee_form", "nijenhuis", "proposition31_check", "torsion_3form",
]
