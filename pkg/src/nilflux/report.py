"""Verification reports and exact ratios of Laurent polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping

from .exterior import KForm
from .scalar import ONE, Scalar, ScalarError, format_rational


def definite_sign(s: Scalar) -> int | None:
    """+1 or -1 when ``s`` has that sign at every real point where it is defined.

    Sufficient test only: every monomial has even exponents and all
    coefficients share a sign.  Returns ``None`` when undecided.
    """
    if s.is_zero():
        return None
    signs = set()
    for mono, c in s.items():
        if any(k % 2 for _, k in mono):
            return None
        signs.add(1 if c > 0 else -1)
    return signs.pop() if len(signs) == 1 else None


@dataclass(frozen=True)
class Ratio:
    """``num / den`` with both parts Laurent polynomials; never simplified beyond content."""

    num: Scalar
    den: Scalar = ONE

    @classmethod
    def make(cls, num, den=ONE) -> Ratio:
        num, den = Scalar.coerce(num), Scalar.coerce(den)
        if den.is_zero():
            raise ScalarError("zero denominator")
        if den.is_monomial():
            return cls(num / den, ONE)
        # normalize: leading coefficient of den positive, den primitive with integer coefficients
        lead = den.sorted_terms()[0][1]
        num, den = num / lead, den / lead
        scale = lcm(*(c.denominator for _, c in den.items()))
        num, den = num * scale, den * scale
        g = 0
        for _, c in den.items():
            g = gcd(g, c.numerator)
        if g > 1:
            num, den = num / g, den / g
        # pull out a common monomial factor of the denominator
        common = _common_monomial(den)
        if common is not None:
            num, den = num / common, den / common
        return cls(num, den)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def evaluate(self, bindings: Mapping[str, object]) -> Fraction:
        den = self.den.evaluate(bindings)
        if den == 0:
            raise ScalarError("denominator vanishes at the sample point")
        return self.num.evaluate(bindings) / den

    def subs(self, bindings: Mapping[str, object]) -> Ratio:
        return Ratio.make(self.num.subs(bindings), self.den.subs(bindings))

    def sign(self) -> int | None:
        """Definite sign over all parameter values, when decidable by :func:`definite_sign`."""
        if self.is_constant():
            v = self.value()
            return (v > 0) - (v < 0)
        a, b = definite_sign(self.num), definite_sign(self.den)
        return None if a is None or b is None else a * b

    def variables(self) -> set[str]:
        return self.num.variables() | self.den.variables()

    def __str__(self) -> str:
        if self.is_constant():
            return format_rational(self.value())
        if self.den == ONE:
            return str(self.num)
        num = str(self.num) if self.num.is_monomial() else f"({self.num})"
        return f"{num}/({self.den})"


def _common_monomial(s: Scalar) -> Scalar | None:
    monos = [dict(m) for m, _ in s.items()]
    names = set().union(*monos) if monos else set()
    common = {}
    for n in names:
        k = min(m.get(n, 0) for m in monos)
        if k:
            common[n] = k
    if not common:
        return None
    return Scalar({tuple(sorted(common.items())): 1})


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exact check.

    ``residual`` is the cleared-denominator difference for form identities;
    checks on tensors record the number of nonzero residual entries in
    ``residual_terms`` instead.  ``expected`` marks whether the suite expects
    the check to pass.
    """

    name: str
    passed: bool
    residual: KForm | None = None
    residual_terms: int = 0
    alpha_prime: Ratio | None = None
    expected: bool = True
    detail: str = ""
    status: str = ""
    notes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.residual is not None:
            object.__setattr__(self, "residual_terms", len(self.residual))
            if self.passed != self.residual.is_zero() and not self.status:
                raise ValueError(f"{self.name}: passed flag disagrees with residual")
        if not self.status:
            object.__setattr__(self, "status", "pass" if self.passed else "fail")

    @property
    def as_expected(self) -> bool:
        return self.passed == self.expected

    def record(self) -> str:
        """Line record: ``name status residual-terms alpha_prime``."""
        alpha = "-" if self.alpha_prime is None else str(self.alpha_prime).replace(" ", "")
        return f"{self.name} {self.status} {self.residual_terms} {alpha}"

    def human(self) -> str:
        verdict = "ok" if self.as_expected else "UNEXPECTED"
        parts = [f"{self.name:<28} {self.status:<13} {verdict}"]
        if self.alpha_prime is not None:
            parts.append(f"alpha'={self.alpha_prime}")
        if self.detail:
            parts.append(self.detail)
        return "  ".join(parts)


def form_report(name: str, residual: KForm, expected: bool = True, **kw) -> VerificationReport:
    return VerificationReport(name, residual.is_zero(), residual=residual, expected=expected, **kw)


def tensor_report(name: str, residuals: Mapping[tuple, Scalar], expected: bool = True,
                  label: str = "", **kw) -> VerificationReport:
    bad = sorted(k for k, v in residuals.items() if not v.is_zero())
    detail = kw.pop("detail", "")
    if bad:
        where = f"{label}{bad[0]}" if label else str(bad[0])
        detail = (detail + "; " if detail else "") + f"first nonzero residual at {where}"
    return VerificationReport(name, not bad, residual_terms=len(bad), expected=expected, detail=detail, **kw)


__all__ = ["Ratio", "VerificationReport", "definite_sign", "form_report", "tensor_report"]
