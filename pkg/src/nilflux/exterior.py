"""Invariant exterior forms on a six-dimensional oriented orthonormal frame.

Forms are sparse maps from strictly increasing index tuples (1-based) to
:class:`~nilflux.scalar.Scalar` coefficients.  Evaluation follows the
determinant convention ``e^{12}(E_1, E_2) = 1``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .scalar import ONE, ZERO, Scalar, ScalarError, _Parser, scalar_sum

DIM = 6
INDICES = tuple(range(1, DIM + 1))
VOLUME = INDICES


class FormError(ValueError):
    pass


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    if len(set(seq)) != len(seq):
        return 0
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def complement(index: tuple) -> tuple:
    return tuple(i for i in INDICES if i not in index)


def basis(degree: int) -> list[tuple]:
    return list(combinations(INDICES, degree))


def _check_index(index: tuple, degree: int):
    if len(index) != degree:
        raise FormError(f"index {index} does not have length {degree}")
    if any(i not in INDICES for i in index) or any(a >= b for a, b in zip(index, index[1:])):
        raise FormError(f"index {index} is not strictly increasing in 1..{DIM}")


class KForm:
    """Immutable homogeneous form of a fixed degree."""

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[tuple, object] | None = None):
        if not 0 <= degree <= DIM:
            raise FormError(f"degree {degree} outside 0..{DIM}")
        self.degree = degree
        clean = {}
        for index, c in (terms or {}).items():
            index = tuple(index)
            _check_index(index, degree)
            c = Scalar.coerce(c)
            if c:
                clean[index] = c
        self._terms = clean

    @classmethod
    def _raw(cls, degree: int, terms: dict) -> KForm:
        out = cls.__new__(cls)
        out.degree = degree
        out._terms = terms
        return out

    @classmethod
    def zero(cls, degree: int) -> KForm:
        return cls._raw(degree, {})

    @classmethod
    def scalar(cls, value) -> KForm:
        return cls(0, {(): value})

    @classmethod
    def from_indices(cls, indices: Sequence[int], coeff=1) -> KForm:
        """Signed basis element, e.g. ``(3, 1)`` gives ``-e^{13}``."""
        sign = permutation_sign(indices)
        if sign == 0:
            return cls.zero(len(indices))
        return cls(len(indices), {tuple(sorted(indices)): Scalar.coerce(coeff) * sign})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, index: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(index), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    # -- linear structure --------------------------------------------
    def _combine(self, other: KForm, sign: int) -> KForm:
        if not isinstance(other, KForm):
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other if sign > 0 else -other
        if other.degree != self.degree:
            raise FormError(f"cannot add forms of degree {self.degree} and {other.degree}")
        out = dict(self._terms)
        for index, c in other._terms.items():
            if sign < 0:
                c = -c
            s = out[index] + c if index in out else c
            if s:
                out[index] = s
            else:
                out.pop(index, None)
        return KForm._raw(self.degree, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return KForm._raw(self.degree, {k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Scalar)):
            c = Scalar.coerce(other)
            if not c:
                return KForm.zero(self.degree)
            out = {}
            for k, v in self._terms.items():
                p = v * c
                if p:
                    out[k] = p
            return KForm._raw(self.degree, out)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self):
        return hash((self.degree, frozenset(self._terms.items())))

    def map_coefficients(self, fn) -> KForm:
        return KForm(self.degree, {k: fn(v) for k, v in self._terms.items()})

    def subs(self, bindings) -> KForm:
        return self.map_coefficients(lambda c: c.subs(bindings))

    def variables(self) -> set[str]:
        return set().union(*(c.variables() for c in self._terms.values())) if self._terms else set()

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"KForm({self.degree}, '{self}')"


def format_form(form: KForm) -> str:
    """Deterministic text: terms in lexicographic index order, ``coeff*e<indices>``."""
    if form.is_zero():
        return "0"
    parts = []
    for index in sorted(form._terms):
        c = form._terms[index]
        name = "e" + "".join(map(str, index)) if index else "1"
        if c.is_monomial():
            text = str(c)
            neg = text.startswith("-")
            text = text.lstrip("-")
            body = name if text == "1" else f"{text}*{name}"
        else:
            neg = False
            body = f"({c})*{name}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def e(*indices: int) -> KForm:
    """Basis form ``e^{i1...ik}`` with the sign of the given ordering."""
    return KForm.from_indices(indices)


def form_sum(forms: Iterable[KForm], degree: int) -> KForm:
    acc: dict = {}
    for f in forms:
        if f.is_zero():
            continue
        if f.degree != degree:
            raise FormError(f"degree {f.degree} in a sum of {degree}-forms")
        for k, c in f.items():
            acc.setdefault(k, []).append(c)
    out = {}
    for k, cs in acc.items():
        s = cs[0] if len(cs) == 1 else scalar_sum(cs)
        if s:
            out[k] = s
    return KForm._raw(degree, out)


def wedge(a: KForm, b: KForm) -> KForm:
    degree = a.degree + b.degree
    if degree > DIM:
        return KForm.zero(DIM)
    acc: dict = {}
    for ia, ca in a.items():
        for ib, cb in b.items():
            if set(ia) & set(ib):
                continue
            sign = permutation_sign(ia + ib)
            key = tuple(sorted(ia + ib))
            prod = ca * cb
            acc.setdefault(key, []).append(prod if sign > 0 else -prod)
    out = {}
    for k, cs in acc.items():
        s = cs[0] if len(cs) == 1 else scalar_sum(cs)
        if s:
            out[k] = s
    return KForm._raw(degree, out)


def hodge_star(a: KForm) -> KForm:
    """Hodge star for the metric ``sum e^i (x) e^i`` and volume form ``e^{123456}``.

    ``a ^ *a`` is ``|a|^2`` times the volume form.
    """
    out = {}
    for index, c in a.items():
        comp = complement(index)
        out[comp] = c if permutation_sign(index + comp) > 0 else -c
    return KForm._raw(DIM - a.degree, out)


class Vector:
    """Left-invariant vector field ``sum_i c_i E_i``."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence = (0,) * DIM):
        if len(components) != DIM:
            raise FormError(f"vector needs {DIM} components")
        self.components = tuple(Scalar.coerce(c) for c in components)

    @classmethod
    def basis(cls, i: int) -> Vector:
        return cls([1 if j == i else 0 for j in INDICES])

    def __getitem__(self, i: int) -> Scalar:
        return self.components[i - 1]

    def __add__(self, other: Vector) -> Vector:
        return Vector([x + y for x, y in zip(self.components, other.components)])

    def __sub__(self, other: Vector) -> Vector:
        return Vector([x - y for x, y in zip(self.components, other.components)])

    def __neg__(self) -> Vector:
        return Vector([-x for x in self.components])

    def __mul__(self, c) -> Vector:
        c = Scalar.coerce(c)
        return Vector([x * c for x in self.components])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, Vector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "Vector(" + ", ".join(map(str, self.components)) + ")"


def E(i: int) -> Vector:
    return Vector.basis(i)


def interior(v: Vector, a: KForm) -> KForm:
    if a.degree == 0:
        return KForm.zero(0)
    acc: dict = {}
    for index, c in a.items():
        for pos, i in enumerate(index):
            vi = v[i]
            if not vi:
                continue
            rest = index[:pos] + index[pos + 1:]
            term = c * vi
            acc.setdefault(rest, []).append(term if pos % 2 == 0 else -term)
    out = {}
    for k, cs in acc.items():
        s = scalar_sum(cs)
        if s:
            out[k] = s
    return KForm._raw(a.degree - 1, out)


def evaluate(a: KForm, vs: Sequence[Vector]) -> Scalar:
    """Value of ``a`` on the vectors ``vs`` (fully antisymmetric, multilinear)."""
    if len(vs) != a.degree:
        raise FormError(f"{a.degree}-form evaluated on {len(vs)} vectors")
    if a.degree == 0:
        return a.coeff(())
    result = a
    for v in vs:
        result = interior(v, result)
    return result.coeff(())


def evaluate_basis(a: KForm, idx: Sequence[int]) -> Scalar:
    """``a(E_{i1}, ..., E_{ik})`` for frame vectors, without building Vectors."""
    if len(idx) != a.degree:
        raise FormError(f"{a.degree}-form evaluated on {len(idx)} vectors")
    sign = permutation_sign(idx)
    if sign == 0:
        return ZERO
    c = a.coeff(tuple(sorted(idx)))
    return c if sign > 0 else -c


def pullback(a: KForm, matrix: Sequence[Sequence[Scalar]]) -> KForm:
    """``(M^* a)(X1, ..., Xk) = a(M X1, ..., M Xk)`` for ``M E_j = sum_i M[i][j] E_i``.

    ``matrix`` is 0-based: ``matrix[i-1][j-1]`` is the ``E_i`` component of ``M E_j``.
    """
    k = a.degree
    if k == 0:
        return a
    # M^* e^i = sum_j M[i][j] e^j
    ones = {i: form_sum((KForm(1, {(j,): matrix[i - 1][j - 1]}) for j in INDICES), 1) for i in INDICES}
    parts = []
    for index, c in a.items():
        f = KForm.scalar(c)
        for i in index:
            f = wedge(f, ones[i])
        parts.append(f)
    return form_sum(parts, k)


def inner(a: KForm, b: KForm) -> Scalar:
    if a.degree != b.degree:
        return ZERO
    return scalar_sum(c * b.coeff(k) for k, c in a.items())


def one_form(coeffs: Sequence) -> KForm:
    """1-form ``sum_k coeffs[k-1] e^k``."""
    return KForm(1, {(k,): coeffs[k - 1] for k in INDICES})


class _FormParser(_Parser):
    """Scalar grammar plus basis atoms ``e13`` (implicit products of forms are wedges)."""

    def name(self, tok: str):
        if re.fullmatch(r"e[1-6]+", tok):
            return e(*map(int, tok[1:]))
        return super().name(tok)

    def mul(self, a, b):
        if isinstance(a, KForm) and isinstance(b, KForm):
            return wedge(a, b)
        return a * b


def parse_form(text: str) -> KForm:
    """Parse e.g. ``"-t^2/4*(3e13 - e24)"`` or ``"2t(e12 - e34)e6"``."""
    p = _FormParser(text)
    if not p.toks:
        raise FormError("empty form expression")
    try:
        value = p.expr()
    except ScalarError as exc:
        raise FormError(str(exc)) from None
    if p.peek() is not None:
        raise FormError(f"trailing input {p.peek()!r} in {text!r}")
    if not isinstance(value, KForm):
        value = KForm.scalar(value)
    return value


__all__ = [
    "DIM", "INDICES", "VOLUME", "FormError", "KForm", "Vector", "E", "e", "basis", "complement",
    "evaluate", "evaluate_basis", "form_sum", "hodge_star", "inner", "interior", "one_form",
    "parse_form", "permutation_sign", "pullback", "wedge", "ONE",
]
