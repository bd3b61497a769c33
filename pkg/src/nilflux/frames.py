"""Structure equations of six-dimensional Lie algebras and their invariant geometry.

``de^k = sum_{i<j} a^k_{ij} e^{ij}`` determines the exterior derivative on
left-invariant forms (all coefficients are constant, so ``d`` is purely
algebraic).  The named presets are produced by realifying complex structure
equations through ``e^1 + i e^2 = r w^1``, ``e^3 + i e^4 = s w^2``,
``e^5 + i e^6 = t w^3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .exterior import DIM, INDICES, KForm, Vector, basis, e, form_sum, wedge
from .scalar import ONE, ZERO, Complex, Scalar, ScalarError, parse_scalar


class StructureError(ValueError):
    pass


class ParseError(StructureError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class StructureEquations:
    """The six 2-forms ``de^1, ..., de^6``; Jacobi (``d^2 = 0``) is checked on construction."""

    def __init__(self, de: Mapping[int, KForm] | Sequence[KForm], check: bool = True):
        if isinstance(de, Mapping):
            forms = [de.get(k, KForm.zero(2)) for k in INDICES]
        else:
            forms = list(de)
        if len(forms) != DIM:
            raise StructureError(f"need {DIM} differentials, got {len(forms)}")
        for k, f in enumerate(forms, 1):
            if not f.is_zero() and f.degree != 2:
                raise StructureError(f"de^{k} must be a 2-form")
        self.de = tuple(f if not f.is_zero() else KForm.zero(2) for f in forms)
        self._dcache: dict = {}
        if check and not jacobi_check(self):
            raise StructureError("structure constants violate the Jacobi identity (d^2 != 0)")

    def a(self, k: int, i: int, j: int) -> Scalar:
        """``a^k_{ij}`` extended antisymmetrically in ``(i, j)``."""
        if i == j:
            return ZERO
        if i < j:
            return self.de[k - 1].coeff((i, j))
        return -self.de[k - 1].coeff((j, i))

    def bracket(self, i: int, j: int) -> Vector:
        """``[E_i, E_j] = -sum_k a^k_{ij} E_k``."""
        return Vector([-self.a(k, i, j) for k in INDICES])

    @cached_property
    def coefficient_table(self) -> tuple:
        """Nested tuple ``A[k][i][j] = a^k_{ij}`` (0-based) for fast loops."""
        return tuple(
            tuple(tuple(self.a(k, i, j) for j in INDICES) for i in INDICES) for k in INDICES
        )

    def parameters(self) -> set[str]:
        return set().union(*(f.variables() for f in self.de))

    def subs(self, bindings) -> StructureEquations:
        return StructureEquations([f.subs(bindings) for f in self.de])

    def d_basis(self, index: tuple) -> KForm:
        cached = self._dcache.get(index)
        if cached is not None:
            return cached
        k = len(index)
        parts = []
        for pos, i in enumerate(index):
            left = e(*index[:pos]) if pos else KForm.scalar(ONE)
            right = e(*index[pos + 1:]) if pos + 1 < k else KForm.scalar(ONE)
            term = wedge(wedge(left, self.de[i - 1]), right)
            parts.append(term if pos % 2 == 0 else -term)
        out = form_sum(parts, k + 1) if k < DIM else KForm.zero(DIM)
        self._dcache[index] = out
        return out

    def __eq__(self, other):
        return isinstance(other, StructureEquations) and self.de == other.de

    def __hash__(self):
        return hash(self.de)

    def __repr__(self):
        return f"StructureEquations('{render_structure(self)}')"


def d(form: KForm, eqs: StructureEquations) -> KForm:
    """Exterior derivative of an invariant form."""
    if form.degree >= DIM:
        return KForm.zero(DIM)
    parts = [eqs.d_basis(index) * c for index, c in form.items()]
    return form_sum(parts, form.degree + 1)


def jacobi_check(eqs: StructureEquations | Sequence[KForm]) -> bool:
    if not isinstance(eqs, StructureEquations):
        eqs = StructureEquations(eqs, check=False)
    return all(d(f, eqs).is_zero() for f in eqs.de)


# -- notation -----------------------------------------------------------

def _split_terms(entry: str, offset: int) -> list[tuple[int, str, int]]:
    """Split an entry into signed terms at top-level +/-; returns (sign, text, pos)."""
    terms, depth, start, sign = [], 0, 0, 1
    i = 0
    while i < len(entry):
        ch = entry[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and not (i > 0 and entry[i - 1] == "^"):
            chunk = entry[start:i]
            if chunk.strip():
                terms.append((sign, chunk, offset + start))
            elif i > 0 and entry[:i].strip():
                raise ParseError("empty term", offset + i)
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    chunk = entry[start:]
    if not chunk.strip():
        raise ParseError("empty term", offset + start)
    terms.append((sign, chunk, offset + start))
    return terms


def parse_structure(notation: str, check: bool = True) -> StructureEquations:
    """Parse ``"(0,0,0,12,23,14-35)"`` style notation.

    Each entry is ``0`` or a signed sum of ``[coefficient[*|·]]ij`` terms; a
    pair ``ij`` with ``i > j`` stands for ``e^i ^ e^j = -e^{ji}``.
    """
    text = notation.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError("notation must be a parenthesized list", 0)
    body = text[1:-1]
    offset = notation.index("(") + 1
    entries, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            entries.append((body[start:i], offset + start))
            start = i + 1
    entries.append((body[start:], offset + start))
    if len(entries) != DIM:
        raise ParseError(f"expected {DIM} entries, found {len(entries)}", 0)
    de = []
    for entry, pos in entries:
        stripped = entry.strip()
        if stripped == "0":
            de.append(KForm.zero(2))
            continue
        if not stripped:
            raise ParseError("empty entry", pos)
        parts = []
        for sign, term, tpos in _split_terms(entry, pos):
            term = term.strip()
            m = re.fullmatch(r"(.*?)[\s*·]*(\d)(\d)", term)
            if not m:
                raise ParseError(f"malformed term {term!r}", tpos)
            coeff_text, i, j = m.group(1).strip(), int(m.group(2)), int(m.group(3))
            for idx in (i, j):
                if idx not in INDICES:
                    raise ParseError(f"index {idx} outside 1..{DIM}", tpos)
            if i == j:
                raise ParseError(f"repeated index in pair {i}{j}", tpos)
            try:
                coeff = parse_scalar(coeff_text) if coeff_text else ONE
            except ScalarError as exc:
                raise ParseError(f"bad coefficient {coeff_text!r}: {exc}", tpos) from None
            parts.append(e(i, j) * (coeff * sign))
        de.append(form_sum(parts, 2))
    return StructureEquations(de, check=check)


def render_structure(eqs: StructureEquations) -> str:
    entries = []
    for f in eqs.de:
        if f.is_zero():
            entries.append("0")
            continue
        chunks = []
        for (i, j) in sorted(f.terms):
            c = f.coeff((i, j))
            pair = f"{i}{j}"
            text = str(c)
            if c.is_monomial():
                neg = text.startswith("-")
                mag = text.lstrip("-")
                body = pair if mag == "1" else f"{mag}*{pair}"
            else:
                neg, body = False, f"({text})*{pair}"
            if not chunks:
                chunks.append(("-" if neg else "") + body)
            else:
                chunks.append(("-" if neg else "+") + body)
        entries.append("".join(chunks))
    return "(" + ",".join(entries) + ")"


# -- almost complex structures -------------------------------------------

class AlmostComplexStructure:
    """``J E_j = sum_i J[i][j] E_i`` (0-based storage, 1-based accessors)."""

    def __init__(self, matrix: Sequence[Sequence]):
        self.matrix = tuple(tuple(Scalar.coerce(x) for x in row) for row in matrix)
        if len(self.matrix) != DIM or any(len(r) != DIM for r in self.matrix):
            raise StructureError("J must be a 6x6 matrix")

    @classmethod
    def standard(cls) -> AlmostComplexStructure:
        """``J E_1 = -E_2, J E_3 = -E_4, J E_5 = -E_6``, i.e. ``J e^1 = -e^2`` on forms."""
        m = [[0] * DIM for _ in range(DIM)]
        for p in (0, 2, 4):
            m[p + 1][p] = -1
            m[p][p + 1] = 1
        return cls(m)

    @classmethod
    def from_images(cls, images: Mapping[int, Vector]) -> AlmostComplexStructure:
        m = [[images[j][i] for j in INDICES] for i in INDICES]
        return cls(m)

    def entry(self, i: int, j: int) -> Scalar:
        """``J^i_j``: the ``E_i`` component of ``J E_j``."""
        return self.matrix[i - 1][j - 1]

    def apply(self, v: Vector) -> Vector:
        return Vector([sum((self.matrix[i][j] * v.components[j] for j in range(DIM)), ZERO)
                       for i in range(DIM)])

    def image(self, j: int) -> Vector:
        return Vector([self.matrix[i][j - 1] for i in range(DIM)])

    def squares_to_minus_one(self) -> bool:
        for i in range(DIM):
            for j in range(DIM):
                s = sum((self.matrix[i][k] * self.matrix[k][j] for k in range(DIM)), ZERO)
                if s != (-1 if i == j else 0):
                    return False
        return True

    def is_orthogonal(self) -> bool:
        """``g(JX, JY) = g(X, Y)`` on frame vectors for ``g = sum e^i (x) e^i``."""
        for a in range(DIM):
            for b in range(DIM):
                s = sum((self.matrix[k][a] * self.matrix[k][b] for k in range(DIM)), ZERO)
                if s != (1 if a == b else 0):
                    return False
        return True

    def kaehler_form(self) -> KForm:
        """``F(X, Y) = g(X, JY)``."""
        return KForm(2, {(i, j): self.entry(i, j) for i in INDICES for j in INDICES if i < j})

    def __eq__(self, other):
        return isinstance(other, AlmostComplexStructure) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


# -- realification ------------------------------------------------------

class CForm:
    """Complex form ``re + i im`` with real :class:`KForm` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: KForm, im: KForm):
        self.re, self.im = re, im

    def __add__(self, other):
        return CForm(self.re + other.re, self.im + other.im)

    def scale(self, c: Complex) -> CForm:
        return CForm(self.re * c.re - self.im * c.im, self.re * c.im + self.im * c.re)

    def wedge(self, other: CForm) -> CForm:
        return CForm(wedge(self.re, other.re) - wedge(self.im, other.im),
                     wedge(self.re, other.im) + wedge(self.im, other.re))

    def conj(self) -> CForm:
        return CForm(self.re, -self.im)


class UnsupportedConfiguration(StructureError):
    pass


@dataclass(frozen=True)
class ComplexEquations:
    """``dw^k = sum c * w^a ^ w^b``; ``a, b`` are ``+j`` for ``w^j`` and ``-j`` for its conjugate.

    ``scales`` are ``(r, s, t)`` in ``e^1 + i e^2 = r w^1`` etc.
    """

    terms: Mapping[int, tuple] = field(default_factory=dict)
    scales: tuple = (ONE, ONE, ONE)


def realify(data) -> tuple[StructureEquations, AlmostComplexStructure, KForm]:
    """Real structure equations, ``J`` and ``F = e^{12} + e^{34} + e^{56}`` from complex data.

    ``data`` is a :class:`ComplexEquations` or anything with ``complex_equations()``
    (e.g. :class:`~nilflux.hermitian.BalancedParameterSet`).
    """
    ceqs = data if isinstance(data, ComplexEquations) else data.complex_equations()
    scales = [Scalar.coerce(x) for x in ceqs.scales]
    for name, c in zip("rst", scales):
        if c.is_zero():
            raise StructureError(f"scale {name} must be nonzero")
        if not c.is_monomial():
            raise UnsupportedConfiguration(f"scale {name} = {c} is not invertible in the scalar ring")
    # w^j = (e^{2j-1} + i e^{2j}) / c_j
    omegas = {}
    for j, c in enumerate(scales, 1):
        inv = c.inverse()
        omegas[j] = CForm(e(2 * j - 1) * inv, e(2 * j) * inv)
        omegas[-j] = omegas[j].conj()
    de: dict[int, KForm] = {}
    for j in (1, 2, 3):
        total = CForm(KForm.zero(2), KForm.zero(2))
        for coeff, a, b in ceqs.terms.get(j, ()):
            total = total + omegas[a].wedge(omegas[b]).scale(Complex.coerce(coeff))
        c = scales[j - 1]
        de[2 * j - 1] = total.re * c
        de[2 * j] = total.im * c
    J = AlmostComplexStructure.standard()
    return StructureEquations(de), J, J.kaehler_form()


# -- presets -------------------------------------------------------------

@dataclass(frozen=True)
class PresetGeometry:
    name: str
    structure: StructureEquations
    J: AlmostComplexStructure
    F: KForm
    parameters: tuple = ()
    description: str = ""

    def subs(self, bindings) -> PresetGeometry:
        return PresetGeometry(self.name, self.structure.subs(bindings), self.J, self.F,
                              tuple(p for p in self.parameters if p not in bindings), self.description)


def _scale(t) -> Scalar:
    t = Scalar.var(t) if isinstance(t, str) else Scalar.coerce(t)
    if t.is_zero():
        raise StructureError("fiber scale t must be nonzero")
    return t


def _params(*values) -> tuple:
    return tuple(sorted(set().union(*(Scalar.coerce(v).variables() for v in values))))


def iwasawa(t="t") -> PresetGeometry:
    t = _scale(t)
    ceqs = ComplexEquations({3: ((ONE, 1, 2),)}, (ONE, ONE, t))
    eqs, J, F = realify(ceqs)
    return PresetGeometry("iwasawa", eqs, J, F, _params(t), "h5 with its complex-parallelizable J0")


def h3(t="t", D: int = -1) -> PresetGeometry:
    """h3 with ``dw^3 = w^{1 1bar} + D w^{2 2bar}``; ``D = -1`` is the balanced J^-."""
    from .hermitian import BalancedParameterSet

    t = _scale(t)
    p = BalancedParameterSet.nilpotent(rho=0, B=0, D=D, t=t)
    eqs, J, F = realify(p)
    name = "h3" if D == -1 else "h3_jplus"
    return PresetGeometry(name, eqs, J, F, _params(t), f"h3 with D = {D}")


def h2h4h5(t="t", b="b") -> PresetGeometry:
    from .hermitian import BalancedParameterSet

    t = _scale(t)
    b = Scalar.var(b) if isinstance(b, str) else Scalar.coerce(b)
    p = BalancedParameterSet.nilpotent(rho=1, B=b, D=-1, t=t)
    eqs, J, F = realify(p)
    return PresetGeometry("h2h4h5", eqs, J, F, _params(t, b),
                          "h2 for |b| < 1, h4 for b = +-1, h5 for b^2 > 1")


def h6(t="t") -> PresetGeometry:
    t = _scale(t)
    ceqs = ComplexEquations({3: ((ONE, 1, 2), (Scalar.const(-1), 2, -1))}, (ONE, ONE, t))
    eqs, J, F = realify(ceqs)
    return PresetGeometry("h6", eqs, J, F, _params(t), "h6")


def h19minus() -> PresetGeometry:
    from .hermitian import BalancedParameterSet

    p = BalancedParameterSet.nonnilpotent(E=1, C=0, a=1)
    eqs, J, F = realify(p)
    return PresetGeometry("h19minus", eqs, J, F, (), "h19^- (non-nilpotent J)")


def torus() -> PresetGeometry:
    J = AlmostComplexStructure.standard()
    return PresetGeometry("torus", StructureEquations([KForm.zero(2)] * DIM), J, J.kaehler_form(),
                          (), "abelian h1")


PRESETS = {
    "iwasawa": iwasawa,
    "h3": h3,
    "h2h4h5": h2h4h5,
    "h6": h6,
    "h19minus": h19minus,
    "torus": torus,
}


def preset(name: str, **params) -> PresetGeometry:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise StructureError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
    return factory(**params)


def all_basis_forms() -> list[KForm]:
    """The 64 basis monomials ``e^I`` of all degrees."""
    return [e(*idx) if idx else KForm.scalar(ONE) for k in range(DIM + 1) for idx in basis(k)]
