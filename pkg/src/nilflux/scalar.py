"""Exact Laurent polynomials over the rationals.

A :class:`Scalar` is a finite sum of monomials ``c * x1^k1 * ... * xn^kn``
with ``c`` a :class:`fractions.Fraction` and integer (possibly negative)
exponents.  Parameters are identified by name, so two scalars built
independently combine without a shared registry.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name, no zero exponents
Number = Union[int, Fraction]


class ScalarError(ValueError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, k in b:
        exps[name] = exps.get(name, 0) + k
    return tuple(sorted((n, k) for n, k in exps.items() if k))


def _mono_pow(a: Monomial, n: int) -> Monomial:
    return tuple((name, k * n) for name, k in a) if n else ()


class Scalar:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value: Number) -> Scalar:
        return cls({(): value})

    @classmethod
    def var(cls, name: str, power: int = 1) -> Scalar:
        if not name or not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9']*", name):
            raise ScalarError(f"bad parameter name {name!r}")
        return cls({_mono_pow(((name, 1),), power): 1})

    @classmethod
    def coerce(cls, value) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def _raw(cls, terms: dict) -> Scalar:
        out = cls.__new__(cls)
        out._terms = terms
        out._hash = None
        return out

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} is not a constant")
        return self._terms.get((), Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[str]:
        return {name for mono in self._terms for name, _ in mono}

    # -- ring operations ----------------------------------------------
    def __add__(self, other) -> Scalar:
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> Scalar:
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        other = _lift(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Scalar._raw(out)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        """Multiplicative inverse; defined only for monomials (the units of the ring)."""
        if not self.is_monomial():
            raise ScalarError(f"{self} is not invertible in the Laurent ring")
        (mono, c), = self._terms.items()
        return Scalar._raw({_mono_pow(mono, -1): 1 / c})

    def __truediv__(self, other) -> Scalar:
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return _lift(other) * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitution -------------------------------------------------
    def subs(self, bindings: Mapping[str, object]) -> Scalar:
        """Substitute parameters by scalars (negative powers need invertible values)."""
        if not bindings:
            return self
        vals = {k: Scalar.coerce(v) for k, v in bindings.items()}
        out = ZERO
        for mono, c in self._terms.items():
            term = Scalar._raw({(): c})
            rest = []
            for name, k in mono:
                if name in vals:
                    term = term * vals[name] ** k
                else:
                    rest.append((name, k))
            out = out + term * Scalar._raw({tuple(rest): Fraction(1)})
        return out

    def evaluate(self, bindings: Mapping[str, Number]) -> Fraction:
        value = self.subs(bindings)
        if not value.is_constant():
            missing = sorted(value.variables())
            raise ScalarError(f"unbound parameters: {', '.join(missing)}")
        return value.constant_value()

    def reduce_power(self, name: str, n: int, value) -> Scalar:
        """Rewrite ``name**n`` as ``value`` wherever it divides a monomial (n > 0)."""
        value = Scalar.coerce(value)
        out = ZERO
        for mono, c in self._terms.items():
            exps = dict(mono)
            k = exps.get(name, 0)
            if k >= n:
                q, r = divmod(k, n)
                exps[name] = r
                mono2 = tuple(sorted((a, b) for a, b in exps.items() if b))
                out = out + Scalar._raw({mono2: c}) * value ** q
            else:
                out = out + Scalar._raw({mono: c})
        return out

    def clear_denominators(self) -> tuple[Scalar, Scalar]:
        """Return ``(unit, poly)`` with ``unit`` a monomial and ``poly = unit * self`` polynomial."""
        shift: dict[str, int] = {}
        for mono in self._terms:
            for name, k in mono:
                if k < 0:
                    shift[name] = max(shift.get(name, 0), -k)
        unit = Scalar._raw({tuple(sorted(shift.items())): Fraction(1)})
        return unit, self * unit

    # -- printing -----------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        def key(item):
            mono, _ = item
            return (-sum(k for _, k in mono), mono)

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            factors = [n if k == 1 else f"{n}^{k}" for n, k in mono]
            if a != 1 or not factors:
                factors.insert(0, format_rational(a))
            body = "*".join(factors)
            if i == 0:
                parts.append(body if sign == "+" else "-" + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Scalar('{self}')"


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _lift(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar.const(value)
    return NotImplemented


ZERO = Scalar()
ONE = Scalar.const(1)


def scalar_sum(items: Iterable[Scalar]) -> Scalar:
    out: dict = {}
    for s in items:
        for mono, c in s.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return Scalar._raw(out)


# -- parsing ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^()·]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarError(f"unexpected character {text[pos]!r} at position {pos} in {text!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        out.append("^" if tok == "**" else "*" if tok == "·" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ScalarError(f"expected {expected or 'token'} in {self.text!r}")
        self.i += 1
        return tok

    def expr(self) -> Scalar:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        value = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.power()
        while True:
            tok = self.peek()
            if tok in ("*", "/"):
                self.take()
                rhs = self.power()
                value = self.mul(value, rhs) if tok == "*" else value / rhs
            elif tok is not None and (tok == "(" or tok[0].isalnum() or tok[0] == "_"):
                value = self.mul(value, self.power())  # implicit product, e.g. "2t" or "t(b+1)"
            else:
                return value

    def mul(self, a, b):
        return a * b

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = self.take()
            if not exp.isdigit():
                raise ScalarError(f"integer exponent expected in {self.text!r}")
            base = base ** (sign * int(exp))
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok.isdigit():
            return Scalar.const(int(tok))
        if tok[0].isalpha() or tok[0] == "_":
            return self.name(tok)
        raise ScalarError(f"unexpected {tok!r} in {self.text!r}")

    def name(self, tok: str):
        return Scalar.var(tok)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"3/4*t^2*(b+1) - 1"`` style text; division only by units of the ring."""
    p = _Parser(text)
    if not p.toks:
        raise ScalarError("empty scalar expression")
    value = p.expr()
    if p.peek() is not None:
        raise ScalarError(f"trailing input {p.peek()!r} in {text!r}")
    return value


class Complex:
    """Pair ``re + i*im`` of scalars; only what realification and balance checks need."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Scalar.coerce(re)
        self.im = Scalar.coerce(im)

    @classmethod
    def coerce(cls, value) -> Complex:
        return value if isinstance(value, Complex) else cls(value, 0)

    def __add__(self, other):
        other = Complex.coerce(other)
        return Complex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Complex(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-Complex.coerce(other))

    def __rsub__(self, other):
        return Complex.coerce(other) - self

    def __mul__(self, other):
        other = Complex.coerce(other)
        return Complex(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self) -> Complex:
        return Complex(self.re, -self.im)

    def norm2(self) -> Scalar:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other):
        other = Complex.coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Complex({self.re}, {self.im})"


I = Complex(0, 1)
