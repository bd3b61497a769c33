from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilflux.exterior import (
    INDICES,
    VOLUME,
    E,
    FormError,
    KForm,
    Vector,
    basis,
    e,
    evaluate,
    hodge_star,
    inner,
    interior,
    parse_form,
    pullback,
    wedge,
)
from nilflux.scalar import ONE, Scalar

t = Scalar.var("t")


def inversions(seq):
    """Independent sign oracle: parity of the inversion count."""
    n = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if n % 2 else 1


def test_wedge_examples():
    assert wedge(e(1), e(2)) == e(1, 2)
    assert wedge(e(1, 2), e(1, 2)).is_zero()
    assert wedge(e(1, 3) * t, e(2, 4)) == e(1, 2, 3, 4) * t * inversions((1, 3, 2, 4))


def test_wedge_sign_matches_inversion_oracle():
    for i, j in combinations(INDICES, 2):
        for k in INDICES:
            if k not in (i, j):
                got = wedge(e(i, j), e(k))
                assert got.coeff(tuple(sorted((i, j, k)))) == inversions((i, j, k))


def test_star_examples():
    assert hodge_star(KForm.scalar(ONE)) == e(*VOLUME)
    assert hodge_star(e(1, 2)) == e(3, 4, 5, 6)
    assert hodge_star(e(1, 3, 5)) == -e(2, 4, 6)
    assert inversions((1, 3, 5, 2, 4, 6)) == -1


@pytest.mark.parametrize("k", range(7))
def test_star_involution_sign(k):
    # in Riemannian dimension six, ** = (-1)^{k(6-k)}
    for idx in basis(k):
        a = e(*idx) if idx else KForm.scalar(ONE)
        assert hodge_star(hodge_star(a)) == a * (-1) ** (k * (6 - k))


@pytest.mark.parametrize("k", range(7))
def test_star_defines_inner_product(k):
    for idx in basis(k):
        a = e(*idx) if idx else KForm.scalar(ONE)
        assert wedge(a, hodge_star(a)) == e(*VOLUME) * inner(a, a)


def _monomials(max_degree=3):
    return st.sampled_from([idx for k in range(1, max_degree + 1) for idx in basis(k)])


@given(_monomials(), _monomials())
def test_graded_anticommutativity(i, j):
    a, b = e(*i), e(*j)
    assert wedge(a, b) == wedge(b, a) * (-1) ** (len(i) * len(j))


@given(_monomials(2), _monomials(2), _monomials(2))
def test_wedge_associates(i, j, k):
    a, b, c = e(*i), e(*j), e(*k)
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_interior_examples():
    assert interior(E(1), e(1, 2)) == e(2)
    assert interior(E(3), e(1, 2)).is_zero()
    assert interior(E(1) + E(2), e(1, 2, 3)) == e(2, 3) - e(1, 3)


@given(_monomials(), _monomials())
def test_interior_is_an_antiderivation(i, j):
    a, b = e(*i), e(*j)
    for k in INDICES:
        v = E(k)
        lhs = interior(v, wedge(a, b))
        rhs = wedge(interior(v, a), b) + wedge(a, interior(v, b)) * (-1) ** len(i)
        assert lhs == rhs


def test_evaluate_examples():
    assert evaluate(e(1, 2), [E(1), E(2)]) == ONE
    assert evaluate(e(1, 2), [E(2), E(1)]) == -ONE
    assert evaluate(e(1, 3) * t - e(2, 4) * t, [E(2), E(4)]) == -t


def test_evaluate_wrong_arity():
    with pytest.raises(FormError):
        evaluate(e(1, 2), [E(1)])


def test_pullback_by_identity_and_by_J():
    ident = [[ONE if i == j else Scalar() for j in INDICES] for i in INDICES]
    assert pullback(e(1, 3, 5), ident) == e(1, 3, 5)
    # J E1 = E2, J E2 = -E1 etc.; F(J., J.) = F for F = e12 + e34 + e56
    J = [[Scalar() for _ in INDICES] for _ in INDICES]
    for a in (1, 3, 5):
        J[a][a - 1] = ONE
        J[a - 1][a] = -ONE
    F = e(1, 2) + e(3, 4) + e(5, 6)
    assert pullback(F, J) == F
    v = Vector([1, 0, 2, 0, 0, 1])
    assert evaluate(e(2), [v]) == Scalar()


def test_parse_form():
    assert parse_form("-t^2/4*(3e13 - e24)") == (e(1, 3) * 3 - e(2, 4)) * (t * t * -1 / 4)
    assert parse_form("-2t(e12 - e34)e6") == (e(1, 2, 6) - e(3, 4, 6)) * (-2 * t)
    assert parse_form("e1*e2") == e(1, 2)
    assert parse_form("0").is_zero()


def test_parse_form_rejects_mixed_degrees():
    with pytest.raises(FormError):
        parse_form("e12 + e3")


def test_repeated_or_out_of_range_index():
    assert parse_form("e11").is_zero()
    with pytest.raises((FormError, ValueError)):
        e(7)
