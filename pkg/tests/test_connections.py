"""Connections and curvature, checked against a frame-level Koszul oracle."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from nilflux.connections import (
    chern,
    connection,
    curvature,
    levi_civita,
    nabla_plus_torsion,
    ricci,
    structural_identities,
    torsion_connection,
)
from nilflux.exterior import INDICES, evaluate_basis, parse_form
from nilflux.frames import PRESETS, preset
from nilflux.hermitian import HermitianStructure, torsion_3form
from nilflux.scalar import ZERO, Scalar, scalar_sum

ALL = list(PRESETS)


def setup(name):
    g = preset(name)
    return g, HermitianStructure.from_preset(g)


def bracket_coeff(eqs, i, j, k):
    """<[E_i, E_j], E_k>."""
    return eqs.bracket(i, j)[k]


def koszul(eqs):
    """Gamma[(i, j, k)] = <nabla_{E_i} E_j, E_k> from the Koszul formula."""
    half = Fraction(1, 2)
    return {(i, j, k): (bracket_coeff(eqs, i, j, k) - bracket_coeff(eqs, j, k, i) + bracket_coeff(eqs, k, i, j)) * half
            for i in INDICES for j in INDICES for k in INDICES}


def koszul_riemann(eqs):
    """<R(E_i, E_j) E_k, E_l> with R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]."""
    G = koszul(eqs)

    def nabla_vec(i, vec):  # nabla_{E_i} of a constant-coefficient vector field
        return {l: scalar_sum(vec[m] * G[(i, m, l)] for m in INDICES) for l in INDICES}

    R = {}
    for i in INDICES:
        for j in INDICES:
            for k in INDICES:
                ek = {m: Scalar.const(1 if m == k else 0) for m in INDICES}
                a = nabla_vec(i, nabla_vec(j, ek))
                b = nabla_vec(j, nabla_vec(i, ek))
                br = {m: bracket_coeff(eqs, i, j, m) for m in INDICES}
                c = {l: scalar_sum(br[m] * G[(m, k, l)] for m in INDICES) for l in INDICES}
                for l in INDICES:
                    R[(i, j, k, l)] = a[l] - b[l] - c[l]
    return R


@pytest.mark.parametrize("name", ALL)
def test_ricci_matches_koszul_oracle(name):
    g, _ = setup(name)
    R = koszul_riemann(g.structure)
    oracle = [[scalar_sum(R[(i, m, n, i)] for i in INDICES) for n in INDICES] for m in INDICES]
    mine = ricci(curvature(levi_civita(g.structure), g.structure))
    assert [list(row) for row in mine] == oracle


@pytest.mark.parametrize("name", ["iwasawa", "h3", "h2h4h5", "h6"])
def test_nilpotent_scalar_curvature(name):
    # on a nilpotent Lie algebra with orthonormal basis: s = -1/4 sum_{i,j,k} <[E_i,E_j],E_k>^2
    g, _ = setup(name)
    eqs = g.structure
    s = scalar_sum(ricci(curvature(levi_civita(eqs), eqs))[m][m] for m in range(6))
    expected = -scalar_sum(bracket_coeff(eqs, i, j, k) ** 2 for i in INDICES for j in INDICES for k in INDICES)
    assert s == expected * Fraction(1, 4)


@pytest.mark.parametrize("name", ALL)
def test_first_bianchi_for_levi_civita(name):
    g, _ = setup(name)
    cur = curvature(levi_civita(g.structure), g.structure)
    for i, j, k in combinations(INDICES, 3):
        for l in INDICES:
            assert (cur.R(i, j, k, l) + cur.R(j, k, i, l) + cur.R(k, i, j, l)).is_zero()


@pytest.mark.parametrize("name", ALL)
def test_curvature_pair_symmetry_for_levi_civita(name):
    g, _ = setup(name)
    cur = curvature(levi_civita(g.structure), g.structure)
    for i, j in combinations(INDICES, 2):
        for k, l in combinations(INDICES, 2):
            assert cur.R(i, j, k, l) == cur.R(k, l, i, j)


def torsion_tensor(conn, eqs):
    """<nabla_{E_a} E_b - nabla_{E_b} E_a - [E_a, E_b], E_c> with nabla_{E_k} E_j = sum_i w^i_j(E_k) E_i."""
    return {(a, b, c): conn.value(c, b, a) - conn.value(c, a, b) - bracket_coeff(eqs, a, b, c)
            for a in INDICES for b in INDICES for c in INDICES}


@pytest.mark.parametrize("name", ALL)
def test_bismut_connections_have_skew_torsion_T(name):
    g, h = setup(name)
    T = torsion_3form(h)
    plus = torsion_tensor(torsion_connection(g.structure, h, 1), g.structure)
    minus = torsion_tensor(torsion_connection(g.structure, h, -1), g.structure)
    lc = torsion_tensor(levi_civita(g.structure), g.structure)
    for (a, b, c), v in plus.items():
        Tabc = evaluate_basis(T, (a, b, c))
        assert v == Tabc
        assert minus[(a, b, c)] == -Tabc
        assert lc[(a, b, c)].is_zero()


@pytest.mark.parametrize("name", ALL)
def test_plus_minus_difference_is_T(name):
    g, h = setup(name)
    T = torsion_3form(h)
    plus, minus = torsion_connection(g.structure, h, 1), torsion_connection(g.structure, h, -1)
    for i in INDICES:
        for j in INDICES:
            for k in INDICES:
                assert plus.value(i, j, k) - minus.value(i, j, k) == -evaluate_basis(T, (i, j, k))


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("kind", ["levi_civita", "plus", "minus", "chern"])
def test_connections_are_metric(name, kind):
    g, h = setup(name)
    assert connection(kind, g.structure, h).is_antisymmetric()


@pytest.mark.parametrize("name", ALL)
@pytest.mark.parametrize("kind", ["plus", "chern"])
def test_hermitian_connections_preserve_J(name, kind):
    g, h = setup(name)
    conn = connection(kind, g.structure, h)
    J = h.J
    for k in INDICES:
        for i in INDICES:
            for j in INDICES:
                lhs = scalar_sum(J.entry(i, m) * conn.value(m, j, k) for m in INDICES)
                rhs = scalar_sum(conn.value(i, m, k) * J.entry(m, j) for m in INDICES)
                assert lhs == rhs


@pytest.mark.parametrize("name", ALL)
def test_chern_torsion_has_no_pure_type_part_in_J_directions(name):
    # Chern torsion C(JX, JY) = -C(X, Y) ... equivalently its torsion is of type (2,0)+(0,2) in the last slots
    g, h = setup(name)
    tors = torsion_tensor(chern(g.structure, h), g.structure)
    J = h.J
    for a in INDICES:
        for b in INDICES:
            for c in INDICES:
                # T(JX, Y) = T(X, JY) for the Chern connection of an integrable J
                lhs = scalar_sum(J.entry(m, a) * tors[(m, b, c)] for m in INDICES)
                rhs = scalar_sum(J.entry(m, b) * tors[(a, m, c)] for m in INDICES)
                assert lhs == rhs


def test_printed_curvature_examples():
    g, h = setup("h3")
    plus = curvature(connection("plus", g.structure, h), g.structure)
    assert plus.form(1, 2) == parse_form("-4t^2(e12 - e34)")
    assert plus.form(3, 4) == -plus.form(1, 2)
    g, h = setup("iwasawa")
    assert curvature(connection("minus", g.structure, h), g.structure).form(1, 2) == parse_form("-2t^2*e56")
    assert curvature(chern(g.structure, h), g.structure).is_zero()
    g, h = setup("h6")
    assert curvature(connection("plus", g.structure, h), g.structure).form(1, 2) == parse_form("2t^2(e34 + e56)")


@pytest.mark.parametrize("kind", ["levi_civita", "plus", "minus", "chern"])
def test_torus_is_flat(kind):
    g, h = setup("torus")
    assert curvature(connection(kind, g.structure, h), g.structure).is_zero()


@pytest.mark.parametrize("name", ALL)
def test_structural_identities(name):
    _, h = setup(name)
    reports = structural_identities(h)
    assert len(reports) == 7
    assert [r.name for r in reports if not r.passed] == []


def test_structural_identities_detect_a_broken_dilaton():
    from nilflux.frames import h3

    h = HermitianStructure.from_preset(h3(D=1))
    failed = {r.name for r in structural_identities(h) if not r.passed}
    assert "ricci-plus-from-dT" in failed


def test_torsion_parallel_on_h3_only():
    assert nabla_plus_torsion(setup("h3")[1]) == {}
    assert nabla_plus_torsion(setup("h2h4h5")[1]) != {}
