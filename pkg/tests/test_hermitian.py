from __future__ import annotations

import pytest

from nilflux.exterior import E, INDICES, Vector, e, hodge_star, parse_form
from nilflux.frames import PRESETS, AlmostComplexStructure, d, h3, preset
from nilflux.hermitian import (
    BalancedParameterSet,
    HermitianStructure,
    balanced_check,
    lee_form,
    nijenhuis,
    proposition31_check,
    torsion_3form,
)
from nilflux.scalar import Complex, Scalar


def hermitian(name):
    return HermitianStructure.from_preset(preset(name))


def swapped_J():
    return AlmostComplexStructure.from_images({1: E(3), 3: E(1) * -1,
                                               2: E(4), 4: E(2) * -1, 5: E(6), 6: E(5) * -1})


def bracket(eqs, u, v):
    out = Vector()
    for i in INDICES:
        for j in INDICES:
            if i != j and u[i] and v[j]:
                out = out + eqs.bracket(i, j) * (u[i] * v[j])
    return out


@pytest.mark.parametrize("name", list(PRESETS))
def test_preset_complex_structures_are_integrable(name):
    g = preset(name)
    N = nijenhuis(g.J, g.structure)
    assert N.is_zero()
    assert g.J.squares_to_minus_one()


def test_swapped_structure_is_not_integrable_on_h3():
    g = preset("h3")
    J = swapped_J()
    assert J.squares_to_minus_one()
    N = nijenhuis(J, g.structure)
    # oracle: the four bracket terms expanded by hand
    X, Y = E(1), E(2)
    JX, JY = J.apply(X), J.apply(Y)
    by_hand = (bracket(g.structure, JX, JY) - bracket(g.structure, X, Y)
               - J.apply(bracket(g.structure, JX, Y)) - J.apply(bracket(g.structure, X, JY)))
    assert not by_hand.is_zero()
    assert N(X, Y) == by_hand
    assert not N.is_zero()


@pytest.mark.parametrize("name", list(PRESETS))
def test_presets_are_balanced(name):
    h = hermitian(name)
    assert balanced_check(h).passed
    assert lee_form(h).is_zero()


def test_h3_with_J_plus_is_not_balanced():
    h = HermitianStructure.from_preset(h3(D=1))
    res = balanced_check(h)
    assert not res.passed
    assert "d*F" in res.reason
    theta = lee_form(h)
    assert not theta.is_zero()
    # d*F computed independently with the star of F^2/2
    F = h.F
    assert not d(hodge_star(F), h.structure).is_zero()


def test_proposition31():
    b = Scalar.var("b")
    assert proposition31_check(BalancedParameterSet.nilpotent(rho=0, B=Complex(b), D=-1))
    assert proposition31_check(BalancedParameterSet.nilpotent(rho=1, B=Complex(b), D=-1))
    assert not proposition31_check(BalancedParameterSet.nilpotent(rho=0, B=0, D=1))
    assert proposition31_check(BalancedParameterSet.nonnilpotent(C=0))


def test_proposition31_agrees_with_balanced_check():
    for D in (-1, 1):
        p = BalancedParameterSet.nilpotent(rho=0, B=0, D=D, t=Scalar.var("t"))
        g = h3(D=D)
        assert proposition31_check(p) == balanced_check(HermitianStructure.from_preset(g)).passed


def test_torsion_examples():
    assert torsion_3form(hermitian("iwasawa")) == parse_form("-t*e135 - t*e146 - t*e236 + t*e245")
    assert torsion_3form(hermitian("h3")) == parse_form("-2t*e126 + 2t*e346")
    assert torsion_3form(hermitian("torus")).is_zero()


@pytest.mark.parametrize("name", list(PRESETS))
def test_torsion_is_star_dF(name):
    h = hermitian(name)
    assert torsion_3form(h) == hodge_star(h.dF)
