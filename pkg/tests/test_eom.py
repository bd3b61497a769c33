from __future__ import annotations

from fractions import Fraction

import pytest

from nilflux.anomaly import abelian_cardoso, h3_plus_other_metric, instanton_family_h19, tangent_instanton
from nilflux.connections import Curvature, connection, curvature, levi_civita
from nilflux.eom import (
    CONFIGURATIONS,
    CurvatureTensor4,
    MotionConfiguration,
    NotApplicable,
    _gauge_divergence,
    configuration,
    equations_of_motion_check,
    identity_15_check,
    identity_16_check,
)
from nilflux.exterior import INDICES, KForm, e, evaluate_basis, hodge_star
from nilflux.frames import d, preset
from nilflux.hermitian import HermitianStructure
from nilflux.report import Ratio
from nilflux.scalar import Scalar


def hermitian(name):
    return HermitianStructure.from_preset(preset(name))


def curv(name, kind):
    h = hermitian(name)
    return curvature(connection(kind, h.structure, h), h.structure), h


ZERO_CUR = Curvature(tuple(tuple(KForm.zero(2) for _ in INDICES) for _ in INDICES))


def test_tensor_antisymmetry_is_enforced():
    with pytest.raises(ValueError):
        CurvatureTensor4({(1, 2, 1, 2): Scalar.const(1)})


def test_tensor_from_curvature_convention():
    cur, _ = curv("h3", "plus")
    R = CurvatureTensor4.from_curvature(cur)
    # R_{ijab} = Omega^b_a(E_i, E_j)
    assert R(1, 2, 1, 2) == evaluate_basis(cur.form(2, 1), (1, 2))
    assert R(1, 2, 2, 1) == -R(1, 2, 1, 2) == R(2, 1, 1, 2)


def test_identity_15_zero_curvature():
    h = hermitian("h3")
    assert identity_15_check(ZERO_CUR, h)
    assert identity_16_check(ZERO_CUR, h)


def test_identity_15_instantons():
    h = hermitian("h3")
    assert identity_15_check(h3_plus_other_metric().curvature, h)
    assert identity_15_check(curv("h3", "plus")[0], h)
    assert identity_15_check(abelian_cardoso().curvature, h)
    assert identity_15_check(instanton_family_h19().curvature, hermitian("h19minus"))


def test_identity_15_fails_for_levi_civita_on_h3():
    cur, h = curv("h3", "levi_civita")
    assert not identity_15_check(cur, h)


def test_identity_16_needs_type_11():
    cur, h = curv("h3", "levi_civita")
    with pytest.raises(NotApplicable):
        identity_16_check(cur, h)


def test_identity_equivalence_for_h19_chern():
    cur, h = curv("h19minus", "chern")
    assert identity_15_check(cur, h) == identity_16_check(cur, h)


def test_iwasawa_minus_is_not_applicable_for_the_reduced_identity():
    # the printed table shows J-anti-invariant entries, so the (1,1) precondition fails
    cur, h = curv("iwasawa", "minus")
    with pytest.raises(NotApplicable):
        identity_16_check(cur, h)


@pytest.mark.parametrize("name", ["iwasawa", "h3", "h2h4h5", "h6", "h19minus", "torus"])
@pytest.mark.parametrize("kind", ["levi_civita", "plus", "minus", "chern"])
def test_equivalence_wherever_type_11(name, kind):
    cur, h = curv(name, kind)
    try:
        i16 = identity_16_check(cur, h)
    except NotApplicable:
        return
    assert identity_15_check(cur, h) == i16


def test_two_metric_configuration_at_sample():
    rep = equations_of_motion_check(configuration("h3-two-metrics"))
    assert rep.passed and rep.residual_terms == 0
    assert rep.alpha_prime.evaluate({"t": 1, "t'": Fraction(1, 2)}) == Fraction(8, 15)


def test_abelian_configuration_at_sample():
    rep = equations_of_motion_check(configuration("h3-abelian"))
    assert rep.passed
    assert rep.alpha_prime.evaluate({"t": 1}) == Fraction(16, 31)


@pytest.mark.parametrize("name", ["h3-two-metrics", "h3-abelian"])
def test_h3_configurations_hold_symbolically(name):
    assert equations_of_motion_check(configuration(name, sample={})).passed


def test_h2h4h5_levi_civita_fails_gravitino_equation():
    rep = equations_of_motion_check(configuration("h2h4h5-levi-civita"))
    assert not rep.passed and not rep.expected and rep.as_expected
    assert rep.notes[0] == "i"


def test_torus():
    rep = equations_of_motion_check(configuration("torus"))
    assert rep.passed


def test_every_configuration_runs():
    for name in CONFIGURATIONS:
        rep = equations_of_motion_check(configuration(name))
        assert rep.as_expected, name


def test_wrong_alpha_prime_breaks_equation_i():
    cfg = configuration("h3-abelian")
    bad = MotionConfiguration(cfg.name, cfg.geometry, cfg.instanton, cfg.curvature_term,
                              Ratio.make(Scalar.const(1)), sample=cfg.sample)
    rep = equations_of_motion_check(bad)
    assert not rep.passed and "i" in rep.notes


def test_non_abelian_instanton_without_potential():
    cur, h = curv("h3", "plus")
    inst = tangent_instanton(cur)
    cfg = MotionConfiguration("no-potential", h, inst, cur, Ratio.make(Scalar.const(1)))
    rep = equations_of_motion_check(cfg)
    assert rep.status == "insufficient-data"


@pytest.mark.parametrize("name", ["iwasawa", "h3", "h2h4h5", "h6"])
def test_levi_civita_gauge_divergence_is_the_codifferential(name):
    # sanity check for equation (iii): sum_i (nabla^g_i F)(E_i, E_j) = (*d*F)(E_j) on 2-forms in dimension six
    g = preset(name)
    inst = abelian_cardoso(g)
    div = _gauge_divergence(inst, levi_civita(g.structure))
    F = inst.curvature.form(1, 2)
    codiff = hodge_star(d(hodge_star(F), g.structure))
    for j in INDICES:
        assert div[(j, 1, 2)] == codiff.coeff((j,))
