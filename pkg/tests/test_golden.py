from __future__ import annotations

import pytest

from nilflux.exterior import e, parse_form
from nilflux.golden import (
    CURVATURE_TABLES,
    ERRATA,
    FAMILY_P1,
    P1_TABLES,
    check_curvature_table,
    check_p1_table,
    parse_table,
)


@pytest.mark.parametrize("key", sorted(CURVATURE_TABLES))
def test_curvature_table(key):
    rep = check_curvature_table(*key)
    assert rep.passed, rep.detail


@pytest.mark.parametrize("key", sorted(P1_TABLES))
def test_p1_table(key):
    rep = check_p1_table(*key)
    assert rep.passed, rep.residual


def test_eleven_tables_and_eighteen_values():
    assert len(CURVATURE_TABLES) == 11
    assert len(P1_TABLES) == 18
    assert parse_form(FAMILY_P1) == parse_form("-120mu^2*e1234")


def test_parse_table_sign_convention():
    table = parse_table([("1,5 -2,6", "e15 - e26")])
    assert table[(1, 5)] == e(1, 5) - e(2, 6)
    assert table[(2, 6)] == e(2, 6) - e(1, 5)


def test_parse_table_rejects_lower_keys():
    with pytest.raises(ValueError):
        parse_table([("2,1", "e12")])


def test_a_perturbed_table_is_caught():
    from nilflux import golden

    rows = list(CURVATURE_TABLES[("h3", "plus")])
    original = golden.CURVATURE_TABLES[("h3", "plus")]
    golden.expected_table.cache_clear()
    try:
        golden.CURVATURE_TABLES[("h3", "plus")] = [("1,2 -3,4", "-4t^2(e12 + e34)")]
        rep = check_curvature_table("h3", "plus")
        assert not rep.passed and rep.residual_terms > 0
    finally:
        golden.CURVATURE_TABLES[("h3", "plus")] = original
        golden.expected_table.cache_clear()
    assert rows == original


def test_erratum_is_recorded():
    assert ("h19minus", "chern", (1, 6)) in ERRATA
    assert "corrected" in check_curvature_table("h19minus", "chern").detail
