from __future__ import annotations

from collections import Counter

from nilflux.suite import reproduce_paper, resolve_group


def test_full_suite_has_only_expected_statuses():
    reports = reproduce_paper()
    unexpected = [r.name for r in reports if not r.as_expected]
    assert unexpected == []
    assert len(reports) > 100
    names = Counter(r.name for r in reports)
    assert max(names.values()) == 1


def test_expected_failures_are_present_and_fail():
    reports = {r.name: r for r in reproduce_paper()}
    for name in ("anomaly-iwasawa-plus-abelian", "balanced-h3_jplus", "h2h4h5-levi-civita",
                 "anomaly-h3-chern-abelian"):
        assert not reports[name].expected and not reports[name].passed, name


def test_group_resolution():
    assert resolve_group("h19") == "h19minus"
    assert resolve_group(None) is None
    assert resolve_group("h2h4h5") == "h2h4h5"
