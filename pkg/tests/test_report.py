from __future__ import annotations

from fractions import Fraction

import pytest

from nilflux.report import Ratio, VerificationReport, definite_sign
from nilflux.scalar import Scalar, parse_scalar


def test_definite_sign():
    assert definite_sign(parse_scalar("t^2 + 3b^4")) == 1
    assert definite_sign(parse_scalar("-8t^2")) == -1
    assert definite_sign(parse_scalar("t")) is None
    assert definite_sign(parse_scalar("t^2 - 1")) is None


def test_ratio_normalization_and_printing():
    r = Ratio.make(parse_scalar("-32t^2"), parse_scalar("2 - 64t^4"))
    assert str(r) == "16*t^2/(32*t^4 - 1)"
    assert r.evaluate({"t": 1}) == Fraction(16, 31)
    assert r.sign() is None
    assert Ratio.make(parse_scalar("-8t^2")).sign() == -1
    assert Ratio.make(Scalar.const(6), Scalar.const(4)).value() == Fraction(3, 2)


def test_report_consistency():
    with pytest.raises(ValueError):
        VerificationReport("x", True, residual=parse_scalar("t"))


def test_record_format_is_stable():
    rep = VerificationReport("T5.2b", True, alpha_prime=Ratio.make(Scalar.const(16), Scalar.const(31)))
    assert rep.record() == "T5.2b pass 0 16/31"
    bad = VerificationReport("x", False, expected=False)
    assert bad.as_expected
