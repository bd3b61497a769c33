"""Printed curvature tables and Pontrjagin values, transcribed as plain text.

Each table lists the nonzero upper-triangular forms ``Omega^i_j`` (i < j) of
one connection on one preset; every entry not listed must vanish.  An entry
key such as ``"1,5 -2,6"`` means ``Omega^1_5 = -Omega^2_6 = <form>``.
Raw Pontrjagin values are ``8 pi^2 p_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .connections import connection, curvature
from .exterior import INDICES, KForm, parse_form
from .frames import preset
from .hermitian import HermitianStructure
from .report import VerificationReport, tensor_report

CURVATURE_TABLES = {
    ("iwasawa", "levi_civita"): [
        ("1,2", "t^2/2*(e34 - e56)"),
        ("1,3", "-t^2/4*(3e13 - e24)"),
        ("1,4", "-t^2/4*(3e14 + e23)"),
        ("1,5 -2,6", "t^2/4*(e15 - e26)"),
        ("1,6 2,5", "t^2/4*(e16 + e25)"),
        ("2,3", "-t^2/4*(e14 + 3e23)"),
        ("2,4", "t^2/4*(e13 - 3e24)"),
        ("3,4", "t^2/2*(e12 - e56)"),
        ("3,5 -4,6", "t^2/4*(e35 - e46)"),
        ("3,6 4,5", "t^2/4*(e36 + e45)"),
        ("5,6", "-t^2/2*(e12 + e34)"),
    ],
    ("iwasawa", "plus"): [
        ("1,2", "2t^2*e34"),
        ("1,3 2,4", "-t^2(e13 + e24)"),
        ("1,4 -2,3", "-t^2(e14 - e23)"),
        ("3,4", "2t^2*e12"),
        ("5,6", "-2t^2(e12 + e34)"),
    ],
    ("iwasawa", "minus"): [
        ("1,2 3,4", "-2t^2*e56"),
        ("1,3 -2,4", "-t^2(e13 - e24)"),
        ("1,4 2,3", "-t^2(e14 + e23)"),
    ],
    ("iwasawa", "chern"): [],
    ("h3", "levi_civita"): [
        ("1,2", "-t^2(3e12 - 2e34)"),
        ("1,3", "t^2*e24"),
        ("1,4", "-t^2*e23"),
        ("1,6", "t^2*e16"),
        ("2,3", "-t^2*e14"),
        ("2,4", "t^2*e13"),
        ("2,6", "t^2*e26"),
        ("3,4", "t^2(2e12 - 3e34)"),
        ("3,6", "t^2*e36"),
        ("4,6", "t^2*e46"),
    ],
    ("h3", "plus"): [
        ("1,2 -3,4", "-4t^2(e12 - e34)"),
    ],
    ("h2h4h5", "plus"): [
        ("1,2", "-4t^2*e12 - 2t^2(b-1)e14 + 2t^2(b+1)e23 + 6t^2*e34 - 2t^2*b^2*e56"),
        ("1,3 2,4", "-t^2(b^2 + b + 1)e13 - t^2(b^2 - b + 1)e24"),
        ("1,4 -2,3", "-2t^2*b*e12 - t^2(b^2 - b + 1)e14 + t^2(b^2 + b + 1)e23 + 2t^2*b*e34 + 4t^2*b*e56"),
        ("1,5 2,6", "t^2*b*e15 + t^2*b*e26 - 2t^2*e46"),
        ("1,6 -2,5", "-t^2*b*e16 + t^2*b*e25 + 2t^2*e36"),
        ("3,4", "6t^2*e12 + 2t^2(b-1)e14 - 2t^2(b+1)e23 - 4t^2*e34 + 2t^2*b^2*e56"),
        ("3,5 4,6", "-2t^2*e26 + t^2*b*e35 - t^2*b*e46"),
        ("3,6 -4,5", "2t^2*e16 + t^2*b*e36 + t^2*b*e45"),
        ("5,6", "-2t^2*e12 - 2t^2*e34"),
    ],
    ("h2h4h5", "levi_civita"): [
        ("1,2", "-3t^2*e12 - 3/2*t^2(b-1)e14 + 3/2*t^2(b+1)e23 - t^2/2*(b^2-5)e34 - t^2/2*(b^2+1)e56"),
        ("1,3", "-3/4*t^2(b+1)^2*e13 - t^2/4*(b^2-5)e24"),
        ("1,4", "-3/2*t^2(b-1)e12 - 3/4*t^2(b-1)^2*e14 + t^2/4*(b^2-5)e23 + 3/2*t^2(b-1)e34 + t^2*b*e56"),
        ("1,5", "t^2/4*(b+1)^2*e15 - t^2/4*(b-1)^2*e26 + t^2/2*(b-1)e46"),
        ("1,6", "t^2/4*(b^2-2b+5)e16 + t^2/4*(b+1)^2*e25 + t^2*e36 - t^2/2*(b+1)e45"),
        ("2,3", "3/2*t^2(b+1)e12 + t^2/4*(b^2-5)e14 - 3/4*t^2(b+1)^2*e23 - 3/2*t^2(b+1)e34 - t^2*b*e56"),
        ("2,4", "-t^2/4*(b^2-5)e13 - 3/4*t^2(b-1)^2*e24"),
        ("2,5", "t^2/4*(b+1)^2*e16 + t^2/4*(b-1)^2*e25 - t^2/2*(b+1)e36"),
        ("2,6", "-t^2/4*(b-1)^2*e15 + t^2/4*(b^2+2b+5)e26 + t^2/2*(b-1)e35 - t^2*e46"),
        ("3,4", "-t^2/2*(b^2-5)e12 + 3/2*t^2(b-1)e14 - 3/2*t^2(b+1)e23 - 3t^2*e34 + t^2/2*(b^2-1)e56"),
        ("3,5", "t^2/2*(b-1)e26 + t^2/4*(b+1)^2*e35 + t^2/4*(b^2-1)e46"),
        ("3,6", "t^2*e16 - t^2/2*(b+1)e25 + t^2/4*(b^2+2b+5)e36 - t^2/4*(b^2-1)e45"),
        ("4,5", "-t^2/2*(b+1)e16 - t^2/4*(b^2-1)e36 + t^2/4*(b-1)^2*e45"),
        ("4,6", "t^2/2*(b-1)e15 - t^2*e26 + t^2/4*(b^2-1)e35 + t^2/4*(b^2-2b+5)e46"),
        ("5,6", "-t^2/2*(b^2+1)e12 + t^2*b*e14 - t^2*b*e23 + t^2/2*(b^2-1)e34"),
    ],
    ("h6", "plus"): [
        ("1,2", "2t^2(e34 + e56)"),
        ("1,3 2,4", "-t^2(3e13 + e24)"),
        ("1,4 -2,3", "-t^2(3e14 - e23)"),
        ("1,5 2,6", "t^2(e15 - e26)"),
        ("1,6 -2,5", "t^2(e16 + e25)"),
        ("3,4", "2t^2(e12 - e56)"),
        ("3,5 4,6", "t^2(e35 + e46)"),
        ("3,6 -4,5", "-t^2(e36 - e45)"),
        ("5,6", "-2t^2(e12 + e34)"),
    ],
    ("h19minus", "chern"): [
        ("1,2", "-2e34 - 2e56"),
        ("1,3 2,4", "-e13 - e24"),
        ("1,4 -2,3", "2e13 + e14 - e23 + 2e24"),
        ("1,5 2,6", "e16 - e25"),
        # printed as "Omega^1_6 = Omega^2_5 = e15 - e26"; see ERRATA
        ("1,6 -2,5", "-e15 - e26"),
        ("3,4", "-2e12 + 2e56"),
        ("3,5 4,6", "-e36 + e45"),
        ("3,6 -4,5", "e35 + e46"),
        ("5,6", "2e12 + 2e34"),
    ],
    ("h19minus", "plus"): [
        ("1,2", "-2e34 + 2e56"),
        ("1,3 2,4", "-3e13 - 3e24"),
        ("1,4 -2,3", "-2e13 - e14 + e23 - 2e24"),
        ("1,5 2,6", "-3e15 - 2e16 - e26"),
        ("1,6 -2,5", "-e16 + 3e25 + 2e26"),
        ("3,4", "-2e12 - 2e56"),
        ("3,5 4,6", "e35 + 2e36 - e46"),
        ("3,6 -4,5", "-e36 - e45 - 2e46"),
        ("5,6", "2e12 + 2e34"),
    ],
}

# entries where the printed table is internally inconsistent; the table above holds the corrected value
ERRATA = {
    ("h19minus", "chern", (1, 6)): "printed e15 - e26 for both Omega^1_6 and Omega^2_5; the corrected pair "
                                    "reproduces the printed Pontrjagin form of the Chern connection",
}

P1_TABLES = {
    ("iwasawa", "levi_civita"): "2t^4*e1234",
    ("iwasawa", "plus"): "0",
    ("iwasawa", "minus"): "8t^4*e1234",
    ("iwasawa", "chern"): "0",
    ("h3", "levi_civita"): "-24t^4*e1234",
    ("h3", "plus"): "-64t^4*e1234",
    ("h3", "minus"): "0",
    ("h3", "chern"): "0",
    ("h2h4h5", "levi_civita"): "-2t^4(b^4 + 4b^2 + 11)e1234",
    ("h2h4h5", "plus"): "-8t^4(b^4 + 5b^2 + 10)e1234",
    ("h2h4h5", "minus"): "8t^4(b^2 + 3)e1234",
    ("h2h4h5", "chern"): "0",
    ("h6", "levi_civita"): "0",
    ("h6", "plus"): "-16t^4*e1234",
    ("h6", "minus"): "16t^4*e1234",
    ("h6", "chern"): "0",
    ("h19minus", "plus"): "-16(3e1234 + e1256)",
    ("h19minus", "chern"): "-16(e1234 + e1256)",
}
FAMILY_P1 = "-120mu^2*e1234"


@dataclass(frozen=True)
class TableEntry:
    i: int
    j: int
    form: KForm


def parse_table(rows) -> dict:
    """``{(i, j): form}`` for i < j from the transcribed rows."""
    out = {}
    for key, text in rows:
        form = parse_form(text)
        if form.is_zero():
            form = KForm.zero(2)
        for part in key.split():
            sign = -1 if part.startswith("-") else 1
            i, j = map(int, part.lstrip("-").split(","))
            if not i < j:
                raise ValueError(f"table key {part!r} is not upper triangular")
            out[(i, j)] = form * sign
    return out


@lru_cache(maxsize=None)
def expected_table(geometry: str, kind: str) -> dict:
    return parse_table(CURVATURE_TABLES[(geometry, kind)])


def _computed(geometry: str, kind: str):
    g = preset(geometry)
    h = HermitianStructure.from_preset(g)
    return curvature(connection(kind, g.structure, h), g.structure)


def check_curvature_table(geometry: str, kind: str) -> VerificationReport:
    """Term-by-term comparison of every upper-triangular curvature form."""
    cur = _computed(geometry, kind)
    table = expected_table(geometry, kind)
    residuals = {}
    for i in INDICES:
        for j in INDICES:
            if i < j:
                diff = cur.form(i, j) - table.get((i, j), KForm.zero(2))
                for idx, c in diff.items():
                    residuals[(i, j) + idx] = c
    errata = [v for (g, k, _), v in ERRATA.items() if (g, k) == (geometry, kind)]
    return tensor_report(f"curvature-{geometry}-{kind}", residuals, label="(i,j,form index)=",
                         detail="; ".join(errata))


def check_p1_table(geometry: str, kind: str) -> VerificationReport:
    from .anomaly import p1_of
    from .report import form_report

    expected = parse_form(P1_TABLES[(geometry, kind)])
    raw = p1_of(geometry, kind).raw
    return form_report(f"p1-{geometry}-{kind}", raw - (expected if expected.degree == 4 else KForm.zero(4)))


__all__ = ["CURVATURE_TABLES", "ERRATA", "FAMILY_P1", "P1_TABLES", "check_curvature_table", "check_p1_table",
           "expected_table", "parse_table"]
