"""Exact verification of heterotic string solutions on six-dimensional nilmanifolds.

Everything is computed over rational Laurent polynomials in the metric and
family parameters, so every identity is checked with zero tolerance.
"""

from __future__ import annotations

from .anomaly import (
    THEOREM_IDS,
    InstantonBundle,
    PontrjaginForm,
    abelian_cardoso,
    instanton_check,
    instanton_family_h19,
    pontrjagin_raw,
    solve_alpha_prime,
    verify_theorem,
)
from .connections import Connection, Curvature, chern, connection, curvature, levi_civita, ricci, ricci_form
from .eom import configuration, equations_of_motion_check, identity_15_check, identity_16_check
from .exterior import KForm, Vector, e, hodge_star, interior, parse_form, wedge
from .frames import (
    PRESETS,
    AlmostComplexStructure,
    StructureEquations,
    d,
    jacobi_check,
    parse_structure,
    preset,
    realify,
    render_structure,
)
from .hermitian import HermitianStructure, balanced_check, lee_form, nijenhuis, torsion_3form
from .report import Ratio, VerificationReport
from .scalar import Scalar, parse_scalar
from .suite import reproduce_paper

__version__ = "0.1.0"

__all__ = [
    "PRESETS", "THEOREM_IDS", "AlmostComplexStructure", "Connection", "Curvature", "HermitianStructure",
    "InstantonBundle", "KForm", "PontrjaginForm", "Ratio", "Scalar", "StructureEquations", "Vector",
    "VerificationReport", "abelian_cardoso", "balanced_check", "chern", "configuration", "connection",
    "curvature", "d", "e", "equations_of_motion_check", "hodge_star", "identity_15_check", "identity_16_check",
    "instanton_check", "instanton_family_h19", "interior", "jacobi_check", "lee_form", "levi_civita",
    "nijenhuis", "parse_form", "parse_scalar", "parse_structure", "pontrjagin_raw", "preset", "realify",
    "render_structure", "reproduce_paper", "ricci", "ricci_form", "solve_alpha_prime", "torsion_3form",
    "verify_theorem", "wedge",
]
