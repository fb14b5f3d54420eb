"""
Modular Verifier - Fourier-side checks on Z/qZ

Fourier representation of the weighted square count, mod-24 projections,
Gauss-sum bounds, the off-diagonal estimate, the lift to Z/24qZ and the
modular square-count lower bound.
"""

from src.modular_verifier.reports import (
    CheckKind,
    VerificationReport,
    ReportLog,
    render_number,
)
from src.modular_verifier.projections import (
    Mod24Projection,
    project_mod24,
    lift_to_24q,
)
from src.modular_verifier.lemmas import (
    FourierSplit,
    GaussBoundClass,
    GaussBoundEntry,
    fourier_split,
    fourier_identity_check,
    mod24_term_check,
    decomposition_check,
    gauss_bound_report,
    gauss_bound_check,
    offdiagonal_bound_check,
    key_inequality_check,
)
from src.modular_verifier.theorem import (
    c_epsilon,
    lift_identity_check,
    theorem31_check,
)

__all__ = [
    "CheckKind",
    "VerificationReport",
    "ReportLog",
    "render_number",
    "Mod24Projection",
    "project_mod24",
    "lift_to_24q",
    "FourierSplit",
    "GaussBoundClass",
    "GaussBoundEntry",
    "fourier_split",
    "fourier_identity_check",
    "mod24_term_check",
    "decomposition_check",
    "gauss_bound_report",
    "gauss_bound_check",
    "offdiagonal_bound_check",
    "key_inequality_check",
    "c_epsilon",
    "lift_identity_check",
    "theorem31_check",
]
