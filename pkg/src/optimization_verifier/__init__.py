"""
Optimization Verifier - the 48-variable quadratic optimization on Z/24Z

Exact arithmetic in Q(sqrt 5), the test function phi, the positive-part
convolution functional and the norm N, the exhaustive norm-bound
enumeration with extremizer extraction, and the inequality checks built on
them.
"""

from src.optimization_verifier.quad5 import Quad5, SQRT5, quad_sign, sign_array
from src.optimization_verifier.phi import (
    PhiVector,
    NonnegVector24,
    convolve_with,
    h_functional,
    norm_N,
)
from src.optimization_verifier.enumeration import (
    EnumerationMode,
    EnumerationResult,
    case_count,
    enumerate_norm_bound,
)
from src.optimization_verifier.inequalities import (
    EqualityCaseReport,
    square_count_24,
    linf_bound_check,
    norm_bound_check,
    prop53_check,
    prop53_batch,
    prop36_check,
    prop52_check,
    amgm_check,
    footnote_check,
    shift_invariance_check,
    convexity_check,
    homogeneity_check,
    equality_case_analysis,
)

__all__ = [
    "Quad5",
    "SQRT5",
    "quad_sign",
    "sign_array",
    "PhiVector",
    "NonnegVector24",
    "convolve_with",
    "h_functional",
    "norm_N",
    "EnumerationMode",
    "EnumerationResult",
    "case_count",
    "enumerate_norm_bound",
    "EqualityCaseReport",
    "square_count_24",
    "linf_bound_check",
    "norm_bound_check",
    "prop53_check",
    "prop53_batch",
    "prop36_check",
    "prop52_check",
    "amgm_check",
    "footnote_check",
    "shift_invariance_check",
    "convexity_check",
    "homogeneity_check",
    "equality_case_analysis",
]
