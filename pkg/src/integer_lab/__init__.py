"""
Integer Lab - square pairs in sumsets of [1, N]

Integer sets and generators, exact square-pair counting, exponential sums
over squares, mod-Q approximants with their balanced functions, and the
end-to-end experiment with its decomposition audit.
"""

from src.integer_lab.sets import (
    IntegerSet,
    GeneratorKind,
    SetGenerator,
    uniform_random_set,
    boosted_lift,
)
from src.integer_lab.counting import (
    squares_between,
    square_dot,
    count_square_pairs,
    count_square_pairs_naive,
    square_exponential_sum,
    major_arc_neighbours,
    minor_arc_check,
)
from src.integer_lab.approximant import (
    ApproximantParams,
    PiecewiseWeight,
    BalancedFunction,
    lcm_upto,
    build_approximant,
    balanced_function,
    mass_identity_holds,
    balanced_fourier_check,
    interval_lower_bound_check,
    dense_blocks,
)
from src.integer_lab.experiment import (
    ExperimentReport,
    AuditReport,
    experiment_bound,
    main_experiment,
    density_sweep,
    decomposition_audit,
)

__all__ = [
    "IntegerSet",
    "GeneratorKind",
    "SetGenerator",
    "uniform_random_set",
    "boosted_lift",
    "squares_between",
    "square_dot",
    "count_square_pairs",
    "count_square_pairs_naive",
    "square_exponential_sum",
    "major_arc_neighbours",
    "minor_arc_check",
    "ApproximantParams",
    "PiecewiseWeight",
    "BalancedFunction",
    "lcm_upto",
    "build_approximant",
    "balanced_function",
    "mass_identity_holds",
    "balanced_fourier_check",
    "interval_lower_bound_check",
    "dense_blocks",
    "ExperimentReport",
    "AuditReport",
    "experiment_bound",
    "main_experiment",
    "density_sweep",
    "decomposition_audit",
]
