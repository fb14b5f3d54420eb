"""
Extremal Search - square-avoiding residue pairs

Bitmask residue sets, square-avoidance tests, the maximal partner of a set,
the search for pairs maximizing min(|A|, |B|) and the named constructions.
"""

from src.extremal_search.residue_sets import (
    ResidueSet,
    qr_set,
    avoids_squares,
    avoids_squares_naive,
    extremal_partner,
)
from src.extremal_search.search import (
    SearchMode,
    SearchBudget,
    SearchWitness,
    max_bipartite_density,
    optimal_witnesses,
)
from src.extremal_search.constructions import KnownConstruction, known_constructions

__all__ = [
    "ResidueSet",
    "qr_set",
    "avoids_squares",
    "avoids_squares_naive",
    "extremal_partner",
    "SearchMode",
    "SearchBudget",
    "SearchWitness",
    "max_bipartite_density",
    "optimal_witnesses",
    "KnownConstruction",
    "known_constructions",
]
