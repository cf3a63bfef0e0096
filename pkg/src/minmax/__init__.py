"""Comparison-efficient solvers for min-max problems on graphs.

The package ships a generic meta-solver that turns an ordered-version solver
(one that only sees rank labels) into a solver using O(n) key comparisons,
plus two applications: maximum payoff games and widest-path interdiction.
"""

from minmax.order import ComparableStore, InputError
from minmax.meta import (
    ALGORITHMS,
    Answer,
    BELOW_ALL,
    CoarseInstance,
    OrderedProblem,
    SolveReport,
    solve,
)

__all__ = [
    "ALGORITHMS",
    "Answer",
    "BELOW_ALL",
    "CoarseInstance",
    "ComparableStore",
    "InputError",
    "OrderedProblem",
    "SolveReport",
    "solve",
]
