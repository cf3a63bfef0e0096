"""A cheap synthetic min-max problem for exercising the meta-solver at scale.

The comparables are cut into consecutive blocks; the answer is the minimum
over blocks of the block maximum.  The ordered version is one vectorized
pass over the rank labels.
"""

from __future__ import annotations

import numpy as np

from minmax.meta import CoarseInstance, OrderedProblem, Outcome


def block_minmax_problem(n: int, block: int) -> OrderedProblem:
    starts = np.arange(0, n, block)

    def ord_solve(coarse: CoarseInstance) -> Outcome:
        ranks = np.asarray(coarse.rank_of)
        r = int(np.maximum.reduceat(ranks, starts).min())
        return coarse.answer(r)

    return OrderedProblem(structure=("blocks", block), n=n, ord_solve=ord_solve, work_bound=n)


def block_minmax_value(keys, block: int):
    """Reference value computed straight from the keys."""
    return min(max(keys[i:i + block]) for i in range(0, len(keys), block))
