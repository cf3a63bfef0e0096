"""Generic meta-solver: from an ordered-version solver to a comparison-efficient one.

An ordered solver never sees keys.  It receives a :class:`CoarseInstance`
(a rank label for every comparable position) and answers with the position
of a rank representative, or :data:`BELOW_ALL` when the answer lies below
every comparable (for example a disconnected network).

The meta-solver keeps an interval of still-possible answer positions,
splits it into ``2**k`` key-ordered groups, asks the ordered solver which
group holds the answer, and recurses into that group.  The variants differ
only in how ``k`` is chosen per iteration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, Union

from minmax.order import ComparableStore, InputError


@dataclass(frozen=True)
class Answer:
    position: int


class _BelowAll:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BELOW_ALL"

    def __reduce__(self):
        return (_BelowAll, ())


BELOW_ALL = _BelowAll()
Outcome = Union[Answer, _BelowAll]


class ContractViolation(RuntimeError):
    """The ordered solver answered inside a padding rank."""


@dataclass
class CoarseInstance:
    """Rank labels for every comparable position.

    Ranks ``group_offset .. group_offset + group_count - 1`` belong to the
    active groups; a lower rank (if any) is the padding below the interval
    and a higher one the padding above it.
    """

    rank_of: list[int]
    representative: list[int]
    group_offset: int = 0
    group_count: int = 0

    @property
    def R(self) -> int:
        return len(self.representative)

    def answer(self, rank: int) -> Answer:
        return Answer(self.representative[rank])


@dataclass
class OrderedProblem:
    """Plug-in contract for the meta-solver.

    ``ord_solve`` must depend on the coarse instance only through its rank
    labels; ``work_bound`` estimates its running time and is at least ``n``.
    """

    structure: Any
    n: int
    ord_solve: Callable[[CoarseInstance], Outcome]
    work_bound: int


@dataclass
class SolveReport:
    outcome: Outcome
    comparisons: int = 0
    iterations: int = 0
    group_counts: list[int] = field(default_factory=list)
    interval_sizes: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    ord_calls: int = 0
    ord_comparisons: int = 0


def coarsen(
    store: ComparableStore,
    groups: Sequence[Sequence[int]],
    below: Sequence[int] = (),
    above: Sequence[int] = (),
    *,
    lowest: int | None = None,
    highest: int | None = None,
) -> CoarseInstance:
    """Label ``below`` rank 0, each group the next rank, ``above`` the last.

    Group representatives are group minima (charged).  The padding
    representatives are the global minimum and maximum; pass them as
    ``lowest``/``highest`` to avoid recomputing them.
    """
    n = len(store)
    rank_of = [-1] * n
    reps: list[int] = []
    if below:
        if lowest is None:
            lowest = store.argmin(below)
        for p in below:
            rank_of[p] = 0
        reps.append(lowest)
    offset = len(reps)
    for g in groups:
        r = len(reps)
        for p in g:
            rank_of[p] = r
        reps.append(g[0] if len(g) == 1 else store.argmin(g))
    if above:
        if highest is None:
            highest = store.argmax(above)
        r = len(reps)
        for p in above:
            rank_of[p] = r
        reps.append(highest)
    assert -1 not in rank_of, "coarse instance does not cover every position"
    return CoarseInstance(rank_of, reps, offset, len(groups))


def locate_group(outcome: Outcome, coarse: CoarseInstance) -> int | _BelowAll:
    """Index of the active group holding the answer, or BELOW_ALL."""
    if outcome is BELOW_ALL:
        return BELOW_ALL
    rank = coarse.rank_of[outcome.position]
    idx = rank - coarse.group_offset
    if not 0 <= idx < coarse.group_count:
        raise ContractViolation(
            f"ordered solver answered rank {rank}, outside active ranks "
            f"{coarse.group_offset}..{coarse.group_offset + coarse.group_count - 1}"
        )
    return idx


class _Session:
    """Shared loop state for the iterative variants."""

    def __init__(self, problem: OrderedProblem, store: ComparableStore):
        if problem.n != len(store):
            raise InputError(f"problem has n={problem.n} but store holds {len(store)} keys")
        if problem.n < 1:
            raise InputError("need at least one comparable")
        self.problem = problem
        self.store = store
        self.report = SolveReport(outcome=BELOW_ALL)
        self.active = list(range(problem.n))
        self.below: list[int] = []
        self.above: list[int] = []
        self.lowest: int | None = None
        self.highest: int | None = None
        self._start = time.perf_counter()
        self._count0 = store.count

    def ord_solve(self, coarse: CoarseInstance) -> Outcome:
        before = self.store.count
        out = self.problem.ord_solve(coarse)
        self.report.ord_comparisons += self.store.count - before
        self.report.ord_calls += 1
        if out is not BELOW_ALL and not 0 <= out.position < self.problem.n:
            raise ContractViolation(f"answer position {out.position} out of range")
        return out

    def step(self, groups: list[list[int]]) -> bool:
        """Run one coarse solve over ``groups``; return False once finished."""
        rep = self.report
        rep.iterations += 1
        rep.interval_sizes.append(len(self.active))
        rep.group_counts.append(len(groups))
        if self.lowest is None and not self.below and not self.above and len(groups) > 1:
            # first split: the global extremes sit in the outer groups
            self.lowest = self.store.argmin(groups[0])
            self.highest = self.store.argmax(groups[-1])
        coarse = coarsen(
            self.store, groups, self.below, self.above,
            lowest=self.lowest, highest=self.highest,
        )
        loc = locate_group(self.ord_solve(coarse), coarse)
        if loc is BELOW_ALL:
            rep.outcome = BELOW_ALL
            return False
        for g in groups[:loc]:
            self.below.extend(g)
        for g in groups[loc + 1:]:
            self.above.extend(g)
        self.active = list(groups[loc])
        if len(self.active) == 1:
            rep.outcome = Answer(self.active[0])
            return False
        return True

    def refine_fully(self) -> bool:
        return self.step([[p] for p in self.store.sort_positions(self.active)])

    def finish(self) -> SolveReport:
        rep = self.report
        if rep.ord_calls == 0:
            # n == 1: the lone comparable is the answer unless the problem
            # answers below every comparable
            rep.outcome = self.ord_solve(CoarseInstance([0], [0], 0, 1))
            locate_group(rep.outcome, CoarseInstance([0], [0], 0, 1))
        rep.comparisons = self.store.count - self._count0
        rep.elapsed = time.perf_counter() - self._start
        return rep

    def run(self, choose_k: Callable[[int, int], int]) -> SolveReport:
        i = 1
        more = len(self.active) > 1
        while more:
            ni = len(self.active)
            k = choose_k(i, ni)
            if k < 1:
                raise InputError(f"group exponent must be positive, got {k}")
            if (1 << k) >= ni:
                more = self.refine_fully()
            else:
                more = self.step(self.store.split_into_groups(self.active, 1 << k))
            i += 1
        return self.finish()


def _ceil_log2(x: int) -> int:
    return max(0, (x - 1).bit_length())


def solve_sorted(problem: OrderedProblem, store: ComparableStore) -> SolveReport:
    """Sort everything, then one fully refined ordered solve."""
    s = _Session(problem, store)
    s.refine_fully()
    return s.finish()


def solve_bisect(problem: OrderedProblem, store: ComparableStore) -> SolveReport:
    """Halve the interval around its lower median each iteration."""
    return _Session(problem, store).run(lambda i, ni: 1)


def solve_hybrid(problem: OrderedProblem, store: ComparableStore) -> SolveReport:
    """Bisect until the interval is cheap to sort, then sort it."""
    s = _Session(problem, store)
    n = problem.n
    more = True
    while more:
        ni = len(s.active)
        if ni * _ceil_log2(ni) <= n:
            more = s.refine_fully()
        else:
            more = s.step(s.store.split_into_groups(s.active, 2))
    return s.finish()


def logstar_exponent(n: int, ni: int, i: int) -> int:
    return min(_ceil_log2(ni), max(1, math.ceil(2 * n / (ni * i * i))))


def adaptive_exponent(m: int, ni: int) -> int:
    return min(_ceil_log2(ni), max(1, math.ceil(m / ni)))


def solve_logstar(problem: OrderedProblem, store: ComparableStore) -> SolveReport:
    """O(n/i^2) partitioning budget in iteration i: O(n) comparisons, O(log* n) rounds."""
    n = problem.n
    return _Session(problem, store).run(lambda i, ni: logstar_exponent(n, ni, i))


def solve_adaptive(problem: OrderedProblem, store: ComparableStore) -> SolveReport:
    """Partitioning budget proportional to the ordered solver's work bound."""
    m = problem.work_bound
    if m < problem.n:
        raise InputError(f"work bound {m} is below n={problem.n}")
    return _Session(problem, store).run(lambda i, ni: adaptive_exponent(m, ni))


ALGORITHMS: dict[str, Callable[[OrderedProblem, ComparableStore], SolveReport]] = {
    "sorted": solve_sorted,
    "bisect": solve_bisect,
    "hybrid": solve_hybrid,
    "logstar": solve_logstar,
    "adaptive": solve_adaptive,
}


def solve(problem: OrderedProblem, store: ComparableStore, algorithm: str = "logstar") -> SolveReport:
    try:
        fn = ALGORITHMS[algorithm]
    except KeyError:
        raise InputError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}") from None
    return fn(problem, store)
