"""Metered comparables with linear-time selection and median partitioning.

Every key comparison a solver makes goes through a :class:`ComparableStore`,
which charges it to ``store.count``.  Ties between equal keys are broken by
position, so the induced order is strict and total on any input.
"""

from __future__ import annotations

import math
from functools import cmp_to_key
from itertools import compress
from typing import Any, Sequence


# below this size selection uses median-of-medians only
_SAMPLE_CUTOFF = 600


class InputError(ValueError):
    """Raised when an argument violates an operation's precondition."""


class ComparableStore:
    """The ``n`` keys of an instance and a counter of charged comparisons.

    Positions are 0-based.  ``tkey(p)`` exposes the tie-broken sort key
    without charging; test oracles and post-passes use it, solver sessions
    use the charged methods.
    """

    def __init__(self, keys: Sequence[Any]):
        self.keys = list(keys)
        self.count = 0
        self._tk = [(k, i) for i, k in enumerate(self.keys)]

    def __len__(self) -> int:
        return len(self.keys)

    def __repr__(self) -> str:
        return f"ComparableStore(n={len(self.keys)}, count={self.count})"

    def tkey(self, p: int) -> tuple:
        return self._tk[p]

    def _check(self, p: int) -> None:
        if not 0 <= p < len(self.keys):
            raise InputError(f"position {p} out of range 0..{len(self.keys) - 1}")

    def _check_subset(self, subset: Sequence[int]) -> None:
        for p in subset:
            self._check(p)
        if len(set(subset)) != len(subset):
            raise InputError("subset has repeated positions")

    # -- single comparisons -------------------------------------------------

    def compare(self, i: int, j: int) -> int:
        """Return -1 if position ``i`` orders before ``j``, else 1."""
        self._check(i)
        self._check(j)
        if i == j:
            raise InputError("cannot compare a position with itself")
        self.count += 1
        return -1 if self._tk[i] < self._tk[j] else 1

    def less(self, i: int, j: int) -> bool:
        return self.compare(i, j) < 0

    def argmin(self, subset: Sequence[int]) -> int:
        tk = self._tk
        best = subset[0]
        for p in subset[1:]:
            if tk[p] < tk[best]:
                best = p
        self.count += len(subset) - 1
        return best

    def argmax(self, subset: Sequence[int]) -> int:
        tk = self._tk
        best = subset[0]
        for p in subset[1:]:
            if tk[p] > tk[best]:
                best = p
        self.count += len(subset) - 1
        return best

    # -- sorting ------------------------------------------------------------

    def sort_positions(self, subset: Sequence[int]) -> list[int]:
        """Return ``subset`` in increasing tie-broken key order."""
        self._check_subset(subset)
        tk = self._tk
        charged = 0

        def cmp(a: int, b: int) -> int:
            nonlocal charged
            charged += 1
            return -1 if tk[a] < tk[b] else 1

        out = sorted(subset, key=cmp_to_key(cmp))
        self.count += charged
        return out

    def _insertion_sort(self, items: Sequence[int]) -> list[int]:
        tk = self._tk
        out: list[int] = []
        charged = 0
        for p in items:
            j = len(out)
            out.append(p)
            kp = tk[p]
            while j > 0:
                charged += 1
                if tk[out[j - 1]] > kp:
                    out[j] = out[j - 1]
                    j -= 1
                else:
                    break
            out[j] = p
        self.count += charged
        return out

    # -- selection ----------------------------------------------------------

    def _median5(self, a: int, b: int, c: int, d: int, e: int) -> int:
        # Fixed schedule of exactly 6 comparisons.
        tk = self._tk
        self.count += 6
        if tk[b] < tk[a]:
            a, b = b, a
        if tk[d] < tk[c]:
            c, d = d, c
        if tk[c] < tk[a]:
            a, b, c, d = c, d, a, b
        # a is below three others, so the median is the second smallest of b, c, d, e
        if tk[e] < tk[b]:
            b, e = e, b
        if tk[b] < tk[c]:
            return c if tk[c] < tk[e] else e
        return b if tk[b] < tk[d] else d

    def _select(self, items: list[int], r: int) -> tuple[list[int], int, list[int]]:
        """Split ``items`` into (r smallest, r-th, rest) in O(len(items)) comparisons.

        Large inputs first try two pivots bracketing the target rank, taken
        from an evenly spaced sample; a round that fails to shrink the
        interval to 3/4 is followed by a median-of-medians round, which
        keeps the worst case linear.
        """
        tk = self._tk
        below: list[int] = []
        above: list[int] = []
        fallback = False
        while True:
            m = len(items)
            if m <= 10:
                s = self._insertion_sort(items)
                below.extend(s[:r])
                above.extend(s[r + 1:])
                return below, s[r], above
            if m > _SAMPLE_CUTOFF and not fallback:
                size = int(m ** (2 / 3))
                gap = 2 * math.isqrt(size) + 1
                sample = [items[j * m // size] for j in range(size)]
                t = r * size // m
                lo_r, hi_r = max(0, t - gap), min(size - 1, t + gap)
                _, p_lo, rest = self._select(sample, lo_r)
                p_hi = self._select(rest, hi_r - lo_r - 1)[1] if hi_r > lo_r else p_lo
                k_lo, k_hi = tk[p_lo], tk[p_hi]
                # test the pivot on the larger side first: most items settle in one comparison
                if r < m // 2:
                    hi_flags = [tk[p] > k_hi for p in items]
                    self.count += m - 1
                    highs = list(compress(items, hi_flags))
                    mid = [p for p, f in zip(items, hi_flags) if not f]
                    lo_flags = [tk[p] < k_lo for p in mid]
                    self.count += len(mid) - 1
                    lows = list(compress(mid, lo_flags))
                    mid = [p for p, f in zip(mid, lo_flags) if not f]
                else:
                    lo_flags = [tk[p] < k_lo for p in items]
                    self.count += m - 1
                    lows = list(compress(items, lo_flags))
                    mid = [p for p, f in zip(items, lo_flags) if not f]
                    hi_flags = [tk[p] > k_hi for p in mid]
                    self.count += len(mid) - 1
                    highs = list(compress(mid, hi_flags))
                    mid = [p for p, f in zip(mid, hi_flags) if not f]
                nl, nm = len(lows), len(mid)
                if r < nl:
                    above.extend(mid)
                    above.extend(highs)
                    items = lows
                elif r < nl + nm:
                    below.extend(lows)
                    above.extend(highs)
                    items = mid
                    r -= nl
                else:
                    below.extend(lows)
                    below.extend(mid)
                    items = highs
                    r -= nl + nm
                fallback = len(items) > 3 * m // 4
                continue
            fallback = False
            medians = [
                self._median5(*items[i:i + 5]) for i in range(0, m - 4, 5)
            ]
            _, pivot, _ = self._select_mom(medians, (len(medians) - 1) // 2)
            pk = tk[pivot]
            flags = [tk[p] < pk for p in items]
            self.count += m - 1
            lows = list(compress(items, flags))
            highs = [p for p, f in zip(items, flags) if not f and p != pivot]
            nl = len(lows)
            if r < nl:
                above.append(pivot)
                above.extend(highs)
                items = lows
            elif r == nl:
                below.extend(lows)
                above.extend(highs)
                return below, pivot, above
            else:
                below.extend(lows)
                below.append(pivot)
                r -= nl + 1
                items = highs

    def _select_mom(self, items: list[int], r: int) -> tuple[list[int], int, list[int]]:
        """Plain median-of-medians selection (no sampling)."""
        tk = self._tk
        below: list[int] = []
        above: list[int] = []
        while True:
            m = len(items)
            if m <= 10:
                s = self._insertion_sort(items)
                below.extend(s[:r])
                above.extend(s[r + 1:])
                return below, s[r], above
            medians = [
                self._median5(*items[i:i + 5]) for i in range(0, m - 4, 5)
            ]
            _, pivot, _ = self._select_mom(medians, (len(medians) - 1) // 2)
            pk = tk[pivot]
            flags = [tk[p] < pk for p in items]
            self.count += m - 1
            lows = list(compress(items, flags))
            highs = [p for p, f in zip(items, flags) if not f and p != pivot]
            nl = len(lows)
            if r < nl:
                above.append(pivot)
                above.extend(highs)
                items = lows
            elif r == nl:
                below.extend(lows)
                above.extend(highs)
                return below, pivot, above
            else:
                below.extend(lows)
                below.append(pivot)
                r -= nl + 1
                items = highs

    def select_rank(self, subset: Sequence[int], r: int) -> int:
        """Position holding the ``r``-th smallest key of ``subset`` (0-based ``r``)."""
        self._check_subset(subset)
        if not 0 <= r < len(subset):
            raise InputError(f"rank {r} out of range for subset of size {len(subset)}")
        return self._select(list(subset), r)[1]

    def split_into_groups(self, subset: Sequence[int], g: int) -> list[list[int]]:
        """Partition ``subset`` into ``g`` key-ordered groups of near-equal size.

        Uses log2(g) rounds of lower-median splits, so sizes differ by at most
        one and the cost is O(|subset| log g) comparisons.  Groups are not
        internally sorted.
        """
        self._check_subset(subset)
        if g < 1 or g > len(subset) or g & (g - 1):
            raise InputError(f"group count {g} must be a power of two in 1..{len(subset)}")
        groups = [list(subset)]
        while len(groups) < g:
            split: list[list[int]] = []
            for grp in groups:
                left, pivot, right = self._select(grp, (len(grp) - 1) // 2)
                left.append(pivot)
                split.append(left)
                split.append(right)
            groups = split
        return groups


class GuardExceeded(RuntimeError):
    """A brute-force enumeration would exceed its configured size guard."""
