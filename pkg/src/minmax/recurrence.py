"""Numeric diagnostics for the two interval-shrinking recurrences.

With ``x_i = n / n_i`` the log* scheme obeys ``x_1 = 1``,
``x_{i+1} = x_i * 2**(2 x_i / i**2)`` and the work-proportional scheme
``x_{i+1} = x_i * 2**(x_i m / n)``.  Both explode past float range within a
handful of steps, so values are kept as power towers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

_TOP = 1024.0  # 2**_TOP is the float ceiling
_BOTTOM = 10.0  # 2**_BOTTOM < _TOP keeps the representation canonical
_FLOAT_MAX = 1e300


@dataclass(frozen=True, order=True)
class Tower:
    """``exp2`` applied ``height`` times to ``mantissa``.

    Canonical form: ``mantissa < 1024``, and ``mantissa >= 10`` whenever
    ``height > 0``; canonical towers compare lexicographically.
    """

    height: int
    mantissa: float

    @staticmethod
    def make(height: int, mantissa: float) -> "Tower":
        while mantissa >= _TOP:
            mantissa = math.log2(mantissa)
            height += 1
        while height > 0 and mantissa < _BOTTOM:
            mantissa = 2.0**mantissa
            height -= 1
        return Tower(height, mantissa)

    @staticmethod
    def of(x: float) -> "Tower":
        if x < 0:
            raise ValueError("towers represent non-negative values")
        return Tower.make(0, float(x))

    def exp2(self) -> "Tower":
        return Tower.make(self.height + 1, self.mantissa)

    def log2(self) -> "Tower":
        if self.height == 0:
            return Tower.of(math.log2(self.mantissa))
        return Tower.make(self.height - 1, self.mantissa)

    def to_float(self) -> float:
        """Value as a float, or ``inf`` past float range."""
        if self.height == 0:
            return self.mantissa
        if self.height == 1:
            return 2.0**self.mantissa
        return math.inf

    def __repr__(self) -> str:
        if self.height <= 1:
            return f"Tower({self.to_float():.6g})"
        return f"Tower(2^^{self.height} ~ {self.mantissa:.4f})"


def log_star(x: float | Tower) -> int:
    """Times log2 must be applied before the value drops to at most 1."""
    t = x if isinstance(x, Tower) else Tower.of(x)
    k = 0
    while t > Tower.of(1.0):
        t = t.log2()
        k += 1
    return k


def _grow(x: Tower, coeff: float) -> Tower:
    """``x * 2**(coeff * x)`` for ``coeff > 0``.

    Once ``x`` is past float range the ``log2 x`` term of the exponent is
    dropped, which can only round the result down.
    """
    f = x.to_float()
    if f <= _FLOAT_MAX:
        return Tower.of(math.log2(f) + coeff * f).exp2() if f > 0 else Tower.of(0.0)
    y = x.log2()
    yf = y.to_float()
    if yf <= _FLOAT_MAX:
        return Tower.of(yf + math.log2(coeff)).exp2().exp2()
    # coeff shifts log2 log2 of the result by an amount far below float resolution
    return y.exp2().exp2()


def logstar_sequence(count: int) -> list[Tower]:
    xs = [Tower.of(1.0)]
    for i in range(1, count):
        xs.append(_grow(xs[-1], 2.0 / (i * i)))
    return xs


def adaptive_sequence(count: int, ratio: float) -> list[Tower]:
    """``x_{i+1} = x_i 2**(ratio x_i)`` with ``ratio = m / n >= 1``."""
    xs = [Tower.of(1.0)]
    for _ in range(1, count):
        xs.append(_grow(xs[-1], ratio))
    return xs


def rounds_to_exhaust(xs: list[Tower], n: float) -> int | None:
    """Smallest 1-based ``i`` with ``x_i >= n`` (interval size at most 1)."""
    target = Tower.of(n)
    for i, x in enumerate(xs, start=1):
        if x >= target:
            return i
    return None


@dataclass
class RecurrenceReport:
    xs: list[Tower]
    growth: dict[int, bool] = field(default_factory=dict)
    tower: dict[int, bool] = field(default_factory=dict)
    adaptive: dict[tuple[float, float], bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.growth.values()) and all(self.tower.values()) and all(self.adaptive.values())


ADAPTIVE_CASES = [(n, m) for n in (1e3, 1e6, 1e12) for m in (1.0, 2.0, 8.0, 64.0)]


def check_recurrence_lemmas(
    max_i: int,
    bound_scale: float = 1.0,
    adaptive_cases: list[tuple[float, float]] | None = None,
) -> RecurrenceReport:
    """Check both growth lemmas of the log* recurrence up to ``max_i``.

    * ``x_i >= i^2 log2(i+1)`` for ``4 <= i <= max_i``;
    * ``x_{i+2} >= 2^{x_i}`` for ``4 <= i <= max_i - 2``.

    For the work-proportional recurrence each ``(n, m/n)`` case must exhaust
    the interval within ``2 + log*(m) - log*(m/n)`` rounds.  ``bound_scale``
    inflates the first bound (a negative control when > 1).
    """
    if not 4 <= max_i <= 64:
        raise ValueError("max_i must lie in 4..64")
    xs = logstar_sequence(max_i)
    rep = RecurrenceReport(xs)
    for i in range(4, max_i + 1):
        rep.growth[i] = xs[i - 1] >= Tower.of(bound_scale * i * i * math.log2(i + 1))
    for i in range(4, max_i - 1):
        rep.tower[i] = xs[i + 1] >= xs[i - 1].exp2()
    for n, ratio in adaptive_cases if adaptive_cases is not None else ADAPTIVE_CASES:
        m = n * ratio
        rounds = rounds_to_exhaust(adaptive_sequence(64, ratio), n)
        rep.adaptive[(n, ratio)] = rounds is not None and rounds <= 2 + log_star(m) - log_star(ratio)
    return rep
