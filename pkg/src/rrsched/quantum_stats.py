"""Dynamic quanta: median and upper-quartile quanta, the weighted CRITERIA
value, and the 80% rule of thumb."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .workload import Ticks, TickLike


def _sorted(bursts: Iterable[TickLike]) -> list[Ticks]:
    values = sorted(Ticks.of(b) for b in bursts)
    if not values:
        raise ValueError("quantum statistics need at least one burst")
    return values


def median_exact(bursts: Iterable[TickLike]) -> Fraction:
    ys = _sorted(bursts)
    n = len(ys)
    if n % 2:
        return ys[n // 2].fraction
    return (ys[n // 2 - 1].fraction + ys[n // 2].fraction) / 2


def median_quantum(bursts: Iterable[TickLike]) -> Ticks:
    """Median of the bursts as a quantum.

    With an even count the median is the mean of the two middle values. For
    whole-tick inputs that is always a whole or half tick. Half-tick inputs
    can give a quarter tick; that is rounded half-up onto the half-tick grid.
    """
    return Ticks.from_fraction_half_up(median_exact(bursts))


def upper_quartile_position(n: int) -> int:
    """1-based position ceil(3(n+1)/4), clamped to n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return min(n, -(-3 * (n + 1) // 4))


def upper_quartile_quantum(bursts: Iterable[TickLike]) -> Ticks:
    ys = _sorted(bursts)
    return ys[upper_quartile_position(len(ys)) - 1]


def median_position(n: int) -> int:
    """Number of leading positions that run under the median quantum."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (n + 1) // 2


@dataclass(frozen=True)
class QuantumPair:
    mtq: Ticks
    utq: Ticks
    m: int

    def __post_init__(self):
        if self.mtq > self.utq:
            raise ValueError(f"median quantum {self.mtq} exceeds upper-quartile quantum {self.utq}")
        if self.m < 1:
            raise ValueError("m must be >= 1")

    @classmethod
    def from_bursts(cls, bursts: Iterable[TickLike]) -> QuantumPair:
        ys = _sorted(bursts)
        return cls(median_quantum(ys), upper_quartile_quantum(ys), median_position(len(ys)))


class Criteria(NamedTuple):
    exact: Fraction
    display: Ticks


def criteria_quantum(q: QuantumPair, n: int) -> Criteria:
    """Weighted mean quantum (MTQ*m + UTQ*(n-m)) / n.

    ``display`` is the exact value rounded half-up to the nearest half tick.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if q.m > n:
        raise ValueError(f"m={q.m} exceeds n={n}")
    exact = (q.mtq.fraction * q.m + q.utq.fraction * (n - q.m)) / n
    return Criteria(exact, Ticks.from_fraction_half_up(exact))


class EightyPercent(NamedTuple):
    fraction: Fraction
    passed: bool


def eighty_percent_check(bursts: Iterable[TickLike], quantum: Fraction | TickLike) -> EightyPercent:
    """Share of bursts strictly shorter than ``quantum``; passes at >= 0.8."""
    ys = _sorted(bursts)
    limit = quantum.fraction if isinstance(quantum, Ticks) else Fraction(quantum)
    share = Fraction(sum(1 for y in ys if y.fraction < limit), len(ys))
    return EightyPercent(share, share >= Fraction(4, 5))
