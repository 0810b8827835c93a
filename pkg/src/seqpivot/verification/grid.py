"""Finite surrogates for the type interval ``[0, c]``."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

from ..core import DomainError, ProjectInstance, to_rational

__all__ = ["MAX_PROFILES", "Grid", "GridTooLarge", "build_grid"]

MAX_PROFILES = 10**7


class GridTooLarge(DomainError):
    pass


@dataclass(frozen=True)
class Grid:
    """Points ``0, c/m, ..., c``, optionally enriched with extra exact values.

    Quantifiers over later movers range over :meth:`tails`, which adds to the
    plain grid tails a few tails whose sums sit on and between every decision
    breakpoint.  Utility comparisons between two announcements depend on the
    tail only through its sum, so these extra tails make an optimality check
    at a grid input exact over the whole interval.
    """

    instance: ProjectInstance
    steps: int
    extra: tuple[Fraction, ...] = ()
    points: tuple[Fraction, ...] = field(init=False)

    def __post_init__(self):
        c = self.instance.cost
        pts = {c * k / self.steps for k in range(self.steps + 1)}
        pts.update(self.instance.check_type(v) for v in self.extra)
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @property
    def profile_count(self) -> int:
        return len(self.points) ** self.instance.n

    def profiles(self) -> Iterator[tuple[Fraction, ...]]:
        return product(self.points, repeat=self.instance.n)

    def inputs(self, player: int) -> Iterator[tuple[tuple[Fraction, ...], Fraction]]:
        """Every (prefix, own type) a player can face, prefixes drawn from the grid."""
        for prefix in product(self.points, repeat=player - 1):
            for own in self.points:
                yield prefix, own

    def critical_sums(self, prefix_sum: Fraction, length: int, extra: Iterable = ()) -> list[Fraction]:
        """Tail sums on and between the points where some announcement flips the decision."""
        c = self.instance.cost
        top = c * length
        marks = {Fraction(0), top}
        for x in (*self.points, *extra):
            t = c - prefix_sum - x
            if 0 <= t <= top:
                marks.add(t)
        marks = sorted(marks)
        mids = [(a + b) / 2 for a, b in zip(marks, marks[1:])]
        return sorted(set(marks) | set(mids))

    def tails(self, prefix_sum, length: int, extra: Iterable = ()) -> list[tuple[Fraction, ...]]:
        """Grid tails of ``length`` later movers, then one tail per critical sum."""
        if length == 0:
            return [()]
        seen = list(product(self.points, repeat=length))
        known = set(seen)
        c = self.instance.cost
        for total in self.critical_sums(to_rational(prefix_sum), length, extra):
            tail, rest = [], total
            for _ in range(length):
                v = min(c, rest)
                tail.append(v)
                rest -= v
            tail = tuple(tail)
            if tail not in known:
                known.add(tail)
                seen.append(tail)
        return seen


def build_grid(instance: ProjectInstance, steps: int, extra: Iterable = ()) -> Grid:
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise DomainError(f"grid steps must be a positive integer, got {steps!r}")
    if steps % instance.n:
        warnings.warn(
            f"{instance.n} does not divide {steps}; the cost share c/n is not a grid point",
            stacklevel=2,
        )
    grid = Grid(instance, steps, tuple(to_rational(v) for v in extra))
    if grid.profile_count > MAX_PROFILES:
        raise GridTooLarge(
            f"{len(grid.points)}^{instance.n} = {grid.profile_count} profiles exceeds {MAX_PROFILES}"
        )
    return grid
