"""Sequential play, player orders and the budget-balancing order search."""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .core import (
    DomainError,
    Outcome,
    ProjectInstance,
    TaxScheme,
    format_rational,
    outcome,
    pivotal_tax,
    pivotal_spec,
    to_rational,
)
from .strategies import Strategy, check_vector, strategy_vector

__all__ = [
    "MAX_SWEEP_PLAYERS",
    "InvariantViolation",
    "Stage",
    "PlayTrace",
    "check_order",
    "announce",
    "play",
    "is_pivotal",
    "find_budget_balanced_order",
    "budget_balanced_orders",
    "sweep_orders",
    "thread_count",
]

log = logging.getLogger(__name__)

MAX_SWEEP_PLAYERS = 8


class InvariantViolation(RuntimeError):
    """A guarantee of the model failed; indicates a bug, not bad input."""


def check_order(order: Sequence[int], n: int) -> tuple[int, ...]:
    order = tuple(int(p) for p in order)
    if sorted(order) != list(range(1, n + 1)):
        raise DomainError(f"order {order} is not a permutation of 1..{n}")
    return order


@dataclass(frozen=True)
class Stage:
    player: int
    prefix: tuple[Fraction, ...]
    announcement: Fraction


@dataclass(frozen=True)
class PlayTrace:
    order: tuple[int, ...]
    true_types: tuple[Fraction, ...]
    announcements: tuple[Fraction, ...]
    stages: tuple[Stage, ...]
    outcome: Outcome

    @property
    def budget_balanced(self) -> bool:
        return sum(self.outcome.taxes) == 0

    def to_dict(self) -> dict:
        fmt = format_rational
        return {
            "order": list(self.order),
            "true_types": [fmt(v) for v in self.true_types],
            "announcements": [fmt(v) for v in self.announcements],
            "stages": [
                {
                    "player": s.player,
                    "prefix": [fmt(p) for p in s.prefix],
                    "announcement": fmt(s.announcement),
                }
                for s in self.stages
            ],
            "decision": self.outcome.decision,
            "taxes": [fmt(t) for t in self.outcome.taxes],
            "utilities": [fmt(u) for u in self.outcome.utilities],
            "social_welfare": fmt(self.outcome.social_welfare),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "PlayTrace":
        stages = tuple(
            Stage(
                s["player"],
                tuple(to_rational(p) for p in s["prefix"]),
                to_rational(s["announcement"]),
            )
            for s in data["stages"]
        )
        return cls(
            order=tuple(data["order"]),
            true_types=tuple(to_rational(v) for v in data["true_types"]),
            announcements=tuple(to_rational(v) for v in data["announcements"]),
            stages=stages,
            outcome=Outcome.from_dict(data),
        )


def announce(
    instance: ProjectInstance,
    order: Sequence[int],
    strategies: Sequence[Strategy],
    true_types: Sequence[Fraction],
) -> tuple[tuple[Fraction, ...], tuple[Stage, ...]]:
    """Announcements (indexed by player) and the stage log of one play."""
    announced: list[Fraction | None] = [None] * instance.n
    stages = []
    prefix: tuple[Fraction, ...] = ()
    for player in order:
        a = instance.check_type(strategies[player - 1](prefix, true_types[player - 1]))
        announced[player - 1] = a
        stages.append(Stage(player, prefix, a))
        prefix = prefix + (a,)
    return tuple(announced), tuple(stages)


def play(
    instance: ProjectInstance,
    scheme: TaxScheme,
    order: Sequence[int],
    strategies: Sequence[Strategy],
    true_types: Sequence,
) -> PlayTrace:
    """Run the stages in ``order``; each player sees its predecessors' announcements.

    ``strategies[k]`` belongs to player ``k + 1`` wherever that player moves.
    """
    order = check_order(order, instance.n)
    strategies = check_vector(strategies, instance.n)
    true_types = instance.profile(true_types)
    announced, stages = announce(instance, order, strategies, true_types)
    return PlayTrace(order, true_types, announced, stages, outcome(instance, scheme, announced, true_types))


def is_pivotal(instance: ProjectInstance, profile: Sequence, player: int) -> bool:
    if not 1 <= player <= instance.n:
        raise DomainError(f"no player {player} among {instance.n}")
    return pivotal_tax(instance, profile)[player - 1] != 0


def find_budget_balanced_order(
    instance: ProjectInstance,
    true_types: Sequence,
    strategies: Sequence[Strategy] | None = None,
) -> tuple[int, ...]:
    """Smallest order (lexicographically) whose last player is not pivotal.

    Playing the decision-preserving strategies in that order leaves every tax
    at zero; this is checked before returning.
    """
    true_types = instance.profile(true_types)
    if strategies is None:
        strategies = strategy_vector("thm3", instance)
    non_pivotal = [i for i in range(1, instance.n + 1) if not is_pivotal(instance, true_types, i)]
    if not non_pivotal:
        raise InvariantViolation(f"every player is pivotal at {true_types}")
    order = next(o for o in permutations(range(1, instance.n + 1)) if o[-1] in non_pivotal)
    trace = play(instance, pivotal_spec(), order, strategies, true_types)
    if any(trace.outcome.taxes):
        raise InvariantViolation(
            f"order {order} leaves taxes {trace.outcome.taxes} at {true_types}"
        )
    return order


def thread_count(threads: int | None = None) -> int:
    """Worker count: explicit value, else ``SEQPIVOT_THREADS`` (0 = auto)."""
    if threads is None:
        try:
            threads = int(os.environ.get("SEQPIVOT_THREADS", "1"))
        except ValueError:
            raise DomainError("SEQPIVOT_THREADS must be an integer") from None
    if threads < 0:
        raise DomainError("thread count must be >= 0")
    return threads or (os.cpu_count() or 1)


def sweep_orders(
    instance: ProjectInstance,
    scheme: TaxScheme,
    strategies: Sequence[Strategy],
    true_types: Sequence,
    threads: int | None = None,
) -> list[tuple[tuple[int, ...], PlayTrace]]:
    """One play per permutation, in lexicographic order of permutations."""
    if instance.n > MAX_SWEEP_PLAYERS:
        raise DomainError(
            f"refusing to sweep {instance.n}! orders; at most {MAX_SWEEP_PLAYERS} players"
        )
    strategies = check_vector(strategies, instance.n)
    true_types = instance.profile(true_types)
    orders = list(permutations(range(1, instance.n + 1)))

    def run(order):
        return order, play(instance, scheme, order, strategies, true_types)

    workers = thread_count(threads)
    if workers > 1 and len(orders) > 1:
        log.debug("sweeping %d orders on %d threads", len(orders), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, orders))
    return [run(order) for order in orders]


def budget_balanced_orders(
    instance: ProjectInstance,
    true_types: Sequence,
    strategies: Sequence[Strategy] | None = None,
) -> list[tuple[int, ...]]:
    """All orders whose play leaves every pivotal tax at zero."""
    if strategies is None:
        strategies = strategy_vector("thm3", instance)
    sweep = sweep_orders(instance, pivotal_spec(), strategies, true_types, threads=1)
    return [order for order, trace in sweep if not any(trace.outcome.taxes)]
