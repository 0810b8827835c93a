"""Announcement strategies for the sequential mechanism.

A strategy of player ``i`` maps the announced prefix of its predecessors and
its own true type to an announcement.  The rules branch on whether the player
moves last; that is read off the prefix length, so a strategy follows the
player's position when the order is permuted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .core import DomainError, ProjectInstance, format_rational, to_rational

__all__ = [
    "Strategy",
    "TabulatedStrategy",
    "OffGridError",
    "truth_telling",
    "decision_preserving",
    "welfare_seeking",
    "greedy_deviation",
    "constant",
    "compose",
    "tabulate",
    "named_strategy",
    "strategy_vector",
    "check_vector",
    "STRATEGY_IDS",
]

Prefix = tuple[Fraction, ...]
Rule = Callable[[Prefix, Fraction], Fraction]


class OffGridError(KeyError):
    """Lookup of a tabulated strategy at an input outside its table."""


@dataclass(frozen=True, eq=False)
class Strategy:
    player: int
    name: str
    rule: Rule = field(repr=False)

    def __post_init__(self):
        if self.player < 1:
            raise DomainError(f"players are numbered from 1, got {self.player}")

    def __call__(self, prefix: Sequence, own) -> Fraction:
        return self.rule(tuple(prefix), to_rational(own))


@dataclass(frozen=True, eq=False)
class TabulatedStrategy(Strategy):
    """A strategy given by a finite table; lookups off the table raise."""

    table: Mapping[tuple[Prefix, Fraction], Fraction] = field(default_factory=dict, repr=False)

    def __call__(self, prefix, own):
        key = (tuple(to_rational(p) for p in prefix), to_rational(own))
        try:
            return self.table[key]
        except KeyError:
            raise OffGridError(f"{self.name}: no entry for prefix={key[0]} own={key[1]}") from None

    def inputs(self) -> list[tuple[Prefix, Fraction]]:
        return sorted(self.table)

    def mutate(self, key: tuple[Prefix, Fraction], value) -> "TabulatedStrategy":
        """Copy with the announcement at ``key`` replaced."""
        if key not in self.table:
            raise OffGridError(f"{self.name}: cannot mutate missing input {key}")
        table = dict(self.table)
        table[key] = to_rational(value)
        label = f"{self.name}[{_key_str(key)}->{format_rational(table[key])}]"
        return replace(self, name=label, table=table)

    def to_dict(self) -> dict:
        return {
            "player": self.player,
            "name": self.name,
            "table": {_key_str(k): format_rational(v) for k, v in sorted(self.table.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "TabulatedStrategy":
        table = {_parse_key(k): to_rational(v) for k, v in data["table"].items()}
        return cls(data["player"], data["name"], _missing_rule, table)


def _missing_rule(prefix, own):  # pragma: no cover - never used, tables override __call__
    raise OffGridError("tabulated strategy has no rule")


def _key_str(key) -> str:
    prefix, own = key
    return ",".join(format_rational(p) for p in prefix) + "|" + format_rational(own)


def _parse_key(text: str):
    prefix, own = text.split("|")
    prefix = tuple(to_rational(p) for p in prefix.split(",")) if prefix else ()
    return prefix, to_rational(own)


# -- named rules ------------------------------------------------------------


def truth_telling(player: int) -> Strategy:
    return Strategy(player, "truth", lambda prefix, own: own)


def decision_preserving(player: int, instance: ProjectInstance) -> Strategy:
    """Announce ``c`` once the running sum reaches ``c``, else report truthfully.

    The last mover announces 0 when the sum stays below ``c``.  Neither
    change can alter the decision, but both shrink other players' taxes.
    """
    c, n = instance.cost, instance.n

    def rule(prefix, own):
        if sum(prefix) + own >= c:
            return c
        return own if len(prefix) < n - 1 else Fraction(0)

    return Strategy(player, "thm3", rule)


def welfare_seeking(player: int, instance: ProjectInstance) -> Strategy:
    """Like :func:`decision_preserving`, except at an exact tie.

    When the running sum equals ``c`` at the last mover and its type exceeds
    the cost share, it announces 0 and cancels the project.
    """
    c, n, share = instance.cost, instance.n, instance.share

    def rule(prefix, own):
        total = sum(prefix) + own
        last = len(prefix) == n - 1
        if total < c:
            return Fraction(0) if last else own
        if total == c and own > share and last:
            return Fraction(0)
        return c

    return Strategy(player, "thm5", rule)


def greedy_deviation(player: int, instance: ProjectInstance) -> Strategy:
    """Prefix-blind rule: 0 at or below the cost share, ``c`` above it."""
    c, share = instance.cost, instance.share
    return Strategy(player, "greedy", lambda prefix, own: Fraction(0) if own <= share else c)


def constant(player: int, value) -> Strategy:
    value = to_rational(value)
    return Strategy(player, f"const({format_rational(value)})", lambda prefix, own: value)


def compose(outer: Strategy, inner: Strategy) -> Strategy:
    """``outer`` applied with the own type replaced by ``inner``'s announcement."""
    if outer.player != inner.player:
        raise DomainError(
            f"cannot compose strategies of players {outer.player} and {inner.player}"
        )

    def rule(prefix, own):
        return outer(prefix, inner(prefix, own))

    return Strategy(outer.player, f"{outer.name}o{inner.name}", rule)


def tabulate(strategy: Strategy, inputs: Iterable[tuple[Sequence, object]]) -> TabulatedStrategy:
    table = {}
    for prefix, own in inputs:
        key = (tuple(to_rational(p) for p in prefix), to_rational(own))
        table[key] = to_rational(strategy(*key))
    return TabulatedStrategy(strategy.player, f"tab({strategy.name})", _missing_rule, table)


STRATEGY_IDS = ("truth", "thm3", "thm5", "greedy")


def named_strategy(name: str, player: int, instance: ProjectInstance) -> Strategy:
    if name == "truth":
        return truth_telling(player)
    if name == "thm3":
        return decision_preserving(player, instance)
    if name == "thm5":
        return welfare_seeking(player, instance)
    if name == "greedy":
        return greedy_deviation(player, instance)
    raise DomainError(f"unknown strategy {name!r}; expected one of {', '.join(STRATEGY_IDS)}")


def strategy_vector(name: str, instance: ProjectInstance) -> tuple[Strategy, ...]:
    return tuple(named_strategy(name, i, instance) for i in range(1, instance.n + 1))


def check_vector(strategies: Sequence[Strategy], n: int) -> tuple[Strategy, ...]:
    strategies = tuple(strategies)
    if len(strategies) != n:
        raise DomainError(f"expected {n} strategies, got {len(strategies)}")
    for i, s in enumerate(strategies, start=1):
        if s.player != i:
            raise DomainError(f"entry {i} belongs to player {s.player}")
    return strategies
