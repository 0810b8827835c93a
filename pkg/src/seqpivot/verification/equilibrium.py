"""Dominance between strategies and Nash checks on strategy vectors.

Both comparisons come in two measures.  ``"utility"`` scores an announcement by
the player's final utility (valuation plus tax); ``"valuation"`` scores it by
the valuation of the induced decision alone.  Only the utility measure makes
"dominates every alternative" coincide with optimality, so it is the default.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from ..core import DomainError, ProjectInstance, TaxScheme, final_utility, pivotal_spec
from ..sequential import announce
from ..strategies import (
    Strategy,
    check_vector,
    compose,
    constant,
    named_strategy,
    STRATEGY_IDS,
    tabulate,
)
from ..verdict import Verdict, Witness
from .grid import Grid
from .optimality import verify_optimal

__all__ = [
    "UTILITY",
    "VALUATION",
    "GREATER",
    "EQUAL",
    "INCOMPARABLE",
    "Comparison",
    "dominance_relation",
    "deviation_universe",
    "nash_check",
    "optimality_dominance_crosscheck",
]

UTILITY = "utility"
VALUATION = "valuation"

GREATER = "greater"
EQUAL = "equal"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class Comparison:
    relation: str
    strict: Witness | None = None
    violation: Witness | None = None


def _scorer(instance: ProjectInstance, scheme: TaxScheme, measure: str) -> Callable:
    if measure == UTILITY:
        return lambda announced, player, own: final_utility(instance, scheme, announced, player, own)
    if measure == VALUATION:
        c, share = instance.cost, instance.share
        return lambda announced, player, own: (own - share) if sum(announced) >= c else Fraction(0)
    raise DomainError(f"unknown measure {measure!r}")


def _player_profiles(instance: ProjectInstance, grid: Grid, player: int):
    """Profiles quantified over for player ``player``: grid inputs times tails."""
    for prefix, own in grid.inputs(player):
        for tail in grid.tails(sum(prefix), instance.n - player):
            yield prefix, own, tail


def dominance_relation(
    s: Strategy,
    s2: Strategy,
    instance: ProjectInstance,
    grid: Grid,
    measure: str = UTILITY,
    scheme: TaxScheme | None = None,
) -> Comparison:
    """Compare two strategies of one player with later movers held fixed."""
    if s.player != s2.player:
        raise DomainError(f"strategies belong to players {s.player} and {s2.player}")
    score = _scorer(instance, scheme or pivotal_spec(), measure)
    player = s.player
    strict = violation = None
    for prefix, own, tail in _player_profiles(instance, grid, player):
        a, b = s(prefix, own), s2(prefix, own)
        if a == b:
            continue
        lhs = score(prefix + (a,) + tail, player, own)
        rhs = score(prefix + (b,) + tail, player, own)
        if lhs == rhs:
            continue
        w = Witness(profile=prefix + (own,) + tail, player=player, deviation=b, lhs=lhs, rhs=rhs)
        if lhs > rhs and strict is None:
            strict = w
        elif lhs < rhs and violation is None:
            violation = w
        if strict is not None and violation is not None:
            break
    if violation is not None:
        return Comparison(INCOMPARABLE, strict, violation)
    if strict is not None:
        return Comparison(GREATER, strict)
    return Comparison(EQUAL)


def deviation_universe(
    strategy: Strategy,
    instance: ProjectInstance,
    grid: Grid,
) -> list[Strategy]:
    """Named rules, every constant grid announcement, and every single-point
    mutation of ``strategy`` tabulated over the player's grid inputs."""
    player = strategy.player
    universe = [named_strategy(name, player, instance) for name in STRATEGY_IDS]
    universe += [constant(player, v) for v in grid.points]
    table = tabulate(strategy, grid.inputs(player))
    for key in table.inputs():
        for v in grid.points:
            if v != table.table[key]:
                universe.append(table.mutate(key, v))
    return universe


def _tie_clause(instance, grid, player, lhs_vec, rhs_vec, score):
    """First full profile where the deviating vector's play does strictly better."""
    order = range(1, instance.n + 1)
    for prefix, own, tail in _player_profiles(instance, grid, player):
        theta = prefix + (own,) + tail
        mine, _ = announce(instance, order, lhs_vec, theta)
        theirs, _ = announce(instance, order, rhs_vec, theta)
        if mine == theirs:
            continue
        lhs = score(mine, player, own)
        rhs = score(theirs, player, own)
        if rhs > lhs:
            return Witness(profile=theta, player=player, lhs=lhs, rhs=rhs)
    return None


def nash_check(
    vector: Sequence[Strategy],
    instance: ProjectInstance,
    grid: Grid,
    universe: Callable[[Strategy], Iterable[Strategy]] | None = None,
    base: Sequence[Strategy] | None = None,
    measure: str = UTILITY,
    scheme: TaxScheme | None = None,
    tie_measure: str | None = None,
) -> Verdict:
    """No player prefers any deviation in the universe, players moving in order 1..n.

    A deviation is rejected if the player's current strategy dominates it
    strictly, or dominates it weakly everywhere with ties and the sequential
    play under the current vector is weakly better at every profile.  With
    ``base`` given, each side is first composed with ``base`` componentwise.
    ``measure`` scores the dominance clause and ``tie_measure`` (default: the
    same) the sequential-play clause.
    """
    scheme = scheme or pivotal_spec()
    n = instance.n
    vector = check_vector(vector, n)
    if base is not None:
        base = check_vector(base, n)
    if universe is None:
        universe = lambda s: deviation_universe(s, instance, grid)  # noqa: E731
    tie_measure = tie_measure or measure
    tie_score = _scorer(instance, scheme, tie_measure)
    label = "nash" if base is None else f"nash*[{base[0].name}]"
    measures = measure if tie_measure == measure else f"{measure}/{tie_measure}"
    verdict = Verdict(f"{label}[{','.join(s.name for s in vector)}; {measures}]")

    def lift(vec):
        if base is None:
            return vec
        return tuple(compose(b, s) for b, s in zip(base, vec))

    current = lift(vector)
    for player in range(1, n + 1):
        for dev in universe(vector[player - 1]):
            candidate = lift(vector[: player - 1] + (dev,) + vector[player:])
            verdict.count()
            comp = dominance_relation(
                current[player - 1], candidate[player - 1], instance, grid, measure, scheme
            )
            if comp.relation == GREATER:
                continue
            if comp.relation == INCOMPARABLE:
                w = comp.violation
                verdict.fail(
                    Witness(w.profile, player, dev.name, w.lhs, w.rhs,
                            note="deviation scores higher against fixed later movers")
                )
                continue
            w = _tie_clause(instance, grid, player, current, candidate, tie_score)
            if w is not None:
                verdict.fail(
                    Witness(w.profile, player, dev.name, w.lhs, w.rhs,
                            note="deviation does better in sequential play")
                )
    return verdict


def optimality_dominance_crosscheck(
    strategies: Iterable[Strategy],
    instance: ProjectInstance,
    grid: Grid,
    measure: str = UTILITY,
    scheme: TaxScheme | None = None,
) -> list[dict]:
    """Compare "optimal" with "weakly dominates every strategy in the universe".

    Returns one record per strategy where the two answers differ; an empty list
    means they agree everywhere.
    """
    scheme = scheme or pivotal_spec()
    disagreements = []
    for s in strategies:
        optimal = verify_optimal(s, instance, grid, scheme).holds
        dominant = True
        for other in deviation_universe(s, instance, grid):
            if dominance_relation(s, other, instance, grid, measure, scheme).relation == INCOMPARABLE:
                dominant = False
                break
        if optimal != dominant:
            disagreements.append(
                {"strategy": s.name, "player": s.player, "optimal": optimal, "dominant": dominant}
            )
    return disagreements
