"""Brute-force optimality, social optimality and incentive checks."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..core import (
    DomainError,
    ProjectInstance,
    TaxScheme,
    final_utility,
    incentive_compatibility,
    pivotal_spec,
    social_welfare,
)
from ..strategies import Strategy
from ..verdict import Verdict, Witness
from .grid import Grid

__all__ = [
    "OptSet",
    "compute_opt_set",
    "verify_optimal",
    "verify_socially_optimal",
    "check_lemma_compat",
    "verify_ic",
    "check_groves_invariance",
    "check_spec_purity",
]

log = logging.getLogger(__name__)

Key = tuple[tuple[Fraction, ...], Fraction]


@dataclass
class OptSet:
    """Optimal announcements of one player at every grid input.

    ``members[(prefix, own)]`` holds each grid announcement whose final
    utility is maximal against every tail.  For the others, ``refutations``
    keeps the first tail (as a full profile) where a better announcement exists.
    """

    player: int
    scheme: str
    members: dict[Key, frozenset[Fraction]] = field(default_factory=dict)
    refutations: dict[Key, dict[Fraction, Witness]] = field(default_factory=dict)

    def __getitem__(self, key: Key) -> frozenset[Fraction]:
        return self.members[key]

    def __contains__(self, key) -> bool:
        return key in self.members

    def __len__(self) -> int:
        return len(self.members)


def _refute(instance, scheme, grid, player, prefix, own, announcement, tails):
    """First tail where some grid announcement beats ``announcement``, as a Witness."""
    candidates = grid.points if announcement in grid.points else (*grid.points, announcement)
    for tail in tails:
        mine = final_utility(instance, scheme, prefix + (announcement,) + tail, player, own)
        for b in candidates:
            theirs = final_utility(instance, scheme, prefix + (b,) + tail, player, own)
            if theirs > mine:
                return Witness(
                    profile=prefix + (own,) + tail,
                    player=player,
                    deviation=b,
                    lhs=mine,
                    rhs=theirs,
                    note=f"announcing {announcement} loses to {b}",
                )
    return None


@lru_cache(maxsize=128)
def _opt_set(instance: ProjectInstance, grid: Grid, player: int, scheme: TaxScheme) -> OptSet:
    n = instance.n
    opt = OptSet(player, getattr(scheme, "name", type(scheme).__name__))
    for prefix, own in grid.inputs(player):
        tails = grid.tails(sum(prefix), n - player)
        alive = set(grid.points)
        refuted: dict[Fraction, Witness] = {}
        for tail in tails:
            utils = {
                a: final_utility(instance, scheme, prefix + (a,) + tail, player, own)
                for a in grid.points
            }
            best = max(utils.values())
            winner = next(a for a in grid.points if utils[a] == best)
            for a in [a for a in alive if utils[a] < best]:
                alive.discard(a)
                refuted[a] = Witness(
                    profile=prefix + (own,) + tail,
                    player=player,
                    deviation=winner,
                    lhs=utils[a],
                    rhs=best,
                    note=f"announcing {a} loses to {winner}",
                )
        opt.members[(prefix, own)] = frozenset(alive)
        opt.refutations[(prefix, own)] = refuted
    log.debug("opt set for player %d: %d inputs", player, len(opt))
    return opt


def compute_opt_set(
    instance: ProjectInstance,
    grid: Grid,
    player: int,
    scheme: TaxScheme | None = None,
) -> OptSet:
    if not 1 <= player <= instance.n:
        raise DomainError(f"no player {player} among {instance.n}")
    if grid.instance != instance:
        raise DomainError("grid was built for a different instance")
    return _opt_set(instance, grid, player, scheme or pivotal_spec())


def verify_optimal(
    strategy: Strategy,
    instance: ProjectInstance,
    grid: Grid,
    scheme: TaxScheme | None = None,
) -> Verdict:
    """Optimal: at every grid input the announcement is a best reply to every tail."""
    scheme = scheme or pivotal_spec()
    opt = compute_opt_set(instance, grid, strategy.player, scheme)
    verdict = Verdict(f"optimal[{strategy.name}, player {strategy.player}, {opt.scheme}]")
    n = instance.n
    for (prefix, own), members in opt.members.items():
        a = instance.check_type(strategy(prefix, own))
        verdict.count()
        if a in members:
            continue
        if a in grid.points:
            verdict.fail(opt.refutations[(prefix, own)][a])
            continue
        tails = grid.tails(sum(prefix), n - strategy.player, extra=(a,))
        witness = _refute(instance, scheme, grid, strategy.player, prefix, own, a, tails)
        if witness is not None:
            verdict.fail(witness)
    return verdict


def verify_socially_optimal(
    strategy: Strategy,
    instance: ProjectInstance,
    grid: Grid,
    scheme: TaxScheme | None = None,
) -> Verdict:
    """Optimal, and no optimal announcement yields higher welfare at any profile."""
    scheme = scheme or pivotal_spec()
    player = strategy.player
    optimal = verify_optimal(strategy, instance, grid, scheme)
    verdict = Verdict(f"socially optimal[{strategy.name}, player {player}, {scheme.name}]")
    verdict.merge(optimal)
    opt = compute_opt_set(instance, grid, player, scheme)
    for (prefix, own), members in opt.members.items():
        a = strategy(prefix, own)
        for tail in grid.tails(sum(prefix), instance.n - player):
            truth = prefix + (own,) + tail
            mine = social_welfare(instance, scheme, prefix + (a,) + tail, truth)
            for b in sorted(members):
                verdict.count()
                theirs = social_welfare(instance, scheme, prefix + (b,) + tail, truth)
                if theirs > mine:
                    verdict.fail(
                        Witness(
                            profile=truth,
                            player=player,
                            deviation=b,
                            lhs=mine,
                            rhs=theirs,
                            note=f"optimal announcement {b} beats {a} on welfare",
                        )
                    )
                    break
    return verdict


def check_lemma_compat(
    instance: ProjectInstance,
    grid: Grid,
    scheme: TaxScheme | None = None,
) -> Verdict:
    """Every optimal announcement respects the four structural clauses.

    (i)   running sum < c, not last: only the true type.
    (ii)  running sum < c, last: announced sum stays below c.
    (iii) running sum = c, not last: announcement >= true type.
    (iv)  running sum > c: announced sum reaches c.
    """
    c, n = instance.cost, instance.n
    verdict = Verdict("optimal announcements respect clauses (i)-(iv)")
    clauses = {"i": 0, "ii": 0, "iii": 0, "iv": 0}
    for player in range(1, n + 1):
        opt = compute_opt_set(instance, grid, player, scheme)
        for (prefix, own), members in opt.members.items():
            before = sum(prefix)
            running = before + own
            last = player == n
            if running < c and not last:
                clause, ok = "i", lambda a: a == own
            elif running < c:
                clause, ok = "ii", lambda a: before + a < c
            elif running == c and not last:
                clause, ok = "iii", lambda a: a >= own
            elif running > c:
                clause, ok = "iv", lambda a: before + a >= c
            else:
                continue
            for a in sorted(members):
                clauses[clause] += 1
                verdict.count()
                if not ok(a):
                    verdict.fail(
                        Witness(
                            profile=prefix + (own,),
                            player=player,
                            deviation=a,
                            note=f"clause ({clause}) violated by optimal announcement {a}",
                        )
                    )
    verdict.details["clause_checks"] = clauses
    return verdict


def verify_ic(instance: ProjectInstance, scheme: TaxScheme, grid: Grid) -> Verdict:
    """Truthful reporting against every unilateral grid deviation at every grid profile."""
    verdict = incentive_compatibility(instance, scheme, grid.profiles(), grid.points)
    verdict.property = f"incentive compatible[{getattr(scheme, 'name', scheme)}]"
    return verdict


def check_groves_invariance(
    strategy: Strategy,
    instance: ProjectInstance,
    grid: Grid,
    spec_a: TaxScheme,
    spec_b: TaxScheme,
) -> Verdict:
    """Optimality of ``strategy`` does not depend on which Groves scheme is used."""
    for spec in (spec_a, spec_b):
        if not spec.is_groves:
            raise DomainError(f"{spec.name} is not a Groves mechanism")
    a = verify_optimal(strategy, instance, grid, spec_a)
    b = verify_optimal(strategy, instance, grid, spec_b)
    verdict = Verdict(f"groves invariance[{strategy.name}: {spec_a.name} vs {spec_b.name}]")
    verdict.count()
    verdict.details = {spec_a.name: a.holds, spec_b.name: b.holds}
    if a.holds != b.holds:
        w = (a.witness or b.witness)
        verdict.fail(
            Witness(
                profile=w.profile,
                player=strategy.player,
                deviation=w.deviation,
                note=f"optimal under {spec_a.name}: {a.holds}, under {spec_b.name}: {b.holds}",
            )
        )
    return verdict


def check_spec_purity(spec, instance: ProjectInstance, grid: Grid) -> Verdict:
    """``h_i`` is deterministic and blind to player ``i``'s own announcement."""
    verdict = Verdict(f"h purity[{spec.name}]")
    for profile in grid.profiles():
        for i in range(1, instance.n + 1):
            base = spec.h_value(instance, profile, i)
            verdict.count()
            if spec.h_value(instance, profile, i) != base:
                verdict.fail(Witness(profile=profile, player=i, note="h not deterministic"))
            for v in grid.points:
                moved = profile[: i - 1] + (v,) + profile[i:]
                other = spec.h_value(instance, moved, i)
                if other != base:
                    verdict.fail(
                        Witness(profile=profile, player=i, deviation=v, lhs=base, rhs=other,
                                note="h depends on the player's own announcement")
                    )
    return verdict
