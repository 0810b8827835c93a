"""Social welfare over every path that optimal players can produce."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..core import DomainError, ProjectInstance, TaxScheme, pivotal_spec, social_welfare
from ..sequential import announce
from ..strategies import strategy_vector, welfare_seeking
from ..verdict import Verdict, Witness
from .grid import Grid
from .optimality import compute_opt_set

__all__ = ["max_welfare_over_optimal", "welfare_maximality", "check_last_mover"]


def max_welfare_over_optimal(
    instance: ProjectInstance,
    grid: Grid,
    true_types: Sequence,
    scheme: TaxScheme | None = None,
) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Best welfare when each player, in order, may announce any optimal value.

    Returns the maximum and the lexicographically smallest announcement path
    attaining it.
    """
    scheme = scheme or pivotal_spec()
    theta = instance.profile(true_types)
    if any(v not in grid.points for v in theta):
        raise DomainError(f"true types {theta} must be grid points")
    n = instance.n
    opts = [compute_opt_set(instance, grid, i, scheme) for i in range(1, n + 1)]
    best: list = [None, None]

    def walk(prefix):
        i = len(prefix)
        if i == n:
            sw = social_welfare(instance, scheme, prefix, theta)
            if best[0] is None or sw > best[0]:
                best[0], best[1] = sw, prefix
            return
        for a in sorted(opts[i][(prefix, theta[i])]):
            walk(prefix + (a,))

    walk(())
    return best[0], best[1]


def welfare_maximality(
    instance: ProjectInstance,
    grid: Grid,
    vector: str = "thm5",
    scheme: TaxScheme | None = None,
) -> Verdict:
    """The named vector's welfare (order 1..n) equals the optimal-path maximum everywhere."""
    scheme = scheme or pivotal_spec()
    strategies = strategy_vector(vector, instance)
    order = range(1, instance.n + 1)
    verdict = Verdict(f"welfare maximal among optimal vectors[{vector}]")
    for theta in grid.profiles():
        announced, _ = announce(instance, order, strategies, theta)
        sw = social_welfare(instance, scheme, announced, theta)
        best, path = max_welfare_over_optimal(instance, grid, theta, scheme)
        verdict.count()
        if sw != best:
            verdict.fail(
                Witness(profile=theta, deviation=path, lhs=sw, rhs=best,
                        note=f"{vector} play {announced} below best optimal path")
            )
    return verdict


def check_last_mover(
    instance: ProjectInstance,
    grid: Grid,
    scheme: TaxScheme | None = None,
) -> Verdict:
    """Swapping only the last mover to the welfare-seeking rule never lowers welfare.

    Quantified over every grid profile and every path of optimal announcements
    by the earlier players, against every optimal last announcement.
    """
    scheme = scheme or pivotal_spec()
    n = instance.n
    opts = [compute_opt_set(instance, grid, i, scheme) for i in range(1, n + 1)]
    last = welfare_seeking(n, instance)
    verdict = Verdict("last mover welfare-seeking never lowers welfare")

    def walk(prefix, theta):
        i = len(prefix)
        if i == n - 1:
            own = theta[-1]
            mine = social_welfare(instance, scheme, prefix + (last(prefix, own),), theta)
            for b in sorted(opts[-1][(prefix, own)]):
                verdict.count()
                theirs = social_welfare(instance, scheme, prefix + (b,), theta)
                if theirs > mine:
                    verdict.fail(Witness(profile=theta, player=n, deviation=prefix + (b,),
                                         lhs=mine, rhs=theirs))
            return
        for a in sorted(opts[i][(prefix, theta[i])]):
            walk(prefix + (a,), theta)

    for theta in grid.profiles():
        walk((), theta)
    return verdict
