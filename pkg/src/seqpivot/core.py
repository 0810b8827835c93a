"""Exact model of the public project problem and its Groves tax schemes.

Every quantity is a :class:`fractions.Fraction`.  Players are numbered
``1..n`` in the public API; profiles are plain tuples indexed from 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .verdict import Verdict, Witness

__all__ = [
    "DomainError",
    "ProjectInstance",
    "Outcome",
    "TaxScheme",
    "GrovesSpec",
    "NoTaxes",
    "MechanismReport",
    "to_rational",
    "format_rational",
    "valuation",
    "decide",
    "pivotal_tax",
    "groves_tax",
    "outcome",
    "pivotal_spec",
    "zero_h_spec",
    "zero_tax",
    "incentive_compatibility",
    "mechanism_predicates",
    "welfare_dominates",
]

Profile = tuple[Fraction, ...]


class DomainError(ValueError):
    """A type, profile or instance parameter lies outside its domain."""


def to_rational(value) -> Fraction:
    """Convert ints, Fractions and strings ("3", "-1/2", "0.25") exactly.

    Floats are rejected: they would smuggle rounding into exact comparisons.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip().replace("−", "-"))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(f"floats are not accepted, pass {value!r} as a string")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rational(value: Fraction) -> str:
    """``"p/q"``, or ``"p"`` for integers."""
    return str(Fraction(value))


@dataclass(frozen=True)
class ProjectInstance:
    """``n`` players sharing the cost of a project equally."""

    n: int
    cost: Fraction

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"need at least 2 players, got {self.n!r}")
        cost = to_rational(self.cost)
        if cost <= 0:
            raise DomainError(f"project cost must be positive, got {cost}")
        object.__setattr__(self, "cost", cost)

    @property
    def share(self) -> Fraction:
        return self.cost / self.n

    @property
    def others_share(self) -> Fraction:
        """Cost borne by the other ``n - 1`` players, ``(n-1)c/n``."""
        return self.cost - self.share

    def check_type(self, value) -> Fraction:
        value = to_rational(value)
        if not 0 <= value <= self.cost:
            raise DomainError(f"type {value} outside [0, {self.cost}]")
        return value

    def profile(self, values: Iterable) -> Profile:
        values = tuple(self.check_type(v) for v in values)
        if len(values) != self.n:
            raise DomainError(f"profile has {len(values)} entries, expected {self.n}")
        return values


@dataclass(frozen=True)
class Outcome:
    decision: int
    taxes: Profile
    utilities: Profile
    social_welfare: Fraction

    def to_dict(self) -> dict:
        return {
            "decision": self.decision,
            "taxes": [format_rational(t) for t in self.taxes],
            "utilities": [format_rational(u) for u in self.utilities],
            "social_welfare": format_rational(self.social_welfare),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Outcome":
        return cls(
            decision=int(data["decision"]),
            taxes=tuple(to_rational(t) for t in data["taxes"]),
            utilities=tuple(to_rational(u) for u in data["utilities"]),
            social_welfare=to_rational(data["social_welfare"]),
        )


def valuation(instance: ProjectInstance, d: int, theta) -> Fraction:
    """Initial utility ``d * (theta - c/n)``."""
    theta = instance.check_type(theta)
    if d not in (0, 1):
        raise DomainError(f"decision must be 0 or 1, got {d!r}")
    return d * (theta - instance.share)


def decide(instance: ProjectInstance, profile: Sequence) -> int:
    """Fund the project (1) iff the announced values cover its cost."""
    profile = instance.profile(profile)
    return 1 if sum(profile) >= instance.cost else 0


def pivotal_tax(instance: ProjectInstance, profile: Sequence) -> Profile:
    """Closed-form pivotal taxes; each entry is ``<= 0``."""
    profile = instance.profile(profile)
    total = sum(profile)
    funded = total >= instance.cost
    taxes = []
    for theta in profile:
        rest = total - theta
        if funded:
            taxes.append(min(Fraction(0), rest - instance.others_share))
        else:
            taxes.append(min(Fraction(0), instance.others_share - rest))
    return tuple(taxes)


class TaxScheme:
    """A direct mechanism's tax rule, paired with the efficient decision rule."""

    is_groves = False

    def tax(self, instance: ProjectInstance, profile: Profile, player: int) -> Fraction:
        raise NotImplementedError

    def taxes(self, instance: ProjectInstance, profile: Sequence) -> Profile:
        profile = instance.profile(profile)
        return tuple(self.tax(instance, profile, i) for i in range(1, instance.n + 1))


HFunction = Callable[[ProjectInstance, int, Profile], object]


@dataclass(frozen=True, eq=False)
class GrovesSpec(TaxScheme):
    """Groves taxes ``t_i = sum_{j != i} v_j(f(theta), theta_j) + h_i(theta_{-i})``.

    ``h(instance, player, others)`` receives only the other players'
    announcements, so it cannot depend on the player's own report.
    """

    name: str
    h: HFunction = field(repr=False)
    is_groves = True

    def h_value(self, instance: ProjectInstance, profile: Profile, player: int) -> Fraction:
        others = profile[: player - 1] + profile[player:]
        return to_rational(self.h(instance, player, others))

    def tax(self, instance, profile, player):
        d = 1 if sum(profile) >= instance.cost else 0
        rest = sum(profile) - profile[player - 1]
        others_value = d * (rest - instance.others_share)
        return others_value + self.h_value(instance, profile, player)


@dataclass(frozen=True, eq=False)
class NoTaxes(TaxScheme):
    """Efficient decision with no transfers at all; not a Groves mechanism."""

    name: str = "zero-tax"

    def tax(self, instance, profile, player):
        return Fraction(0)


def _pivotal_h(instance: ProjectInstance, player: int, others: Profile) -> Fraction:
    # -max over d of sum_{j != i} v_j(d, theta_j)
    return -max(Fraction(0), sum(others) - instance.others_share)


def _zero_h(instance: ProjectInstance, player: int, others: Profile) -> Fraction:
    return Fraction(0)


_PIVOTAL = GrovesSpec("pivotal", _pivotal_h)
_ZERO_H = GrovesSpec("h=0", _zero_h)
_NO_TAXES = NoTaxes()


def pivotal_spec() -> GrovesSpec:
    return _PIVOTAL


def zero_h_spec() -> GrovesSpec:
    return _ZERO_H


def zero_tax() -> NoTaxes:
    return _NO_TAXES


def groves_tax(instance: ProjectInstance, spec: GrovesSpec, profile: Sequence) -> Profile:
    return spec.taxes(instance, profile)


def outcome(
    instance: ProjectInstance,
    scheme: TaxScheme,
    announced: Sequence,
    true_types: Sequence,
) -> Outcome:
    """Decision and taxes from ``announced``; utilities against ``true_types``."""
    announced = instance.profile(announced)
    true_types = instance.profile(true_types)
    d = 1 if sum(announced) >= instance.cost else 0
    taxes = scheme.taxes(instance, announced)
    utilities = tuple(d * (theta - instance.share) + t for theta, t in zip(true_types, taxes))
    return Outcome(d, taxes, utilities, sum(utilities, Fraction(0)))


def final_utility(
    instance: ProjectInstance,
    scheme: TaxScheme,
    announced: Profile,
    player: int,
    true_type: Fraction,
) -> Fraction:
    """``u_i`` for a single player; cheaper than a full :func:`outcome`."""
    d = 1 if sum(announced) >= instance.cost else 0
    return d * (true_type - instance.share) + scheme.tax(instance, announced, player)


def social_welfare(
    instance: ProjectInstance,
    scheme: TaxScheme,
    announced: Profile,
    true_types: Profile,
) -> Fraction:
    d = 1 if sum(announced) >= instance.cost else 0
    value = d * (sum(true_types) - instance.cost)
    return value + sum(scheme.taxes(instance, announced), Fraction(0))


# -- mechanism-level predicates -------------------------------------------------


@dataclass(frozen=True)
class MechanismReport:
    feasible: Verdict
    budget_balanced: Verdict
    pay_only: Verdict
    incentive_compatible: Verdict

    def as_dict(self) -> dict[str, bool]:
        return {
            "feasible": self.feasible.holds,
            "budget_balanced": self.budget_balanced.holds,
            "pay_only": self.pay_only.holds,
            "incentive_compatible": self.incentive_compatible.holds,
        }


def _deviation_values(profiles: Sequence[Profile]) -> list[Fraction]:
    return sorted({v for p in profiles for v in p})


def incentive_compatibility(
    instance: ProjectInstance,
    scheme: TaxScheme,
    profiles: Iterable[Sequence],
    deviations: Iterable | None = None,
) -> Verdict:
    """Truth-telling is a best response against every unilateral deviation.

    ``deviations`` defaults to every value appearing in ``profiles``.
    """
    profiles = [instance.profile(p) for p in profiles]
    if not profiles:
        raise DomainError("empty profile set")
    values = (
        [instance.check_type(v) for v in deviations]
        if deviations is not None
        else _deviation_values(profiles)
    )
    verdict = Verdict("incentive_compatible")
    for theta in profiles:
        for i in range(1, instance.n + 1):
            truthful = final_utility(instance, scheme, theta, i, theta[i - 1])
            for lie in values:
                if lie == theta[i - 1]:
                    continue
                announced = theta[: i - 1] + (lie,) + theta[i:]
                lying = final_utility(instance, scheme, announced, i, theta[i - 1])
                verdict.count()
                if lying > truthful:
                    verdict.fail(
                        Witness(
                            profile=theta,
                            player=i,
                            deviation=lie,
                            lhs=truthful,
                            rhs=lying,
                            note="deviation strictly improves final utility",
                        )
                    )
    return verdict


def mechanism_predicates(
    instance: ProjectInstance,
    scheme: TaxScheme,
    profiles: Iterable[Sequence],
) -> MechanismReport:
    """Evaluate the four mechanism predicates by exhaustive quantification."""
    profiles = [instance.profile(p) for p in profiles]
    if not profiles:
        raise DomainError("empty profile set")
    feasible = Verdict("feasible")
    balanced = Verdict("budget_balanced")
    pay_only = Verdict("pay_only")
    zero = Fraction(0)
    for theta in profiles:
        taxes = scheme.taxes(instance, theta)
        total = sum(taxes, zero)
        feasible.count()
        balanced.count()
        if total > 0:
            feasible.fail(Witness(profile=theta, lhs=total, rhs=zero, note="sum of taxes > 0"))
        if total != 0:
            balanced.fail(Witness(profile=theta, lhs=total, rhs=zero, note="sum of taxes != 0"))
        for i, t in enumerate(taxes, start=1):
            pay_only.count()
            if t > 0:
                pay_only.fail(Witness(profile=theta, player=i, lhs=t, rhs=zero, note="tax > 0"))
    ic = incentive_compatibility(instance, scheme, profiles)
    return MechanismReport(feasible, balanced, pay_only, ic)


def welfare_dominates(
    scheme_a: TaxScheme,
    scheme_b: TaxScheme,
    instance: ProjectInstance,
    profiles: Iterable[Sequence],
) -> Verdict:
    """Does ``scheme_a`` welfare-dominate ``scheme_b`` under truthful reports?"""
    profiles = [instance.profile(p) for p in profiles]
    if not profiles:
        raise DomainError("empty profile set")
    verdict = Verdict(f"{scheme_a.name} welfare dominates {scheme_b.name}")
    strict = None
    for theta in profiles:
        sw_a = social_welfare(instance, scheme_a, theta, theta)
        sw_b = social_welfare(instance, scheme_b, theta, theta)
        verdict.count()
        if sw_a < sw_b:
            verdict.fail(Witness(profile=theta, lhs=sw_a, rhs=sw_b, note="welfare lower"))
        elif sw_a > sw_b and strict is None:
            strict = theta
    if verdict.holds and strict is None:
        verdict.fail(Witness(profile=profiles[0], note="no profile with strictly higher welfare"))
    if strict is not None:
        verdict.details["strict_profile"] = [format_rational(v) for v in strict]
    return verdict


def all_profiles(instance: ProjectInstance, values: Sequence) -> Iterable[Profile]:
    values = [instance.check_type(v) for v in values]
    return product(values, repeat=instance.n)
