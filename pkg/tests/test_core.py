from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seqpivot import (
    DomainError,
    GrovesSpec,
    ProjectInstance,
    decide,
    groves_tax,
    mechanism_predicates,
    outcome,
    pivotal_spec,
    pivotal_tax,
    to_rational,
    valuation,
    welfare_dominates,
    zero_h_spec,
    zero_tax,
)
from seqpivot.core import all_profiles, social_welfare

from conftest import F

C300 = ProjectInstance(3, 300)


def types(c=300):
    return st.fractions(min_value=0, max_value=c, max_denominator=12)


profiles3 = st.tuples(types(), types(), types())


# -- rationals and instances ---------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), ("0.5", Fraction(1, 2)), (" 7/14 ", Fraction(1, 2))],
)
def test_to_rational_parses_exactly(text, expected):
    assert to_rational(text) == expected


def test_to_rational_rejects_floats_and_garbage():
    with pytest.raises(TypeError):
        to_rational(0.1)
    with pytest.raises(DomainError):
        to_rational("abc")


def test_instance_validation():
    with pytest.raises(DomainError):
        ProjectInstance(1, 300)
    with pytest.raises(DomainError):
        ProjectInstance(3, 0)
    assert C300.share == 100
    assert C300.others_share == 200


def test_profile_validation():
    with pytest.raises(DomainError):
        C300.profile((1, 2))
    with pytest.raises(DomainError):
        C300.profile((0, 0, 301))
    with pytest.raises(DomainError):
        C300.profile((0, 0, -1))


# -- valuation, decision, taxes --------------------------------------------------


def test_valuation_examples():
    assert valuation(C300, 1, 110) == 10
    assert valuation(C300, 1, 80) == -20
    for theta in (0, 50, 300):
        assert valuation(C300, 0, theta) == 0
    with pytest.raises(DomainError):
        valuation(C300, 1, 400)


def test_decide_examples():
    assert decide(C300, (110, 80, 110)) == 1
    assert decide(C300, (0, 0, 0)) == 0
    assert decide(C300, (100, 100, 100)) == 1


def test_pivotal_tax_examples():
    assert pivotal_tax(C300, (110, 80, 110)) == F(-10, 0, -10)
    assert pivotal_tax(C300, (60, 70, 300)) == F(0, 0, -70)
    assert pivotal_tax(C300, (0, 0, 0)) == F(0, 0, 0)


def _hand_groves_zero_h(c, n, profile):
    # t_i = sum_{j != i} d * (theta_j - c/n), d from the full profile
    d = 1 if sum(profile) >= c else 0
    out = []
    for i in range(n):
        total = Fraction(0)
        for j in range(n):
            if j != i:
                total += d * (Fraction(profile[j]) - Fraction(c, n))
        out.append(total)
    return tuple(out)


def test_groves_tax_examples():
    assert groves_tax(C300, pivotal_spec(), (110, 80, 110)) == F(-10, 0, -10)
    # v = (10, -20, 10): player B collects 10 + 10
    expected = _hand_groves_zero_h(300, 3, (110, 80, 110))
    assert expected == F(-10, 20, -10)
    assert groves_tax(C300, zero_h_spec(), (110, 80, 110)) == expected
    assert groves_tax(C300, zero_h_spec(), (0, 0, 0)) == F(0, 0, 0)


def test_outcome_examples():
    out = outcome(C300, pivotal_spec(), (110, 80, 110), (110, 80, 110))
    assert out.utilities == F(0, -20, 0)
    assert out.social_welfare == -20
    out = outcome(C300, pivotal_spec(), (110, 80, 300), (110, 80, 110))
    assert out.utilities == F(10, -20, 0)
    assert out.social_welfare == -10
    out = outcome(C300, pivotal_spec(), (0, 0, 0), (0, 0, 0))
    assert out.utilities == F(0, 0, 0) and out.social_welfare == 0


def test_outcome_json_round_trip():
    out = outcome(C300, pivotal_spec(), (110, 80, 300), (110, 80, 110))
    assert type(out).from_dict(out.to_dict()) == out
    assert out.to_dict()["taxes"] == ["0", "0", "-10"]


# -- mechanism predicates --------------------------------------------------------


def test_pivotal_predicates_on_table_profile(grid6):
    profiles = list(grid6.profiles()) + [F(110, 80, 110)]
    report = mechanism_predicates(C300, pivotal_spec(), profiles)
    assert report.pay_only.holds and report.feasible.holds
    assert report.incentive_compatible.holds
    assert not report.budget_balanced.holds
    report = mechanism_predicates(C300, pivotal_spec(), [F(110, 80, 110)])
    assert report.budget_balanced.witness.lhs == -20


def test_pivotal_balanced_at_zero_profile():
    assert mechanism_predicates(C300, pivotal_spec(), [F(0, 0, 0)]).budget_balanced.holds


def test_zero_h_spec_is_not_pay_only(grid6):
    report = mechanism_predicates(C300, zero_h_spec(), grid6.profiles())
    assert not report.pay_only.holds
    assert _hand_groves_zero_h(300, 3, (100, 150, 150))[0] == 100
    assert groves_tax(C300, zero_h_spec(), (100, 150, 150))[0] == 100


def test_welfare_dominance(grid6):
    profiles = list(grid6.profiles()) + [F(110, 80, 110)]
    assert not welfare_dominates(pivotal_spec(), pivotal_spec(), C300, profiles).holds
    assert welfare_dominates(zero_tax(), pivotal_spec(), C300, profiles).holds
    assert not welfare_dominates(pivotal_spec(), zero_tax(), C300, profiles).holds


def test_empty_profile_sets_rejected():
    with pytest.raises(DomainError):
        mechanism_predicates(C300, pivotal_spec(), [])
    with pytest.raises(DomainError):
        welfare_dominates(zero_tax(), pivotal_spec(), C300, [])


# -- invariants -----------------------------------------------------------------


@given(profiles3)
def test_pivotal_is_pay_only_and_feasible(profile):
    taxes = pivotal_tax(C300, profile)
    assert all(t <= 0 for t in taxes)
    assert sum(taxes) <= 0


@given(profiles3)
def test_closed_form_matches_groves_definition(profile):
    assert pivotal_tax(C300, profile) == groves_tax(C300, pivotal_spec(), profile)


@given(profiles3, st.sampled_from([0, 1]))
def test_decision_rule_is_efficient(profile, other):
    d = decide(C300, profile)
    chosen = sum(valuation(C300, d, t) for t in profile)
    assert chosen >= sum(valuation(C300, other, t) for t in profile)


@given(profiles3, profiles3)
def test_outcome_consistency(announced, truth):
    out = outcome(C300, pivotal_spec(), announced, truth)
    assert out.social_welfare == sum(out.utilities)
    for theta, t, u in zip(truth, out.taxes, out.utilities):
        assert u == valuation(C300, out.decision, theta) + t
    assert out.social_welfare == social_welfare(C300, pivotal_spec(), announced, truth)


@given(profiles3, st.integers(1, 3), types())
def test_pivotal_h_ignores_own_announcement(profile, player, other):
    spec = pivotal_spec()
    moved = list(profile)
    moved[player - 1] = other
    assert spec.h_value(C300, tuple(moved), player) == spec.h_value(C300, profile, player)


@settings(max_examples=50)
@given(st.integers(2, 5), st.fractions(min_value=1, max_value=50, max_denominator=6), st.data())
def test_pivotal_invariants_other_instances(n, cost, data):
    inst = ProjectInstance(n, cost)
    profile = data.draw(st.tuples(*[st.fractions(min_value=0, max_value=cost, max_denominator=6)] * n))
    taxes = pivotal_tax(inst, profile)
    assert taxes == groves_tax(inst, pivotal_spec(), profile)
    assert all(t <= 0 for t in taxes)


def test_custom_groves_spec_uses_only_others():
    seen = []

    def h(instance, player, others):
        seen.append(len(others))
        return sum(others) / 10

    spec = GrovesSpec("tenth", h)
    taxes = spec.taxes(C300, (10, 20, 30))
    assert seen == [2, 2, 2]
    assert taxes[0] == Fraction(5) + 0  # project cancelled: valuations are 0


def test_all_profiles_enumerates_product():
    assert len(list(all_profiles(C300, (0, 150, 300)))) == 27
