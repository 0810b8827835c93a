import json
from fractions import Fraction
from itertools import permutations, product

import pytest

from seqpivot import (
    DomainError,
    PlayTrace,
    ProjectInstance,
    budget_balanced_orders,
    find_budget_balanced_order,
    is_pivotal,
    outcome,
    pivotal_spec,
    play,
    strategy_vector,
    sweep_orders,
    truth_telling,
)

from conftest import F

C300 = ProjectInstance(3, 300)
ORDER = (1, 2, 3)


def _hand_thm3_play(c, n, order, types):
    # independent re-implementation: running sum, c once reached, last mover 0 below c
    announced = [None] * n
    total = Fraction(0)
    for pos, i in enumerate(order):
        own = Fraction(types[i - 1])
        if total + own >= c:
            a = Fraction(c)
        elif pos < n - 1:
            a = own
        else:
            a = Fraction(0)
        announced[i - 1] = a
        total += a
    return tuple(announced)


def _hand_pivotal(c, n, profile):
    share = Fraction(c, n)
    funded = sum(profile) >= c
    taxes = []
    for i in range(n):
        rest = sum(profile) - profile[i]
        other_value = rest - (n - 1) * share
        if funded:
            taxes.append(min(Fraction(0), other_value))
        else:
            taxes.append(min(Fraction(0), -other_value))
    return tuple(taxes)


def test_play_table_two():
    trace = play(C300, pivotal_spec(), ORDER, strategy_vector("thm3", C300), (110, 80, 110))
    assert trace.announcements == F(110, 80, 300)
    assert trace.outcome.taxes == F(0, 0, -10)
    assert trace.outcome.utilities == F(10, -20, 0)
    assert trace.outcome.social_welfare == -10
    assert [s.player for s in trace.stages] == [1, 2, 3]


def test_play_table_three():
    trace = play(C300, pivotal_spec(), ORDER, strategy_vector("thm5", C300), (60, 70, 250))
    assert trace.outcome.taxes == F(0, 0, -70)
    assert trace.outcome.utilities == F(-40, -30, 80)
    assert trace.outcome.social_welfare == 10


def test_play_sees_announcements_not_types():
    seen = []
    vec = list(strategy_vector("thm3", C300))

    def spy(prefix, own):
        seen.append(tuple(prefix))
        return own

    from seqpivot import Strategy
    vec[2] = Strategy(3, "spy", spy)
    play(C300, pivotal_spec(), ORDER, vec, (250, 80, 10))
    assert seen == [F(250, 300)]  # true types were (250, 80)


def test_play_rejects_bad_orders():
    vec = strategy_vector("thm3", C300)
    for order in [(1, 2), (1, 1, 2), (0, 1, 2)]:
        with pytest.raises(DomainError):
            play(C300, pivotal_spec(), order, vec, (0, 0, 0))


def test_is_pivotal_examples():
    assert is_pivotal(C300, (110, 80, 110), 1)
    assert not is_pivotal(C300, (110, 80, 110), 2)
    assert is_pivotal(C300, (110, 80, 110), 3)
    assert not any(is_pivotal(C300, (0, 0, 0), i) for i in (1, 2, 3))


def test_find_budget_balanced_order_examples():
    assert find_budget_balanced_order(C300, (110, 80, 110)) == (1, 3, 2)
    assert find_budget_balanced_order(C300, (0, 0, 0)) == (1, 2, 3)


def test_budget_balanced_orders_match_hand_play():
    for types in [(110, 80, 110), (60, 70, 250)]:
        expected = []
        for order in permutations((1, 2, 3)):
            announced = _hand_thm3_play(300, 3, order, types)
            if not any(_hand_pivotal(300, 3, announced)):
                expected.append(order)
        assert budget_balanced_orders(C300, types) == expected
    assert budget_balanced_orders(C300, (110, 80, 110)) == [(1, 3, 2), (3, 1, 2)]


def test_sweep_is_lexicographic_and_complete():
    sweep = sweep_orders(C300, pivotal_spec(), strategy_vector("thm3", C300), (110, 80, 110))
    assert [o for o, _ in sweep] == list(permutations((1, 2, 3)))
    by_order = {o: t.outcome.social_welfare for o, t in sweep}
    assert by_order[(1, 2, 3)] == -10 and by_order[(1, 3, 2)] == 0


def test_sweep_threads_match_serial():
    inst = ProjectInstance(5, 10)
    vec = strategy_vector("thm5", inst)
    types = (1, 3, 2, Fraction(5, 2), 4)
    serial = sweep_orders(inst, pivotal_spec(), vec, types, threads=1)
    threaded = sweep_orders(inst, pivotal_spec(), vec, types, threads=4)
    assert [(o, t.to_dict()) for o, t in serial] == [(o, t.to_dict()) for o, t in threaded]


def test_sweep_thread_env(monkeypatch):
    monkeypatch.setenv("SEQPIVOT_THREADS", "0")
    sweep = sweep_orders(C300, pivotal_spec(), strategy_vector("thm3", C300), (60, 70, 250))
    assert len(sweep) == 6
    monkeypatch.setenv("SEQPIVOT_THREADS", "x")
    with pytest.raises(DomainError):
        sweep_orders(C300, pivotal_spec(), strategy_vector("thm3", C300), (60, 70, 250))


def test_sweep_refuses_large_n():
    inst = ProjectInstance(9, 9)
    with pytest.raises(DomainError):
        sweep_orders(inst, pivotal_spec(), strategy_vector("thm3", inst), (1,) * 9)


def test_trace_json_round_trip():
    trace = play(C300, pivotal_spec(), (2, 3, 1), strategy_vector("thm5", C300), (60, 70, 250))
    data = json.loads(trace.to_json())
    assert data["order"] == [2, 3, 1]
    back = PlayTrace.from_dict(data)
    assert back.to_dict() == trace.to_dict()


# -- invariants on the m=6 grid -------------------------------------------------


def test_invariants_over_grid(grid6):
    pivotal = pivotal_spec()
    thm3 = strategy_vector("thm3", C300)
    truth = tuple(truth_telling(i) for i in (1, 2, 3))
    orders = list(permutations((1, 2, 3)))
    for theta in grid6.profiles():
        direct = outcome(C300, pivotal, theta, theta)
        truthful_d = direct.decision
        for order in orders:
            assert play(C300, pivotal, order, truth, theta).outcome == direct
            trace = play(C300, pivotal, order, thm3, theta)
            assert trace.outcome.decision == truthful_d
            assert trace.outcome.social_welfare >= direct.social_welfare
        assert not all(is_pivotal(C300, theta, i) for i in (1, 2, 3))
        assert budget_balanced_orders(C300, theta)


def test_budget_balance_holds_for_larger_instances():
    inst = ProjectInstance(4, 8)
    for theta in product((0, 2, 5, 8), repeat=4):
        order = find_budget_balanced_order(inst, theta)
        assert order in budget_balanced_orders(inst, theta)
