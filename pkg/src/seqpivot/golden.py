"""Recorded three-player examples (c = 300) and their recomputation."""
from __future__ import annotations

from .core import ProjectInstance, format_rational, outcome, pivotal_spec
from .sequential import play
from .strategies import constant, strategy_vector

INSTANCE = ProjectInstance(3, 300)

GOLDEN = {
    "table1": {
        "types": ["110", "80", "110"],
        "submitted": ["110", "80", "110"],
        "taxes": ["-10", "0", "-10"],
        "utilities": ["0", "-20", "0"],
        "social_welfare": "-20",
    },
    "table2": {
        "types": ["110", "80", "110"],
        "submitted": ["110", "80", "300"],
        "taxes": ["0", "0", "-10"],
        "utilities": ["10", "-20", "0"],
        "social_welfare": "-10",
    },
    "table3": {
        "types": ["60", "70", "250"],
        "submitted": ["60", "70", "300"],
        "taxes": ["0", "0", "-70"],
        "utilities": ["-40", "-30", "80"],
        "social_welfare": "10",
    },
    "example2_deviation": {
        "types": ["60", "70", "250"],
        "submitted": ["60", "300", "300"],
        "taxes": ["0", "0", "0"],
        "utilities": ["-40", "-30", "150"],
        "social_welfare": "80",
    },
}


def _row(types, announced, result) -> dict:
    return {
        "types": [format_rational(v) for v in types],
        "submitted": [format_rational(v) for v in announced],
        "taxes": [format_rational(t) for t in result.taxes],
        "utilities": [format_rational(u) for u in result.utilities],
        "social_welfare": format_rational(result.social_welfare),
    }


def recompute() -> dict[str, dict]:
    """Recompute every recorded example from the model alone."""
    inst, pivotal = INSTANCE, pivotal_spec()
    order = (1, 2, 3)
    rows = {}

    truth = (110, 80, 110)
    rows["table1"] = _row(truth, truth, outcome(inst, pivotal, truth, truth))

    trace = play(inst, pivotal, order, strategy_vector("thm3", inst), truth)
    rows["table2"] = _row(truth, trace.announcements, trace.outcome)

    types = (60, 70, 250)
    trace = play(inst, pivotal, order, strategy_vector("thm5", inst), types)
    rows["table3"] = _row(types, trace.announcements, trace.outcome)

    # player B leaves the welfare-seeking rule and submits c
    vec = list(strategy_vector("thm5", inst))
    vec[1] = constant(2, inst.cost)
    trace = play(inst, pivotal, order, vec, types)
    rows["example2_deviation"] = _row(types, trace.announcements, trace.outcome)
    return rows


def diff(expected: dict = GOLDEN, actual: dict | None = None) -> list[str]:
    """Field-level differences, one line each; empty when everything matches."""
    actual = recompute() if actual is None else actual
    lines = []
    for name, fields in expected.items():
        got = actual.get(name)
        if got is None:
            lines.append(f"{name}: missing")
            continue
        for key, want in fields.items():
            if got.get(key) != want:
                lines.append(f"{name}.{key}: expected {want}, got {got.get(key)}")
    return lines
