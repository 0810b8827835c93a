import csv
import io
import json
import subprocess
import sys

import pytest

from seqpivot import PlayTrace, Verdict
from seqpivot.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_replay_tables_matches(capsys):
    code, out, _ = run(capsys, "replay-tables")
    assert code == EXIT_OK
    assert "MISMATCH" not in out and out.count(": ok") == 4
    code, out, _ = run(capsys, "replay-tables", "--format", "json")
    assert json.loads(out)["match"] is True


def test_simulate_json_round_trip(capsys):
    code, out, _ = run(capsys, "simulate", "--types", "110,80,110", "--strategy", "thm3", "--format", "json")
    assert code == EXIT_OK
    trace = PlayTrace.from_dict(json.loads(out))
    assert trace.outcome.social_welfare == -10
    assert json.loads(json.dumps(trace.to_dict(), sort_keys=True, indent=2)) == json.loads(out)


def test_simulate_table_uses_letters(capsys):
    code, out, _ = run(capsys, "simulate", "--types", "60,70,250", "--strategy", "thm5")
    assert code == EXIT_OK
    assert "A" in out and "C" in out and "80" in out


def test_simulate_budget_order(capsys):
    code, out, _ = run(capsys, "simulate", "--types", "110,80,110", "--strategy", "thm3",
                       "--order", "1,3,2", "--format", "json")
    data = json.loads(out)
    assert data["taxes"] == ["0", "0", "0"] and data["social_welfare"] == "0"


def test_sweep_csv_flags_balanced_orders(capsys):
    code, out, _ = run(capsys, "sweep", "--types", "110,80,110", "--strategy", "thm3", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6
    balanced = [r for r in rows if r["budget_balanced"] in ("True", "true", "1")]
    assert len(balanced) == 2


def test_sweep_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["sweep", "--types", "60,70,250", "--strategy", "thm5", "--format", "json", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_pass_and_fail_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "ic", "--steps", "3", "--format", "json")
    assert code == EXIT_OK
    verdicts = [Verdict.from_dict(v) for v in json.loads(out)]
    assert all(v.holds for v in verdicts)
    code, out, _ = run(capsys, "verify", "social", "--strategy", "thm3", "--steps", "3")
    assert code == EXIT_FAIL
    assert "[FAIL]" in out
    code, out, _ = run(capsys, "verify", "ic", "--steps", "3", "--mechanism", "zero", "--format", "csv")
    assert code == EXIT_FAIL
    row = next(csv.DictReader(io.StringIO(out)))
    assert row["holds"] == "False" and row["witness_profile"]


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--types", "0,x,1"],
        ["simulate", "--types", "1,2,400"],
        ["simulate", "--types", "1,2,3", "--players", "4"],
        ["simulate", "--types", "1,2,3", "--order", "1,1,2"],
        ["simulate", "--types", "1,2,3", "--strategy", "bogus"],
        ["sweep", "--types", ",".join(["1"] * 9), "--cost", "9"],
        ["verify", "ic", "--mechanism", "nope"],
        ["verify", "ic", "--steps", "0"],
        ["simulate"],
        ["nonsense"],
    ],
)
def test_bad_configuration_exits_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG
    assert err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "seqpivot", "replay-tables"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "table3: ok" in proc.stdout
