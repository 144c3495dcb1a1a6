"""CLI behaviour: exit codes, text/JSON agreement, reproducibility."""

from __future__ import annotations

import json
import subprocess
import sys

from g2flop.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dim(capsys):
    code, out, _ = run_cli(capsys, "dim", "0", "1")
    assert code == 0
    assert out.strip() == "7"


def test_dim_json_matches_text(capsys):
    _, text_out, _ = run_cli(capsys, "dim", "1", "1")
    code, json_out, _ = run_cli(capsys, "dim", "1", "1", "--json")
    assert code == 0
    payload = json.loads(json_out)
    assert payload["value"] == int(text_out.strip()) == 64
    assert payload["status"] == "pass"


def test_dim_rejects_non_dominant(capsys):
    code, _, err = run_cli(capsys, "dim", "-1", "0")
    assert code == 2
    assert "not dominant" in err


def test_coh_text(capsys):
    code, out, _ = run_cli(capsys, "coh", "U*U(h)")
    assert code == 0
    assert out.startswith("k[-1]")


def test_coh_acyclic(capsys):
    code, out, _ = run_cli(capsys, "coh", "U(-H)")
    assert code == 0
    assert out.strip() == "0"


def test_coh_json_profile(capsys):
    code, out, _ = run_cli(capsys, "coh", "O(h)", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["profile"] == [
        {"degree": 0, "weight": [0, 1], "mult": 1, "dim": 7}
    ]


def test_coh_indeterminate_is_reported_not_failed(capsys):
    code, out, _ = run_cli(capsys, "coh", "S'*S")
    assert code == 0
    assert "indeterminate" in out


def test_coh_parse_error_exits_2(capsys):
    code, _, err = run_cli(capsys, "coh", "Z(h)")
    assert code == 2
    assert "position" in err


def test_homv(capsys):
    code, out, _ = run_cli(capsys, "homv", "U(h)'", "U")
    assert code == 0
    assert out.strip() == "k[-1]"
    code, out, _ = run_cli(capsys, "homv", "O(H-2h)", "O(h)")
    assert out.strip() == "0"


def test_homv_json(capsys):
    code, out, _ = run_cli(capsys, "homv", "U", "U", "--json")
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert payload["euler"] == 1
    assert payload["profile"][0]["dim"] == 1


def test_hilbert_values(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "r", "0", "1")
    assert code == 0 and out.strip() == "7"
    code, out, _ = run_cli(capsys, "hilbert", "s", "0", "0", "--trunc", "1")
    assert code == 0 and out.strip() == "65"
    code, out, _ = run_cli(capsys, "hilbert", "git", "+", "0", "--trunc", "1")
    assert code == 0 and out.strip() == "65"


def test_hilbert_table_json(capsys):
    code, out, _ = run_cli(
        capsys, "hilbert", "r", "0", "0", "--json", "--table", "--table-degree", "1"
    )
    payload = json.loads(out)
    assert payload["table"]["entries"][0]["dim"] == 1
    assert "grading" in payload["table"]


def test_sod_replay_passes(capsys):
    code, out, _ = run_cli(capsys, "sod-replay")
    assert code == 0
    assert "step 12 PASS" in out
    assert "final state matches the mirror pattern" in out


def test_sod_replay_json(capsys):
    code, out, _ = run_cli(capsys, "sod-replay", "--json")
    payload = json.loads(out)
    assert payload["pass"] is True
    assert len(payload["steps"]) == 12


def test_check_all_green(capsys):
    code, out, _ = run_cli(capsys, "check-all")
    assert code == 0
    assert "ALL CHECKS PASSED" in out


def test_check_all_json_reproducible(capsys):
    code1, out1, _ = run_cli(capsys, "check-all", "--json")
    code2, out2, _ = run_cli(capsys, "check-all", "--json")
    assert code1 == code2 == 0
    p1, p2 = json.loads(out1), json.loads(out2)
    p1.pop("timestamp")
    p2.pop("timestamp")
    assert json.dumps(p1, sort_keys=True) == json.dumps(p2, sort_keys=True)


def test_roots_convention_dump(capsys):
    code, out, _ = run_cli(capsys, "roots", "--convention-dump", "--json")
    payload = json.loads(out)
    assert payload["conventions"]["cartan"] == [[2, -1], [-3, 2]]
    assert payload["conventions"]["rho"] == [1, 1]
    assert payload["weyl_order"] == 12


def test_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "g2flop.cli", "dim", "1", "0"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "14"
