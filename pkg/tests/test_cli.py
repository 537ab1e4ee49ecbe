import json
import subprocess
import sys
from pathlib import Path

import pytest

from linf.cli import main

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "src" / "linf" / "data"
GOLDEN = Path(__file__).resolve().parent / "golden"


def run_cli(args, env_extra=None):
    import os
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([sys.executable, "-m", "linf", *args],
                          capture_output=True, text=True, env=env,
                          cwd=str(ROOT))
    return proc.returncode, proc.stdout, proc.stderr


def test_check_ok_exit_zero(capsys):
    code = main(["check", str(DATA / "so3.linf")])
    out = capsys.readouterr().out
    assert code == 0
    assert "OK: d^2 = 0" in out


def test_check_failure_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.linf"
    bad.write_text(
        "algebra bad { gen t1 : 1; gen t2 : 2; gen t3 : 3;"
        " d t1 = t2; d t2 = t3; }")
    code = main(["check", str(bad)])
    out = capsys.readouterr().out
    assert code == 1
    assert "t3" in out and "FAIL" in out


def test_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "syntax.linf"
    bad.write_text("algebra oops { gen t : ; }")
    code = main(["check", str(bad)])
    err = capsys.readouterr().err
    assert code == 2
    assert "parse error" in err


def test_cohomology_json_payload(capsys):
    code = main(["cohomology", str(DATA / "so3.linf"),
                 "--max-degree", "3", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["dims"] == [1, 0, 0, 1]


def test_cohomology_heisenberg(capsys):
    # H^1 of the Heisenberg algebra is 2-dimensional (x*, y*)
    code = main(["cohomology", str(DATA / "heis3.linf"),
                 "--max-degree", "1", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["dims"] == [1, 2]


def test_bianchi_golden_string(capsys):
    code = main(["bianchi", "--preset", "string"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == (GOLDEN / "bianchi_string.txt").read_text()


def test_bianchi_golden_fivebrane(capsys):
    code = main(["bianchi", "--preset", "fivebrane"])
    out = capsys.readouterr().out
    assert code == 0
    assert out == (GOLDEN / "bianchi_fivebrane.txt").read_text()


def test_weil_and_transgress_commands(capsys):
    assert main(["weil", "u1"]) == 0
    out = capsys.readouterr().out
    assert "st" in out
    assert main(["transgress", "so3", "--power", "2"]) == 0
    out = capsys.readouterr().out
    assert "verified: True" in out


def test_extend_and_cone_and_opposite(capsys):
    assert main(["extend", "so3", "--canonical3"]) == 0
    out = capsys.readouterr().out
    assert "d b = t1*t2*t3" in out.replace("b = ", "b = ") or "t1*t2*t3" in out
    assert main(["cone", "cone-string3"]) == 0
    capsys.readouterr()
    assert main(["opposite", "so3"]) == 0
    out = capsys.readouterr().out
    assert "negation_chain_map_ok: True" in out


def test_rep_command(capsys):
    assert main(["rep", "--type", "adjoint", "--lie", "so3"]) == 0
    capsys.readouterr()
    assert main(["rep", "--type", "standard", "-k", "1", "-r", "2"]) == 0
    capsys.readouterr()
    assert main(["rep", "--type", "vector", "--lie", "so3",
                 "--sections"]) == 0
    capsys.readouterr()


def test_twisted_derham_commands(capsys):
    assert main(["twisted-derham", "--rungs", "3"]) == 0
    out = capsys.readouterr().out
    assert "square_is_zero: True" in out
    assert main(["twisted-derham", "--rungs", "3", "--open-twist"]) == 0
    out = capsys.readouterr().out
    assert "matches_expected_obstruction: True" in out
    assert main(["twisted-derham", "--chern", "2"]) == 0
    out = capsys.readouterr().out
    assert "twisted_closed: True" in out


def test_charclass_commands(capsys):
    assert main(["charclass", "--ch", "4"]) == 0
    out = capsys.readouterr().out
    assert "-1/6*c4" in out.replace("c1", "") or "c4" in out
    assert main(["charclass", "--preset", "dual-gs",
                 "--reduce", "p1T=0"]) == 0
    out = capsys.readouterr().out
    assert "1/48*p2T" in out and "ch4E" in out
    assert main(["charclass", "--g8-residual"]) == 0
    out = capsys.readouterr().out
    assert "-1/96*lam^2" in out


def test_singer_commands(capsys):
    assert main(["singer", "-n", "4", "-k", "4"]) == 0
    assert "value: 6" in capsys.readouterr().out
    assert main(["singer", "--sigma", "2", "3"]) == 0
    assert "value: 2" in capsys.readouterr().out


def test_unknown_preset_exit_two(capsys):
    assert main(["check", "not-a-preset-or-file"]) == 2
    assert "error" in capsys.readouterr().err


def test_term_budget_exit_three():
    code, out, err = run_cli(
        ["cohomology", "so5", "--max-degree", "6"],
        env_extra={"LINF_MAX_TERMS": "5"})
    assert code == 3
    assert "term budget" in err


@pytest.mark.parametrize("args", [
    ["check", "string3"],
    ["cohomology", "so3", "--max-degree", "4", "--json"],
    ["bianchi", "--preset", "string", "--json"],
    ["weil", "quot-u1-u2"],
    ["charclass", "--preset", "gs"],
])
def test_byte_identical_runs(args):
    code1, out1, err1 = run_cli(args)
    code2, out2, err2 = run_cli(args)
    assert (code1, out1) == (code2, out2)
    assert out1  # produced something


def test_every_shipped_example_deterministic():
    for f in sorted(DATA.glob("*.linf")):
        args = ["check", str(f)]
        code1, out1, _ = run_cli(args)
        code2, out2, _ = run_cli(args)
        assert (code1, out1) == (code2, out2)
        assert code1 == 0, f.name
