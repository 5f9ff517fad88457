import json
import subprocess
import sys

import pytest

from wshuffle.cli import SpecError, main, pair_adhoc, parse_spec
from wshuffle.suites import Config, ConfigError, run


def test_unknown_suite_exit_2(capsys):
    assert main(["verify", "nope"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_bad_flag_exit_2():
    assert main(["verify", "miura", "--window", "1,2"]) == 2


def test_miura_exit_0(tmp_path):
    out = tmp_path / "r.jsonl"
    assert main(["verify", "miura", "--json", str(out)]) == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert [r["status"] for r in lines] == ["pass"] * 5
    assert set(lines[0]) >= {"suite", "name", "params", "status", "witnesses"}


def test_limit_exit_1_on_quoted_sign():
    assert main(["verify", "limit", "--n", "1"]) == 1


def test_reports_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        assert main(["verify", "rmatrix", "--n", "1,2", "--seed", "7", "--json", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_workers_keep_instance_order(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    base = ["verify", "wrels", "--n", "1", "--k", "1", "--kprime", "1"]
    assert main(base + ["--json", str(a)]) == 0
    assert main(base + ["--workers", "2", "--json", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": [1], "seed": 4}))
    out = tmp_path / "o.jsonl"
    assert main(["verify", "rmatrix", "--config", str(cfg), "--n", "2", "--json", str(out)]) == 0
    assert {json.loads(line)["params"]["n"] for line in out.read_text().splitlines()} == {2}


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": 1}))
    assert main(["verify", "rmatrix", "--config", str(cfg)]) == 2


def test_missing_zeta_file():
    assert main(["verify", "toroidal", "--zeta", "/nonexistent.json"]) == 2




def test_wrels_kprime_order():
    with pytest.raises(ConfigError):
        list(run("wrels", Config(n=(1,), k=(2,), kprime=(1,))))


def test_probabilistic_records_oracle():
    reps = list(run("pairing", Config(probabilistic=True, seed=2)))[:2]
    assert reps[0].params["oracle"]["seed"] == 2
    assert all(r.passed for r in reps)


@pytest.mark.parametrize("left,right,value", [
    ("F(1;1,3)", "F(-1;1,3)", "(1 - q^-2)"),
    ("F(1;2,0)", "F(-1;2,0)", "(1 - q^-2)"),
    ("F(1;1,3)", "F(-1;2,3)", "0"),
    ("F(1;1,3)", "F(-1;1,2)*F(-1;2,3)", "0"),
    ("F(1;1,2)*F(1;2,3)", "F(-1;1,3,2)", "(1 - q^-2)^2"),
])
def test_pair_values(left, right, value):
    assert pair_adhoc(left, right) == value


def test_pair_w_against_jword():
    # W^{(1)}_{13} is one generator times its p-power; J(1,1,1) is F^{(-1)}_{1,-1} ~ F^{(-1)}_{31}
    from wshuffle.cli import _pretty
    from wshuffle.ratfun import Field
    from wshuffle.wrels import w_truncate

    coeff = w_truncate(2, 1, 3, 1).terms[0].coefficient
    assert pair_adhoc("W(1;1,3)", "J(1,1,1)") == _pretty(coeff * (1 - Field(2).qpow(-2)))
    assert pair_adhoc("W(1;1,3)", "J(1,1,0)") == "0"


@pytest.mark.parametrize("text,pos", [("F(1;1,3", 0), ("F(1;1,3)*", 9), ("F(1;1,3) G", 9), ("F(2;1,3)", 0)])
def test_spec_errors(text, pos):
    with pytest.raises(SpecError) as err:
        parse_spec(text)
    assert err.value.position == pos


def test_pair_cli_parse_error(capsys):
    assert main(["pair", "F(1;1", "F(-1;1,1)"]) == 2
    assert "position" in capsys.readouterr().err


def test_console_entry():
    res = subprocess.run([sys.executable, "-m", "wshuffle.cli", "pair", "F(1;1,3)", "F(-1;1,3)"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "(1 - q^-2)"
