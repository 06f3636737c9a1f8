import csv
import io
import itertools
import json
import subprocess
import sys

import pytest

from freemeixner.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_moments_csv_degree_four_rows():
    code, text = run("moments", "--catalog", "semicircular", "--d", "2", "--degree", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    quartic = [r for r in rows[1:] if len(r[0].split(",")) == 4]
    assert len(quartic) == 16
    assert dict(quartic)["1,2,2,1"] == "1" and dict(quartic)["1,2,1,2"] == "0"


def test_moments_json_is_deterministic():
    a = run("moments", "--catalog", "free-poisson", "--d", "2", "--degree", "5")
    b = run("moments", "--catalog", "free-poisson", "--d", "2", "--degree", "5")
    assert a == b and a[0] == 0
    json.loads(a[1])


def test_verify_catalog_entry():
    code, text = run("verify", "--catalog", "simple-quadratic-d3", "--c", "1", "--degree", "6")
    assert code == 0
    rep = json.loads(text)
    assert rep["pass"] is True


def test_verify_random():
    code, text = run("verify", "--random", "3", "--seed", "7", "--degree", "5")
    assert code == 0 and json.loads(text)["pass"]


def test_verify_multinomial_and_negative_c():
    assert run("verify", "--catalog", "multinomial", "--p", "1/4,3/4", "--degree", "5")[0] == 0
    assert run("verify", "--catalog", "simple-quadratic-d2", "--c=-1/2", "--degree", "4")[0] == 0


def test_cumulants_and_mops():
    code, text = run("cumulants", "--json", '{"d": 1, "C": [["0"]], "T": [[["1"]]]}', "--degree", "4")
    assert code == 0
    assert json.loads(text)
    code, text = run("mops", "--catalog", "semicircular", "--d", "1", "--degree", "2", "--format", "csv")
    assert code == 0
    assert dict(csv.reader(io.StringIO(text)))["1,1"] == "-1 + x1*x1"


def test_file_input(tmp_path):
    f = tmp_path / "d.json"
    f.write_text(json.dumps({"d": 1, "C": [["1/2"]], "T": [[["2"]]]}))
    assert run("moments", "--file", str(f), "--degree", "3")[0] == 0


def test_exit_codes(tmp_path, capsys):
    assert run("moments", "--json", '{"d": 1, "C": [["-2"]], "T": [[["0"]]]}')[0] == 3
    assert run("moments", "--json", "{not json")[0] == 2
    assert run("moments", "--catalog", "nope")[0] == 2
    assert run("moments")[0] == 2
    assert run("moments", "--file", str(tmp_path / "missing.json"))[0] == 2
    assert run("verify", "--catalog", "multinomial", "--p", "1/2,1/3")[0] == 3
    with pytest.raises(SystemExit) as e:
        run("moments", "--bogus")
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run("moments", "--catalog", "semicircular", "--degree", "40")
    assert e.value.code == 2


def test_density_exit_codes():
    code, text = run("density", "--b", "1", "--c", "0", "--t", "1")
    assert code == 0 and json.loads(text)["status"] == "match"
    code, text = run("density", "--b", "0", "--c", "0", "--points", "4")
    lines = text.splitlines()
    assert lines[0] == "x,density" and len(lines) == 6


def test_failing_verification_exits_one(monkeypatch):
    from freemeixner import cli
    from freemeixner.meixner import Report

    def broken(data, degree):
        rep = Report()
        rep.add("forced failure", False)
        return rep
    monkeypatch.setattr(cli, "verify_data", broken)
    assert run("verify", "--catalog", "semicircular")[0] == 1


def test_degree_cap_env(monkeypatch):
    monkeypatch.setenv("FMK_DEGREE_CAP", "3")
    with pytest.raises(SystemExit):
        run("moments", "--catalog", "semicircular", "--degree", "4")
    assert run("moments", "--catalog", "semicircular", "--degree", "3")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "freemeixner", "catalog"], capture_output=True, text=True)
    assert proc.returncode == 0 and "semicircular" in proc.stdout


def test_free_poisson_cumulants_are_T_entries(tmp_path):
    T = [[["1", "2"], ["2", "-1"]], [["0", "1/2"], ["1/2", "3"]]]
    f = tmp_path / "data.json"
    f.write_text(json.dumps({"d": 2, "C": [["0", "0"], ["0", "0"]], "T": T}))
    code, text = run("cumulants", "--file", str(f), "--degree", "3", "--format", "csv")
    assert code == 0
    rows = dict(csv.reader(io.StringIO(text)))
    for i, j, k in itertools.product((1, 2), repeat=3):
        assert rows.get(f"{i},{j},{k}", "0") == T[j - 1][i - 1][k - 1]
