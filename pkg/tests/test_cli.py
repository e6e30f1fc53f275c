import json
import subprocess
import sys

import pytest

from turan2d.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = call(capsys, *argv)
    return code, json.loads(out)


def test_m2_too_small(capsys):
    code, out, err = call(capsys, "m2", "--g6", "A_")
    assert code == 2 and "at least 3 vertices" in err and out == ""


def test_m2_report(capsys):
    code, rep = report(capsys, "m2", "--g6", "Dhc")
    assert code == 0
    assert rep["schema"] == 1 and rep["tool"] == "turan2d" and rep["command"] == "m2"
    assert rep["parameters"] == {"format": "json", "g6": "Dhc"}
    assert rep["result"]["m2"] == "4/3" and rep["result"]["strictly_2_balanced"]


def test_invariants(capsys):
    code, rep = report(capsys, "invariants", "--g6", "Dhc", "--m", "5", "--r", "3")
    res = rep["result"]
    assert (res["alpha"], res["omega"], res["alpha_m"], res["alpha_m_at_least_r"]) == (2, 2, 2, False)
    assert res["clique_counts"] == [5, 5]


def test_search_m2(capsys):
    code, rep = report(capsys, "search-m2", "--m", "7", "--r", "3")
    assert code == 0 and rep["result"]["value"] == "2/1"
    assert rep["result"]["profile"] == "clique-cap" and rep["result"]["citations"]
    assert "wall_time" not in rep["result"]


def test_search_edges_default_cap(capsys):
    code, rep = report(capsys, "search-edges", "--m", "5", "--r", "3")
    assert rep["result"]["value"] == 5 and rep["result"]["parameters"]["cap"] == "2/1"


def test_construct(capsys):
    code, rep = report(capsys, "construct", "--spec", "odd-optimal:k=5")
    assert code == 0 and rep["result"]["e"] == 19 and rep["result"]["m2"] == "8/3"
    assert all(rep["result"]["self_check"].values())
    code, out, _ = call(capsys, "construct", "--spec", "cycle:n=5", "--format", "g6")
    assert out == "Dhc\n"


def test_construct_bad_spec(capsys):
    code, _, err = call(capsys, "construct", "--spec", "wheel:n=5")
    assert code == 2 and "unknown construction" in err


def test_enumerate(capsys):
    code, rep = report(capsys, "enumerate", "--m", "5", "--r", "3")
    assert rep["result"]["count"] == 14
    code, out, _ = call(capsys, "enumerate", "--m", "5", "--r", "3", "--format", "g6")
    assert len(out.split()) == 14


def test_verify_exit_codes(capsys):
    code, rep = report(capsys, "verify", "equivalence-7-3")
    assert code == 0 and rep["result"]["passed"] and rep["result"]["claim"]
    code, rep = report(capsys, "verify", "equivalence-7-3", "--mutate")
    assert code == 1 and not rep["result"]["passed"]


def test_verify_unknown_check(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["verify", "no-such-check"])
    assert exc.value.code == 2
    assert "unknown check" in capsys.readouterr().err


def test_missing_flag_names_it(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["search-m2", "--m", "7"])
    assert exc.value.code == 2
    assert "--r" in capsys.readouterr().err


def test_bad_jobs(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["search-m2", "--m", "7", "--r", "3", "--jobs", "0"])
    assert exc.value.code == 2


def test_sample_and_experiment(capsys):
    code, rep = report(capsys, "sample", "--n", "40", "--m", "5", "--r", "3", "--seed", "7")
    assert code == 0 and rep["result"]["n"] == 40 and rep["result"]["t"] == 2
    code, out, _ = call(capsys, "experiment", "--n", "20,40", "--m", "5", "--r", "3", "--seed", "1", "--reps", "3", "--format", "csv")
    assert out.splitlines()[0] == "n,rep,accepted,alpha,predicted_scale" and len(out.splitlines()) == 7


def test_out_file_and_timing(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = call(capsys, "search-m2", "--m", "5", "--r", "3", "--out", str(path), "--timing")
    assert out == ""
    rep = json.loads(path.read_text())
    assert "wall_time" in rep["result"] and rep["jobs"] == 1


def test_cache_env_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TURAN2D_CACHE", str(tmp_path))
    call(capsys, "enumerate", "--m", "5", "--r", "3", "--cache", "/nonexistent/ignored")
    assert (tmp_path / "alpha2_n5.g6").exists()


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "turan2d.cli", "--version"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.startswith("turan2d ")


def test_repeat_runs_byte_identical(capsys):
    a = call(capsys, "verify", "turan-lb", "--n", "5")[1]
    b = call(capsys, "verify", "turan-lb", "--n", "5")[1]
    assert a == b
