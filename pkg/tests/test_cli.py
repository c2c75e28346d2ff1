import json
import os
import subprocess
import sys

import pytest

from periodkit.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


def test_frob_bound_example(tmp_cwd, capsys):
    code, out, _ = run(["frob-bound", "--q", "2", "--n", "2", "--b", "1000"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["N"] == 4 and data["bound"] == "750000"
    assert os.path.exists("frob-bound.json") and os.path.exists("frob-bound.manifest.json")
    assert open("frob-bound.json").read() == out


def test_com_fibers_example(tmp_cwd, capsys):
    code, out, _ = run(["com-fibers", "--q", "3", "--s", "1"], capsys)
    data = json.loads(out)
    assert code == 0 and data["uniform"] and data["fiber_histogram"] == {"6": 3}


def test_json_keys_sorted_and_bigints_as_strings(tmp_cwd, capsys):
    code, out, _ = run(["hodge-scan", "--n-min", "40", "--n-max", "40", "--d-max", "60"], capsys)
    assert code == 0
    data = json.loads(out)
    assert out == json.dumps(data, sort_keys=True, indent=2) + "\n"


def test_missing_flag_exit_1(tmp_cwd, capsys):
    code, _, err = run(["com-fibers", "--q", "3"], capsys)
    assert code == 1 and "usage" in err


def test_unknown_subcommand_exit_1(tmp_cwd, capsys):
    code, _, err = run(["nonsense"], capsys)
    assert code == 1 and "usage" in err


def test_domain_error_exit_2(tmp_cwd, capsys):
    code, _, err = run(["wpq", "--type", "A3", "--dp", "1,2", "--dq", "3", "--mu", "2,1,0,-3"], capsys)
    assert code == 2 and "disagrees" in err


def test_size_limit_exit_3(tmp_cwd, capsys):
    phi = write(tmp_cwd / "phi.csv", "1,0\n0,1\n")
    code, _, _ = run(["linalg-census", "--q", "11", "--d", "1", "--phi", phi], capsys)
    assert code == 3


def test_all_subcommands_smoke(tmp_cwd, capsys):
    vec = write(tmp_cwd / "v.csv", "1,0,0,0\n0,0,1,0\n1,1,0,0\n0,0,0,1\n")
    phi = write(tmp_cwd / "phi.csv", "1,0,0,0\n0,3,0,0\n0,0,2,0\n0,0,0,4\n")
    conn = write(tmp_cwd / "c.json", json.dumps({"A": [[["1", "1/2"], ["0"]], [["1"], ["2"]]], "init": ["1", "0"]}))
    ser = write(tmp_cwd / "s.json", json.dumps({"series": [["1"], ["0", "1"], ["0", "0", "1"]]}))
    tup = write(tmp_cwd / "t.json", json.dumps({"d": 1, "field": 5, "subspaces": [[[1, 0]], [[0, 1]], [[1, 1]], [[1, 2]]]}))
    spectrum = write(tmp_cwd / "sp.json", json.dumps({"angles": [{"theta": "1/8", "m": 1}, {"theta": "-1/8", "m": 1}]}))
    cmds = [
        ["kp-params", "--genus", "2", "--deg-k", "1", "--orbit-const", "5", "--forbidden", "31,59"],
        ["centralizer", "--p", "3", "--e", "2", "--dim", "2", "--trials", "10", "--seed", "42"],
        ["transvect-cert", "--vectors", vec],
        ["bad-lagrangian", "--tuple", tup],
        ["bad-lagrangian", "--explicit", "2"],
        ["frob-bound", "--q", "2", "--n", "2", "--b", "1000", "--spectrum", spectrum],
        ["wpq", "--type", "A3", "--dp", "1,2", "--dq", "3"],
        ["wpq", "--type", "A3", "--dp", "1,2", "--mu", "2,1,0,-3", "--format", "csv"],
        ["lw2-sweep", "--type", "C2", "--e", "1"],
        ["linalg-census", "--q", "5", "--d", "2", "--phi", phi],
        ["flat-solve", "--connection", conn, "--order", "20", "--p", "5"],
        ["relations", "--series", ser, "--degree", "2"],
    ]
    results = {}
    for argv in cmds:
        code, out, err = run(argv, capsys)
        assert code == 0, (argv, err)
        results[tuple(argv[:2])] = out
    assert json.loads(results[("transvect-cert", "--vectors")])["certifies_full"]
    assert json.loads(results[("bad-lagrangian", "--explicit")])["W"] is None
    assert json.loads(results[("relations", "--series")])["relations"] == ["x0*x2 - x1^2"]
    assert json.loads(results[("kp-params", "--genus")])["params"]["q"] == 71
    assert json.loads(results[("flat-solve", "--connection")])["residual_vanishes"]


def test_csv_only_for_tabular(tmp_cwd, capsys):
    code, _, _ = run(["com-fibers", "--q", "3", "--s", "1", "--format", "csv"], capsys)
    assert code == 1
    code, out, _ = run(["hodge-scan", "--n-min", "2", "--n-max", "3", "--d-max", "20", "--format", "csv"], capsys)
    assert code == 0 and out.splitlines()[0].startswith("n,first_d")
    assert os.path.exists("hodge-scan.csv")


def test_replay_matches(tmp_cwd, capsys):
    run(["com-fibers", "--q", "3", "--s", "1", "--out", "cf.json"], capsys)
    code, out, _ = run(["replay", "cf.manifest.json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["rerun_matches"] and rep["file_matches"]


def test_replay_detects_tampering(tmp_cwd, capsys):
    run(["frob-bound", "--q", "2", "--n", "2", "--b", "1000", "--out", "fb.json"], capsys)
    with open("fb.json", "a") as fh:
        fh.write(" ")
    code, out, _ = run(["replay", "fb.manifest.json"], capsys)
    rep = json.loads(out)
    assert code == 4 and rep["rerun_matches"] and not rep["file_matches"]
    assert "diff_summary" in rep


def test_replay_refuses_seed_override(tmp_cwd, capsys):
    run(["centralizer", "--p", "2", "--e", "2", "--dim", "2", "--trials", "5", "--seed", "9", "--out", "c.json"],
        capsys)
    code, out, err = run(["replay", "c.manifest.json", "--seed", "10"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["seed"] == 9 and rep["rerun_matches"]
    assert "refusing seed override" in err


def test_jobs_do_not_change_output(tmp_cwd, capsys):
    argv = ["hodge-scan", "--n-min", "20", "--n-max", "26", "--d-max", "80"]
    run(argv + ["--jobs", "1", "--out", "a.json"], capsys)
    run(argv + ["--jobs", "3", "--out", "b.json"], capsys)
    assert open("a.json", "rb").read() == open("b.json", "rb").read()
    sweep = ["lw2-sweep", "--type", "A2"]
    run(sweep + ["--jobs", "1", "--out", "l1.json"], capsys)
    run(sweep + ["--jobs", "2", "--out", "l2.json"], capsys)
    assert open("l1.json", "rb").read() == open("l2.json", "rb").read()


def test_manifest_records_inputs(tmp_cwd, capsys):
    ser = write(tmp_cwd / "s.json", json.dumps({"series": [["1"], ["0", "1"]]}))
    run(["relations", "--series", ser, "--degree", "1", "--out", "r.json"], capsys)
    m = json.load(open("r.manifest.json"))
    assert ser in m["inputs"] and len(m["inputs"][ser]) == 64
    assert "--out" not in m["argv"]


def test_env_jobs_default(monkeypatch):
    from periodkit.cli import build_parser
    monkeypatch.setenv("LV_JOBS", "3")
    assert build_parser().parse_args(["hodge-scan"]).jobs == 3
    monkeypatch.delenv("LV_JOBS")
    assert build_parser().parse_args(["hodge-scan"]).jobs == 1


def test_module_entry_point(tmp_cwd):
    p = subprocess.run([sys.executable, "-m", "periodkit.cli", "frob-bound", "--q", "2", "--n", "2", "--b", "10"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["vacuous"] is True
