from __future__ import annotations

import json
import subprocess
import sys

import pytest

from logtan import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stability_example(capsys):
    code, out, _ = run(["stability", "--poly", "x0*x1^3 + x2^4 + x3^4", "--vars", "4"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == cli.SCHEMA
    r = rep["result"]
    assert (r["verdict"], r["q"], r["r"], r["singDeg"], r["bound"]) == ("Inconclusive", 1, 1, 18, 18)


def test_stability_over_rationals(capsys):
    code, out, _ = run(["stability", "--poly", "x0^2 + x1^2", "--vars", "4", "--rationals"], capsys)
    rep = json.loads(out)
    assert rep["field"]["kind"] == "Rationals" and rep["result"]["verdict"] == "NotSemistable"


def test_det_suite_generic_n3(capsys):
    code, out, _ = run(["det-suite", "--n", "3", "--flavor", "generic"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    names = {c["name"] for c in rep["result"]["checks"]}
    assert {"resolution", "propn2", "lefschetz-semigeneric", "fiber-rank"} <= names


def test_det_suite_symmetric(capsys):
    code, out, _ = run(["det-suite", "--n", "3", "--flavor", "symmetric"], capsys)
    assert code == 0 and json.loads(out)["pass"]


def test_quiver_n5(capsys):
    code, out, _ = run(["quiver", "--n", "5"], capsys)
    assert code == 0 and json.loads(out)["result"]["strictlyStable"] is True


def test_resolution_and_hilbert_from_file(tmp_path, capsys):
    src = tmp_path / "gens.txt"
    src.write_text("# Koszul\nx0\nx1\nx2\n")
    code, out, _ = run(["resolution", "--input", str(src), "--vars", "3"], capsys)
    betti = json.loads(out)["result"]["betti"]
    assert code == 0 and [r["rank"] for r in betti] == [1, 3, 3, 1]
    code, out, _ = run(["hilbert", "--poly", "x0^2", "--poly", "x1^2", "--vars", "3", "--max-degree", "3"],
                       capsys)
    res = json.loads(out)["result"]
    assert [r["dim"] for r in res["hilbert"]] == [1, 3, 4, 4]
    assert (res["projDim"], res["degree"]) == (0, 4)


def test_resolution_of_determinant(capsys):
    code, out, _ = run(["resolution", "--n", "2", "--flavor", "symmetric"], capsys)
    assert code == 0 and json.loads(out)["result"]["match"]


def test_cohomT_and_cover(capsys):
    code, out, _ = run(["cohomT", "--i", "1", "--j", "0", "--n", "3"], capsys)
    res = json.loads(out)["result"]
    assert res["dims"]["0"] == 4 and res["eulerS"] == eulerS_expected(3, 1, 0)
    code, out, _ = run(["cover", "--n", "5"], capsys)
    assert code == 0 and len(json.loads(out)["result"]["solutions"]) == 3


def eulerS_expected(n, i, j):
    from logtan.geometry import eulerS_riemann_roch
    return eulerS_riemann_roch(n, i, j)


def test_semigeneric(capsys):
    code, out, _ = run(["semigeneric", "--n", "3", "--seed", "4"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["section"]["certificate"]["passed"] and res["propn2"]["equal"]


def test_selftest_lines(capsys):
    code, out, err = run(["selftest", "--only", "8", "--only", "2"], capsys)
    assert code == 0
    lines = [ln for ln in err.splitlines() if ln.startswith("[")]
    assert lines[0].startswith("[PASS]  2") and lines[1].startswith("[PASS]  8")


def test_output_file_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert cli.main(["det-suite", "--n", "2", "--seed", "9", "--output", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


@pytest.mark.parametrize("argv", [
    ["stability", "--poly", "x0 +", "--vars", "2"],
    ["stability", "--poly", "x5", "--vars", "2"],
    ["stability", "--vars", "2"],
    ["stability", "--poly", "x0^2"],
    ["hilbert", "--input", "/nonexistent/file", "--vars", "2"],
    ["stability", "--poly", "x0^2", "--vars", "1", "--prime", "4"],
    ["cover", "--n", "2"],
])
def test_usage_errors(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2 and out == "" and err.startswith("logtan")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["quiver"])
    assert e.value.code == 2


def test_scale_errors_exit_3(capsys):
    code, _, err = run(["resolution", "--n", "6"], capsys)
    assert code == 3 and "ScaleError" in err
    code, _, err = run(["quiver", "--n", "13"], capsys)
    assert code == 3
    code, _, err = run(["semigeneric", "--n", "4", "--prime", "3", "--retries", "0", "--seed", "5"], capsys)
    assert code in (0, 1, 3)


def test_failed_check_exits_1(monkeypatch, capsys):
    monkeypatch.setattr(cli, "cmd_cover", lambda args, field: ({"forced": True}, False))
    code, out, _ = run(["cover", "--n", "4"], capsys)
    assert code == 1 and json.loads(out)["pass"] is False


def test_every_subcommand_has_help():
    parser = cli.build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    assert set(sub.choices) == {"stability", "resolution", "hilbert", "det-suite", "semigeneric", "quiver",
                                "cohomT", "cover", "selftest"}
    for p in sub.choices.values():
        assert p.description and len(p.description) > 30


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "logtan.cli", "cover", "--n", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["pass"]
