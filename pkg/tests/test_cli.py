import json
import subprocess
import sys

import pytest

from osculant.cli import jsonable, main, run_scenario


def report(command, **params):
    return run_scenario(command, params)


def test_togliatti_default(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["togliatti", "--json", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["schema"] == "osculant.report/1"
    assert data["results"]["common_point"] == [0, 0, 0, 1, 0, 0, 0]
    assert data["results"]["mode"] == "certified"
    assert data["exit_code"] == 0
    assert set(data) == {"schema", "tool_version", "command", "scenario", "seed", "results", "exit_code", "timing"}
    assert "verdict: common-point-verified" in capsys.readouterr().out


def test_togliatti_negative_control():
    assert main(["togliatti", "--variety", "veronese-full"]) == 1


def test_togliatti_segre_model():
    rep = report("togliatti", model="segre-section", seed=2)
    assert rep.exit_code == 0
    assert rep.results["matches_m_tensor_point"]


def test_invalid_combination_is_degenerate():
    rep = report("togliatti", model="segre-section", variety="veronese-full")
    assert rep.exit_code == 2 and "error" in rep.results


def test_veronese_points_control():
    assert report("veronese", n=1, points=2, seed=1).exit_code == 1
    assert report("veronese", n=1, seed=1).exit_code == 0


def test_desk_scale_caps():
    assert report("veronese", n=3).exit_code == 2
    assert report("segre-section", N=7).exit_code == 2
    assert report("segre-parity", n_max=7).exit_code == 2


def test_even_segre_rejected(capsys):
    assert main(["segre-section", "--N", "4"]) == 2
    assert "symmetric" in capsys.readouterr().out


def test_determinism_excluding_timing():
    a = report("togliatti", seed=3).to_json(include_timing=False)
    b = report("togliatti", seed=3).to_json(include_timing=False)
    assert a == b
    c = report("splitting", system="random", seed=4).to_json(include_timing=False)
    d = report("splitting", system="random", seed=4).to_json(include_timing=False)
    assert c == d


def test_scenario_file(tmp_path):
    sc = tmp_path / "s.json"
    sc.write_text(json.dumps({"command": "splitting", "parameters": {"system": "togliatti", "lines": 2, "seed": 1}}))
    out = tmp_path / "r.json"
    assert main(["scenario", str(sc), "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["results"]["degrees"] == [0, -1, -2]
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    assert main(["scenario", str(bad)]) == 2


def test_splitting_custom_cubics():
    # X0^3, X1^3, X2^3, X0*X1*X2 in graded-lex coefficient order
    basis_index = {"X0^3": 0, "X1^3": 6, "X2^3": 9, "X0*X1*X2": 4}
    cubics = []
    for name in ("X0^3", "X1^3", "X2^3", "X0*X1*X2"):
        row = [0] * 10
        row[basis_index[name]] = 1
        cubics.append(row)
    rep = report("splitting", cubics=cubics, lines=2)
    assert rep.exit_code == 0 and rep.results["degrees"] == [0, -1, -2]
    bad = report("splitting", cubics=[[1] * 10] * 4)
    assert bad.exit_code == 2


def test_splitting_base_point_rejected():
    row = lambda i: [1 if j == i else 0 for j in range(10)]
    rep = report("splitting", cubics=[row(1), row(2), row(3), row(4)])
    assert rep.exit_code == 2


def test_polarity_rnc_command():
    rep = report("polarity-rnc", degrees=[2, 3], trials=10, seed=1)
    assert rep.exit_code == 0
    assert rep.results["degrees"]["3"]["witnesses"] == rep.results["degrees"]["3"]["tested"]


def test_segre_parity_command():
    rep = report("segre-parity", n_max=4)
    assert rep.exit_code == 0 and len(rep.results["rows"]) == 4


def test_jsonable():
    from fractions import Fraction
    assert jsonable({"a": (Fraction(1, 2), Fraction(4, 2))}) == {"a": ["1/2", 2]}
    with pytest.raises(TypeError):
        jsonable(object())


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "osculant.cli", "segre-parity", "--n-max", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "n=3: antisymmetric, passed=True" in proc.stdout
