import json

import numpy as np
import pytest

from orbitframe import cli


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out), out


def write(tmp_path, cfg, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(cfg))
    return str(p)


def test_analyze_d3_fixed_frame_bounds(tmp_path, capsys):
    cfg = {"representation": {"kind": "d3_model"}, "generators": ["fixed"], "analyses": ["frame_bounds"]}
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg)])
    assert code == 0
    res = rep["analyses"][0]["result"]
    assert {k: res[k] for k in ("A", "B", "kind", "tight")} == {"A": 6, "B": 6, "kind": "frame", "tight": True}
    assert res["oracle"]["A"] == 6 and res["oracle_agreement"] <= 1e-8


def test_analyze_mismatched_vector(tmp_path, capsys):
    cfg = {"group": {"kind": "cyclic", "n": 2}, "representation": {"kind": "left_regular"},
           "generators": [[1, 1, 1]], "analyses": ["frame_bounds"]}
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg)])
    assert code == 1 and rep["error"]["type"] == "ConfigError"
    assert "generators[0]" in rep["error"]["message"]


def test_analyze_singular_dual(tmp_path, capsys):
    cfg = {"group": {"kind": "cyclic", "n": 2}, "representation": {"kind": "left_regular"},
           "generators": [[1, 1]], "analyses": ["frame_bounds", "dual_generator"]}
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg)])
    assert code == 2 and rep["status"] == "certification_failed"
    assert rep["analyses"][1]["error"]["type"] == "NotMinimal"
    assert rep["analyses"][0]["result"]["A"] == 4


@pytest.mark.parametrize("cfg, path", [
    ({"representation": {"kind": "left_regular"}, "generators": [[1]], "analyses": []}, "group"),
    ({"group": {"kind": "free"}, "representation": {"kind": "left_regular"}, "generators": [[1]], "analyses": []}, "group.kind"),
    ({"group": {"kind": "table", "cayley": [[0, 1], [1, 1]]}, "representation": {"kind": "left_regular"},
      "generators": [[1, 0]], "analyses": []}, "group"),
    ({"group": {"kind": "cyclic", "n": 2}, "representation": {"kind": "left_regular"}, "generators": [[1, 0]],
      "analyses": ["plot"]}, "analyses[0]"),
    ({"group": {"kind": "cyclic", "n": 2}, "representation": {"kind": "matrices", "matrices": [[[1]], [[2]]]},
      "generators": [[1]], "analyses": []}, "representation"),
    ({"group": {"kind": "cyclic", "n": 2}, "representation": {"kind": "left_regular"}, "generators": [{"unit": 5}],
      "analyses": []}, "generators[0]"),
])
def test_config_errors(tmp_path, capsys, cfg, path):
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg)])
    assert code == 1 and rep["error"]["type"] == "ConfigError"
    assert rep["error"]["message"].startswith(path)


def test_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{\n  \"group\": \n")
    code, rep, _ = run(capsys, ["analyze", str(p)])
    assert code == 1 and "line" in rep["error"]["message"]


def test_analyze_full_config(tmp_path, capsys):
    perms = [[(x + 2 * g) % 12 for x in range(12)] for g in range(6)]
    cfg = {"group": {"kind": "cyclic", "n": 6},
           "representation": {"kind": "action", "perms": perms, "measure": list(range(1, 13))},
           "generators": [{"unit": 0}, [[0, 0], [0.6, 0.8]] + [[0, 0]] * 10],
           "analyses": ["bracket", "orthonormality", "riesz_bounds", "gram_oracle", "parseval_family",
                        {"name": "helson_axioms", "map": "zak", "samples": 5},
                        {"name": "bracket_properties", "samples": 10},
                        {"name": "membership", "phi": {"unit": 4}}],
           "seed": 3}
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg)])
    assert code == 0, rep
    res = {a["name"]: a["result"] for a in rep["analyses"]}
    assert res["orthonormality"]["orthonormal"]
    assert res["riesz_bounds"]["kind"] == "orthonormal"
    assert res["helson_axioms"]["passed"] and res["bracket_properties"]["passed"]
    assert res["membership"]["member"]
    assert rep["settings"]["seed"] == 3


def test_tolerance_flags_override(tmp_path, capsys):
    cfg = {"representation": {"kind": "d3_model"}, "generators": ["boundary"], "analyses": ["frame_bounds"],
           "tolerances": {"tol": 1e-6}}
    code, rep, _ = run(capsys, ["analyze", write(tmp_path, cfg), "--tol", "1e-7", "--rank-cutoff", "1e-12"])
    assert rep["settings"]["tol"] == 1e-7 and rep["settings"]["rank_cutoff"] == 1e-12


def test_reports_are_deterministic(tmp_path, capsys):
    cfg = {"group": {"kind": "dihedral", "m": 3}, "representation": {"kind": "left_regular"},
           "generators": [[1, 2, 0, 0, 1, 0]], "analyses": ["riesz_bounds", "bracket_properties", "dual_generator"]}
    path = write(tmp_path, cfg)
    outs = [run(capsys, ["analyze", path])[2] for _ in range(2)]
    assert outs[0] == outs[1]
    out_file = tmp_path / "r.json"
    assert cli.main(["analyze", path, "--output", str(out_file)]) == 0
    assert out_file.read_text() == outs[0]


def test_demo_d3(capsys):
    code, rep, _ = run(capsys, ["demo", "d3"])
    assert code == 0 and rep["passed"]
    assert rep["bounds"]["fixed"]["A"] == 6 and rep["bounds"]["boundary"]["B"] == 2
    assert rep["bounds"]["interior"]["orthonormal"]
    assert np.allclose(rep["helson"]["coefficients"], [1 / np.sqrt(6), 1 / np.sqrt(2), 1])
    for c in rep["checks"]:
        assert c["passed"]


@pytest.mark.parametrize("argv, complete, bounds", [
    (["--n", "12", "--g1", "0", "--g2", "1", "--a", "2", "--b", "1"], True, (1, 9)),
    (["--n", "2", "--g1", "e", "--g2", "a", "--a", "1", "--b", "1"], False, (4, 4)),
    (["--n", "6", "--g1", "0", "--g2", "2", "--a", "3", "--b", "1"], True, (7, 16)),
    (["--n", "6", "--g1", "0", "--g2", "1", "--a", "3", "--b", "1"], True, (4, 16)),
])
def test_demo_comb(capsys, argv, complete, bounds):
    code, rep, _ = run(capsys, ["demo", "comb"] + argv)
    assert code == 0 and rep["complete"] == complete
    key = "riesz" if complete else "frame"
    assert np.allclose([rep[key]["A"], rep[key]["B"]], bounds)
    assert np.allclose([rep[key]["oracle"]["A"], rep[key]["oracle"]["B"]], bounds)


def test_demo_comb_degenerate(capsys):
    code, rep, _ = run(capsys, ["demo", "comb", "--n", "4", "--g1", "1", "--g2", "1"])
    assert code == 1 and rep["error"]["type"] == "DegenerateComb"


def test_demo_fiberization(capsys):
    code, rep, _ = run(capsys, ["demo", "fiberization", "--n", "5", "--f", "1,0,0,0,0"])
    assert code == 0 and np.allclose(rep["dft_fibers"], 1) and rep["max_discrepancy"] == 0
    code, rep, _ = run(capsys, ["demo", "fiberization", "--n", "8", "--seed", "4"])
    assert code == 0 and rep["max_discrepancy"] <= 1e-10
    code, comb, _ = run(capsys, ["demo", "comb", "--n", "12", "--a", "2", "--b", "1"])
    code, fib, _ = run(capsys, ["demo", "fiberization", "--n", "12", "--f", "2,1,0,0,0,0,0,0,0,0,0,0"])
    assert np.allclose(sorted(fib["dft_fibers"]), sorted(comb["dft_fibers"]))
    code, rep, _ = run(capsys, ["demo", "fiberization", "--n", "3", "--f", "1,2"])
    assert code == 1


def test_verbose_summary(capsys):
    assert cli.main(["demo", "d3", "--verbose"]) == 0
    err = capsys.readouterr().err
    assert "PASS frame_bounds_fixed" in err
