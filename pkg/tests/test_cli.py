import json
import subprocess
import sys

import pytest

from khpotts import fixtures
from khpotts.cli import RunConfig, main
from khpotts.graphs import PlanarMultigraph
from khpotts.homology import graded_euler_characteristic
from khpotts.poly import Laurent


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture
def hopf_pd(tmp_path):
    path = tmp_path / "hopf.pd"
    path.write_text("X(1,3,2,4); X(3,1,4,2)\n")
    return str(path)


@pytest.fixture
def triangle_json(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(fixtures.graphs()["triangle"].to_json()))
    return str(path)


def test_bracket_unknot(capsys, tmp_path):
    path = tmp_path / "unknot.pd"
    path.write_text("O(1)")
    code, out = run(capsys, "bracket", "--flavor", "q", "--pd", str(path))
    assert code == 0 and out.strip() == "q + q^-1"


def test_khovanov_json(capsys, hopf_pd):
    code, data = run_json(capsys, "khovanov", "--pd", hopf_pd, "--ring", "z")
    assert code == 0 and data["schema_version"] == 1
    betti = {(i, j): b for i, j, b in data["homology"]["betti"]}
    chi = graded_euler_characteristic(betti)
    assert chi == Laurent({(-2,): 1, (0,): 1, (2,): 1, (4,): 1}, ("q",))
    assert data["homology"]["euler_characteristic"] == "q^4 + q^2 + 1 + q^-2"


def test_jones_and_builtin(capsys):
    code, data = run_json(capsys, "jones", "--pd", "builtin:kink_pos")
    assert code == 0
    assert Laurent.from_json(data["polynomial"]) == -Laurent.var("A") ** 2 - Laurent.monomial({"A": -2})


def test_dichromatic_methods_agree(capsys, triangle_json):
    results = set()
    for method in ("dc", "sum", "bracket"):
        code, data = run_json(capsys, "dichromatic", "--graph", triangle_json, "--method", method)
        assert code == 0
        results.add(Laurent.from_json(data["polynomial"]))
    assert len(results) == 1


def test_potts(capsys):
    values = []
    for method in ("spin", "dichromatic", "khovanov"):
        code, data = run_json(capsys, "potts", "--graph", "builtin:single_edge", "--q", "2",
                              "--coupling", "0,-1.5707963267948966", "--method", method)
        assert code == 0 and data["method"] == method
        values.append(complex(*data["value"]))
    assert all(abs(v - (2 - 2j)) < 1e-9 for v in values)
    assert data["branch"] == {"sqrt_sign": 1}


def test_potts_khovanov_off_rho_one_is_an_error(capsys):
    code, out = run(capsys, "potts", "--graph", "builtin:single_edge", "--q", "2", "--coupling", "0.1",
                    "--method", "khovanov")
    assert code == 1
    assert json.loads(out)["error"]["type"] == "DomainError"


def test_stosic(capsys):
    code, data = run_json(capsys, "stosic", "--graph", "builtin:single_edge", "--n", "1")
    assert code == 0 and data["equal"]
    assert {(i, j): b for i, j, b in data["homology"]["betti"]} == {(0, 0): 1, (0, 1): 1}


def test_amplitude(capsys, hopf_pd):
    code, data = run_json(capsys, "amplitude", "--pd", hopf_pd, "--theta", "0.5", "--shots", "1000", "--seed", "3")
    assert code == 0 and data["basis_size"] == 12
    again = run_json(capsys, "amplitude", "--pd", hopf_pd, "--theta", "0.5", "--shots", "1000", "--seed", "3")[1]
    assert again["hadamard"] == data["hadamard"]


def test_potts_quantum(capsys):
    code, data = run_json(capsys, "potts-quantum", "--graph", "builtin:triangle", "--q", "3")
    assert code == 0
    listed = [r for r in data["rows"] if r["source"] == "listed"]
    assert listed and not any(r["agree"] for r in listed)


def test_verify_fixture_corpus(capsys):
    code, out = run(capsys, "verify", "--corpus", "fixtures", "--criteria", "1,3,7")
    assert code == 0
    assert out.count("PASS") == 3


def test_computation_errors_exit_one(capsys, tmp_path):
    code, out = run(capsys, "bracket", "--pd", str(tmp_path / "missing.pd"))
    assert code == 1 and json.loads(out)["error"]["type"] == "FileNotFoundError"
    bad = tmp_path / "bad.pd"
    bad.write_text("X(1,2,3,4); Z(1)")
    code, out = run(capsys, "bracket", "--pd", str(bad))
    err = json.loads(out)["error"]
    assert code == 1 and err["type"] == "PDSyntaxError" and err["position"] == 12
    code, out = run(capsys, "khovanov", "--pd", "builtin:hopf", "--cap", "max_homology_crossings=1")
    err = json.loads(out)["error"]
    assert code == 1 and err["type"] == "TooLarge" and err["required"] == 2 and err["cap"] == 1


def test_usage_errors_exit_two(capsys, monkeypatch):
    with pytest.raises(SystemExit) as exc:
        main(["bracket", "--pd", "x", "--flavor", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    monkeypatch.delenv("KHPOTTS_MAX_CROSSINGS", raising=False)
    assert main(["bracket", "--pd", "builtin:hopf", "--cap", "max_crossings=-3"]) == 2
    assert main(["bracket", "--pd", "builtin:nothing"]) == 2


def test_results_do_not_depend_on_threads(capsys):
    a = run_json(capsys, "dichromatic", "--graph", "builtin:k4", "--method", "sum", "--threads", "1")[1]
    b = run_json(capsys, "dichromatic", "--graph", "builtin:k4", "--method", "sum", "--threads", "4")[1]
    assert a["polynomial"] == b["polynomial"]


def test_graph_file_round_trip(tmp_path, capsys):
    g = fixtures.graphs()["theta"]
    path = tmp_path / "theta.json"
    path.write_text(json.dumps(g.to_json()))
    h = PlanarMultigraph.from_json(path.read_text())
    assert h.rotation == g.rotation
    assert run(capsys, "dichromatic", "--graph", str(path))[0] == 0


def test_run_config_rejects_bad_caps():
    with pytest.raises(ValueError):
        RunConfig("bracket", caps={"max_crossings": 0})


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "khpotts.cli", "bracket", "--pd", "builtin:unknot"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "q + q^-1"


def test_cap_override_is_scoped_to_one_call(capsys):
    import os

    run(capsys, "bracket", "--pd", "builtin:hopf", "--cap", "max_crossings=1")
    assert "KHPOTTS_MAX_CROSSINGS" not in os.environ
    assert run(capsys, "bracket", "--pd", "builtin:hopf")[0] == 0
