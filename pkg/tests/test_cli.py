import json
import subprocess
import sys

from umlattice.cli import run

R0 = {"basis": [["[1]/[1]", "[]/[1]"], ["[]/[1]", "[1]/[1]"]]}
R1 = {"basis": [["[1]/[0,1]", "[]/[1]"], ["[]/[1]", "[1]/[1]"]]}
R2 = {"basis": [["[1]/[0,1]", "[]/[1]"], ["[]/[1]", "[1]/[0,1]"]]}
Y = {"basis": [["[1]/[0,0,1]", "[]/[1]"], ["[]/[1]", "[1]/[1]"]]}


def j(obj):
    return json.dumps(obj, separators=(",", ":"))


def test_meet_example():
    assert run(["lattice", "meet", "--instance", "zn", "--n", "2", "--x", "[1,2]", "--y", "[3,0]"]) == (0, "[1,0]")


def test_other_lattice_ops():
    assert run(["lattice", "join", "--n", "2", "--x", "[1,2]", "--y", "[3,0]"]) == (0, "[3,2]")
    assert run(["lattice", "ascend", "--n", "3", "--x", "[0,0,0]"]) == (0, "[1,1,1]")
    assert run(["lattice", "descend", "--n", "3", "--x", "[1,1,1]"]) == (0, "[0,0,0]")
    assert run(["lattice", "rank", "--n", "3", "--x", "[0,0,0]", "--y", "[2,1,0]"]) == (0, "3")
    code, out = run(["lattice", "ascend", "--instance", "tree", "--x", '{"path":[0,1],"k":2}'])
    assert code == 0 and json.loads(out) == {"path": [0, 1], "k": 3}


def test_relpos_module_example():
    code, out = run(["lattice", "relpos", "--instance", "module", "--n", "2",
                     "--chain", j([R0, R1, R2]), "--y", j(Y)])
    assert (code, out) == (0, "[2,0]")


def test_file_argument(tmp_path):
    f = tmp_path / "x.json"
    f.write_text("[4,5]")
    assert run(["lattice", "meet", "--n", "2", "--x", f"@{f}", "--y", "[3,9]"]) == (0, "[3,5]")
    code, out = run(["lattice", "meet", "--n", "2", "--x", f"@{tmp_path}/missing", "--y", "[3,9]"])
    assert code == 1


def test_validation_errors():
    assert run(["lattice", "meet", "--n", "2", "--x", "[1,2,3]", "--y", "[0,0]"])[0] == 1
    assert run(["lattice", "meet", "--n", "2", "--x", "not json", "--y", "[0,0]"])[0] == 1
    assert run(["lattice", "rank", "--n", "2", "--x", "[1,1]", "--y", "[0,0]"])[0] == 1
    assert run(["lattice", "frobnicate"])[0] == 1
    assert run(["building", "check", "--axioms", "b9"])[0] == 1
    assert run(["lattice", "meet", "--instance", "module", "--q", "4", "--x", "[0]", "--y", "[0]"])[0] == 1
    assert run(["lconvex", "verify", "--function", "nope"])[0] == 1


def test_building_check_example():
    code, out = run(["building", "check", "--instance", "module", "--q", "2", "--n", "2",
                     "--axioms", "b2", "--samples", "10", "--seed", "7"])
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"] and rep["checks"][0]["check"] == "b2" and rep["checks"][0]["samples"] == 10


def test_building_export_and_roundtrip():
    code, out = run(["building", "export", "--instance", "tree", "--format", "dot", "--window", "1"])
    assert code == 0 and out.startswith("graph building {")
    code, out = run(["building", "export", "--instance", "zn", "--n", "3", "--format", "json", "--window", "1"])
    assert code == 0 and json.loads(out)["n"] == 3
    code, out = run(["building", "roundtrip", "--instance", "zn", "--n", "2", "--window", "2"])
    assert code == 0 and json.loads(out)["passed"]


def test_skeleton_find():
    code, out = run(["skeleton", "find", "--instance", "zn", "--n", "2",
                     "--chain-c", "[[0,0],[1,0],[1,1]]", "--chain-d", "[[3,-1]]"])
    assert code == 0
    data = json.loads(out)
    assert data["coordinates_c"][0] == [0, 0]
    assert all(c is not None for c in data["coordinates_d"])
    assert data["relative_d"] == [[3, -1]]
    code, _ = run(["skeleton", "find", "--n", "2", "--chain-c", "[[0,0],[2,0]]", "--chain-d", "[[0,0]]"])
    assert code == 1


def test_lconvex_commands():
    code, out = run(["lconvex", "verify", "--n", "3", "--function", "maxmin", "--samples", "100"])
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(["lconvex", "minimize", "--n", "3", "--function", "maxmin", "--start", "[3,-2,0]"])
    assert code == 0 and json.loads(out)["value"] == "0"
    code, out = run(["lconvex", "verify", "--n", "2", "--table", '{"[0,0]": 0, "[1,1]": 5}', "--samples", "50"])
    assert code == 2 and json.loads(out)["failures"]
    code, out = run(["lconvex", "minimize", "--n", "3", "--function", "maxmin",
                     "--start", "[5,-5,0]", "--budget", "1"])
    assert code == 2 and json.loads(out)["budget_exhausted"]


def test_failed_check_exit_code():
    code, out = run(["lconvex", "verify", "--n", "2", "--function", "valuation", "--samples", "5"])
    assert code == 0
    code, out = run(["lconvex", "verify", "--instance", "tree", "--table", '{"{\\"path\\":[],\\"k\\":0}": 1}',
                     "--samples", "20"])
    assert code == 2


def test_internal_failure_exit_code(monkeypatch):
    from umlattice import building
    from umlattice.skeleton import ConstructionError

    def boom(*a, **k):
        raise ConstructionError("lemma failed", {"step": 3})

    monkeypatch.setattr(building, "check_axioms", boom)
    code, out = run(["building", "check"])
    assert code == 3 and json.loads(out)["state"] == {"step": 3}


def test_deterministic_output():
    argv = ["building", "check", "--instance", "tree", "--samples", "3", "--seed", "5"]
    assert run(argv) == run(argv)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "umlattice", "lattice", "meet", "--n", "2",
                        "--x", "[1,2]", "--y", "[3,0]"], capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.strip() == "[1,0]"
