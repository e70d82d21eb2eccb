import json
import subprocess
import sys

import pytest

from fuglede import formats
from fuglede.cli import main
from fuglede.counterexample import A_ROWS, paper_fixtures
from fuglede.group import PointSet, make_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


@pytest.fixture
def fixtures(tmp_path, capsys):
    code, _, _ = run(capsys, "export-fixtures", "--out", str(tmp_path))
    assert code == 0
    return tmp_path


def test_verify_paper_counterexample(capsys):
    code, doc = run_json(capsys, "verify-paper-counterexample")
    assert code == 0 and doc["passed"]
    assert [c["name"] for c in doc["checks"]] == ["log-hadamard", "decomposition", "mod-rank", "spectral", "non-tiling"]
    code, out, _ = run(capsys, "verify-paper-counterexample")
    assert out.count("[PASS]") == 5


def test_expand_one(capsys):
    code, doc = run_json(capsys, "verify-paper-counterexample", "--expand", "1")
    assert code == 0
    assert doc["expansion"]["tile"] == "no" and doc["expansion"]["lifted_spectrum"]


def test_exported_fixtures_round_trip(fixtures):
    H, L, A = paper_fixtures()
    assert formats.load_matrix(fixtures / "H.json") == H
    assert formats.load_matrix(fixtures / "A.json").rows == A.rows
    assert len(formats.load_set(fixtures / "A_set.json")) == 6


def test_check_hadamard(capsys, fixtures):
    H = str(fixtures / "H.json")
    assert run(capsys, "check-hadamard", "--matrix", H)[0] == 0
    assert run(capsys, "check-hadamard", "--matrix", H, "--log")[0] == 0
    bad = fixtures / "bad.json"
    formats.dump({"denominator": 8, "rows": [[0, 0], [0, 1]]}, bad)
    assert run(capsys, "check-hadamard", "--matrix", str(bad), "--log")[0] == 1


def test_mod_rank_and_decomposition(capsys, fixtures):
    code, doc = run_json(capsys, "mod-rank", "--matrix", str(fixtures / "H.json"), "--modulus", "8")
    assert code == 0 and doc["rank"] == 3 and doc["invariant_factors"] == [8, 8, 2]
    L, A = fixtures / "Lr.json", fixtures / "Ar.json"
    formats.dump(doc["L"], L)
    formats.dump(doc["A"], A)
    h = str(fixtures / "H.json")
    assert run(capsys, "verify-decomposition", "--h", h, "--l", str(L), "--a", str(A))[0] == 0
    assert run(capsys, "verify-decomposition", "--h", h, "--l", str(fixtures / "L.json"),
               "--a", str(fixtures / "A.json"))[0] == 0
    # swapping the factors' roles is not a valid decomposition
    assert run(capsys, "verify-decomposition", "--h", h, "--l", str(fixtures / "A.json"),
               "--a", str(fixtures / "L.json"))[0] == 2


def test_canonicalize(capsys, tmp_path):
    from fuglede import dita4_log
    p = tmp_path / "d.json"
    formats.dump(formats.matrix_to_doc(dita4_log(1, 8)), p)
    code, doc = run_json(capsys, "canonicalize", "--matrix", str(p))
    assert code == 0 and doc["kind"] == "dita4" and doc["parameter"] == "5/8"


def test_zero_set_and_decisions(capsys):
    code, doc = run_json(capsys, "zero-set", "--group", "8", "--set", "{0,1,2,3}")
    assert doc["zero_set"] == [2, 4, 6]
    assert run(capsys, "is-tile", "--group", "6", "--set", "{0,1,3}")[0] == 1
    code, doc = run_json(capsys, "is-spectral", "--group", "6", "--set", "{0,1,2}")
    assert code == 0 and doc["witness"] == [0, 2, 4]


def test_witnesses_accepted_by_verifiers(capsys):
    code, doc = run_json(capsys, "is-tile", "--group", "12", "--set", "{0,1,6,7}")
    assert code == 0
    w = "{" + ",".join(map(str, doc["witness"])) + "}"
    assert run(capsys, "verify-tiling", "--group", "12", "--set", "{0,1,6,7}", "--witness", w)[0] == 0
    code, doc = run_json(capsys, "is-spectral", "--group", "12", "--set", "{0,1,6,7}")
    w = "{" + ",".join(map(str, doc["witness"])) + "}"
    assert run(capsys, "verify-spectrum", "--group", "12", "--set", "{0,1,6,7}", "--witness", w)[0] == 0
    assert run(capsys, "verify-spectrum", "--group", "12", "--set", "{0,1,6,7}", "--witness", "{0,1,2,3}")[0] == 1


def test_set_files_for_product_groups(capsys, fixtures):
    A, L = str(fixtures / "A_set.json"), str(fixtures / "L_set.json")
    assert run(capsys, "verify-spectrum", "--set", A, "--witness", L)[0] == 0
    assert run(capsys, "is-tile", "--set", A)[0] == 1
    code, doc = run_json(capsys, "is-spectral", "--set", A)
    assert code == 0 and len(doc["witness"]) == 6


def test_diff_solve(capsys):
    code, doc = run_json(capsys, "diff-solve", "--group", "12", "--e", "{0,1,2,3,4,5,6,7,8,9,10,11}",
                         "--d", "{0,2,3,4,8,9,10}")
    assert code == 0 and doc["k"] == 3
    assert run(capsys, "diff-solve", "--group", "12", "--e", "{0,1,2,3,4,5,6,7,8,9,10,11}",
               "--d", "{0,2,3,4,8,9,10}", "--target", "4")[0] == 1


def test_scan(capsys):
    code, doc = run_json(capsys, "scan-spectral-implies-tile", "--group", "2,4", "--max-size", "5")
    assert code == 0 and doc["violations"] == []
    assert run(capsys, "scan-spectral-implies-tile", "--group", "4,4", "--max-size", "4", "--sample", "10")[0] == 2
    code, doc = run_json(capsys, "scan-spectral-implies-tile", "--group", "4,4", "--max-size", "4",
                         "--sample", "10", "--seed", "3")
    assert code == 0 and doc["examined"] == 10


def test_ind_to_diff(capsys, tmp_path):
    p = tmp_path / "c5.json"
    formats.dump({"n": 5, "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]}, p)
    code, doc = run_json(capsys, "ind-to-diff", "--graph", str(p))
    assert code == 0 and doc["k"] == 2 and doc["phi"] == [0, 1, 3, 7, 12]
    assert run(capsys, "ind-to-diff", "--graph", str(p), "--target", "3")[0] == 1


def test_json_is_byte_identical(capsys):
    argv = ["is-spectral", "--group", "12", "--set", "{0,1,2,6,7,8}", "--format", "json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("doc, field", [
    ({"points": [[0]]}, "moduli"),
    ({"moduli": [4], "points": [[0], [5]]}, "points"),
    ({"moduli": [4], "points": [[0], [0]]}, "points"),
    ({"moduli": [4, "x"], "points": []}, "moduli"),
    ({"moduli": [4]}, "points"),
])
def test_malformed_set_files(capsys, tmp_path, doc, field):
    p = tmp_path / "s.json"
    formats.dump(doc, p)
    code, _, err = run(capsys, "is-tile", "--set", str(p))
    assert code == 2 and repr(field) in err


@pytest.mark.parametrize("doc, field", [
    ({"rows": [[0]]}, "denominator"),
    ({"denominator": 0, "rows": [[0]]}, "denominator"),
    ({"denominator": 8, "rows": [[0, 1], [2]]}, "rows"),
    ({"modulus": 8}, "rows"),
])
def test_malformed_matrix_files(capsys, tmp_path, doc, field):
    p = tmp_path / "m.json"
    formats.dump(doc, p)
    code, _, err = run(capsys, "check-hadamard", "--matrix", str(p))
    assert code == 2 and repr(field) in err


def test_malformed_graph_and_missing_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    formats.dump({"n": 3, "edges": [[1, 4]]}, p)
    code, _, err = run(capsys, "ind-to-diff", "--graph", str(p))
    assert code == 2 and "'edges'" in err
    p.write_text("{not json")
    assert run(capsys, "ind-to-diff", "--graph", str(p))[0] == 2
    assert run(capsys, "ind-to-diff", "--graph", str(tmp_path / "none.json"))[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "is-tile", "--set", "{0,1}")[0] == 2
    assert run(capsys, "is-tile", "--group", "4,4", "--set", "{0,1}")[0] == 2
    assert run(capsys, "is-tile", "--group", "4", "--set", "{0,1}", "--budget", "-1")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "fuglede", "is-tile", "--group", "4", "--set", "{0,1}"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "tile: yes" in out.stdout
