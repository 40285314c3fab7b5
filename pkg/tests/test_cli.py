"""Command-line interface tests.

Oracles: the documented exit-code contract (0 success, 1 input error, 2
pipeline non-success), the fixed-space dimension 2 of doubled su2_4 at genus
one, the genus-0 correlator value D^2 = 4 on Ising, and byte-identical
reports for a fixed seed.
"""

import json

import numpy as np
import pytest

from mfckit.algebra import AlgebraObject, induce_frobenius, save_algebra
from mfckit.cli import dumps, main, to_jsonable


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_dumps_is_deterministic_17_digits():
    assert dumps({"x": 0.1}) == '{"x": 0.10000000000000001}\n'
    assert dumps({"b": 1, "a": [True, None, "q\""]}) \
        == '{"a": [true, null, "q\\""], "b": 1}\n'
    assert dumps({"z": float("inf")}) == '{"z": "inf"}\n'
    assert to_jsonable(1 + 2j) == {"re": 1.0, "im": 2.0}
    assert to_jsonable({(1, 2, 3): 4}) == {"1,2,3": 4}
    assert to_jsonable(np.arange(3)) == [0, 1, 2]


def test_validate_bundled(capsys):
    code, doc = run(capsys, "validate", "data/ising.json")
    assert code == 0 and doc["passed"]
    assert doc["labels"] == ["1", "psi", "sigma"]
    assert doc["residuals"]["pentagon"] < 1e-9
    assert doc["residuals"]["hexagon"] < 1e-9
    assert doc["total_dim"]["re"] == pytest.approx(2.0)


def test_validate_corrupted_file_names_identity(capsys, tmp_path):
    doc = json.load(open("src/mfckit/data/ising.json"))
    doc["F"] = [ent[:6] + [ent[6] + (1e-3 if i == 11 else 0.0), ent[7]]
                for i, ent in enumerate(doc["F"])]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", str(bad))
    assert code == 1
    assert out["error"]["identity"] == "pentagon identity"
    assert len(out["error"]["labels"]) == 9


def test_missing_file_and_bad_command(capsys):
    code, out = run(capsys, "validate", "no_such_category")
    assert code == 1 and out["error"]["identity"] == "file not found"
    assert main(["frobnicate"]) == 1
    assert main(["--help"]) == 0


def test_rep_doubled_su2_4_fixed_space(capsys):
    code, doc = run(capsys, "rep", "su2_4", "--genus", "1", "--doubled")
    assert code == 0
    entry = doc["genera"][0]
    assert entry["fixed_space_dim"] == 2
    assert entry["dim"] == 25
    assert sorted(entry["generators"]) == ["S_1", "T_alpha_1"]


def test_rep_ising_genus_range(capsys):
    code, doc = run(capsys, "rep", "ising", "--genus", "1-2")
    assert code == 0
    g1, g2 = doc["genera"]
    assert (g1["genus"], g1["dim"], g1["commutant_dim"]) == (1, 3, 1)
    assert (g2["genus"], g2["dim"], g2["commutant_dim"]) == (2, 10, 1)
    assert g2["irreducible"]
    assert len(g2["generators"]) == 5     # 3g - 1


def test_correlator_zunit(capsys):
    code, doc = run(capsys, "correlator", "ising", "--zunit", "--genus", "0")
    assert code == 0
    assert doc["genera"][0]["components"][0]["re"] == pytest.approx(4.0)
    code, doc = run(capsys, "correlator", "ising", "--zunit", "--genus", "1")
    assert doc["genera"][0]["residual"] < 1e-8
    comps = [c["re"] for c in doc["genera"][0]["components"]]
    assert sum(comps) == pytest.approx(3.0)   # diagonal slots carry 1


def test_correlator_needs_algebra(capsys):
    code, out = run(capsys, "correlator", "ising", "--genus", "1")
    assert code == 1
    assert "algebra" in out["error"]["identity"]


def direct_sum_file(tmp_path):
    from mfckit.category import load_bundled
    C = load_bundled("ising")
    mult = np.zeros(C.n, dtype=int)
    mult[0] = 2
    blk = np.zeros((2, 2, 2), dtype=complex)
    blk[0, 0, 0] = 1
    blk[1, 1, 1] = 1
    A = induce_frobenius(AlgebraObject(C, mult, {(0, 0, 0): blk},
                                       np.ones(2, dtype=complex)))
    path = tmp_path / "dsum.json"
    save_algebra(A, str(path))
    return str(path)


def test_centre_exit_codes(capsys, tmp_path):
    code, doc = run(capsys, "centre", "fibonacci")
    assert code == 0 and doc["passed"]
    assert doc["object_multiplicities"] == [1, 0, 0, 1]
    code, doc = run(capsys, "centre", "ising", direct_sum_file(tmp_path))
    assert code == 2
    assert not doc["passed"] and not doc["verification"]["haploid"]


def test_grading_report(capsys):
    code, doc = run(capsys, "grading", "su2_4")
    assert code == 0
    g = doc["grading"]
    assert g["I_ad"] == [0, 2, 4] and g["N"] == 1
    assert g["partition"] == [0, 1, 0, 1, 0]
    assert g["group_table"] == [[0, 1], [1, 0]]


def test_classify_unit_and_exit_codes(capsys, tmp_path):
    code, doc = run(capsys, "classify", "ising")
    assert code == 0
    assert doc["morita_trivial"] and not doc["hypothesis_fails"]
    assert [a["commutant_dim"] for a in doc["audit"]] == [1, 1]
    code, doc = run(capsys, "classify", "ising", direct_sum_file(tmp_path))
    assert code == 1
    assert "simple non-degenerate" in doc["error"]["identity"]


def test_classify_selftest_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["classify", "ising", "--selftest-twist", "--seed", "7",
                 "--out", str(a)]) == 0
    assert main(["classify", "ising", "--selftest-twist", "--seed", "7",
                 "--out", str(b)]) == 0
    assert capsys.readouterr().out == ""      # --out silences stdout
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["passed"] and doc["certificate"]["passed"]
    assert doc["isomorphism_residual"] < 1e-8
    assert doc["final_deviation"] < 1e-8
    # a different seed changes the twist but still certifies
    assert main(["classify", "ising", "--selftest-twist", "--seed", "8",
                 "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_classify_su2_4_flags_hypothesis(capsys):
    code, doc = run(capsys, "classify", "su2_4", "--genus", "1")
    assert code == 0 and doc["morita_trivial"]
    assert doc["hypothesis_fails"]
    assert doc["audit"] == [{"genus": 1, "dim": 5, "commutant_dim": 2,
                             "irreducible": False}]
