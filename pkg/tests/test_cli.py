"""Command-line surface: subcommand behavior, JSON schema, exit codes, and
byte-for-byte determinism."""

import io
import json

from sparsefact.cli import run


def invoke(argv):
    out = io.StringIO()
    status = run(argv, out=out)
    return status, out.getvalue()


# -- factor -------------------------------------------------------------------

def test_factor_text_output():
    status, text = invoke(["factor", "x1*x2 + x2"])
    assert status == 0
    assert text.startswith("field: F_7\n")
    assert "unit:" in text and text.count("factor:") == 2


def test_factor_json_schema():
    status, text = invoke(["factor", "--json", "x1^2 + 6"])
    assert status == 0
    doc = json.loads(text)
    assert doc["field"] == {"p": 7, "ext": 1}
    assert doc["unit"] == 1
    polys = sorted(f["poly"] for f in doc["factors"])
    assert polys == ["x1 + 1", "x1 + 6"]
    assert all(f["multiplicity"] == 1 for f in doc["factors"])


def test_factor_from_file(tmp_path):
    path = tmp_path / "poly.txt"
    path.write_text("x1^2 + 6")
    status, text = invoke(["factor", "--input", str(path)])
    assert status == 0 and text.count("factor:") == 2


def test_factor_other_prime():
    status, text = invoke(["factor", "--prime", "5", "--json", "x1^5 + x2^5"])
    assert status == 0
    doc = json.loads(text)
    assert doc["field"]["p"] == 5
    assert sum(f["multiplicity"] for f in doc["factors"]) == 5


def test_factor_missing_poly():
    status, _ = invoke(["factor"])
    assert status == 1


def test_factor_parse_error():
    status, text = invoke(["factor", "x1 +* 2"])
    assert status == 1 and "error" in text


def test_factor_composite_prime():
    status, _ = invoke(["factor", "--prime", "6", "x1"])
    assert status == 1


# -- verify -------------------------------------------------------------------

def test_verify_true():
    status, text = invoke(["verify", "x1^2 + 6",
                           "--factor", "x1 + 1", "--factor", "x1 + 6"])
    assert status == 0 and "verdict: true" in text


def test_verify_false():
    status, text = invoke(["verify", "x1^2 + 6", "--factor", "x1 + 1"])
    assert status == 0 and "verdict: false" in text


def test_verify_multiplicity_syntax():
    status, text = invoke(["verify", "x1^2 + 2*x1 + 1",
                           "--factor", "x1 + 1:2", "--json"])
    assert status == 0 and json.loads(text) == {"verdict": True}


def test_verify_unit():
    status, text = invoke(["verify", "3*x1 + 3",
                           "--factor", "x1 + 1", "--unit", "3"])
    assert status == 0 and "verdict: true" in text


def test_verify_nonconstant_unit_rejected():
    status, _ = invoke(["verify", "x1", "--factor", "x1", "--unit", "x1"])
    assert status == 1


# -- polytope -----------------------------------------------------------------

def test_polytope_report():
    status, text = invoke(["polytope", "--json", "x1*x2 + x1 + x2 + 1"])
    assert status == 0
    doc = json.loads(text)
    assert doc["sparsity"] == 4 and doc["vertex_count"] == 4
    assert doc["bound_holds"] is True
    assert sorted(map(tuple, doc["support"])) == \
        [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_polytope_text():
    status, text = invoke(["polytope", "x1^2 + 6"])
    assert status == 0
    assert "sparsity: 2" in text and "vertices: 2" in text


# -- hitset -------------------------------------------------------------------

def test_hitset_dump():
    status, text = invoke(["hitset", "--n", "2", "--s", "4",
                           "--d", "2", "--k", "1"])
    assert status == 0
    lines = text.strip().split("\n")
    assert lines[0] == "size: 9" and len(lines) == 10
    assert lines[1] == "0 0"


def test_hitset_limit_and_json():
    status, text = invoke(["hitset", "--n", "2", "--s", "4", "--d", "2",
                           "--k", "1", "--limit", "3", "--json"])
    assert status == 0
    doc = json.loads(text)
    assert doc["size"] == 9 and doc["points"] == [[0, 0], [0, 1], [0, 2]]


def test_hitset_field_too_small_exit_2():
    status, text = invoke(["hitset", "--prime", "5", "--n", "3", "--s", "2",
                           "--d", "5", "--k", "1"])
    assert status == 2 and "error" in text


# -- examples -----------------------------------------------------------------

def test_examples_eg1():
    status, text = invoke(["examples", "--which", "eg1", "--n", "3",
                           "--d", "2", "--json"])
    assert status == 0
    doc = json.loads(text)
    assert doc["input_sparsity"] == 8 == doc["claimed_input"]
    assert doc["factor_sparsity"] == 8 == doc["claimed_factor"]
    assert doc["divides"] is True


def test_examples_eg2():
    status, text = invoke(["examples", "--which", "eg2", "--prime", "5",
                           "--n", "3", "--d", "2", "--json"])
    assert status == 0
    doc = json.loads(text)
    assert doc["input_sparsity"] == 3 == doc["claimed_input"]
    assert doc["factor_sparsity"] == 6 == doc["claimed_factor"]
    assert doc["divides"] is True


def test_examples_hadamard():
    status, text = invoke(["examples", "--which", "hadamard", "--m", "3",
                           "--json"])
    assert status == 0
    doc = json.loads(text)
    assert doc["support"] == 23
    assert doc["vertices"] == 8
    assert doc["certified_interior_points"] == 16


# -- contract -----------------------------------------------------------------

def test_unknown_subcommand():
    status, _ = invoke(["frobnicate"])
    assert status == 1


def test_consecutive_runs_byte_identical():
    for argv in (["factor", "--json", "x1*x2 + x2 + x1 + 1"],
                 ["polytope", "--json", "x1^2*x2 + x2 + 3"],
                 ["hitset", "--n", "2", "--s", "3", "--d", "1", "--k", "2"],
                 ["examples", "--which", "eg1", "--n", "2", "--d", "3"]):
        assert invoke(argv) == invoke(argv)
