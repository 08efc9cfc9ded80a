import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cremona.cli import main, run
from cremona.cyclo import field
from cremona.errors import ConductorInvalid, SchemaError
from cremona.golden import golden_documents
from cremona.p2maps import intro_example
from cremona.schema import literal, map_document_from, matrix2, parse_document, parse_input, serialize

DOCS = {d["name"]: d for d in golden_documents()}


def test_minimal_p2_document():
    doc = parse_input('{"conductor": 1, "surface": {"kind": "p2"}, "generators": []}')
    assert doc.surface.kind == "P2" and doc.build_generators() == []


def test_literals():
    F = field(20)
    assert literal(F, 3) == 3
    assert literal(F, "-3/4") == Fraction(-3, 4)
    assert literal(F, {"root": [5, 2]}) == F.root_of_unity(5, 2)
    assert literal(F, {"terms": [[1, 2, 0], [3, 1, 1]]}) == Fraction(1, 2) + 3 * F.omega()
    assert literal(F, {"sum": [1, {"root": [4, 1]}]}) == 1 + F.root_of_unity(4)
    assert literal(F, {"product": [2, {"root": [4, 1]}]}) == 2 * F.root_of_unity(4)


def test_named_matrices():
    F = field(12)
    assert matrix2(F, "R3^2") == matrix2(F, "R3") @ matrix2(F, "R3")
    with pytest.raises(ConductorInvalid):
        matrix2(field(4), "E")


@pytest.mark.parametrize("name", sorted(DOCS))
def test_roundtrip(name):
    doc = parse_document(DOCS[name])
    text = serialize(doc)
    again = parse_input(text)
    assert serialize(again) == text
    assert again.surface == doc.surface and again.conductor == doc.conductor


def test_quadric_bad_matrix_path():
    bad = {"conductor": 4, "surface": {"kind": "quadric"},
           "generators": [{"m": [[1, 0, 0], [0, 1, 0], [0, 0, 1]], "n": "I"}]}
    with pytest.raises(SchemaError) as exc:
        parse_document(bad)
    assert exc.value.path == "generators[0].m"


def test_dp5_bad_permutation():
    with pytest.raises(SchemaError):
        parse_document({"conductor": 1, "surface": {"kind": "dp5"}, "generators": [[1, 1, 2, 3, 4]]})


def test_reports_are_deterministic():
    text = json.dumps(DOCS["Q-D15-euclid"])
    a, code = run("decide", text)
    b, _ = run("decide", text)
    assert code == 0 and a == b
    assert a["decision"] == "linearizable" and a["witness"]


def test_classify_wreath():
    doc = {"conductor": 4, "surface": {"kind": "quadric"},
           "generators": [{"m": k, "n": "I"} for k in "ABCD"] + [{"m": "I", "n": "I", "swap": True}]}
    report, code = run("classify", json.dumps(doc))
    assert code == 0
    assert report["group"] == {"order": 1152, "family": "Wreath(S4)"}


def test_orbits_d3():
    doc = {"conductor": 3, "surface": {"kind": "hirzebruch", "n": 2}, "generators": ["R3", "B"]}
    report, code = run("orbits", json.dumps(doc), "[[1, 1], [2, 3]]")
    assert code == 0
    assert [o["length"] for o in report["orbits"]] == [3, 6]


def test_goursat_report():
    report, code = run("goursat", json.dumps(DOCS["Q-D3xD5"]))
    assert code == 0 and report["order_identity"]
    assert report["G1"]["family"] == "Dihedral(3)" and report["G2"]["family"] == "Dihedral(5)"


def test_witness_text():
    report, code = run("witness", json.dumps(DOCS["F3-A5"]))
    assert code == 0 and "Contract" in report["text"]
    report, code = run("witness", json.dumps(DOCS["dP3"]))
    assert code == 0 and report["error"]["type"] == "NoWitness"


def test_extension_needed_for_witness_only():
    doc = {"conductor": 5, "surface": {"kind": "quadric"},
           "generators": [{"m": [[0, -1], [1, -1]], "n": "I", "swap": True}]}
    report, code = run("decide", json.dumps(doc))
    assert code == 0 and report["decision"] == "linearizable"
    assert report["witness"] is None and "x6" in report["witness_note"]


def test_needs_extension_exit_code(monkeypatch):
    import cremona.cli as cli
    from cremona.errors import NeedsExtension

    def boom(doc):
        raise NeedsExtension(6, doc.conductor)
    monkeypatch.setattr(cli, "run_decide", boom)
    report, code = run("decide", json.dumps(DOCS["F2-C5"]))
    assert code == 2
    assert report["error"]["type"] == "NeedsExtension" and report["error"]["suggested_conductor"] == 30


def test_verify_map():
    f, c, t = intro_example(field(5))
    report, code = run("verify-map", json.dumps(map_document_from(f, c, t, 5)))
    assert code == 0 and report["holds"] and report["ordering"] == "both"


def test_invalid_json():
    report, code = run("decide", "{not json")
    assert code == 2 and report["error"]["path"] == "$"


def _cli(args, stdin=None):
    return subprocess.run([sys.executable, "-m", "cremona.cli", *args], input=stdin, capture_output=True,
                          text=True, timeout=120)


@pytest.mark.parametrize("name,code", [("F2-D4", 0), ("Q-D15-euclid", 0), ("CB-k2-5", 2)])
def test_exit_codes_subprocess(name, code):
    proc = _cli(["decide", "-"], json.dumps(DOCS[name]))
    assert proc.returncode == code
    assert json.loads(proc.stdout)["decision"] == DOCS[name]["expect"]["decision"]


def test_schema_error_subprocess():
    proc = _cli(["decide", "-"], json.dumps({"conductor": 0, "surface": {"kind": "p2"}, "generators": []}))
    assert proc.returncode == 2 and "error" in json.loads(proc.stdout)


def test_missing_file(tmp_path, capsys):
    assert main(["decide", str(tmp_path / "nope.json")]) == 2
