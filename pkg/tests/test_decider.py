import pytest

from cremona.cyclo import field
from cremona.decider import (INVALID, LINEARIZABLE, NOT_LINEARIZABLE, REQUIRES_STANDARD_FORM, Rule,
                             SurfaceDescriptor, decide, render_witness)
from cremona.errors import NoWitness
from cremona.golden import golden_documents, presentation_variants
from cremona.moebius import MoebiusMap, R, standard_matrices
from cremona.quadric import QuadricAut
from cremona.sarkisov import standard_generators, validate_chain
from cremona.schema import parse_document

DOCS = {d["name"]: d for d in golden_documents()}


def run_doc(name):
    doc = parse_document(DOCS[name])
    return decide(doc.surface, doc.build_generators()), doc


@pytest.mark.parametrize("name", sorted(DOCS))
def test_golden(name):
    d, _ = run_doc(name)
    assert (d.verdict, d.rule.value) == (DOCS[name]["expect"]["decision"], DOCS[name]["expect"]["rule"])


def test_every_rule_has_a_citation():
    for r in Rule:
        assert r.citation


def test_hirzebruch_even_dihedral_even_base():
    d, _ = run_doc("F2-D4")
    assert d.verdict == NOT_LINEARIZABLE and d.witness is None


def test_d15_euclid_witness_validates():
    d, doc = run_doc("Q-D15-euclid")
    assert d.verdict == LINEARIZABLE and d.witness
    conj = [s for s in d.witness if s.kind == "Conjugate"]
    assert conj
    text = render_witness(d)
    assert "(x,y) ↦ (x, x⁻¹y)" in text
    assert d.details["euclid_final"] == [1, 0]


def test_swap_fixed_point_witness():
    d, _ = run_doc("Q1-C2-swap")
    assert d.verdict == LINEARIZABLE
    assert d.witness[0].kind == "BlowUpFixedPoint"
    assert "([0:1], [0:1])" in d.witness[0].note or "([1:0], [1:0])" in d.witness[0].note


def test_non_standard_dihedral_form_flagged():
    F = field(15)
    m = standard_matrices(F)
    h = MoebiusMap((1, 2, 3, 1), F)
    hi = h.inverse()
    # a generic change of coordinates on the second factor keeps G dihedral but breaks the (B, B) form
    gens = [QuadricAut(R(F, 3), h @ R(F, 5) @ hi), QuadricAut(m["B"], h @ m["B"] @ hi)]
    d = decide(SurfaceDescriptor("Quadric"), gens)
    assert (d.verdict, d.rule) == (LINEARIZABLE, Rule.QUAD_EUCLID)
    assert d.witness is None and d.witness_note == REQUIRES_STANDARD_FORM
    with pytest.raises(NoWitness):
        render_witness(d)


def test_hirzebruch_witness_reaches_p2():
    d, _ = run_doc("F3-A5")
    assert d.witness[-1].kind == "Contract"
    assert validate_chain([], d.witness)
    assert [s.length for s in d.witness[:-1]] == [12, 20, 12]


def test_render_trivial_and_errors():
    d = decide(SurfaceDescriptor("P2"), [])
    assert render_witness(d) == "identity"
    with pytest.raises(NoWitness):
        render_witness(run_doc("dP3")[0])


def test_fixed_kinds():
    assert decide(SurfaceDescriptor("DelPezzoLow", 3)).verdict == NOT_LINEARIZABLE
    assert decide(SurfaceDescriptor("ConicBundle", 8)).verdict == INVALID
    assert decide(SurfaceDescriptor("ConicBundle", 3)).verdict == INVALID


@pytest.mark.parametrize("name", ["Q1-A4xC2", "Q1-S4xC2", "Q1-A5xC2"])
def test_rigid_rank_one_never_linearizable(name):
    for s, gens in presentation_variants(DOCS[name], 20, seed=5):
        assert decide(s, gens).verdict == NOT_LINEARIZABLE


@pytest.mark.parametrize("name", ["Q-D15-euclid", "dP6-C6", "dP5-F5", "F2-D3", "Q-D3xD5", "Q1-C4-twisted"])
def test_presentation_invariance(name):
    want = (DOCS[name]["expect"]["decision"], DOCS[name]["expect"]["rule"])
    for s, gens in presentation_variants(DOCS[name], 15, seed=11):
        d = decide(s, gens)
        assert (d.verdict, d.rule.value) == want


@pytest.mark.parametrize("name", ["Q-D15-euclid", "Q-D5-diag", "Q-D9"])
def test_euclid_witnesses_replay(name):
    d, doc = run_doc(name)
    a, b = d.details["euclid_input"]
    M = doc.conductor
    rep = validate_chain(standard_generators(M, a, b, field(M)), d.witness,
                         standard_generators(M, *d.details["euclid_final"], field(M)))
    assert rep, rep.reason
