"""Linearizability verdicts for finite groups acting on rational G-Mori fibre spaces."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum

from .cyclo import field
from .delpezzo import (DP5Group, DP6Point, dp5_analyze, dp5_orbit_general_position,
                       dp5_standard_generators, dp6_act, dp6_analyze)
from .errors import CremonaError, FixedCurve, NeedsExtension, NoWitness, Unreachable
from .groups import FamilyTag, GroupTable, is_dihedral, recognize_family
from .moebius import KleinClass, MoebiusMap, classify_by_orders, klein_classify
from .moebius import closure as moebius_closure
from .quadric import QuadricAut, analyze_rulings, common_fixed_points
from .sarkisov import (LinkStep, bezout_plan, contract_step, euclid_witness, klein_spectrum,
                       standard_generators, validate_chain)

LINEARIZABLE = "linearizable"
NOT_LINEARIZABLE = "not_linearizable"
INVALID = "invalid_input"

REQUIRES_STANDARD_FORM = "requires standard form"

KINDS = ("P2", "Quadric", "Hirzebruch", "DP5", "DP6", "ConicBundle", "DelPezzoLow")


class Rule(str, Enum):
    P2_LINEAR = "p2_linear"
    DP_LOW_RIGID = "dp_low_rigid"
    DP4_NONE = "dp4_none"
    CB_SMALL = "conic_bundle_small_k2"
    CB_SUPERRIGID = "conic_bundle_superrigid"
    CB_NOT_MINIMAL = "conic_bundle_not_minimal"
    CB_NOT_MFS = "conic_bundle_not_mori"
    CB_OUT_OF_RANGE = "conic_bundle_out_of_range"
    DP_LOW_OUT_OF_RANGE = "del_pezzo_low_out_of_range"
    HIRZ_LINEARIZABLE = "hirzebruch_linearizable"
    HIRZ_OBSTRUCTED = "hirzebruch_obstructed"
    QUAD_FIXED_POINT = "quadric_cyclic_factors"
    QUAD_ODD_ORBIT = "quadric_cyclic_and_odd_dihedral"
    QUAD_EUCLID = "quadric_dihedral_euclid"
    QUAD_EVEN_ORBITS = "quadric_even_orbits"
    QUAD_DIHEDRAL_PRODUCT = "quadric_dihedral_fibre_product"
    QUAD_R1_CYCLIC = "quadric_rank1_cyclic_kernel"
    QUAD_R1_RIGID = "quadric_rank1_rigid"
    QUAD_R1_DIHEDRAL = "quadric_rank1_dihedral_kernel"
    DP6_LINEARIZABLE = "dp6_linearizable"
    DP6_OBSTRUCTED = "dp6_obstructed"
    DP6_NOT_MINIMAL = "dp6_not_minimal"
    DP5_LINEARIZABLE = "dp5_linearizable"
    DP5_OBSTRUCTED = "dp5_obstructed"
    DP5_NOT_MINIMAL = "dp5_not_minimal"

    @property
    def citation(self) -> str:
        return CITATIONS[self]


CITATIONS = {
    Rule.P2_LINEAR: "Finite subgroups of PGL3 acting on P2 are linear by definition (Blichfeldt's list).",
    Rule.DP_LOW_RIGID: "Manin-Segre: a minimal G-del Pezzo surface of degree at most 3 is G-birationally rigid.",
    Rule.DP4_NONE: "No finite group acting minimally on a del Pezzo surface of degree 4 is linearizable.",
    Rule.CB_SMALL: "A G-minimal conic bundle with K^2 in {1, 2, 4} is not linearizable.",
    Rule.CB_SUPERRIGID: "A G-minimal conic bundle with K^2 <= 0 is G-birationally superrigid.",
    Rule.CB_NOT_MINIMAL: "A conic bundle with K^2 in {3, 5, 6} is never G-minimal.",
    Rule.CB_NOT_MFS: "A conic bundle with K^2 = 7 is not a G-Mori fibre space.",
    Rule.CB_OUT_OF_RANGE: "Conic bundles with K^2 = 8 are Hirzebruch surfaces; describe them as such.",
    Rule.DP_LOW_OUT_OF_RANGE: "Low-degree del Pezzo descriptors need K^2 in {1, 2, 3, 4}.",
    Rule.HIRZ_LINEARIZABLE: "Hirzebruch criterion: G on F_n is linearizable iff n is odd or the base image is cyclic or odd dihedral.",
    Rule.HIRZ_OBSTRUCTED: "Hirzebruch criterion: for even n every available orbit length is even, so F_1 is never reached.",
    Rule.QUAD_FIXED_POINT: "P1 x P1, invariant Picard rank 2: cyclic Goursat factors give a fixed point; project from it.",
    Rule.QUAD_ODD_ORBIT: "P1 x P1, invariant Picard rank 2: a cyclic and an odd dihedral factor; links centred at an odd orbit reach P2.",
    Rule.QUAD_EUCLID: "P1 x P1, invariant Picard rank 2: a dihedral fibre product of odd dihedral factors is linearized by the Euclidean algorithm.",
    Rule.QUAD_EVEN_ORBITS: "P1 x P1, invariant Picard rank 2: a factor with only even orbits obstructs linearization.",
    Rule.QUAD_DIHEDRAL_PRODUCT: "P1 x P1, invariant Picard rank 2: a non-dihedral fibre product of odd dihedral groups has no faithful 3-dimensional representation.",
    Rule.QUAD_R1_CYCLIC: "P1 x P1, invariant Picard rank 1: a cyclic kernel factor gives a fixed point; stereographic projection linearizes.",
    Rule.QUAD_R1_RIGID: "P1 x P1, invariant Picard rank 1: kernel factors A4, S4 or A5 make the quadric G-birationally rigid.",
    Rule.QUAD_R1_DIHEDRAL: "P1 x P1, invariant Picard rank 1: a dihedral kernel factor is not linearizable.",
    Rule.DP6_LINEARIZABLE: "Degree 6: linearizable iff the torus part is trivial and the hexagon image is <r> or <r2,s>.",
    Rule.DP6_OBSTRUCTED: "Degree 6: a nontrivial torus part or a hexagon image other than <r>, <r2,s> is not linearizable.",
    Rule.DP6_NOT_MINIMAL: "Degree 6: the hexagon image does not act minimally, so the surface is not a G-Mori fibre space.",
    Rule.DP5_LINEARIZABLE: "Degree 5: C5 and D5 are linearizable through five points in general position in P2.",
    Rule.DP5_OBSTRUCTED: "Degree 5: F5, A5 and S5 are not linearizable.",
    Rule.DP5_NOT_MINIMAL: "Degree 5: groups of order not divisible by 5 do not act minimally.",
}


@dataclass(frozen=True)
class SurfaceDescriptor:
    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown surface kind {self.kind!r}")
        if self.kind == "Hirzebruch" and (self.param is None or self.param < 1):
            raise ValueError("Hirzebruch surfaces here need n >= 1 (use Quadric for F_0)")
        if self.kind in ("ConicBundle", "DelPezzoLow") and self.param is None:
            raise ValueError(f"{self.kind} needs K^2")

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}({self.param})"


@dataclass
class Decision:
    verdict: str
    rule: Rule
    group_summary: tuple | None = None          # (order, FamilyTag)
    witness: list | None = None
    witness_note: str = ""
    details: dict = dc_field(default_factory=dict)

    @property
    def citation(self) -> str:
        return self.rule.citation


def _family(G: GroupTable):
    return (G.order, recognize_family(G))


def _subgroup_class(G: GroupTable, subset) -> KleinClass:
    stats = Counter(G.element_order(h) for h in subset)
    return classify_by_orders(len(subset), stats)


# -- branches ---------------------------------------------------------------------

def _decide_fixed(s: SurfaceDescriptor) -> Decision | None:
    k2 = s.param
    if s.kind == "DelPezzoLow":
        if k2 in (1, 2, 3):
            return Decision(NOT_LINEARIZABLE, Rule.DP_LOW_RIGID)
        if k2 == 4:
            return Decision(NOT_LINEARIZABLE, Rule.DP4_NONE)
        return Decision(INVALID, Rule.DP_LOW_OUT_OF_RANGE)
    if s.kind == "ConicBundle":
        if k2 in (1, 2, 4):
            return Decision(NOT_LINEARIZABLE, Rule.CB_SMALL)
        if k2 <= 0:
            return Decision(NOT_LINEARIZABLE, Rule.CB_SUPERRIGID)
        if k2 in (3, 5, 6):
            return Decision(INVALID, Rule.CB_NOT_MINIMAL)
        if k2 == 7:
            return Decision(INVALID, Rule.CB_NOT_MFS)
        return Decision(INVALID, Rule.CB_OUT_OF_RANGE)
    return None


def _decide_p2(generators) -> Decision:
    summary = None
    if generators:
        from .p2maps import p2_closure
        summary = _family(p2_closure(generators))
    return Decision(LINEARIZABLE, Rule.P2_LINEAR, summary, [], "identity")


def _decide_hirzebruch(n: int, generators) -> Decision:
    if generators:
        G = moebius_closure(list(generators))
        base = klein_classify(G)
        summary = _family(G)
    else:
        base, summary = KleinClass("Cyclic", 1), (1, FamilyTag("Trivial"))
    ok = n % 2 == 1 or base.is_cyclic or base.is_odd_dihedral
    details = {"n": n, "base_class": str(base), "spectrum": list(klein_spectrum(base))}
    if not ok:
        return Decision(NOT_LINEARIZABLE, Rule.HIRZ_OBSTRUCTED, summary, details=details)
    steps = bezout_plan(n, klein_spectrum(base), base) + [contract_step()]
    return Decision(LINEARIZABLE, Rule.HIRZ_LINEARIZABLE, summary, steps, details=details)


def _fixed_point_witness(G, kind_first="BlowUpFixedPoint"):
    """Witness through a point fixed by all of G, or (None, note)."""
    try:
        pts = common_fixed_points(G)
    except FixedCurve as exc:
        pts = [exc.sample] if exc.sample is not None else []
    except NeedsExtension as exc:
        return None, f"fixed points need a larger field (conductor x{exc.multiplier})"
    if not pts:
        return None, REQUIRES_STANDARD_FORM
    p = pts[0]
    return [
        LinkStep(kind_first, note=f"blow up the fixed point ({p.x}, {p.y})"),
        LinkStep("StereographicProjection", to_n="P2",
                 note="contract the strict transforms of the two rulings through it"),
    ], ""


def _standard_euclid(G, fld):
    """Euclid witness when G is <(R^a, R^b), (B, B)> in diagonal form, else None."""
    ok, w = is_dihedral(G)
    if not ok:
        return None
    from .moebius import standard_matrices
    B = standard_matrices(fld)["B"]
    BB = QuadricAut(B, B, False)
    if BB not in G.index:
        return None
    N = fld.conductor
    for r in (G.elements[i] for i in w.cyclic_subgroup):
        if r.swap:
            continue
        exps = []
        for m in (r.m, r.n):
            a, b, c, d = m.entries
            if not (b.is_zero() and c.is_zero()):
                break
            k = next((k for k in range(N) if fld.root_of_unity(N, k) == d), None)
            if k is None:
                break
            exps.append(k)
        else:
            if len(exps) == 2 and G.element_order(G.index[r]) == len(w.cyclic_subgroup):
                a, b = exps
                if a == 0 and b == 0:
                    continue
                steps, final = euclid_witness(a, b, N, fld)
                report = validate_chain(standard_generators(N, a, b, fld), steps)
                if report:
                    return steps, final, (a, b)
    return None


def _decide_quadric(generators) -> Decision:
    A = analyze_rulings(list(generators))
    G = A.group
    fld = G.elements[0].field
    summary = _family(G)
    if A.rank == 1:
        c = A.H_class
        details = {"rank": 1, "kernel_factor": str(c), "kernel_order": A.kernel.order}
        if c.is_cyclic:
            wit, note = _fixed_point_witness(G)
            if wit is not None:
                wit.insert(1, LinkStep("TypeII", note="equivalently: the blow-up is a del Pezzo surface of degree 7; "
                                                      "contract the two (-1)-curves of the fibres"))
            return Decision(LINEARIZABLE, Rule.QUAD_R1_CYCLIC, summary, wit, note, details)
        if c.kind in ("A4", "S4", "A5"):
            return Decision(NOT_LINEARIZABLE, Rule.QUAD_R1_RIGID, summary, details=details)
        return Decision(NOT_LINEARIZABLE, Rule.QUAD_R1_DIHEDRAL, summary, details=details)

    d = A.goursat
    # the criterion is stated for the two projections p_i(G)
    h1, h2 = A.H_class
    details = {"rank": 2, "H1": str(h1), "H2": str(h2), "Q_order": d.Q.order,
               "kernel1": str(_subgroup_class(d.G1, d.H1)), "kernel2": str(_subgroup_class(d.G2, d.H2))}
    if h1.is_cyclic and h2.is_cyclic:
        wit, note = _fixed_point_witness(G)
        return Decision(LINEARIZABLE, Rule.QUAD_FIXED_POINT, summary, wit, note, details)
    if (h1.is_cyclic and h2.is_odd_dihedral) or (h2.is_cyclic and h1.is_odd_dihedral):
        odd = h2 if h1.is_cyclic else h1
        base = h1 if h1.is_cyclic else h2
        wit = [LinkStep("ElementaryOnSigma", odd.n, 0, odd.n, spectrum=(odd.n,),
                        note=f"centred at an orbit of odd length {odd.n} of the dihedral factor")]
        note = ""
        try:
            wit += bezout_plan(odd.n, klein_spectrum(base), base) if odd.n != 1 else []
            wit.append(contract_step())
        except Unreachable:
            note = REQUIRES_STANDARD_FORM
        return Decision(LINEARIZABLE, Rule.QUAD_ODD_ORBIT, summary, wit, note, details)
    if h1.is_odd_dihedral and h2.is_odd_dihedral:
        if is_dihedral(G)[0]:
            euclid = _standard_euclid(G, fld)
            if euclid is None:
                return Decision(LINEARIZABLE, Rule.QUAD_EUCLID, summary, None, REQUIRES_STANDARD_FORM, details)
            steps, final, ab = euclid
            details["euclid_input"] = list(ab)
            details["euclid_final"] = list(final)
            return Decision(LINEARIZABLE, Rule.QUAD_EUCLID, summary, steps, "", details)
        return Decision(NOT_LINEARIZABLE, Rule.QUAD_DIHEDRAL_PRODUCT, summary, details=details)
    return Decision(NOT_LINEARIZABLE, Rule.QUAD_EVEN_ORBITS, summary, details=details)


def _decide_dp6(generators) -> Decision:
    A = dp6_analyze(list(generators))
    summary = _family(A.group)
    details = {"hexagon_image": A.hexagon_label, "torus_order": len(A.torus_part)}
    if not A.minimal:
        return Decision(INVALID, Rule.DP6_NOT_MINIMAL, summary, details=details)
    if A.fixes_point and A.hexagon_label in ("<r>", "<r2,s>"):
        fld = A.group.elements[0].field
        p = DP6Point.make([1, 1, 1], [1, 1, 1], fld)
        if all(dp6_act(g, p) == p for g in generators):
            where = "the fixed point ([1:1:1],[1:1:1])"
        else:
            # trivial torus part: G is a torus conjugate of the standard complement,
            # whose fixed point may only be defined after adjoining roots
            where = "the image of ([1:1:1],[1:1:1]) under the torus element conjugating G to standard form"
        wit = [
            LinkStep("BlowUpFixedPoint", note=f"blow up {where} to get a del Pezzo surface of degree 5"),
            LinkStep("TypeII", to_n="P2", note="contract four disjoint invariant sets of (-1)-curves down to P2"),
        ]
        return Decision(LINEARIZABLE, Rule.DP6_LINEARIZABLE, summary, wit, details=details)
    return Decision(NOT_LINEARIZABLE, Rule.DP6_OBSTRUCTED, summary, details=details)


def _decide_dp5(generators) -> Decision:
    g = generators if isinstance(generators, DP5Group) else DP5Group.from_perms(generators)
    tag, minimal = dp5_analyze(g)
    summary = (g.table.order, tag)
    if not minimal:
        return Decision(INVALID, Rule.DP5_NOT_MINIMAL, summary)
    if tag.kind in ("Cyclic", "Dihedral"):
        gens = dp5_standard_generators(field(5), tag.kind == "Dihedral")
        ok = dp5_orbit_general_position(gens)
        wit = [LinkStep("TypeII", to_n="P2",
                        note="contract the four invariant (-1)-curves through the image of five points "
                             f"in general position on a conic (orbit of [1:1:1] checked: {ok})")]
        return Decision(LINEARIZABLE, Rule.DP5_LINEARIZABLE, summary, wit)
    return Decision(NOT_LINEARIZABLE, Rule.DP5_OBSTRUCTED, summary)


def decide(s: SurfaceDescriptor, generators=()) -> Decision:
    fixed = _decide_fixed(s)
    if fixed is not None:
        return fixed
    if s.kind == "P2":
        return _decide_p2(generators)
    if s.kind == "Hirzebruch":
        return _decide_hirzebruch(s.param, generators)
    if s.kind == "Quadric":
        return _decide_quadric(generators)
    if s.kind == "DP6":
        return _decide_dp6(generators)
    if s.kind == "DP5":
        return _decide_dp5(generators)
    raise ValueError(f"unhandled surface kind {s.kind}")


def render_witness(d: Decision) -> str:
    if d.verdict != LINEARIZABLE:
        raise NoWitness(f"verdict is {d.verdict}")
    if d.witness is None:
        raise NoWitness(d.witness_note or "no witness recorded")
    if not d.witness:
        return "identity"
    lines = []
    for i, st in enumerate(d.witness, 1):
        head = f"{i}. {st.kind}"
        if st.length is not None:
            head += f" l={st.length}"
        if st.from_n is not None or st.to_n is not None:
            src = "" if st.from_n is None else (f"F_{st.from_n}" if isinstance(st.from_n, int) else st.from_n)
            dst = "" if st.to_n is None else (f"F_{st.to_n}" if isinstance(st.to_n, int) else st.to_n)
            if st.kind != "Conjugate":
                head += f" {src} -> {dst}".rstrip()
        if st.map_formula is not None:
            head += f" [{st.formula_text()}]"
        if st.note:
            head += f" ({st.note})"
        lines.append(head)
    lines.append(f"citation: {d.citation}")
    return "\n".join(lines)


__all__ = ["Decision", "Rule", "SurfaceDescriptor", "decide", "render_witness", "CITATIONS",
           "LINEARIZABLE", "NOT_LINEARIZABLE", "INVALID", "REQUIRES_STANDARD_FORM", "CremonaError",
           "MoebiusMap"]
