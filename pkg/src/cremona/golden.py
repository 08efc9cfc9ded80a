"""Reference input documents covering every row of the linearizability classification.

Each document carries an ``expect`` block with the verdict and rule it must get.
"""
from __future__ import annotations

L, NL, INV = "linearizable", "not_linearizable", "invalid_input"


def _doc(name, conductor, surface, generators, decision, rule, row):
    return {
        "name": name,
        "conductor": conductor,
        "surface": surface,
        "generators": generators,
        "expect": {"decision": decision, "rule": rule, "row": row},
    }


def _q(m, n, swap=False):
    g = {"m": m, "n": n}
    if swap:
        g["swap"] = True
    return g


def _hz(n):
    return {"kind": "hirzebruch", "n": n}


QUAD = {"kind": "quadric"}
DP5 = {"kind": "dp5"}
DP6 = {"kind": "dp6"}


def golden_documents() -> list:
    w3 = {"root": [3, 1]}
    w3b = {"root": [3, 2]}
    docs = [
        # P2
        _doc("p2-trivial", 1, {"kind": "p2"}, [], L, "p2_linear", "P2"),
        _doc("p2-heisenberg-part", 3, {"kind": "p2"},
             [[[1, 0, 0], [0, w3, 0], [0, 0, w3b]], [[0, 1, 0], [0, 0, 1], [1, 0, 0]]],
             L, "p2_linear", "P2"),
        # Hirzebruch, n odd: any base group
        _doc("F3-A5", 5, _hz(3), ["E", "F"], L, "hirzebruch_linearizable", "Fn n odd"),
        _doc("F5-S4", 4, _hz(5), ["A", "B", "C", "D"], L, "hirzebruch_linearizable", "Fn n odd"),
        _doc("F1-D4", 4, _hz(1), ["R4", "B"], L, "hirzebruch_linearizable", "Fn n odd"),
        _doc("F7-A4", 4, _hz(7), ["A", "B", "C"], L, "hirzebruch_linearizable", "Fn n odd"),
        # Hirzebruch, n even: cyclic or odd dihedral base
        _doc("F2-C5", 5, _hz(2), ["R5"], L, "hirzebruch_linearizable", "Fn n even, cyclic base"),
        _doc("F4-C6", 12, _hz(4), ["R6"], L, "hirzebruch_linearizable", "Fn n even, cyclic base"),
        _doc("F2-D3", 3, _hz(2), ["R3", "B"], L, "hirzebruch_linearizable", "Fn n even, D_odd base"),
        _doc("F6-D5", 5, _hz(6), ["R5", "B"], L, "hirzebruch_linearizable", "Fn n even, D_odd base"),
        # quadric, invariant Picard rank 2
        _doc("Q-C3xC5", 15, QUAD, [_q("R3", "I"), _q("I", "R5")], L, "quadric_cyclic_factors", "Cn x_Q Cm"),
        _doc("Q-C4xQC4-diag", 4, QUAD, [_q("R4", "R4^3")], L, "quadric_cyclic_factors", "Cn x_Q Cm"),
        _doc("Q-C3xD5", 15, QUAD, [_q("R3", "I"), _q("I", "R5"), _q("I", "B")], L,
             "quadric_cyclic_and_odd_dihedral", "Cn x_Q D_odd"),
        _doc("Q-D3xQC2", 6, QUAD, [_q("R3", "I"), _q("B", "R2")], L,
             "quadric_cyclic_and_odd_dihedral", "Cn x_Q D_odd"),
        _doc("Q-D15-euclid", 15, QUAD, [_q("R3", "R5"), _q("B", "B")], L, "quadric_dihedral_euclid",
             "D_odd x_Q D_odd dihedral"),
        _doc("Q-D5-diag", 5, QUAD, [_q("R5", "R5^2"), _q("B", "B")], L, "quadric_dihedral_euclid",
             "D_odd x_Q D_odd dihedral"),
        _doc("Q-D9", 9, QUAD, [_q("R3", "R9"), _q("B", "B")], L, "quadric_dihedral_euclid",
             "D_odd x_Q D_odd dihedral"),
        # quadric, invariant Picard rank 1 with cyclic kernel factor
        _doc("Q1-C2-swap", 4, QUAD, [_q("R2", "R2"), _q("I", "I", True)], L, "quadric_rank1_cyclic_kernel",
             "(Cn x_Q Cn).C2"),
        _doc("Q1-C3wrC2", 3, QUAD, [_q("R3", "I"), _q("I", "R3"), _q("I", "I", True)], L,
             "quadric_rank1_cyclic_kernel", "(Cn x_Q Cn).C2"),
        _doc("Q1-C4-twisted", 4, QUAD, [_q("R4", "R4"), _q("I", "A", True)], L, "quadric_rank1_cyclic_kernel",
             "(Cn x_Q Cn).C2"),
        # del Pezzo of degree 5 and 6
        _doc("dP5-C5", 1, DP5, [[2, 3, 4, 5, 1]], L, "dp5_linearizable", "dP5 C5"),
        _doc("dP5-D5", 1, DP5, [[2, 3, 4, 5, 1], [1, 5, 4, 3, 2]], L, "dp5_linearizable", "dP5 D5"),
        _doc("dP6-C6", 1, DP6, [{"word": "r"}], L, "dp6_linearizable", "dP6 C6"),
        _doc("dP6-S3", 1, DP6, [{"word": "rr"}, {"word": "s"}], L, "dp6_linearizable", "dP6 S3"),
        # ----- not linearizable -----
        _doc("dP6-D6", 1, DP6, [{"word": "r"}, {"word": "s"}], NL, "dp6_obstructed", "dP6 other"),
        _doc("dP6-torus-C3xC6", 3, DP6, [{"word": "r"}, {"torus": [1, w3, w3b]}], NL, "dp6_obstructed",
             "dP6 other"),
        _doc("dP5-F5", 1, DP5, [[2, 3, 4, 5, 1], [1, 3, 5, 2, 4]], NL, "dp5_obstructed", "dP5 other"),
        _doc("dP5-A5", 1, DP5, [[2, 3, 4, 5, 1], [2, 3, 1, 4, 5]], NL, "dp5_obstructed", "dP5 other"),
        _doc("dP5-S5", 1, DP5, [[2, 3, 4, 5, 1], [2, 1, 3, 4, 5]], NL, "dp5_obstructed", "dP5 other"),
        _doc("Q-A4xC1", 4, QUAD, [_q("A", "I"), _q("B", "I"), _q("C", "I")], NL, "quadric_even_orbits",
             "quadric other"),
        _doc("Q-D4xC3", 12, QUAD, [_q("R4", "I"), _q("B", "I"), _q("I", "R3")], NL, "quadric_even_orbits",
             "quadric other"),
        _doc("Q-S4xA5", 20, QUAD, [_q("A", "I"), _q("B", "I"), _q("C", "I"), _q("D", "I"), _q("I", "E"),
                                  _q("I", "F")], NL, "quadric_even_orbits", "quadric other"),
        _doc("Q-D3xD5", 15, QUAD, [_q("R3", "I"), _q("B", "I"), _q("I", "R5"), _q("I", "B")], NL,
             "quadric_dihedral_fibre_product", "quadric other"),
        _doc("Q1-A4xC2", 4, QUAD, [_q("A", "A"), _q("B", "B"), _q("C", "C"), _q("I", "I", True)], NL,
             "quadric_rank1_rigid", "quadric rank 1 other"),
        _doc("Q1-S4xC2", 4, QUAD, [_q("A", "A"), _q("B", "B"), _q("C", "C"), _q("D", "D"), _q("I", "I", True)],
             NL, "quadric_rank1_rigid", "quadric rank 1 other"),
        _doc("Q1-A5xC2", 5, QUAD, [_q("E", "E"), _q("F", "F"), _q("I", "I", True)], NL, "quadric_rank1_rigid",
             "quadric rank 1 other"),
        _doc("Q1-D3wrC2", 3, QUAD, [_q("R3", "I"), _q("B", "I"), _q("I", "I", True)], NL,
             "quadric_rank1_dihedral_kernel", "quadric rank 1 other"),
        _doc("F2-D4", 4, _hz(2), ["R4", "B"], NL, "hirzebruch_obstructed", "Fn n even other"),
        _doc("F4-A4", 4, _hz(4), ["A", "B", "C"], NL, "hirzebruch_obstructed", "Fn n even other"),
        _doc("F2-A5", 5, _hz(2), ["E", "F"], NL, "hirzebruch_obstructed", "Fn n even other"),
        _doc("CB-k2-1", 1, {"kind": "conic_bundle", "k2": 1}, [], NL, "conic_bundle_small_k2", "conic bundle"),
        _doc("CB-k2-2", 1, {"kind": "conic_bundle", "k2": 2}, [], NL, "conic_bundle_small_k2", "conic bundle"),
        _doc("CB-k2-4", 1, {"kind": "conic_bundle", "k2": 4}, [], NL, "conic_bundle_small_k2", "conic bundle"),
        _doc("CB-k2-0", 1, {"kind": "conic_bundle", "k2": 0}, [], NL, "conic_bundle_superrigid", "conic bundle"),
        _doc("CB-k2-neg3", 1, {"kind": "conic_bundle", "k2": -3}, [], NL, "conic_bundle_superrigid",
             "conic bundle"),
        _doc("dP1", 1, {"kind": "del_pezzo_low", "k2": 1}, [], NL, "dp_low_rigid", "dP degree <= 3"),
        _doc("dP2", 1, {"kind": "del_pezzo_low", "k2": 2}, [], NL, "dp_low_rigid", "dP degree <= 3"),
        _doc("dP3", 1, {"kind": "del_pezzo_low", "k2": 3}, [], NL, "dp_low_rigid", "dP degree <= 3"),
        _doc("dP4", 1, {"kind": "del_pezzo_low", "k2": 4}, [], NL, "dp4_none", "dP degree 4"),
        # ----- not G-Mori fibre spaces -----
        _doc("CB-k2-5", 1, {"kind": "conic_bundle", "k2": 5}, [], INV, "conic_bundle_not_minimal", "invalid"),
        _doc("CB-k2-7", 1, {"kind": "conic_bundle", "k2": 7}, [], INV, "conic_bundle_not_mori", "invalid"),
        _doc("dP6-nonminimal", 1, DP6, [{"word": "rr"}, {"word": "rs"}], INV, "dp6_not_minimal", "invalid"),
        _doc("dP5-C3", 1, DP5, [[2, 3, 1, 4, 5]], INV, "dp5_not_minimal", "invalid"),
    ]
    return docs


def linearizable_documents():
    return [d for d in golden_documents() if d["expect"]["decision"] == L]


def non_linearizable_documents():
    return [d for d in golden_documents() if d["expect"]["decision"] == NL]


# -- presentation changes that must not affect the verdict --------------------------------

def _random_pgl2(fld, rng):
    from .moebius import MoebiusMap
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c != 0:
            return MoebiusMap((a, b, c, d), fld)


def _conj_all(gens, h, mul, inv):
    hi = inv(h)
    return [mul(mul(h, g), hi) for g in gens]


def presentation_variants(doc: dict, count: int = 50, seed: int = 0):
    """``count`` (surface, generators) pairs obtained by relabelling the generators of ``doc``.

    Each variant applies one of: shuffling, conjugating every generator by a group
    element, conjugating by an automorphism of the ambient surface (a random
    PGL2/PGL3 change of coordinates, a torus element, a permutation of the five
    points), or appending a redundant product of generators.
    """
    import random
    from .schema import parse_document
    parsed = parse_document(doc)
    surface, base = parsed.surface, parsed.build_generators()
    rng = random.Random(seed)
    if not base:
        return [(surface, []) for _ in range(count)]
    mul, inv, ambient = _operations(surface.kind, parsed.field, base)
    out = []
    for _ in range(count):
        gens = list(base)
        move = rng.randrange(4)
        if move == 0:
            rng.shuffle(gens)
        elif move == 1:
            h = gens[0]
            for _ in range(rng.randint(1, 4)):
                h = mul(h, rng.choice(gens))
            gens = _conj_all(gens, h, mul, inv)
        elif move == 2:
            gens = _conj_all(gens, ambient(rng), mul, inv)
        else:
            gens.append(mul(rng.choice(gens), rng.choice(gens)))
            rng.shuffle(gens)
        out.append((surface, gens))
    return out


def _operations(kind, fld, gens):
    if kind == "Hirzebruch":
        from .moebius import compose
        return compose, lambda g: g.inverse(), lambda rng: _random_pgl2(fld, rng)
    if kind == "Quadric":
        from .quadric import QuadricAut, compose_aut, inverse_aut

        def ambient(rng):
            return QuadricAut(_random_pgl2(fld, rng), _random_pgl2(fld, rng), rng.random() < 0.5)
        return compose_aut, inverse_aut, ambient
    if kind == "DP6":
        from .delpezzo import dp6_compose, dp6_inverse, torus_element

        def ambient(rng):
            return torus_element(fld, [rng.choice([1, 2, 3, -1, -2]) for _ in range(3)])
        return dp6_compose, dp6_inverse, ambient
    if kind == "DP5":
        def pmul(p, q):
            # one-line notation on 1..5, p after q
            return [p[q[i] - 1] for i in range(5)]

        def pinv(p):
            out = [0] * 5
            for i, v in enumerate(p):
                out[v - 1] = i + 1
            return out

        def ambient(rng):
            p = [1, 2, 3, 4, 5]
            rng.shuffle(p)
            return p
        return pmul, pinv, ambient
    if kind == "P2":
        from .linalg import det, matmul

        def inv3(m):
            # the adjugate is the inverse up to a scalar, which is all PGL3 needs
            def minor(i, j):
                r = [[m[k][l] for l in range(3) if l != j] for k in range(3) if k != i]
                return r[0][0] * r[1][1] - r[0][1] * r[1][0]
            return [[minor(j, i) * (-1) ** (i + j) for j in range(3)] for i in range(3)]

        def ambient(rng):
            while True:
                m = [[fld(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
                if not det(m).is_zero():
                    return m
        return matmul, inv3, ambient
    raise ValueError(kind)
