import pytest

from cremona.errors import GroupTooLarge, InconsistentData, NotAnAction, NotAProduct
from cremona.groups import (A4, A5, F5, S4, S5, Cyclic, Dihedral, FamilyTag, abelian_group, closure, cyclic_group,
                            dihedral_group, direct_product, generalized_dihedral_group, goursat_decompose,
                            goursat_reconstruct, is_dihedral, orbit_divisibility_check, permutation_group,
                            perm_from_cycles, recognize_family, reference_group, wreath_c2)
from oracles import all_subgroups, subgroup_table


@pytest.mark.parametrize("G,tag", [
    (lambda: cyclic_group(12), Cyclic(12)),
    (lambda: dihedral_group(5), Dihedral(5)),
    (lambda: dihedral_group(6), Dihedral(6)),
    (lambda: reference_group("A4"), A4),
    (lambda: reference_group("S4"), S4),
    (lambda: reference_group("A5"), A5),
    (lambda: reference_group("S5"), S5),
    (lambda: reference_group("F5"), F5),
    (lambda: direct_product(reference_group("S4"), reference_group("A5")),
     FamilyTag("DirectProduct", (S4, A5))),
    (lambda: wreath_c2(reference_group("A4")), FamilyTag("Wreath", (A4,))),
    (lambda: wreath_c2(cyclic_group(3)), FamilyTag("DirectProduct", (Cyclic(3), Dihedral(3)))),
])
def test_recognize(G, tag):
    assert recognize_family(G()) == tag


def test_abelian_invariants():
    assert str(recognize_family(abelian_group((2, 4)))) != str(recognize_family(cyclic_group(8)))
    assert recognize_family(abelian_group((3, 5))) == Cyclic(15)


def test_generalized_dihedral_of_cyclic_is_dihedral():
    assert recognize_family(generalized_dihedral_group((7,))) == Dihedral(7)


def test_is_dihedral():
    assert is_dihedral(dihedral_group(15))[0]
    assert is_dihedral(abelian_group((2, 2)))[0]
    assert not is_dihedral(cyclic_group(6))[0]
    assert not is_dihedral(reference_group("A4"))[0]
    # D3 x D5 has order 60 but no element of order 30
    assert not is_dihedral(direct_product(dihedral_group(3), dihedral_group(5)))[0]
    # C3 x D5 has a central C3, so it is not D15; the generalized dihedral group of C3 x C5 is
    assert not is_dihedral(direct_product(cyclic_group(3), dihedral_group(5)))[0]
    ok, w = is_dihedral(generalized_dihedral_group((3, 5)))
    assert ok and len(w.cyclic_subgroup) == 15


def test_cap():
    with pytest.raises(GroupTooLarge):
        closure([1], lambda a, b: (a + b) % 100, 0, cap=10)


# -- Goursat ---------------------------------------------------------------------

# frozen oracle counts of subgroups (classical values)
@pytest.mark.parametrize("P,count", [
    (lambda: direct_product(dihedral_group(3), dihedral_group(3)), 60),
    (lambda: direct_product(cyclic_group(4), cyclic_group(4)), 15),
    (lambda: direct_product(cyclic_group(2), cyclic_group(2)), 5),
])
def test_goursat_roundtrip_exhaustive(P, count):
    P = P()
    subs = all_subgroups(P)
    assert len(subs) == count
    for S in subs:
        T = subgroup_table(P, S)
        d = goursat_decompose(T, lambda k: k[0], lambda k: k[1])
        assert d.order == T.order == len(d.H1) * len(d.H2) * d.Q.order
        assert set(goursat_reconstruct(d).elements) == set(T.elements)


def test_goursat_diagonal():
    P = direct_product(dihedral_group(3), dihedral_group(3))
    diag = closure([g for g in P.elements if g[0] == g[1]][1:], lambda a, b: (
        P.elements[P.mul(P.index[a], P.index[b])]), (0, 0))
    d = goursat_decompose(diag, lambda k: k[0], lambda k: k[1])
    assert len(d.H1) == len(d.H2) == 1 and d.Q.order == 6


def test_goursat_rejects_non_embedding():
    G = cyclic_group(4)
    with pytest.raises(NotAProduct):
        goursat_decompose(G, lambda k: k % 2, lambda k: k % 2)


def test_reconstruct_rejects_bad_phi():
    diag = closure([(1, 1)], lambda a, b: ((a[0] + b[0]) % 4, (a[1] + b[1]) % 4), (0, 0))
    d = goursat_decompose(diag, lambda k: k[0], lambda k: k[1])
    bad = dict(d.phi)
    keys = sorted(bad)
    bad[keys[1]], bad[keys[2]] = bad[keys[2]], bad[keys[1]]
    d.phi = bad
    with pytest.raises(InconsistentData):
        goursat_reconstruct(d)


# -- orbit divisibility -------------------------------------------------------

def _action_table(G):
    return [list(g) for g in G.elements]


def test_orbit_divisibility_on_permutation_action():
    G = permutation_group(5, [perm_from_cycles(5, (0, 1, 2, 3, 4)), perm_from_cycles(5, (1, 4), (2, 3))])
    rot = G.generate([G.index[perm_from_cycles(5, (0, 1, 2, 3, 4))]])
    rep = orbit_divisibility_check(G, _action_table(G), subgroup=rot)
    assert rep and rep.orbits == [[0, 1, 2, 3, 4]]


def test_orbit_divisibility_rejects_non_action():
    G = cyclic_group(2)
    with pytest.raises(NotAnAction):
        orbit_divisibility_check(G, [[0, 1], [0, 0]])
