import pytest

from cremona.cyclo import field
from cremona.delpezzo import (DP5Group, DP6Aut, DP6Point, d6_subgroups, dp5_analyze, dp5_orbit_general_position,
                              dp5_standard_generators, dp6_act, dp6_analyze, dp6_compose, dp6_identity, dp6_inverse,
                              hex_normal_forms, on_surface, rho, sigma, torus_element)
from cremona.errors import OffSurface
from cremona.groups import F5, Cyclic, Dihedral


def test_hexagon_group_is_d6():
    assert len(hex_normal_forms()) == 12
    assert len(d6_subgroups()) == 16


def test_rho_sigma_relations():
    F = field(1)
    r, s, e = rho(F), sigma(F), dp6_identity(F)
    x = e
    for _ in range(6):
        x = dp6_compose(x, r)
    assert x == e
    assert dp6_compose(s, s) == e
    srs = dp6_compose(dp6_compose(s, r), s)
    assert srs == dp6_inverse(r)


def test_inverse_with_torus_part():
    F = field(3)
    for word in ("", "r", "s", "rrs"):
        a = dp6_compose(torus_element(F, [1, 2, F.omega()]), DP6Aut.make((F.one,) * 3, word))
        assert dp6_compose(a, dp6_inverse(a)) == dp6_identity(F)


@pytest.mark.parametrize("words,label,order,minimal", [
    (["r"], "<r>", 6, True),
    (["r", "s"], "<r,s>", 12, True),
    (["rr", "s"], "<r2,s>", 6, True),
    (["rr", "rs"], "<r2,rs>", 6, False),
])
def test_dp6_analyze(words, label, order, minimal):
    F = field(1)
    gens = [DP6Aut.make((F.one,) * 3, w) for w in words]
    A = dp6_analyze(gens)
    assert (A.hexagon_label, A.group.order, A.minimal) == (label, order, minimal)
    assert A.fixes_point


def test_standard_point_fixed():
    F = field(1)
    p = DP6Point.make([1, 1, 1], [1, 1, 1], F)
    assert dp6_act(rho(F), p) == p and dp6_act(sigma(F), p) == p


def test_torus_part_detected():
    F = field(3)
    A = dp6_analyze([rho(F), torus_element(F, [1, F.omega(), F.omega(2)])])
    assert len(A.torus_part) > 1 and not A.fixes_point


def test_off_surface():
    F = field(1)
    with pytest.raises(OffSurface):
        DP6Point.make([1, 2, 3], [1, 1, 1], F)
    assert on_surface(DP6Point.make([1, 2, 3], [6, 3, 2], F))


@pytest.mark.parametrize("perms,tag,minimal", [
    ([[2, 3, 4, 5, 1]], Cyclic(5), True),
    ([[2, 3, 4, 5, 1], [1, 5, 4, 3, 2]], Dihedral(5), True),
    ([[2, 3, 4, 5, 1], [1, 3, 5, 2, 4]], F5, True),
    ([[2, 3, 1, 4, 5]], Cyclic(3), False),
])
def test_dp5_analyze(perms, tag, minimal):
    assert dp5_analyze(DP5Group.from_perms(perms)) == (tag, minimal)


def test_dp5_rejects_non_permutation():
    with pytest.raises(ValueError):
        DP5Group.from_perms([[1, 1, 2, 3, 4]])


def test_dp5_five_points():
    F = field(5)
    assert dp5_orbit_general_position(dp5_standard_generators(F))
    assert dp5_orbit_general_position(dp5_standard_generators(F, dihedral=True))
    # [1:0:0] is fixed, so its orbit is a single point
    assert not dp5_orbit_general_position(dp5_standard_generators(F), start=[1, 0, 0])
