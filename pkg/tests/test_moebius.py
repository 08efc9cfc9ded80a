import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.cyclo import field
from cremona.errors import GroupTooLarge, InfiniteOrder, NeedsExtension
from cremona.moebius import (KleinClass, MoebiusMap, R, closure, compose, fixed_points, klein_classify, map_order,
                             orbit, point, special_orbit_lengths, special_orbit_spectrum, special_orbits,
                             standard_matrices)


def std(F, names):
    m = standard_matrices(F)
    return [m[k] for k in names]


@pytest.mark.parametrize("names,N,cls", [
    ("ABC", 4, KleinClass("A4")),
    ("ABCD", 4, KleinClass("S4")),
    ("EF", 5, KleinClass("A5")),
    ("AB", 1, KleinClass("Dihedral", 2)),
])
def test_standard_groups_classify(names, N, cls):
    G = closure(std(field(N), names))
    assert klein_classify(G) == cls
    assert G.order == cls.order


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 9])
def test_rotation_and_dihedral(n):
    F = field(n)
    assert klein_classify(closure([R(F, n)])) == KleinClass("Cyclic", n)
    assert klein_classify(closure([R(F, n), standard_matrices(F)["B"]])) == KleinClass("Dihedral", n)


@pytest.mark.parametrize("n", range(2, 9))
def test_dihedral_special_orbits(n):
    # the poles, plus the orbits of [1:1] and [1:-1]; these coincide for even n only as sets of lengths
    got, _ = special_orbit_lengths(lambda F: [R(F, n), standard_matrices(F)["B"]], n)
    assert got == sorted([2, n, n])
    assert got == special_orbit_spectrum(KleinClass("Dihedral", n))


def test_polyhedral_special_orbits():
    assert special_orbit_lengths(lambda F: std(F, "ABC"), 4)[0] == [4, 4, 6]
    assert special_orbit_lengths(lambda F: std(F, "ABCD"), 4)[0] == [6, 8, 12]
    assert special_orbit_lengths(lambda F: std(F, "EF"), 5)[0] == [12, 20, 30]
    assert special_orbit_lengths(lambda F: [R(F, 9)], 9)[0] == [1, 1]


def test_generic_orbits_are_regular():
    F = field(5)
    G = closure([R(F, 5), standard_matrices(F)["B"]])
    assert len(orbit(G, point(F, 1, 1))) == 5
    assert len(orbit(G, point(F, 2, 3))) == 10
    F3 = field(3)
    D3 = closure([R(F3, 3), standard_matrices(F3)["B"]])
    assert len(orbit(D3, point(F3, 1, 1))) == 3


def test_fixed_points_and_extension():
    F = field(5)
    assert set(fixed_points(R(F, 5))) == {point(F, 1, 0), point(F, 0, 1)}
    g = MoebiusMap((0, -1, 1, -1), F)          # order 3, eigenvalues are primitive cube roots
    assert map_order(g) == 3
    with pytest.raises(NeedsExtension) as exc:
        fixed_points(g)
    assert exc.value.multiplier == 6
    g30 = MoebiusMap((0, -1, 1, -1), field(30))
    for p in fixed_points(g30):
        assert g30(p) == p


def test_errors():
    F = field(4)
    with pytest.raises(InfiniteOrder):
        map_order(MoebiusMap((1, 1, 0, 1), F))
    with pytest.raises(GroupTooLarge):
        closure([R(field(20), 20)], cap=10)


def test_scalar_matrices_are_identified():
    F = field(4)
    assert MoebiusMap((2, 0, 0, 2), F).is_identity()
    assert MoebiusMap((0, 3, 3, 0), F) == standard_matrices(F)["B"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
def test_composition_is_action(xs):
    F = field(4)
    f, g = MoebiusMap(tuple(xs[:4]), F) if xs[0] * xs[3] != xs[1] * xs[2] else None, \
        MoebiusMap(tuple(xs[4:]), F) if xs[4] * xs[7] != xs[5] * xs[6] else None
    if f is None or g is None:
        return
    for p in (point(F, 1, 0), point(F, 0, 1), point(F, 2, 5), point(F, -3, 1)):
        assert compose(f, g)(p) == f(g(p))


def test_orbits_partition_special_points():
    F = field(24)
    G = closure(std(F, "ABCD"))
    orbits = special_orbits(G)
    pts = [p for o in orbits for p in o]
    assert len(pts) == len(set(pts)) == 26
