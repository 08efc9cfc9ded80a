import random

import pytest

from cremona.cyclo import field
from cremona.errors import FixedCurve
from cremona.moebius import KleinClass, R, point, standard_matrices
from cremona.quadric import (ROWS_BY_NAME, QuadricAut, QuadricPoint, act, analyze_rulings, common_fixed_points,
                             compose_aut, dihedral_rows, inverse_aut, orbit_on_quadric, quadric_closure,
                             quadric_identity, verify_table_row)


def Q(F, m, n, swap=False):
    return QuadricAut(m, n, swap)


def test_compose_matches_action():
    F = field(12)
    mats = standard_matrices(F)
    rng = random.Random(1)
    pool = [mats[k] for k in "ABCD"] + [R(F, 12), R(F, 3)]
    pts = [QuadricPoint(point(F, rng.randint(-5, 5), 1), point(F, 1, rng.randint(-5, 5))) for _ in range(10)]
    for _ in range(50):
        a = QuadricAut(rng.choice(pool), rng.choice(pool), rng.random() < 0.5)
        b = QuadricAut(rng.choice(pool), rng.choice(pool), rng.random() < 0.5)
        for p in pts:
            assert act(compose_aut(a, b), p) == act(a, act(b, p))
        assert compose_aut(a, inverse_aut(a)) == quadric_identity(F)


def test_rank_two_projections():
    F = field(15)
    B = standard_matrices(F)["B"]
    A = analyze_rulings([Q(F, R(F, 3), R(F, 5)), Q(F, B, B)])
    assert A.rank == 2 and A.group.order == 30
    assert A.H_class == (KleinClass("Dihedral", 3), KleinClass("Dihedral", 5))


def test_rank_one_kernel():
    F = field(3)
    B, e = standard_matrices(F)["B"], standard_matrices(F)["I"]
    A = analyze_rulings([Q(F, R(F, 3), e), Q(F, B, e), Q(F, e, e, True)])
    assert A.rank == 1 and A.group.order == 72 and A.kernel.order == 36
    assert A.H_class == KleinClass("Dihedral", 3)


def test_swap_fixed_point():
    F = field(4)
    e = standard_matrices(F)["I"]
    G = quadric_closure([Q(F, R(F, 2), R(F, 2)), Q(F, e, e, True)])
    pts = common_fixed_points(G)
    assert QuadricPoint(point(F, 1, 0), point(F, 1, 0)) in pts


def test_fixed_curve_reported():
    F = field(4)
    e = standard_matrices(F)["I"]
    G = quadric_closure([Q(F, e, e, True)])
    with pytest.raises(FixedCurve) as exc:
        common_fixed_points(G)
    p = exc.value.sample
    assert act(G.elements[G.gens[0]], p) == p


def test_orbit_lengths_divide_order():
    F = field(15)
    B = standard_matrices(F)["B"]
    G = quadric_closure([Q(F, R(F, 3), R(F, 5)), Q(F, B, B)])
    for x, y in ((2, 3), (1, 1), (0, 1)):
        orb = orbit_on_quadric(G, QuadricPoint(point(F, x, 1), point(F, y, 1)))
        assert G.order % len(orb) == 0


@pytest.mark.parametrize("name,order", [("A4xC2", 24), ("S4xC2", 48), ("A5xC2", 120), ("S4wrC2", 1152)])
def test_table_rows(name, order):
    got, _ = verify_table_row(ROWS_BY_NAME[name], conductor=20, cap=8000)
    assert got == order


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dihedral_rows(n):
    for row in dihedral_rows(n):
        got, _ = verify_table_row(row, conductor=20 * n, cap=8000)
        assert got == row.order
