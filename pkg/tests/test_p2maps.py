import random

import pytest

from cremona.cyclo import field
from cremona.errors import TooManyIndeterminacyHits
from cremona.p2maps import (P2RationalMap, golden_ratio, intro_example, p2_closure, projectively_equal,
                            symbolic_conjugation_check, verify_p2_conjugation)


def test_golden_ratio():
    F = field(5)
    z = golden_ratio(F)
    assert z * z == z + 1


def test_intro_example():
    F = field(5)
    f, c, t = intro_example(F)
    rep = verify_p2_conjugation(f, c, t, trials=50, seed=0)
    assert rep and rep.backward and rep.checked >= 25
    assert rep.composite_degree_bound == 18
    assert symbolic_conjugation_check(f, c, t) == (18, True)


def test_c_is_an_involution():
    F = field(5)
    _, c, _ = intro_example(F)
    rng = random.Random(2)
    for _ in range(10):
        p = tuple(F(rng.randint(-9, 9)) for _ in range(3))
        q = c(p)
        r = c(q)
        if all(x.is_zero() for x in q) or all(x.is_zero() for x in r):
            continue
        assert projectively_equal(r, p)


def test_identity_conjugator():
    F = field(5)
    f, _, _ = intro_example(F)
    assert verify_p2_conjugation(f, P2RationalMap.identity(F), f)


def test_wrong_target_rejected():
    F = field(5)
    f, c, t = intro_example(F)
    assert not verify_p2_conjugation(f, c, P2RationalMap.identity(F))


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), a[0][0] * 0) for j in range(3)] for i in range(3)]


def _adjugate(m):
    # inverse up to the scalar det
    def minor(i, j):
        rows = [r for k, r in enumerate(m) if k != i]
        cols = [[x for l, x in enumerate(r) if l != j] for r in rows]
        return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]
    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def _random_invertible(F, rng):
    while True:
        m = [[F(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
        adj = _adjugate(m)
        if not _matmul(m, adj)[0][0].is_zero():
            return m, adj


def test_linear_conjugation_matches_matrix_oracle():
    F = field(3)
    rng = random.Random(7)
    for _ in range(10):
        (L, Li), (A, _) = _random_invertible(F, rng), _random_invertible(F, rng)
        target = P2RationalMap.linear(F, _matmul(_matmul(L, A), Li))
        f, c, ci = P2RationalMap.linear(F, A), P2RationalMap.linear(F, L), P2RationalMap.linear(F, Li)
        assert symbolic_conjugation_check(f, c, target, c_inverse=ci) == (1, True)
        assert verify_p2_conjugation(f, c, target, trials=20, seed=1, c_inverse=ci)


def test_too_many_indeterminacy_hits():
    F = field(1)
    # [x:y:z] -> [y:0:0] applied twice sends every point to [0:0:0]
    collapse = P2RationalMap.from_terms(F, [[(1, (0, 1, 0))], [], []])
    with pytest.raises(TooManyIndeterminacyHits):
        verify_p2_conjugation(collapse, collapse, P2RationalMap.identity(F), trials=10)


def test_bad_maps():
    F = field(1)
    with pytest.raises(ValueError):
        P2RationalMap.from_terms(F, [[(1, (1, 0, 0))], [(1, (2, 0, 0))], [(1, (1, 0, 0))]])
    with pytest.raises(ValueError):
        P2RationalMap.from_terms(F, [[], [], []])


def test_p2_closure_heisenberg_part():
    F = field(3)
    w = F.omega()
    o, z = F.one, F.zero
    G = p2_closure([[[o, z, z], [z, w, z], [z, z, w * w]], [[z, o, z], [z, z, o], [o, z, z]]])
    assert G.order == 9
