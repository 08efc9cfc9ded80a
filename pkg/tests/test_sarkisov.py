import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.cyclo import field
from cremona.errors import DegenerateInput, LengthNotAvailable, NoInvariantCurve, Unreachable
from cremona.moebius import KleinClass
from cremona.sarkisov import (C_SIDE, SIGMA_SIDE, HirzebruchState, MonomialMap, bezout_plan, conjugate,
                              contract_step, diagonal, elementary_transform, euclid_witness, inversion,
                              klein_spectrum, monomial_identity, phi, reachable, standard_generators, swap,
                              validate_chain)
from oracles import oracle_distance


def test_klein_spectra():
    assert klein_spectrum(KleinClass("Cyclic", 5)) == (1, 5)
    assert klein_spectrum(KleinClass("Dihedral", 3)) == (2, 3, 6)
    assert klein_spectrum(KleinClass("A4")) == (4, 6, 12)
    assert klein_spectrum(KleinClass("S4")) == (6, 8, 12, 24)
    assert klein_spectrum(KleinClass("A5")) == (12, 20, 30, 60)


def test_elementary_transform():
    s = HirzebruchState.over(3, KleinClass("A5"))
    assert elementary_transform(s, 12, SIGMA_SIDE).n == 15
    assert elementary_transform(s, 12, C_SIDE).n == 9
    with pytest.raises(LengthNotAvailable):
        elementary_transform(s, 2, C_SIDE)
    with pytest.raises(NoInvariantCurve):
        elementary_transform(HirzebruchState(0, None, (1,)), 1, C_SIDE)


def test_known_plans():
    plan = bezout_plan(4, (2, 5))
    assert [(p.length, p.from_n, p.to_n) for p in plan] == [(5, 4, 1)]
    assert len(bezout_plan(6, (1,))) == 5
    with pytest.raises(Unreachable) as exc:
        bezout_plan(2, (2, 4, 6))
    assert exc.value.gcd == 2


SPECTRA = [(1,), (2, 3, 6), (2, 4, 8), (4, 6, 12), (6, 8, 12, 24), (12, 20, 30, 60), (2, 5, 10), (3, 9)]


@pytest.mark.parametrize("spectrum", SPECTRA)
def test_reachability_matches_bfs(spectrum):
    for n in range(0, 41):
        oracle = oracle_distance(n, spectrum, bound=200)
        assert reachable(n, spectrum) == (oracle is not None), n
        if oracle is not None:
            plan = bezout_plan(n, spectrum)
            assert len(plan) <= oracle
            assert validate_chain([], plan + [contract_step()])


@pytest.mark.parametrize("spectrum", [(2, 4, 8), (4, 6, 12), (6, 8, 12, 24), (12, 20, 30, 60)])
def test_even_spectra_preserve_parity(spectrum):
    assert all(not reachable(n, spectrum) for n in range(0, 41, 2))


def test_monomial_group_laws():
    F = field(6)
    maps = [phi(F), phi(F, 3), swap(F), inversion(F), diagonal(F, 6, 1, 2)]
    pt = (F(2), F(-3))
    for f in maps:
        assert (f @ f.inverse()).is_identity()
        for g in maps:
            assert (f @ g)(*pt) == f(*g(*pt))
    assert conjugate(phi(F), monomial_identity(F)).is_identity()


def test_formula_text():
    F = field(1)
    assert phi(F).formula() == "(x,y) ↦ (x, x⁻¹y)"


def test_euclid_reference_case():
    steps, final = euclid_witness(3, 5, 15)
    assert final == (1, 0)
    exps = [s.exponents for s in steps if s.kind == "Conjugate"]
    assert exps == [(3, 2), (2, 3), (2, 1), (1, 2), (1, 0)]
    F = field(15)
    rep = validate_chain(standard_generators(15, 3, 5, F), steps, standard_generators(15, 1, 0, F))
    assert rep, rep.reason


def test_euclid_degenerate():
    with pytest.raises(DegenerateInput):
        euclid_witness(0, 0, 5)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30).flatmap(lambda M: st.tuples(st.integers(0, M - 1), st.integers(0, M - 1), st.just(M))))
def test_euclid_random(abm):
    a, b, M = abm
    if a == 0 and b == 0:
        return
    steps, final = euclid_witness(a, b, M)
    F = field(M)
    rep = validate_chain(standard_generators(M, a, b, F), steps, standard_generators(M, gcd(a, b), 0, F))
    assert rep, rep.reason
    assert final == (gcd(a, b), 0)


def test_validate_detects_tampering():
    steps, _ = euclid_witness(3, 5, 15)
    F = field(15)
    orig = standard_generators(15, 3, 5, F)
    bad = list(steps)
    i = next(k for k, s in enumerate(bad) if s.kind == "Conjugate")
    from dataclasses import replace
    bad[i] = replace(bad[i], map_formula=swap(F) if bad[i].map_formula != swap(F) else phi(F))
    assert not validate_chain(orig, bad)
    j = next(k for k, s in enumerate(steps) if s.kind == "ElementaryOnSigma")
    bad2 = list(steps)
    bad2[j] = replace(bad2[j], to_n=bad2[j].to_n + 1)
    assert not validate_chain(orig, bad2)


def test_random_monomial_action():
    F = field(4)
    rng = random.Random(3)
    for _ in range(30):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        m = MonomialMap.make(F, ((1, a), (0, 1)) if rng.random() < 0.5 else ((1, 0), (b, 1)))
        x, y = F(rng.randint(1, 5)), F(rng.randint(1, 5))
        assert m.inverse()(*m(x, y)) == (x, y)
