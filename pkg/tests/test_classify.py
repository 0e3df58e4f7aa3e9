import math
from collections import Counter
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farey_hopf.classify import (
    HopfCase,
    LooseLink,
    NonLoose,
    NonLooseTorsion,
    all_reps,
    cf_coefficients,
    check_lens,
    conjugate,
    dividing_slopes,
    enumerate_reps,
    negative_hopf,
    rep_for,
    stabilize,
    tb_rational,
    theorem_indices,
    torsion_census,
    torsion_reps,
)
from farey_hopf.decorated import DecorationClass
from farey_hopf.oracles import tb_closed_form, torsion_count


@st.composite
def lenses(draw, pmax=9):
    p = draw(st.integers(2, pmax))
    q = draw(st.integers(1, p - 1))
    if math.gcd(p, q) != 1:
        q = 1
    return p, q


regimes = st.tuples(st.sampled_from(list(HopfCase)), st.integers(0, 3), st.integers(0, 3)).filter(
    lambda r: not (r[0] is HopfCase.LS and r[2] == 0)
)


def test_case_parsing():
    assert HopfCase.parse("ll") is HopfCase.LL
    assert HopfCase.SL.size1 == "small" and HopfCase.SL.size2 == "large"
    with pytest.raises(ValueError):
        HopfCase.parse("XX")


def test_check_lens():
    check_lens(5, 2)
    with pytest.raises(ValueError):
        check_lens(4, 2)
    with pytest.raises(ValueError):
        check_lens(3, 3)


@pytest.mark.parametrize(
    "k1,k2,count",
    [(0, 0, 1), (0, 1, 2), (0, 2, 3), (0, 3, 4), (1, 1, 8), (1, 2, 14), (2, 2, 24), (3, 2, 24)],
)
def test_lp1_large_large_counts(k1, k2, count):
    assert len(enumerate_reps(5, 1, HopfCase.LL, k1, k2)) == count


def test_l32_rotation_pair():
    reps = enumerate_reps(3, 2, HopfCase.LL, 0, 0)
    assert sorted((r.rot1, r.rot2) for r in reps) == [(-1, -1), (1, 1)]


def test_enumeration_rejects_bad_lens():
    with pytest.raises(ValueError):
        enumerate_reps(4, 2, HopfCase.LL, 0, 0)


def test_tb_examples():
    # Large-large in L(p,1): tb = k + 1/p on each component.
    r = enumerate_reps(5, 1, HopfCase.LL, 1, 2)[0]
    assert (r.tb1, r.tb2) == (F(6, 5), F(11, 5))
    # Small L1 index 0 has tb = -p''/p with p'' = -q^-1 mod p.
    s1, _ = dividing_slopes(7, 3, HopfCase.SL, 0, 0)
    assert tb_rational(7, 3, s1, 1, "small") == -F(2, 7)


@pytest.mark.parametrize("p,q", [(5, 1), (7, 3), (8, 3), (11, 4)])
def test_tb_matches_closed_form(p, q):
    for case in HopfCase:
        for k1 in range(4):
            for k2 in range(1 if case is HopfCase.LS else 0, 4):
                reps = enumerate_reps(p, q, case, k1, k2)
                want = tb_closed_form(p, q, case.size1, k1, case.size2, k2)
                assert {(r.tb1, r.tb2) for r in reps} == {want}


def test_rep_for_and_json():
    reps = enumerate_reps(7, 3, HopfCase.LL, 1, 1)
    r = reps[len(reps) // 2]
    assert rep_for(7, 3, HopfCase.LL, 1, 1, r.cls) == r
    doc = r.to_json()
    assert doc["case"] == "LL" and doc["tb"] == [str(r.tb1), str(r.tb2)]
    assert DecorationClass.from_json(doc["class"]) == r.cls


def test_theorem_indices():
    assert theorem_indices("small", 0, "large", 2) == (-1, 2)
    assert theorem_indices("large", 1, "small", 1) == (1, -1)


@settings(max_examples=40, deadline=None)
@given(lenses(), regimes)
def test_conjugation_negates_rotation(lens, regime):
    p, q = lens
    case, k1, k2 = regime
    reps = enumerate_reps(p, q, case, k1, k2)
    keys = {r.key for r in reps}
    for r in reps:
        c = conjugate(r)
        assert c.key in keys
        assert (c.tb1, c.tb2, c.rot1, c.rot2, c.euler) == (r.tb1, r.tb2, -r.rot1, -r.rot2, -r.euler)
        assert conjugate(c) == r


@settings(max_examples=40, deadline=None)
@given(lenses(), regimes)
def test_reps_are_distinct_and_determined_by_class(lens, regime):
    p, q = lens
    reps = enumerate_reps(p, q, *regime)
    assert len({r.cls for r in reps}) == len(reps)
    assert len({r.key for r in reps}) == len(reps)


@settings(max_examples=30, deadline=None)
@given(lenses(pmax=7), regimes, st.sampled_from([1, 2]), st.sampled_from([1, -1]))
def test_stabilization_contract(lens, regime, comp, sign):
    p, q = lens
    for r in enumerate_reps(p, q, *regime):
        out = stabilize(r, comp, sign)
        assert isinstance(out, (NonLoose, NonLooseTorsion, LooseLink))
        if isinstance(out, NonLoose):
            n = out.rep
            dtb = (n.tb1 - r.tb1) if comp == 1 else (n.tb2 - r.tb2)
            drot = (n.rot1 - r.rot1) if comp == 1 else (n.rot2 - r.rot2)
            assert (dtb, drot) == (-1, sign)
            assert n.key in {x.key for x in enumerate_reps(p, q, n.case, n.k1, n.k2)}
            # Conjugation intertwines the two stabilizations.
            mirrored = stabilize(conjugate(r), comp, -sign)
            assert isinstance(mirrored, NonLoose) and mirrored.rep == conjugate(n)


def test_stabilization_commutes():
    for r in enumerate_reps(5, 2, HopfCase.LL, 2, 3):
        a, b = stabilize(r, 2, 1), stabilize(r, 2, -1)
        if isinstance(a, NonLoose) and isinstance(b, NonLoose):
            ab, ba = stabilize(a.rep, 2, -1), stabilize(b.rep, 2, 1)
            assert type(ab) is type(ba)
            if isinstance(ab, NonLoose):
                assert ab.rep.key == ba.rep.key


def test_uniform_stabilization_lowers_index():
    # A positive stabilization of the all-positive large L2 lands on the k2-1 class.
    r = rep_for(5, 1, HopfCase.LL, 0, 2, DecorationClass((2,), (0,)))
    out = stabilize(r, 2, 1)
    assert isinstance(out, NonLoose)
    assert out.rep.key == rep_for(5, 1, HopfCase.LL, 0, 1, DecorationClass((1,), (0,))).key
    assert isinstance(stabilize(r, 2, -1), LooseLink)


def test_stabilize_torsion_rep_rejected():
    rep = torsion_reps(5, 1, 0, 0, F(1, 2))[0]
    with pytest.raises(ValueError):
        stabilize(rep, 1, 1)


@pytest.mark.parametrize("q", [1, 2, 3])
@pytest.mark.parametrize("m", [F(1, 2), F(1), F(3, 2)])
def test_torsion_census_counts(q, m):
    for t1 in range(3):
        for t2 in range(3):
            reps = torsion_census(7, q, t1, t2, m).reps
            assert len(reps) == torsion_count(q, t1, t2)
            assert all(r.torsion == m for r in reps)


def test_torsion_both_small_is_tight_pair():
    census = torsion_census(5, 2, -1, -1, 1)
    assert census.ambient_tight
    assert len(census.reps) == 2
    assert not any(r.loose1 or r.loose2 for r in census.reps)


def test_torsion_rejects_bad_amount():
    with pytest.raises(ValueError):
        torsion_census(5, 1, 0, 0, F(1, 3))


def test_negative_hopf_reverses_l2():
    r = enumerate_reps(5, 2, HopfCase.LL, 1, 1)[0]
    n = negative_hopf(r)
    assert (n.rot1, n.rot2, n.tb2) == (r.rot1, -r.rot2, r.tb2)


@pytest.mark.parametrize("p,q,a", [(5, 3, (-2, -3)), (7, 3, (-3, -2, -2)), (11, 4, (-3, -4))])
def test_cf_coefficients(p, q, a):
    assert cf_coefficients(p, q) == a


def test_all_reps_covers_cases():
    reps = all_reps(3, 1, 1)
    assert Counter(r.case for r in reps).keys() == set(HopfCase)
