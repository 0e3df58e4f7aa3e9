import math
from collections import Counter
from fractions import Fraction as F

import pytest

from farey_hopf.classify import HopfCase, cf_coefficients, mountain_range
from farey_hopf.oracles import general_mountain_counts


def _shapes(mr, tb):
    """Counter of (kind, rot) for non-derived features with the given tb."""
    return Counter((f.kind, r) for f in mr.features if not f.derived for r, t in f.base if t == tb)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lp1_fix_l2_k0(p):
    mr = mountain_range(p, 1, 2, 0)
    assert _shapes(mr, 1 + F(1, p)) == Counter({("back", F(-(p + 2), p)): 1, ("forward", F(p + 2, p)): 1})
    assert _shapes(mr, 2 + F(1, p)) == Counter({("V", F(0)): 1})
    assert mr.count("cone") == 0


@pytest.mark.parametrize("p", [3, 5, 7])
def test_lp1_fix_l2_k1(p):
    mr = mountain_range(p, 1, 2, 1)
    assert _shapes(mr, F(1, p)) == Counter({("back", F(-2, p)): 1, ("forward", F(2, p)): 1})
    want = Counter(("V", F(-(p + 2 - 2 * m), p)) for m in range(1, p + 2))
    assert _shapes(mr, 1 + F(1, p)) == want


@pytest.mark.parametrize("p", [3, 5])
def test_lp1_fix_l2_k2(p):
    mr = mountain_range(p, 1, 2, 2)
    assert _shapes(mr, F(1, p)) == Counter({("back", F(-2, p)): 1, ("forward", F(2, p)): 1, ("V", F(0)): 1})
    # 2p V's counted with multiplicity.
    want = Counter(("V", F(-(p + 1 - 2 * m), p) + s * F(1, p)) for m in range(1, p + 1) for s in (1, -1))
    assert _shapes(mr, 1 + F(1, p)) == want


def test_lp1_fix_l2_eulers():
    mr = mountain_range(5, 1, 2, 1)
    eulers = {(f.kind, f.base[0][0]): f.euler for f in mr.features}
    assert eulers[("back", F(-2, 5))] == (-2,)
    assert eulers[("forward", F(2, 5))] == (2,)
    for m in range(1, 7):
        assert eulers[("V", F(-(7 - 2 * m), 5))] == (-(7 - 2 * m),)


def _general_counts(p, q, k1):
    mr = mountain_range(p, q, 1, k1, HopfCase.LL, bound=5)
    t = F(q, p)
    f = [x for x in mr.features if not x.derived]

    def n(kind, tb):
        return sum(1 for x in f if x.kind == kind and x.base[0][1] == tb)

    return n("forward", t), n("back", t), n("V", t), n("V", t + 1)


GENERAL = [(p, q) for p in range(3, 12) for q in range(2, p) if math.gcd(p, q) == 1]


@pytest.mark.parametrize("p,q", GENERAL)
@pytest.mark.parametrize("k1", [0, 1, 2])
def test_general_loose_counts(p, q, k1):
    assert _general_counts(p, q, k1) == general_mountain_counts(cf_coefficients(p, q), k1)


@pytest.mark.parametrize("k1", [0, 1, 2])
def test_five_two_counts(k1):
    # [-3, -2] is the two-coefficient case; the upper V count at k1 = 0 is |a0|.
    assert _general_counts(5, 2, k1) == general_mountain_counts((-3, -2), k1)


def test_cones_when_fixed_component_loose():
    mr = mountain_range(5, 1, 2, 1)
    assert mr.count("cone") > 0
    assert all(f.derived for f in mr.features if f.kind == "cone")


def test_negative_hopf_mirrors_free_component():
    mr = mountain_range(5, 2, 1, 0)
    neg = mr.negative_hopf()
    assert neg.count("forward") == mr.count("back")
    assert neg.count("V") == mr.count("V")
    assert neg.negative_hopf() == mr


def test_json_shape():
    doc = mountain_range(3, 1, 2, 0).to_json()
    assert set(doc) == {"p", "q", "case", "fixed", "k_fixed", "features"}
    assert {"type", "base", "euler", "derived"} == set(doc["features"][0])


def test_bad_fixed_component():
    with pytest.raises(ValueError):
        mountain_range(5, 1, 3, 0)
