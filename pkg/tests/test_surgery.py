import json
import math
from collections import Counter
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farey_hopf.classify import HopfCase, conjugate, enumerate_reps, torsion_reps
from farey_hopf.surgery import (
    Component,
    SurgeryDiagram,
    build_diagram,
    chain_determinant,
    determinant,
    diagram_invariants,
    expected_invariants,
    lens_type,
    linking_matrix,
    parse_json,
    recipe,
    render,
    same_lens,
    smooth_chain,
    verify_lens,
)


def _diagram(*aux, l1=(0, 0), l2=(0, 0), twist=0):
    comps = [Component("L2", None, *l2)]
    comps += [Component("Aux", c, sp, sn) for c, sp, sn in aux]
    comps.append(Component("L1", None, *l1))
    return SurgeryDiagram(tuple(comps), twist)


def test_single_aux_matrix():
    d = _diagram((-1, 0, 0))
    assert smooth_chain(d) == [[-2]]
    assert linking_matrix(d) == [[-2]]


def test_empty_aux_set():
    d = _diagram()
    assert smooth_chain(d) == []
    assert chain_determinant([]) == 1
    assert determinant([]) == 1
    assert render(SurgeryDiagram(()), "ascii") == ""


def test_l52_case2_chain():
    rep = enumerate_reps(5, 2, HopfCase.LS, 0, 1)[0]
    d = build_diagram(rep)
    mat = smooth_chain(d)
    assert all(mat[i][j] == 0 for i in range(len(mat)) for j in range(len(mat)) if abs(i - j) > 1)
    assert abs(chain_determinant(mat)) == 5
    assert verify_lens(d, 5, 2).ok


def test_lp1_minus_one_chain_reads_back():
    # One contact (-1) surgery on a (p-2)-fold stabilized unknot has framing -p.
    for p in range(2, 9):
        d = _diagram((-1, p - 2, 0))
        res = verify_lens(d, p, 1)
        assert res.ok and abs(res.det) == p


def test_corrupted_framing_is_caught():
    rep = enumerate_reps(7, 3, HopfCase.LL, 1, 2)[0]
    d = build_diagram(rep)
    comps = list(d.components)
    i = next(j for j, c in enumerate(comps) if c.role == "Aux")
    comps[i] = replace(comps[i], stab_pos=comps[i].stab_pos + 1)
    bad = verify_lens(replace(d, components=tuple(comps)), 7, 3)
    assert not bad.ok
    assert bad.det != verify_lens(d, 7, 3).det


def test_component_validation():
    with pytest.raises(ValueError):
        Component("Aux", 2)
    with pytest.raises(ValueError):
        Component("L1", -1)
    with pytest.raises(ValueError):
        Component("Foo", None)
    with pytest.raises(ValueError):
        Component("Aux", 1, -1, 0)


def test_same_lens():
    assert same_lens(7, 3, 5)  # 3 * 5 = 15 = 1 mod 7
    assert same_lens(7, 3, 4)  # -3 mod 7
    assert not same_lens(7, 3, 1)


def test_unknown_format():
    with pytest.raises(ValueError):
        render(_diagram(), "png")


def test_ascii_shows_pair_block_and_repeated_minus_ones():
    d = _diagram((1, 0, 0), (1, 0, 0), (-1, 1, 0), (-1, 0, 0), (-1, 0, 0), (-1, 0, 0))
    text = render(d, "ascii")
    assert "[+1]  stab +0 -0 x2" in text
    assert "[-1]  stab +0 -0 x3" in text


def test_svg_is_wellformed():
    from xml.etree import ElementTree

    d = build_diagram(enumerate_reps(5, 1, HopfCase.SL, 1, 1)[0])
    root = ElementTree.fromstring(render(d, "svg").encode())
    assert root.tag.endswith("svg")
    assert sum(1 for e in root.iter() if e.tag.endswith("ellipse")) == len(d.components)


def test_torsion_rep_has_no_diagram():
    with pytest.raises(ValueError):
        build_diagram(torsion_reps(5, 1, 0, 0, 1)[0])


def test_recipe_budgets_fill_blocks():
    for case, k1, k2 in [(HopfCase.LL, 2, 3), (HopfCase.SL, 1, 2), (HopfCase.LS, 2, 2)]:
        rec = recipe(11, 4, case, k1, k2)
        rep = enumerate_reps(11, 4, case, k1, k2)[0]
        assert sum(rec.budgets) == sum(rep.cls.lengths)


LENSES = [(p, q) for p in range(2, 10) for q in range(1, p) if math.gcd(p, q) == 1]
regimes = st.tuples(st.sampled_from(list(HopfCase)), st.integers(0, 3), st.integers(0, 3)).filter(
    lambda r: not (r[0] is HopfCase.LS and r[2] == 0)
)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(LENSES), regimes, st.data())
def test_diagram_realizes_invariants(lens, regime, data):
    p, q = lens
    reps = enumerate_reps(p, q, *regime)
    rep = data.draw(st.sampled_from(reps))
    d = build_diagram(rep)
    assert verify_lens(d, p, q).ok
    inv = diagram_invariants(d)
    assert inv == expected_invariants(rep)
    got_p, got_q = lens_type(d)
    assert got_p == p and same_lens(p, q, got_q)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(LENSES), regimes)
def test_count_fidelity_and_mirror(lens, regime):
    p, q = lens
    reps = enumerate_reps(p, q, *regime)
    diagrams = [build_diagram(r) for r in reps]
    assert len(set(diagrams)) == len(reps)
    for r, d in zip(reps, diagrams):
        m = build_diagram(conjugate(r))
        assert m == d.mirror()
        assert smooth_chain(m) == smooth_chain(d)
        assert linking_matrix(m) == linking_matrix(d)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(LENSES), regimes)
def test_json_round_trip(lens, regime):
    p, q = lens
    for r in enumerate_reps(p, q, *regime)[:4]:
        d = build_diagram(r)
        assert parse_json(render(d, "json")) == d
        assert parse_json(json.loads(render(d, "json"))) == d


def test_budget_conservation_over_enumeration():
    for r in enumerate_reps(8, 3, HopfCase.LL, 2, 2):
        d = build_diagram(r)
        assert sum(c.stabs for c in d.components) == sum(recipe(8, 3, HopfCase.LL, 2, 2).budgets)
    counts = Counter(build_diagram(r).twist for r in enumerate_reps(8, 3, HopfCase.LL, 2, 2))
    assert len(counts) == 1
