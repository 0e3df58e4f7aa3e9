from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from farey_hopf.decorated import (
    DecoratedPath,
    DecorationClass,
    Overtwisted,
    Tight,
    block_decompose,
    class_of,
    count_decorations,
    enumerate_classes,
    evaluate,
    is_minimal,
    relative_euler_class,
    representative,
    try_shorten,
    turning_numbers,
)
from farey_hopf.farey import INF, Slope, lift_path, minimal_path
from farey_hopf.oracles import exhaustive_tight
from farey_hopf.selftest import alphabet_paths

PATHS = list(alphabet_paths(4))


def test_turning_numbers_of_integer_run():
    vecs = lift_path([Slope(-3, 1), Slope(-2, 1), Slope(-1, 1), Slope(0, 1)])
    assert turning_numbers(vecs) == [2, 2]
    assert block_decompose(vecs).lengths == (3,)


def test_blocks_split_at_continued_fraction_boundaries():
    # -7/3 = [-3,-2,-2] runs through one block; -17/7 = [-3,-2,-4] does not.
    assert block_decompose(minimal_path(INF, Slope(-7, 3))).lengths == (3,)
    path = minimal_path(INF, Slope(-17, 7))
    assert [str(v) for v in path] == ["inf", "-3", "-5/2", "-17/7"]
    bd = block_decompose(path)
    assert bd.lengths == (2, 1)
    assert count_decorations(path) == 6
    assert bd.block_of(2) == 1


def test_block_decompose_rejects_non_minimal():
    vecs = lift_path([Slope(-2, 1), Slope(-3, 2), Slope(-1, 1)])
    assert not is_minimal(vecs)
    with pytest.raises(ValueError):
        block_decompose(vecs)


def test_decorated_path_validation():
    vecs = tuple(lift_path([Slope(-2, 1), Slope(-1, 1)]))
    with pytest.raises(ValueError):
        DecoratedPath(vecs, (1, 1))
    with pytest.raises(ValueError):
        DecoratedPath(vecs, (0,))
    with pytest.raises(ValueError):
        DecoratedPath(((-2, 1), (-1, 1), (-2, 1)), (1, 1))


def test_class_json_and_conjugate():
    cls = DecorationClass((3, 1), (1, 0))
    assert DecorationClass.from_json(cls.to_json()) == cls
    assert cls.conjugate() == DecorationClass((3, 1), (2, 1))
    assert cls.uniform_sign == 0
    assert DecorationClass((2,), (2,)).uniform_sign == -1
    with pytest.raises(ValueError):
        DecorationClass((2,), (3,))


def test_representative_lands_in_class():
    path = minimal_path(INF, Slope(-17, 7))
    for cls in enumerate_classes(path):
        assert class_of(representative(path, cls)) == cls


def test_euler_class_sign_flip():
    dp = DecoratedPath.from_path(minimal_path(Slope(-3, 1), Slope(0, 1)), (1, -1, 1))
    e = relative_euler_class(dp)
    en = relative_euler_class(dp.negate())
    assert en == (-e[0], -e[1])
    assert evaluate(e, Slope(1, 0)) == -evaluate(en, Slope(1, 0))


def test_consistent_shortening_examples():
    vecs = tuple(lift_path([Slope(-2, 1), Slope(-3, 2), Slope(-1, 1)]))
    # Two edges around a turning-number-1 vertex with one sign merge.
    same = try_shorten(DecoratedPath(vecs, (1, 1)))
    assert isinstance(same, Tight)
    assert len(same.path) == 1
    assert isinstance(try_shorten(DecoratedPath(vecs, (1, -1))), Overtwisted)


def test_winding_path_rejected():
    vecs = tuple(lift_path([Slope(-1, 1), Slope(0, 1), Slope(1, 1), INF, Slope(-1, 1)]))
    with pytest.raises(ValueError):
        try_shorten(DecoratedPath(vecs, (1, 1, 1, 1)))


@pytest.mark.parametrize("vecs", PATHS[:400])
def test_try_shorten_matches_exhaustive(vecs):
    for signs in product((1, -1), repeat=len(vecs) - 1):
        assert try_shorten(DecoratedPath(vecs, signs)).tight == exhaustive_tight(vecs, signs)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PATHS), st.data())
def test_shortening_result_is_minimal_and_shuffle_invariant(vecs, data):
    signs = tuple(data.draw(st.sampled_from((1, -1))) for _ in range(len(vecs) - 1))
    res = try_shorten(DecoratedPath(vecs, signs))
    if res.tight:
        assert is_minimal(res.path.vectors)
        assert res.path.vectors[0] == vecs[0] and res.path.vectors[-1] == vecs[-1]
    # Negating every sign cannot change tightness.
    assert try_shorten(DecoratedPath(vecs, tuple(-s for s in signs))).tight == res.tight


@given(st.integers(1, 6), st.integers(0, 6))
def test_shuffle_inside_block_keeps_class(n, m):
    m = min(m, n)
    vecs = lift_path([Slope(-n - 1 + i, 1) for i in range(n + 1)])
    base = [-1] * m + [1] * (n - m)
    shuffled = list(reversed(base))
    c1 = class_of(DecoratedPath(tuple(vecs), tuple(base)))
    c2 = class_of(DecoratedPath(tuple(vecs), tuple(shuffled)))
    assert c1 == c2 == DecorationClass((n,), (m,))
    assert relative_euler_class(DecoratedPath(tuple(vecs), tuple(base))) == relative_euler_class(
        DecoratedPath(tuple(vecs), tuple(shuffled))
    )
