"""Non-loose Legendrian Hopf links in L(p, q).

``L(p, q)`` is split as a solid torus ``V1`` with lower meridian ``-p/q`` and a
solid torus ``V2`` with upper meridian ``0``.  A Legendrian Hopf link
``L1 u L2`` (cores of ``V1`` and ``V2``) is recorded by the dividing slopes of
standard neighbourhoods of its components plus a tight, minimally twisting
structure on the complement, i.e. a decorated minimal Farey path.

Slope indices follow the tb shift: a large slope with index ``k`` has
``tb = k + (fraction)`` and a small one has ``tb = -k - (fraction)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Union

from .decorated import (
    DecoratedPath,
    DecorationClass,
    Tight,
    class_of,
    enumerate_classes,
    relative_euler_class,
    try_shorten,
    winds,
)
from .farey import (
    BASIS_CHANGE,
    INF,
    ZERO,
    MobiusMap,
    Slope,
    Vector,
    acw_neighbor,
    cw_neighbor,
    det,
    farey_sum,
    lift_path,
    minimal_path,
    neg_cf_expand,
)


class HopfCase(str, enum.Enum):
    """Which component sits on a small slope; small-small is tight and excluded."""

    SL = "SL"  # L1 small, L2 large
    LS = "LS"  # L1 large, L2 small
    LL = "LL"

    @property
    def size1(self) -> str:
        return "small" if self is HopfCase.SL else "large"

    @property
    def size2(self) -> str:
        return "small" if self is HopfCase.LS else "large"

    @classmethod
    def parse(cls, text: str) -> HopfCase:
        aliases = {"1": "SL", "2": "LS", "3": "LL"}
        return cls(aliases.get(str(text), str(text).upper()))


def case_from_sizes(size1: str, size2: str) -> Optional[HopfCase]:
    """The case for a pair of sizes; ``None`` for small-small."""
    if size1 == "small" and size2 == "small":
        return None
    if size1 == "small":
        return HopfCase.SL
    if size2 == "small":
        return HopfCase.LS
    return HopfCase.LL


def check_lens(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise TypeError("p and q must be integers")
    if not (p > q >= 1) or math.gcd(p, q) != 1:
        raise ValueError(f"L({p},{q}) needs p > q >= 1 with gcd(p, q) = 1")


# --- slopes ----------------------------------------------------------------------


def meridian(p: int, q: int) -> Slope:
    return Slope(-p, q)


@dataclass(frozen=True)
class NeighborData:
    """``(-p/q)^a = -p'/q'`` and ``(-p/q)^c = -p''/q''`` with ``p' + p'' = p``."""

    p1: int
    q1: int
    p2: int
    q2: int


def neighbor_data(p: int, q: int) -> NeighborData:
    check_lens(p, q)
    m = meridian(p, q)
    a = acw_neighbor(m)
    c = cw_neighbor(m)
    # inf is read as -1/0 here, giving p' = 1, q' = 0 when q = 1.
    p1, q1 = (1, 0) if a.is_inf else (-a.num, a.den)
    return NeighborData(p1, q1, -c.num, c.den)


def slope_l1(p: int, q: int, size: str, k: int) -> Slope:
    """Dividing slope of ``L1`` with index ``k >= 0``."""
    if k < 0:
        raise ValueError("slope index must be >= 0")
    m = meridian(p, q)
    if size == "small":
        return farey_sum(cw_neighbor(m), m, k)
    if size == "large":
        return farey_sum(acw_neighbor(m), m, k)
    raise ValueError(f"unknown size {size!r}")


def slope_l2(size: str, k: int) -> Slope:
    """Dividing slope of ``L2``: ``1/k`` when large, ``-1/k`` (``k >= 1``) when small."""
    if size == "large":
        if k < 0:
            raise ValueError("slope index must be >= 0")
        return farey_sum(INF, ZERO, k)
    if size == "small":
        if k < 1:
            raise ValueError("small slopes of L2 start at index 1; index 0 is the large slope inf")
        return Slope(-1, k)
    raise ValueError(f"unknown size {size!r}")


def dividing_slopes(p: int, q: int, case: HopfCase, k1: int, k2: int) -> tuple[Slope, Slope]:
    check_lens(p, q)
    case = HopfCase(case)
    return slope_l1(p, q, case.size1, k1), slope_l2(case.size2, k2)


def tb_rational(p: int, q: int, s: Slope, component: int, size: str) -> Fraction:
    """``tb = +-|s . seifert| / p`` with sign + for large slopes."""
    seifert = ZERO if component == 1 else meridian(p, q)
    value = Fraction(abs(det(s.vector, seifert.vector)), p)
    if size == "large":
        return value
    if size == "small":
        return -value
    raise ValueError(f"unknown size {size!r}")


# --- representatives ----------------------------------------------------------------


def _start_lift(s: Slope) -> Vector:
    return (-1, 0) if s.is_inf else s.vector


def complement_vectors(s1: Slope, s2: Slope) -> tuple[Vector, ...]:
    """Lifted minimal path from ``s1`` to ``s2``; a single vector when they agree."""
    if s1 == s2:
        return (_start_lift(s1),)
    return tuple(lift_path(minimal_path(s1, s2).vertices))


@dataclass(frozen=True)
class HopfRep:
    p: int
    q: int
    case: Optional[HopfCase]
    k1: int
    k2: int
    cls: DecorationClass
    tb1: Fraction
    tb2: Fraction
    rot1: Fraction
    rot2: Fraction
    euler: int
    loose1: bool
    loose2: bool
    torsion: Fraction = Fraction(0)
    # Sign of a uniformly decorated torsion complement; 0 without torsion.
    torsion_sign: int = 0
    path: DecoratedPath = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    @property
    def key(self) -> tuple:
        return (self.p, self.q, self.case, self.k1, self.k2, self.cls, self.torsion, self.torsion_sign)

    @property
    def sizes(self) -> tuple[str, str]:
        return _sizes(self.case, self.k1, self.k2)

    @property
    def invariants(self) -> tuple[Fraction, Fraction, Fraction, Fraction, int]:
        return (self.tb1, self.tb2, self.rot1, self.rot2, self.euler)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "case": self.case.value if self.case is not None else None,
            "k1": self.k1,
            "k2": self.k2,
            "class": self.cls.to_json(),
            "tb": [str(self.tb1), str(self.tb2)],
            "rot": [str(self.rot1), str(self.rot2)],
            "euler": self.euler,
            "loose": [self.loose1, self.loose2],
            "torsion": str(self.torsion),
        }


def _sizes(case: Optional[HopfCase], k1: int, k2: int) -> tuple[str, str]:
    if case is None:
        return ("small", "small")
    return (case.size1, case.size2)


def is_i_invariant(p: int, q: int, case: Optional[HopfCase], k1: int, k2: int) -> bool:
    return q == 1 and case is HopfCase.LL and k1 == 0 and k2 == 0


def looseness(p: int, q: int, case: Optional[HopfCase], k1: int, k2: int, torsion: Fraction) -> tuple[bool, bool]:
    """A component is non-loose exactly when it is large and the other is small."""
    if torsion == 0 and is_i_invariant(p, q, case, k1, k2):
        return (False, False)
    size1, size2 = _sizes(case, k1, k2)
    return (not (size1 == "large" and size2 == "small"), not (size2 == "large" and size1 == "small"))


def _evaluate_all(p: int, q: int, pd: Vector, s2: Slope) -> tuple[Fraction, Fraction, int]:
    # Move the path into the negative region when s2 > 0 before pairing; the
    # pairing is invariant under the determinant-one change, so this only
    # mirrors the hand computation.
    m: MobiusMap = BASIS_CHANGE if (not s2.is_inf and s2.num > 0) else MobiusMap(1, 0, 0, 1)
    e = m.apply_vector(pd)
    d2 = det(m.apply_vector(ZERO.vector), e)
    d1 = det(m.apply_vector(meridian(p, q).vector), e)
    return Fraction(d2, p), Fraction(d1, p), d2


def rotation_and_euler(rep: HopfRep) -> tuple[Fraction, Fraction, int]:
    """``(rot1, rot2, euler)`` with ``euler = e(D2) = p * rot1``."""
    s2 = slope_l2(rep.sizes[1], rep.k2)
    return _evaluate_all(rep.p, rep.q, _rep_pd(rep), s2)


def _rep_pd(rep: HopfRep) -> Vector:
    if rep.torsion == 0:
        return relative_euler_class(rep.path)
    return _torsion_pd(rep.path.vectors, rep.torsion, rep.torsion_sign, rep.path.vectors == ((-1, 0),))


def _torsion_pd(vectors: tuple[Vector, ...], torsion: Fraction, sign: int, i_invariant: bool) -> Vector:
    # A uniformly signed path with 2m extra half turns telescopes to
    # sign * ((-1)^(2m) v_end - v_start).
    half_turns = int(2 * torsion)
    if i_invariant:
        return (0, 0) if half_turns % 2 == 0 else (2 * sign, 0)
    flip = -1 if half_turns % 2 else 1
    (x0, y0), (x1, y1) = vectors[0], vectors[-1]
    return (sign * (flip * x1 - x0), sign * (flip * y1 - y0))


def _make_rep(p, q, case, k1, k2, dp: DecoratedPath, cls, torsion=Fraction(0), torsion_sign=0) -> HopfRep:
    size1, size2 = _sizes(case, k1, k2)
    s1, s2 = slope_l1(p, q, size1, k1), slope_l2(size2, k2)
    stub = HopfRep(
        p, q, case, k1, k2, cls,
        tb_rational(p, q, s1, 1, size1), tb_rational(p, q, s2, 2, size2),
        Fraction(0), Fraction(0), 0,
        *looseness(p, q, case, k1, k2, torsion),
        torsion=torsion, torsion_sign=torsion_sign, path=dp,
    )
    rot1, rot2, euler = rotation_and_euler(stub)
    return replace(stub, rot1=rot1, rot2=rot2, euler=euler)


def _representative_signs(cls: DecorationClass) -> tuple[int, ...]:
    signs: list[int] = []
    for n, m in zip(cls.lengths, cls.negatives):
        signs.extend([-1] * m + [1] * (n - m))
    return tuple(signs)


def enumerate_reps(p: int, q: int, case: HopfCase, k1: int, k2: int) -> list[HopfRep]:
    """All zero-torsion non-loose representatives with the given slope indices."""
    case = HopfCase(case)
    s1, s2 = dividing_slopes(p, q, case, k1, k2)
    vectors = complement_vectors(s1, s2)
    reps = []
    for cls in enumerate_classes(vectors):
        dp = DecoratedPath(vectors, _representative_signs(cls))
        reps.append(_make_rep(p, q, case, k1, k2, dp, cls))
    return reps


def rep_for(p: int, q: int, case: HopfCase, k1: int, k2: int, cls: DecorationClass) -> HopfRep:
    s1, s2 = dividing_slopes(p, q, case, k1, k2)
    vectors = complement_vectors(s1, s2)
    dp = DecoratedPath(vectors, _representative_signs(cls))
    if class_of(dp) != cls:
        raise ValueError("class does not fit the complement path")
    return _make_rep(p, q, HopfCase(case), k1, k2, dp, cls)


def conjugate(rep: HopfRep) -> HopfRep:
    """The representative with every sign flipped."""
    if rep.torsion:
        return _torsion_rep(rep.p, rep.q, rep.case, rep.k1, rep.k2, rep.torsion, -rep.torsion_sign)
    return rep_for(rep.p, rep.q, rep.case, rep.k1, rep.k2, rep.cls.conjugate())


def negative_hopf(rep: HopfRep) -> HopfRep:
    """Invariants for the negative Hopf link: reverse ``L2``, negating its rotation."""
    return replace(rep, rot2=-rep.rot2)


# --- Giroux torsion -----------------------------------------------------------------


def _torsion_rep(p, q, case, k1, k2, torsion: Fraction, sign: int) -> HopfRep:
    size1, size2 = _sizes(case, k1, k2)
    s1, s2 = slope_l1(p, q, size1, k1), slope_l2(size2, k2)
    vectors = complement_vectors(s1, s2)
    dp = DecoratedPath(vectors, (sign,) * (len(vectors) - 1))
    if len(vectors) > 1:
        cls = class_of(dp)
    else:
        cls = DecorationClass((), ())
    return _make_rep(p, q, case, k1, k2, dp, cls, torsion=Fraction(torsion), torsion_sign=sign)


def theorem_indices(size1: str, k1: int, size2: str, k2: int) -> tuple[int, int]:
    """Signed indices: negative values mark small slopes, large ones keep ``k``."""
    t1 = k1 if size1 == "large" else -k1 - 1
    t2 = k2 if size2 == "large" else -k2
    return t1, t2


def _from_theorem_indices(t1: int, t2: int) -> tuple[str, int, str, int]:
    size1, k1 = ("large", t1) if t1 >= 0 else ("small", -t1 - 1)
    size2, k2 = ("large", t2) if t2 >= 0 else ("small", -t2)
    return size1, k1, size2, k2


@dataclass(frozen=True)
class TorsionCensus:
    reps: tuple[HopfRep, ...]
    ambient_tight: bool = False


def torsion_census(p: int, q: int, t1: int, t2: int, m: Union[Fraction, int, float, str]) -> TorsionCensus:
    """Representatives with ``m`` (half-integer) convex Giroux torsion.

    Indices are signed: ``t >= 0`` is the large slope with index ``t``;
    ``t1 < 0`` is the small ``L1`` slope with index ``-t1 - 1`` and
    ``t2 < 0`` the small ``L2`` slope with index ``-t2``.
    """
    check_lens(p, q)
    m = Fraction(m)
    if m <= 0 or (2 * m).denominator != 1:
        raise ValueError("torsion must be a positive multiple of 1/2")
    size1, k1, size2, k2 = _from_theorem_indices(t1, t2)
    case = case_from_sizes(size1, size2)
    if case is None:
        # Both slopes small: the ambient lens space is tight, so nothing is loose.
        pair = tuple(replace(_torsion_rep(p, q, None, k1, k2, m, s), loose1=False, loose2=False) for s in (1, -1))
        return TorsionCensus(pair, ambient_tight=True)
    if is_i_invariant(p, q, case, k1, k2):
        return TorsionCensus((_torsion_rep(p, q, case, k1, k2, m, 1),))
    return TorsionCensus(tuple(_torsion_rep(p, q, case, k1, k2, m, s) for s in (1, -1)))


def torsion_reps(p: int, q: int, k1: int, k2: int, m) -> list[HopfRep]:
    """Torsion representatives for signed indices."""
    return list(torsion_census(p, q, k1, k2, m).reps)


# --- stabilization --------------------------------------------------------------------


@dataclass(frozen=True)
class NonLoose:
    rep: HopfRep
    kind = "nonloose"


@dataclass(frozen=True)
class NonLooseTorsion:
    rep: HopfRep
    kind = "torsion"


@dataclass(frozen=True)
class LooseLink:
    kind = "loose"


StabOutcome = Union[NonLoose, NonLooseTorsion, LooseLink]


def stabilized_indices(case: Optional[HopfCase], k1: int, k2: int, component: int) -> tuple[str, int, str, int]:
    """Sizes and indices after one stabilization of ``component``.

    Large slopes step ``k -> k - 1``; from index 0 they cross the meridian to
    the first small slope.  Small slopes step ``k -> k + 1``.
    """
    size1, size2 = _sizes(case, k1, k2)
    if component == 1:
        if size1 == "large":
            size1, k1 = ("large", k1 - 1) if k1 > 0 else ("small", 0)
        else:
            k1 += 1
    elif component == 2:
        if size2 == "large":
            size2, k2 = ("large", k2 - 1) if k2 > 0 else ("small", 1)
        else:
            k2 += 1
    else:
        raise ValueError("component must be 1 or 2")
    return size1, k1, size2, k2


def extended_path(rep: HopfRep, component: int, sign: int) -> tuple[DecoratedPath, tuple[str, int, str, int]]:
    """The complement path with the stabilizing basic slice attached.

    A positive (negative) stabilization attaches a positive (negative) slice
    next to a large slope and a negative (positive) one next to a small slope,
    measured in the frame of the existing lift.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    size = rep.sizes[component - 1]
    eps = sign if size == "large" else -sign
    new = stabilized_indices(rep.case, rep.k1, rep.k2, component)
    vectors = list(rep.path.vectors)
    signs = list(rep.path.signs)
    if component == 1:
        target = slope_l1(rep.p, rep.q, new[0], new[1])
        w = target.vector
        if det(w, vectors[0]) == 1:
            w = (-w[0], -w[1])
        vectors.insert(0, w)
        signs.insert(0, eps)
    else:
        if len(vectors) == 1:
            # A one-point complement is inf; as an end point it is read as 1/0.
            vectors = [(-vectors[0][0], -vectors[0][1])]
        target = slope_l2(new[2], new[3])
        w = target.vector
        if det(vectors[-1], w) == 1:
            w = (-w[0], -w[1])
        vectors.append(w)
        signs.append(eps)
    return DecoratedPath(tuple(vectors), tuple(signs)), new


def _canonical_frame(dp: DecoratedPath) -> tuple[DecoratedPath, bool]:
    start = _start_lift(dp.vertices[0])
    if dp.vectors[0] == start:
        return dp, False
    flipped = DecoratedPath(tuple((-x, -y) for x, y in dp.vectors), tuple(-s for s in dp.signs))
    return flipped, True


def stabilize(rep: HopfRep, component: int, sign: int) -> StabOutcome:
    """Outcome of stabilizing one component of a zero-torsion representative."""
    if rep.torsion:
        raise ValueError("stabilizing representatives with Giroux torsion is not supported")
    ext, (size1, k1, size2, k2) = extended_path(rep, component, sign)
    case = case_from_sizes(size1, size2)
    if winds(ext.vectors):
        eps = ext.signs[0] if component == 1 else ext.signs[-1]
        if any(s != eps for s in ext.signs):
            return LooseLink()
        _, flipped = _canonical_frame(ext)
        return NonLooseTorsion(_torsion_rep(rep.p, rep.q, case, k1, k2, Fraction(1, 2), -eps if flipped else eps))
    result = try_shorten(ext)
    if not isinstance(result, Tight):
        return LooseLink()
    dp, _ = _canonical_frame(result.path)
    return NonLoose(_make_rep(rep.p, rep.q, case, k1, k2, dp, class_of(dp)))


# --- mountain ranges -----------------------------------------------------------------


@dataclass(frozen=True)
class Feature:
    kind: str  # "V", "forward", "back" or "cone"
    base: tuple[tuple[Fraction, Fraction], ...]
    euler: tuple[int, ...]
    derived: bool = False

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "base": [[str(r), str(t)] for r, t in self.base],
            "euler": list(self.euler),
            "derived": self.derived,
        }


@dataclass(frozen=True)
class MountainRange:
    p: int
    q: int
    case: HopfCase
    fixed: int
    k_fixed: int
    features: tuple[Feature, ...]

    def count(self, kind: str) -> int:
        return sum(1 for f in self.features if f.kind == kind)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "case": self.case.value,
            "fixed": self.fixed,
            "k_fixed": self.k_fixed,
            "features": [f.to_json() for f in self.features],
        }

    def negative_hopf(self) -> MountainRange:
        """Mountain range for the negative Hopf link: ``L2`` reversed."""
        swap = {"forward": "back", "back": "forward"}
        feats = []
        for f in self.features:
            if self.fixed == 1:
                # Free component L2 is reversed: negate rot and swap chirality.
                feats.append(replace(f, kind=swap.get(f.kind, f.kind), base=tuple((-r, t) for r, t in f.base)))
            elif f.kind == "cone":
                feats.append(replace(f, base=tuple((-r, t) for r, t in f.base)))
            else:
                feats.append(f)
        return replace(self, features=tuple(feats))


DEFAULT_SCAN = 8


def _free_point(rep: HopfRep, free: int) -> tuple[Fraction, Fraction]:
    return (rep.rot1, rep.tb1) if free == 1 else (rep.rot2, rep.tb2)


def mountain_range(
    p: int,
    q: int,
    fixed: int,
    k_fixed: int,
    case: HopfCase = HopfCase.LL,
    bound: int = DEFAULT_SCAN,
) -> MountainRange:
    """Stabilization features of the free component with the other one fixed.

    Representatives of the free component are scanned up to index ``bound``
    (one further level is enumerated so that every scanned base sees its
    preimages).  A base is a representative none of whose stabilizations is
    non-loose without torsion; it heads a V when it is reached by both
    stabilizations, a forward slash when only by ``S-`` and a back slash when
    only by ``S+``.  Bases are merged when both their own point and the
    fixed component's point agree.  A loose fixed
    component contributes a cone at each of its distinct points; those are
    marked as derived.
    """
    check_lens(p, q)
    case = HopfCase(case)
    if fixed not in (1, 2):
        raise ValueError("fixed component must be 1 or 2")
    free = 3 - fixed
    free_size = case.size2 if free == 2 else case.size1
    start = 1 if (free == 2 and free_size == "small") else 0
    by_level: dict[int, list[HopfRep]] = {}
    for k in range(start, bound + 2):
        k1, k2 = (k_fixed, k) if free == 2 else (k, k_fixed)
        by_level[k] = enumerate_reps(p, q, case, k1, k2)
    scanned = [r for k in range(start, bound + 1) for r in by_level[k]]
    preimage_signs: dict[tuple, set[int]] = {}
    for k in range(start, bound + 2):
        for r in by_level[k]:
            for sign in (1, -1):
                out = stabilize(r, free, sign)
                if isinstance(out, NonLoose):
                    preimage_signs.setdefault(out.rep.key, set()).add(sign)
    # Bases are grouped by their own point and the fixed component's point.
    grouped: dict[tuple, tuple[set[int], set[int]]] = {}
    order: list[tuple] = []
    for r in scanned:
        if any(isinstance(stabilize(r, free, s), NonLoose) for s in (1, -1)):
            continue
        key = (_free_point(r, free), _free_point(r, fixed))
        if key not in grouped:
            grouped[key] = (set(), set())
            order.append(key)
        grouped[key][0].update(preimage_signs.get(r.key, set()))
        grouped[key][1].add(r.euler)
    kinds = {frozenset({1, -1}): "V", frozenset({-1}): "forward", frozenset({1}): "back"}
    features: list[Feature] = []
    for key in order:
        signs, eulers = grouped[key]
        if signs:
            features.append(Feature(kinds[frozenset(signs)], (key[0],), tuple(sorted(eulers))))
    fixed_loose = [r for r in by_level.get(start, []) if (r.loose1 if fixed == 1 else r.loose2)]
    if fixed_loose:
        cone_points: dict[tuple[Fraction, Fraction], set[int]] = {}
        for r in scanned:
            pt = (r.rot1, r.tb1) if fixed == 1 else (r.rot2, r.tb2)
            cone_points.setdefault(pt, set()).add(r.euler)
        for pt in sorted(cone_points):
            features.append(Feature("cone", (pt,), tuple(sorted(cone_points[pt])), derived=True))
    return MountainRange(p, q, case, fixed, k_fixed, tuple(features))


# --- continued fraction helpers used by closed forms ---------------------------------------


def cf_coefficients(p: int, q: int) -> tuple[int, ...]:
    return neg_cf_expand(meridian(p, q)).coefficients


def all_reps(p: int, q: int, kmax: int, cases: Iterable[HopfCase] = tuple(HopfCase)) -> list[HopfRep]:
    out: list[HopfRep] = []
    for case in cases:
        for k1 in range(kmax + 1):
            for k2 in range(kmax + 1):
                if case is HopfCase.LS and k2 == 0:
                    continue
                out.extend(enumerate_reps(p, q, case, k1, k2))
    return out
