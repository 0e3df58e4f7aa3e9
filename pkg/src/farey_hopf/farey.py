"""Exact slope arithmetic on the Farey graph.

Slopes are elements of Q u {inf} stored as reduced integer pairs.  A slope
``a/b`` is identified with the curve class ``(a, b)`` in H_1(T^2); two slopes
span a Farey edge when the determinant of their vectors is +-1.

Clockwise order on the Farey circle is the order of increasing slope value,
starting just after ``inf`` at -infinity and ending at ``inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Vector = tuple[int, int]


@dataclass(frozen=True)
class Slope:
    """A reduced slope ``num/den`` with ``den >= 0``; ``inf`` is ``(1, 0)``."""

    num: int
    den: int

    def __post_init__(self) -> None:
        num, den = self.num, self.den
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a slope")
        g = math.gcd(num, den)
        num, den = num // g, den // g
        if den < 0 or (den == 0 and num < 0):
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def is_inf(self) -> bool:
        return self.den == 0

    @property
    def vector(self) -> Vector:
        return (self.num, self.den)

    def value(self) -> Fraction:
        if self.is_inf:
            raise ValueError("inf has no rational value")
        return Fraction(self.num, self.den)

    def sort_key(self) -> tuple[int, Fraction]:
        """Key placing ``inf`` after every rational slope."""
        if self.is_inf:
            return (1, Fraction(0))
        return (0, self.value())

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        if self.den == 1:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Slope({self})"


INF = Slope(1, 0)
ZERO = Slope(0, 1)


def slope(num: int, den: int = 1) -> Slope:
    """Canonical slope for the pair ``(num, den)``; all ``(k, 0)`` give ``inf``."""
    return Slope(num, den)


def from_vector(v: Vector) -> Slope:
    return Slope(v[0], v[1])


def parse_slope(text: str) -> Slope:
    """Parse ``"a/b"``, ``"a"`` or ``"inf"``."""
    t = text.strip().replace("−", "-")
    if t.lower() in ("inf", "infinity", "∞", "1/0", "-1/0"):
        return INF
    if "/" in t:
        a, b = t.split("/", 1)
        return Slope(int(a), int(b))
    return Slope(int(t), 1)


def det(u: Vector, v: Vector) -> int:
    return u[0] * v[1] - u[1] * v[0]


def farey_dot(a: Slope, b: Slope) -> int:
    """The Farey dot product ``a/b . c/d = ad - bc``."""
    return det(a.vector, b.vector)


def adjacent(a: Slope, b: Slope) -> bool:
    return abs(farey_dot(a, b)) == 1


def _lift_inf_towards(other: Slope) -> Vector:
    # inf sits at both ends of the real line; take the end on other's side.
    return (-1, 0) if other.num < 0 else (1, 0)


def farey_sum(a: Slope, b: Slope, k: int = 1) -> Slope:
    """The iterated Farey sum ``a (+) k.b`` on canonical representatives.

    ``inf`` is read as ``-1/0`` next to a negative partner, so that
    ``inf (+) k(-p) = -(kp+1)/k`` while ``inf (+) k.0 = 1/k``.  ``k`` may be
    zero (returns ``a``) or negative (continues past ``b``).
    """
    if not adjacent(a, b):
        raise ValueError(f"{a} and {b} do not share a Farey edge")
    va = _lift_inf_towards(b) if a.is_inf else a.vector
    vb = _lift_inf_towards(a) if b.is_inf else b.vector
    return Slope(va[0] + k * vb[0], va[1] + k * vb[1])


# --- negative continued fractions -------------------------------------------


@dataclass(frozen=True)
class ContinuedFraction:
    """``[a0, ..., an]`` meaning ``a0 - 1/(a1 - 1/(... - 1/an))``."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("empty continued fraction")

    def __iter__(self) -> Iterator[int]:
        return iter(self.coefficients)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i]

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"


def neg_cf_eval(cf: ContinuedFraction | Sequence[int]) -> Slope:
    coeffs = list(cf)
    if not coeffs:
        raise ValueError("empty continued fraction")
    # Work with vectors so an intermediate zero denominator becomes inf.
    num, den = coeffs[-1], 1
    for a in reversed(coeffs[:-1]):
        num, den = a * num - den, num
    return Slope(num, den)


def neg_cf_expand(s: Slope) -> ContinuedFraction:
    """Negative continued fraction of a rational slope ``s < -1``."""
    if s.is_inf or s.value() >= -1:
        raise ValueError(f"expansion needs a rational slope < -1, got {s}")
    coeffs: list[int] = []
    x = s.value()
    while True:
        a = math.floor(x)
        coeffs.append(a)
        if x == a:
            break
        x = -1 / (x - a)
    return ContinuedFraction(tuple(coeffs))


def _check_neighbor_domain(s: Slope) -> None:
    if s.is_inf or s.value() >= -1:
        raise ValueError(f"neighbours are defined for rational slopes < -1, got {s}")


def cw_neighbor(s: Slope) -> Slope:
    """``s^c``: the farthest clockwise Farey neighbour of ``s`` larger than ``s``."""
    _check_neighbor_domain(s)
    coeffs = list(neg_cf_expand(s))
    coeffs[-1] += 1
    while coeffs[-1] == -1 and len(coeffs) > 1:
        coeffs.pop()
        coeffs[-1] += 1
    return neg_cf_eval(coeffs)


def acw_neighbor(s: Slope) -> Slope:
    """``s^a``: the farthest anticlockwise neighbour; ``inf`` for integers."""
    _check_neighbor_domain(s)
    coeffs = neg_cf_expand(s).coefficients
    if len(coeffs) == 1:
        return INF
    return neg_cf_eval(coeffs[:-1])


# --- circular order and minimal paths ----------------------------------------


def in_cw_arc(x: Slope, start: Slope, end: Slope) -> bool:
    """Whether ``x`` lies in the half-open clockwise arc ``(start, end]``."""
    ks, ke, kx = start.sort_key(), end.sort_key(), x.sort_key()
    if ks < ke:
        return ks < kx <= ke
    # The arc wraps through inf (which has the largest key).
    return kx > ks or kx <= ke


def cw_lt(a: Slope, b: Slope, base: Slope) -> bool:
    """Strict clockwise order of ``a`` and ``b`` measured from ``base``."""
    return in_cw_arc(a, base, b) and a != b


@dataclass(frozen=True)
class FareyPath:
    vertices: tuple[Slope, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ValueError("a path needs at least one vertex")
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not adjacent(a, b):
                raise ValueError(f"{a} -> {b} is not a Farey edge")

    def __len__(self) -> int:
        """Number of edges."""
        return len(self.vertices) - 1

    def __iter__(self) -> Iterator[Slope]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.vertices)


def _farthest_step(c: Slope, t: Slope) -> Slope:
    # Move c to inf by an orientation preserving map; its neighbours become the
    # integers and the clockwise arc (inf, M(t)] holds those <= M(t).
    a, b = c.vector
    if b == 0:
        a, e, f = 1, 0, 1
    else:
        g, x, y = _ext_gcd(a, -b)  # a*x - b*y = 1
        assert g == 1
        f, e = x, y
    # M^-1 = [[a, e], [b, f]] has det a*f - b*e = 1.
    tx = f * t.num - e * t.den
    ty = -b * t.num + a * t.den
    if ty == 0:
        raise ValueError("target coincides with current vertex")
    n = math.floor(Fraction(tx, ty))
    return Slope(a * n + e, b * n + f)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) > 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def minimal_path(s0: Slope, s1: Slope) -> FareyPath:
    """Shortest clockwise Farey path from ``s0`` to ``s1``.

    Each step jumps to the neighbour of the current vertex that lies farthest
    clockwise without passing ``s1``.
    """
    if s0 == s1:
        raise ValueError("endpoints must differ")
    verts = [s0]
    cur = s0
    while cur != s1:
        cur = _farthest_step(cur, s1)
        verts.append(cur)
    return FareyPath(tuple(verts))


def lift_path(vertices: Sequence[Slope], start: Vector | None = None) -> list[Vector]:
    """Primitive vectors for a clockwise path, each step of determinant -1.

    The first vector is the canonical one (``inf`` read as ``-1/0``) unless
    ``start`` is given.  Later lifts follow from the clockwise condition, so a
    path that wraps past ``inf`` flips to denominators <= 0.
    """
    if start is None:
        v0 = vertices[0]
        start = (-1, 0) if v0.is_inf else v0.vector
    out = [start]
    for s in vertices[1:]:
        w = s.vector
        d = det(out[-1], w)
        if d == 1:
            w = (-w[0], -w[1])
        elif d != -1:
            raise ValueError(f"{from_vector(out[-1])} -> {s} is not a Farey edge")
        out.append(w)
    return out


# --- Mobius maps ---------------------------------------------------------------


@dataclass(frozen=True)
class MobiusMap:
    """Integral matrix ``[[a, b], [c, d]]`` acting on ``(den, num)`` columns.

    This column convention is the one under which the Rolfsen twist matrix
    sends ``1/k`` to ``-1`` and fixes ``0``.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise ValueError("Mobius map needs determinant +-1")

    @property
    def determinant(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: MobiusMap) -> MobiusMap:
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> MobiusMap:
        dt = self.determinant
        return MobiusMap(self.d * dt, -self.b * dt, -self.c * dt, self.a * dt)

    def apply_vector(self, v: Vector) -> Vector:
        """Image of a ``(num, den)`` vector."""
        num, den = v
        new_den = self.a * den + self.b * num
        new_num = self.c * den + self.d * num
        return (new_num, new_den)


IDENTITY = MobiusMap(1, 0, 0, 1)
# Basis change used before evaluating Euler classes when s_{k2} > 0.
BASIS_CHANGE = MobiusMap(1, 0, -1, 1)


def rolfsen_twist(k2: int) -> MobiusMap:
    """The (k2+1)-fold Rolfsen twist matrix."""
    return MobiusMap(1, -(k2 + 1), 0, 1)


def apply_mobius(m: MobiusMap, s: Slope) -> Slope:
    return from_vector(m.apply_vector(s.vector))
