"""Independent reference computations used by the self-test and the test suite.

Nothing here calls the classification machinery.  Farey questions are
answered by brute force over bounded slopes, tightness by exhaustive search
over concrete sign sequences, and counts, rotation multisets and tb values by
closed forms.
"""

from __future__ import annotations

import math
import os
from collections import Counter, deque
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, Optional, Sequence

from .farey import INF, Slope, det, in_cw_arc

DEFAULT_BOUND = 50


def denom_bound() -> int:
    """Coefficient bound for the brute-force Farey search (env override)."""
    raw = os.environ.get("FAREY_HOPF_DENOM_BOUND")
    if raw is None:
        return DEFAULT_BOUND
    value = int(raw)
    if value < 1:
        raise ValueError("FAREY_HOPF_DENOM_BOUND must be positive")
    return value


# --- Farey graph by brute force ------------------------------------------------------


def bounded_slopes(bound: int) -> list[Slope]:
    out = [INF]
    for den in range(1, bound + 1):
        for num in range(-bound, bound + 1):
            if math.gcd(num, den) == 1:
                out.append(Slope(num, den))
    return out


@lru_cache(maxsize=None)
def bounded_neighbors(s: Slope, bound: int) -> tuple[Slope, ...]:
    """Every slope with coefficients within ``bound`` sharing an edge with ``s``."""
    a, b = s.vector
    out = []
    for d in range(0, bound + 1):
        for e in (1, -1):
            # a*d - b*c = e
            if b == 0:
                if d == 1:
                    out.extend(Slope(c, 1) for c in range(-bound, bound + 1))
                continue
            num = a * d - e
            if num % b == 0:
                c = num // b
                if abs(c) <= bound and not (c == 0 and d == 0):
                    out.append(Slope(c, d))
    return tuple(sorted(set(t for t in out if t != s), key=Slope.sort_key))


def brute_cw_neighbor(s: Slope, bound: int) -> Slope:
    """Largest rational neighbour of ``s`` above ``s``."""
    v = s.value()
    return max((t for t in bounded_neighbors(s, bound) if not t.is_inf and t.value() > v), key=Slope.value)


def brute_acw_neighbor(s: Slope, bound: int) -> Slope:
    """``inf`` when adjacent, otherwise the smallest neighbour below ``s``."""
    nbrs = bounded_neighbors(s, bound)
    if INF in nbrs:
        return INF
    v = s.value()
    return min((t for t in nbrs if not t.is_inf and t.value() < v), key=Slope.value)


def bfs_path_length(s0: Slope, s1: Slope, bound: int) -> Optional[int]:
    """Fewest clockwise Farey edges from ``s0`` to ``s1`` within the bound."""
    dist = {s0: 0}
    queue = deque([s0])
    while queue:
        u = queue.popleft()
        if u == s1:
            return dist[u]
        for v in bounded_neighbors(u, bound):
            # A clockwise step from u stays inside the arc (u, s1].
            if v not in dist and in_cw_arc(v, u, s1):
                dist[v] = dist[u] + 1
                queue.append(v)
    return None


# --- exhaustive shortening search ---------------------------------------------------


def _turning(vectors: Sequence[tuple[int, int]]) -> list[int]:
    return [-det(vectors[i - 1], vectors[i + 1]) for i in range(1, len(vectors) - 1)]


def exhaustive_tight(vectors: Sequence[tuple[int, int]], signs: Sequence[int]) -> bool:
    """Whether some sequence of adjacent swaps inside blocks and shortenings
    of equal-signed edges at turning number 1 reaches a minimal path."""
    seen: set = set()
    stack = [(tuple(vectors), tuple(signs))]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        vecs, sg = state
        turning = _turning(vecs)
        if all(c >= 2 for c in turning):
            return True
        for i, c in enumerate(turning, start=1):
            # Vertex i joins edges i-1 and i.
            if c == 2 and sg[i - 1] != sg[i]:
                swapped = list(sg)
                swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
                stack.append((vecs, tuple(swapped)))
            if c == 1 and sg[i - 1] == sg[i]:
                stack.append((vecs[:i] + vecs[i + 1 :], sg[: i - 1] + (sg[i],) + sg[i + 1 :]))
    return False


SHORTEN_ALPHABET = tuple(
    Slope(*v) for v in [(-3, 1), (-5, 2), (-2, 1), (-3, 2), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (1, 0)]
)


# --- closed forms from the classification tables -------------------------------------------


def table1_count(p: int, k1: int, k2: int) -> int:
    """Large-large counts in L(p,1)."""
    if k1 > k2:
        k1, k2 = k2, k1
    if k1 == 0:
        return {0: 1, 1: 2, 2: 3}.get(k2, 4)
    if k1 == 1:
        return p + 3 if k2 == 1 else 2 * (p + 2)
    return 4 * (p + 1)


def case1_count(p: int, k1: int, k2: int) -> int:
    """Small L1 with large L2 in L(p,1)."""
    if k2 == 0:
        return k1 + 2
    if k2 == 1:
        return (k1 + 1) * (p + 1)
    return 2 * (k1 + 1) * p


def case2_count(p: int, k1: int, k2: int) -> int:
    """Large L1 with small L2 (``k2 >= 1``) in L(p,1)."""
    if k1 == 0:
        return k2 + 1
    if k1 == 1:
        return (p + 1) * k2
    return 2 * p * k2


_PM = (1, -1)


def table2_rot(p: int, k1: int, k2: int) -> Optional[Counter]:
    """Rotation pairs for large-large L(p,1) links with ``k1 <= k2``; ``None`` off-table."""
    P = Fraction(1, p)
    out: Counter = Counter()
    if (k1, k2) == (0, 1):
        for s in _PM:
            out[(-s * 2 * P, -s * (p + 2) * P)] += 1
    elif (k1, k2) == (0, 2):
        for m in range(3):
            out[((2 * m - 2) * P, (2 * m - 2) * (p + 1) * P)] += 1
    elif k1 == 0 and k2 > 2:
        for a, b in product(_PM, _PM):
            out[(-a * P - b * P, -a * (p + 1) * P - b * ((k2 - 1) + P))] += 1
    elif (k1, k2) == (1, 1):
        for m in range(p + 3):
            out[(-(p + 2 - 2 * m) * P,) * 2] += 1
    elif k1 == 1 and k2 > 1:
        for m in range(p + 2):
            for b in _PM:
                out[(-(p + 1 - 2 * m) * P - b * P, -(p + 1 - 2 * m) * P - b * (1 + p * (k2 - 1)) * P)] += 1
    elif k1 > 1 and k2 > 1:
        for m in range(p + 1):
            for a, b in product(_PM, _PM):
                out[
                    (-a * ((k1 - 1) + P) - (p - 2 * m) * P - b * P, -a * P - (p - 2 * m) * P - b * ((k2 - 1) + P))
                ] += 1
    else:
        return None
    return out


def table3_rot(n: int, k1: int, k2: int) -> Counter:
    """Rotation pairs for large-large links in L(2n+1, 2)."""
    inv = Fraction(1, 2 * n + 1)
    out: Counter = Counter()
    K1, K2 = min(k1, 2), min(k2, 2)
    if (K1, K2) == (0, 0):
        for s in _PM:
            out[(-s * (n + 2) * inv, -s * 3 * inv)] += 1
    elif (K1, K2) == (0, 1):
        for m in range(n + 3):
            out[((-n - 2 + 2 * m) * inv, 2 * (-n - 2 + 2 * m) * inv)] += 1
    elif (K1, K2) == (0, 2):
        for m in range(n + 2):
            for s in _PM:
                out[((-n - 1 + 2 * m) * inv - s * inv, -s * (k2 - (2 * n - 1) * inv) + 2 * (-n - 1 + 2 * m) * inv)] += 1
    elif (K1, K2) == (1, 0):
        for m in range(4):
            out[((2 * m - 3) * (1 + n) * inv, (2 * m - 3) * inv)] += 1
    elif (K1, K2) == (1, 1):
        for m1 in range(3):
            for m2 in range(n + 2):
                out[
                    (
                        (-2 + 2 * m1) * (n + 1) * inv + (-n - 1 + 2 * m2) * inv,
                        (-2 + 2 * m1) * inv + 2 * (-n - 1 + 2 * m2) * inv,
                    )
                ] += 1
    elif (K1, K2) == (1, 2):
        for m1 in range(3):
            for m2 in range(n + 1):
                for s in _PM:
                    out[
                        (
                            (-2 + 2 * m1) * (n + 1) * inv + (-n + 2 * m2) * inv - s * inv,
                            (-2 + 2 * m1) * inv + 2 * (-n + 2 * m2) * inv - s * (k2 - (2 * n - 1) * inv),
                        )
                    ] += 1
    elif (K1, K2) == (2, 0):
        for m in range(3):
            for s in _PM:
                out[(-s * k1 + s * n * inv - (n + 1) * (2 - 2 * m) * inv, -s * inv - (2 - 2 * m) * inv)] += 1
    elif (K1, K2) == (2, 1):
        for m in range(n + 2):
            for a, b in product(_PM, _PM):
                out[
                    (-a * (k1 - n * inv) - b * (n + 1) * inv + (-n - 1 + 2 * m) * inv, -a * inv - b * inv + 2 * (-n - 1 + 2 * m) * inv)
                ] += 1
    else:
        for m in range(n + 1):
            for a, b, c in product(_PM, _PM, _PM):
                out[
                    (
                        -a * (k1 - n * inv) - b * (n + 1) * inv + (-n + 2 * m) * inv - c * inv,
                        -a * inv - b * inv + 2 * (-n + 2 * m) * inv - c * (k2 - (2 * n - 1) * inv),
                    )
                ] += 1
    return out


def table4_count(a: Sequence[int], k1: int, k2: int) -> int:
    """Large-large counts in L(p,q) from ``-p/q = [a_0, ..., a_n]``, ``n >= 1``."""
    n = len(a) - 1
    K1, K2 = min(k1, 2), min(k2, 2)

    def mid(lo: int, hi: int) -> int:
        return prod(abs(a[i] + 1) for i in range(lo, hi + 1))

    if n == 1:
        special = {
            (0, 0): 2,
            (0, 1): abs(a[0] - 2),
            (0, 2): 2 * abs(a[0] - 1),
            (1, 0): abs(a[1] - 2),
            (2, 0): 2 * abs(a[1] - 1),
        }
        if (K1, K2) in special:
            return special[(K1, K2)]
    if n == 2 and (K1, K2) == (0, 0):
        return abs(a[1] - 1)
    general = {
        (0, 0): abs(a[1]) * mid(2, n - 2) * abs(a[n - 1]),
        (0, 1): abs(a[0] - 1) * mid(1, n - 2) * abs(a[n - 1]),
        (0, 2): 2 * abs(a[0]) * mid(1, n - 2) * abs(a[n - 1]),
        (1, 0): abs(a[1]) * mid(2, n - 1) * abs(a[n] - 1),
        (1, 1): abs(a[0] - 1) * mid(1, n - 1) * abs(a[n] - 1),
        (1, 2): 2 * abs(a[0]) * mid(1, n - 1) * abs(a[n] - 1),
        (2, 0): 2 * abs(a[1]) * mid(2, n - 1) * abs(a[n]),
        (2, 1): 2 * abs(a[0] - 1) * mid(1, n - 1) * abs(a[n]),
        (2, 2): 4 * abs(a[0]) * mid(1, n - 1) * abs(a[n]),
    }
    return general[(K1, K2)]


def tb_closed_form(p: int, q: int, size1: str, k1: int, size2: str, k2: int) -> tuple[Fraction, Fraction]:
    """``(tb1, tb2)`` from ``p'' = -q^-1 mod p`` and ``p' = p - p''``."""
    pp = (-pow(q, -1, p)) % p
    p1 = p - pp
    tb1 = k1 + Fraction(p1, p) if size1 == "large" else -k1 - Fraction(pp, p)
    tb2 = k2 + Fraction(q, p) if size2 == "large" else -k2 + Fraction(q, p)
    return tb1, tb2


def torsion_count(q: int, t1: int, t2: int) -> int:
    """Number of torsion representatives for signed indices."""
    if q == 1 and t1 == 0 and t2 == 0:
        return 1
    return 2


def general_mountain_counts(a: Sequence[int], k1: int) -> tuple[int, int, int, int]:
    """Loose-loose counts fixing ``L1``: forward slashes, back slashes, V's at
    ``q/p`` and V's at ``1 + q/p``.

    For ``n = 1``, ``k1 = 0`` the count of upper V's is ``|a_0|``, the value of
    the ``n >= 2`` product at ``n = 1``.
    """
    n = len(a) - 1

    def pr(xs: Iterable[int]) -> int:
        return prod(abs(x) for x in xs)

    if k1 == 0:
        slashes = 1 if n <= 2 else pr(x + 1 for x in a[2 : n - 1]) * abs(a[n - 1])
        low = 0 if n == 1 else (abs(a[1] + 1) if n == 2 else pr([a[1] + 2] + [x + 1 for x in a[2 : n - 1]]) * abs(a[n - 1]))
        high = pr(x + 1 for x in a[: n - 1]) * abs(a[n - 1])
    elif k1 == 1:
        slashes = 1 if n == 1 else pr(x + 1 for x in a[2:n]) * abs(a[n] - 1)
        low = abs(a[1]) if n == 1 else pr([a[1] + 2] + [x + 1 for x in a[2:n]]) * abs(a[n] - 1)
        high = pr(x + 1 for x in a[:n]) * abs(a[n] - 1)
    else:
        slashes = 2 if n == 1 else 2 * pr(x + 1 for x in a[2:n]) * abs(a[n])
        low = 2 * abs(a[1] + 1) if n == 1 else 2 * pr([a[1] + 2] + [x + 1 for x in a[2:n]]) * abs(a[n])
        high = 2 * pr(x + 1 for x in a[:n]) * abs(a[n])
    return slashes, slashes, low, high
