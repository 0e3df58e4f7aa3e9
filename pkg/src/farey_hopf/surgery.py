"""Contact (+-1) surgery diagrams for non-loose Hopf link representatives.

A diagram is a chain ``L2, Aux_1, ..., Aux_m, L1`` of Legendrian unknots.
``Aux_1`` is a push-off of a tb = -1 unknot ``R`` stabilized ``s_1`` times;
each later ``Aux_j`` is a push-off of ``Aux_{j-1}`` stabilized ``s_j`` more
times.  ``L2`` is a stabilized push-off of ``R`` and ``L1`` a stabilized
push-off of ``Aux_m``.  The stab counts stored on a component are these
incremental counts, so the Thurston-Bennequin number of ``Aux_j`` in S^3 is
``-1 - (s_1 + ... + s_j)`` and push-offs link with ``lk = tb`` of the older
component.

Handle sliding each push-off off its predecessor turns the linking matrix
into a tridiagonal chain with the same determinant; ``smooth_chain`` returns
that chain and ``linking_matrix`` the unslid one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classify import HopfCase, HopfRep, cf_coefficients, check_lens
from .farey import neg_cf_eval

ROLES = ("L1", "L2", "Aux")


@dataclass(frozen=True)
class Component:
    role: str
    coeff: Optional[int]
    stab_pos: int = 0
    stab_neg: int = 0

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"unknown role {self.role!r}")
        if self.role == "Aux":
            if self.coeff not in (1, -1):
                raise ValueError("surgery components need contact coefficient +1 or -1")
        elif self.coeff is not None:
            raise ValueError("link components carry no surgery coefficient")
        if self.stab_pos < 0 or self.stab_neg < 0:
            raise ValueError("stabilization counts are non-negative")

    @property
    def stabs(self) -> int:
        return self.stab_pos + self.stab_neg

    def mirror(self) -> Component:
        return Component(self.role, self.coeff, self.stab_neg, self.stab_pos)

    def to_json(self) -> dict:
        return {"role": self.role, "coeff": self.coeff, "stab_pos": self.stab_pos, "stab_neg": self.stab_neg}


@dataclass(frozen=True)
class SurgeryDiagram:
    """Components in chain order plus the Rolfsen twist applied beforehand."""

    components: tuple[Component, ...]
    twist: int = 0

    @property
    def aux(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if c.role == "Aux")

    def link(self, role: str) -> Optional[Component]:
        return next((c for c in self.components if c.role == role), None)

    def mirror(self) -> SurgeryDiagram:
        return SurgeryDiagram(tuple(c.mirror() for c in self.components), self.twist)

    def aux_tb(self) -> list[int]:
        """Thurston-Bennequin numbers of the Aux knots in S^3."""
        out, cur = [], -1
        for c in self.aux:
            cur -= c.stabs
            out.append(cur)
        return out

    def to_json(self) -> dict:
        return {"components": [c.to_json() for c in self.components], "twist": self.twist}


def parse_json(doc: str | dict) -> SurgeryDiagram:
    data = json.loads(doc) if isinstance(doc, str) else doc
    comps = tuple(
        Component(c["role"], c["coeff"], int(c["stab_pos"]), int(c["stab_neg"])) for c in data.get("components", [])
    )
    return SurgeryDiagram(comps, int(data.get("twist", 0)))


# --- linking matrices -----------------------------------------------------------


def linking_matrix(d: SurgeryDiagram) -> list[list[int]]:
    """Smooth linking matrix of the Aux knots before any handle slides."""
    tb = d.aux_tb()
    coeffs = [c.coeff for c in d.aux]
    m = len(tb)
    return [[tb[min(i, j)] + (coeffs[i] if i == j else 0) for j in range(m)] for i in range(m)]


def smooth_chain(d: SurgeryDiagram) -> list[list[int]]:
    """Tridiagonal linking matrix after sliding each Aux off its predecessor."""
    aux = d.aux
    m = len(aux)
    mat = [[0] * m for _ in range(m)]
    for j, c in enumerate(aux):
        if j == 0:
            mat[0][0] = -1 - c.stabs + c.coeff
        else:
            mat[j][j] = -c.stabs + c.coeff + aux[j - 1].coeff
            mat[j][j - 1] = mat[j - 1][j] = -aux[j - 1].coeff
    return mat


def _continuant(diag: Sequence[int], off: Sequence[int]) -> int:
    f_prev, f = 1, (diag[0] if diag else 1)
    for j in range(1, len(diag)):
        f_prev, f = f, diag[j] * f - off[j - 1] ** 2 * f_prev
    return f


def chain_determinant(mat: Sequence[Sequence[int]]) -> int:
    """Determinant of a tridiagonal matrix by the continuant recurrence."""
    n = len(mat)
    return _continuant([mat[i][i] for i in range(n)], [mat[i][i + 1] for i in range(n - 1)])


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix by fraction-free elimination."""
    a = [list(row) for row in mat]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _solve(mat: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    for i in range(n):
        piv = next(r for r in range(i, n) if a[r][i] != 0)
        a[i], a[piv] = a[piv], a[i]
        for r in range(n):
            if r != i and a[r][i] != 0:
                f = a[r][i] / a[i][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [a[i][n] / a[i][i] for i in range(n)]


@dataclass(frozen=True)
class DiagramInvariants:
    tb1: Fraction
    tb2: Fraction
    rot1: Fraction
    rot2: Fraction


def diagram_invariants(d: SurgeryDiagram) -> DiagramInvariants:
    """Rational tb and rot of L1 and L2 in the surgered manifold.

    Uses ``tb_Q(L) = tb(L) - l^T M^-1 l`` and ``rot_Q(L) = rot(L) - r^T M^-1 l``
    with ``l`` the linking vector of ``L`` and ``r`` the Aux rotation numbers.
    ``L2`` is oriented as a push-off of the root knot.
    """
    mat = linking_matrix(d)
    if mat and determinant(mat) == 0:
        raise ValueError("surgered manifold is not a rational homology sphere")
    tb = d.aux_tb()
    rot, cur = [], 0
    for c in d.aux:
        cur += c.stab_pos - c.stab_neg
        rot.append(cur)
    l1c, l2c = d.link("L1"), d.link("L2")
    if l1c is None or l2c is None:
        raise ValueError("diagram needs both link components")
    lk1 = list(tb)
    lk2 = [-1] * len(tb)
    x1 = _solve(mat, lk1) if mat else []
    x2 = _solve(mat, lk2) if mat else []

    def dot(u, v):
        return sum((a * b for a, b in zip(u, v)), Fraction(0))

    tb_l1 = (tb[-1] if tb else -1) - l1c.stabs
    tb_l2 = -1 - l2c.stabs
    rot_l1 = (rot[-1] if rot else 0) + l1c.stab_pos - l1c.stab_neg
    rot_l2 = l2c.stab_pos - l2c.stab_neg
    return DiagramInvariants(
        Fraction(tb_l1) - dot(lk1, x1),
        Fraction(tb_l2) - dot(lk2, x2),
        Fraction(rot_l1) - dot(rot, x1),
        Fraction(rot_l2) - dot(rot, x2),
    )


# --- verification -----------------------------------------------------------------


@dataclass(frozen=True)
class Ok:
    det: int
    ok = True


@dataclass(frozen=True)
class Mismatch:
    detail: str
    det: int
    fraction: Optional[str] = None
    ok = False


VerifyResult = Ok | Mismatch


def lens_type(d: SurgeryDiagram) -> tuple[int, int]:
    """``(p, q')`` of the lens space presented by the slid chain.

    A linear chain of framed unknots with framings ``e_1..e_m`` bounds a
    plumbing whose boundary is ``L(|f(e_1..e_m)|, f(e_2..e_m))`` where ``f``
    is the continuant.  ``q'`` is reduced mod ``p``.
    """
    mat = smooth_chain(d)
    m = len(mat)
    if m == 0:
        return (1, 0)
    diag = [mat[i][i] for i in range(m)]
    off = [mat[i][i + 1] for i in range(m - 1)]
    p = abs(_continuant(diag, off))
    tail = _continuant(diag[1:], off[1:]) if m > 1 else 1
    return (p, tail % p if p else tail)


def same_lens(p: int, q: int, q2: int) -> bool:
    """Whether L(p, q2) is homeomorphic to L(p, q), orientations ignored."""
    if p == 1:
        return True
    q, q2 = q % p, q2 % p
    qi = pow(q, -1, p)
    return q2 in {q, qi, (-q) % p, (-qi) % p}


def verify_lens(d: SurgeryDiagram, p: int, q: int) -> VerifyResult:
    """Homological check of a diagram against ``L(p, q)``.

    Checks ``|det| = p`` on both the slid chain and the unslid matrix, the
    lens type from continuants, and, for untwisted diagrams whose Aux are all
    contact (-1), the continued fraction of the framings against ``-p/q``.
    """
    chain = smooth_chain(d)
    dc = chain_determinant(chain)
    df = determinant(linking_matrix(d))
    if dc != df:
        return Mismatch(f"slid determinant {dc} differs from unslid {df}", dc)
    if abs(dc) != p:
        return Mismatch(f"|det| = {abs(dc)}, expected {p}", dc)
    if p > 1:
        _, q2 = lens_type(d)
        if math.gcd(q2, p) != 1 or not same_lens(p, q, q2):
            return Mismatch(f"chain presents L({p},{q2}), expected L({p},{q})", dc)
    aux = d.aux
    if aux and d.twist == 0 and all(c.coeff == -1 for c in aux):
        frac = neg_cf_eval([chain[i][i] for i in range(len(chain))])
        target = {(-p, q), (-p, pow(q, -1, p) if p > 1 else 1)}
        if frac.vector not in target:
            return Mismatch(f"framings read {frac}, expected -{p}/{q}", dc, str(frac))
    return Ok(dc)


# --- recipes ------------------------------------------------------------------------


def _neg_cf(x: Fraction) -> list[int]:
    out = []
    while True:
        a = math.floor(x)
        out.append(a)
        if x == a:
            return out
        x = -1 / (x - a)


def dgs_components(r: Fraction) -> list[tuple[int, int]]:
    """``(coeff, stabs)`` chain for contact ``r``-surgery on a tb = -1 unknot.

    For ``r > 0`` take the least ``k`` with ``1/r - k <= 0``, emit ``k``
    contact (+1) push-offs and continue with ``r' = 1/(1/r - k)``; the
    remaining negative part follows its continued fraction with the first
    coefficient lowered by one.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("contact 0-surgery is not defined")
    out: list[tuple[int, int]] = []
    if r > 0:
        k = 1
        while 1 / r - k > 0:
            k += 1
        out += [(1, 0)] * k
        if 1 / r - k == 0:
            return out
        r = 1 / (1 / r - k)
    cf = _neg_cf(r)
    cf[0] -= 1
    return out + [(-1, -(x + 2)) for x in cf]


@dataclass(frozen=True)
class Recipe:
    b2: int
    aux: tuple[tuple[int, int], ...]
    b1: int
    twist: int

    @property
    def budgets(self) -> list[int]:
        return [self.b2] + [s for _, s in self.aux] + [self.b1]


def _slid_diag(aux: Sequence[tuple[int, int]]) -> list[int]:
    out, prev = [], -1
    for j, (c, s) in enumerate(aux):
        out.append((-1 - s + c) if j == 0 else (-s + c + prev))
        prev = c
    return out


def _from_slid(diag: Sequence[int], coeffs: Sequence[int]) -> Optional[list[tuple[int, int]]]:
    out, prev = [], -1
    for d, c in zip(diag, coeffs):
        s = c + prev - d
        if s < 0:
            return None
        out.append((c, s))
        prev = c
    return out


def _special_recipe(p: int, q: int, case: HopfCase, k1: int, k2: int) -> Optional[Recipe]:
    # Lens spaces L(p,1) and the single-block L(p,q) with k1 = k2 = 0 leave no
    # room for the generic tail rewrite.
    a = cf_coefficients(p, q)
    plus = [(1, 0)]
    if q == 1:
        if case is HopfCase.SL and k2 == 0:
            return Recipe(0, tuple(plus * (p + 1)), k1 + 1, 0)
        if case is HopfCase.LS and k1 == 0:
            return Recipe(k2, tuple(plus * (p + 1)), 0, 0)
        if case is HopfCase.LL and k1 == 0 and k2 == 0:
            return Recipe(0, tuple(plus * (p + 1)), 0, 0)
        if case is HopfCase.LL and k2 == 0:
            if k1 == 1:
                aux = plus * (p + 3) + [(1, 1), (1, 0)]
            elif k1 == 2:
                aux = plus * (p + 2) + [(1, 2)]
            else:
                aux = plus * (p + 2) + [(-1, 1)] + [(-1, 0)] * (k1 - 3) + [(1, 1)]
            return Recipe(0, tuple(aux), 0, 0)
        if case is HopfCase.LL and k1 == 0:
            if k2 == 1:
                aux = plus * 3 + [(1, 1)] + plus * (p + 1)
            elif k2 == 2:
                aux = plus * 2 + [(1, 2)] + plus * p
            else:
                aux = plus * 2 + [(-1, 1)] + [(-1, 0)] * (k2 - 3) + [(1, 1)] + plus * p
            return Recipe(0, tuple(aux), 0, 0)
    if len(a) == 2 and case is HopfCase.LL and k1 == 0 and k2 == 0:
        aux = plus * (abs(a[0]) + 2) + [(1, 1)] + plus * abs(a[1])
        return Recipe(0, tuple(aux), 0, 0)
    return None


def recipe(p: int, q: int, case: HopfCase, k1: int, k2: int) -> Recipe:
    """Chain data ``(L2 budget, Aux (coeff, stabs), L1 budget, twist)``."""
    check_lens(p, q)
    if k1 < 0 or k2 < 0 or (case is HopfCase.LS and k2 == 0):
        raise ValueError(f"unreachable regime {case.value}({k1},{k2})")
    special = _special_recipe(p, q, case, k1, k2)
    if special is not None:
        return special
    a = cf_coefficients(p, q)
    b1 = b2 = twist = 0
    if case.size2 == "large":
        twist = k2 + 1
        head = dgs_components(Fraction(-p, q + twist * p) + 1)
    else:
        head = [(-1, -(x + 2)) for x in a]
        b2 = k2 - 1
    diag = _slid_diag(head)
    coeffs = [c for c, _ in head]
    if case.size1 == "small":
        b1 = k1
    else:
        # Smooth rewrites of the last framing y:  [y] = [y-1, -2.., -3, 0, 2]
        # via blow-ups, and [x, y] = [x-1, 0, 2^(-y)] for y < 0.
        if coeffs[-1] != -1:
            raise ValueError(f"no tail rewrite for {case.value}({k1},{k2}) in L({p},{q})")
        y = diag[-1]
        if k1 == 0:
            if len(diag) < 2 or coeffs[-2] != -1:
                raise ValueError(f"no tail rewrite for {case.value}({k1},{k2}) in L({p},{q})")
            diag = diag[:-2] + [diag[-2] - 1, 0] + [2] * (-y)
            coeffs = coeffs[:-2] + [-1, 1] + [1] * (-y)
        elif k1 == 1:
            diag = diag[:-1] + [y - 2, 0, 2]
            coeffs = coeffs[:-1] + [-1, 1, 1]
        else:
            diag = diag[:-1] + [y - 1] + [-2] * (k1 - 2) + [-3, 0, 2]
            coeffs = coeffs[:-1] + [-1] * (k1 - 1) + [-1, 1, 1]
    aux = _from_slid(diag, coeffs)
    if aux is None:
        raise ValueError(f"tail rewrite needs negative stabilizations for {case.value}({k1},{k2})")
    return Recipe(b2, tuple(aux), b1, twist)


def _groups(budgets: Sequence[int], blocks: Sequence[int]) -> Optional[list[list[int]]]:
    # Consecutive non-zero budgets summing exactly to each block length.
    idx = [i for i, b in enumerate(budgets) if b > 0]
    out, i = [], 0
    for n in blocks:
        group, acc = [], 0
        while acc < n and i < len(idx):
            group.append(idx[i])
            acc += budgets[idx[i]]
            i += 1
        if acc != n:
            return None
        out.append(group)
    return out if i == len(idx) else None


def build_diagram(rep: HopfRep) -> SurgeryDiagram:
    """Surgery diagram realizing a zero-torsion representative.

    Stabilization budgets of consecutive components fill the continued
    fraction blocks of the rep's path, starting from the ``s_{k2}`` end.  A
    block's negative count is spread over its components, negatives first.
    """
    if rep.torsion or rep.torsion_sign:
        raise ValueError("diagrams exist only for representatives without Giroux torsion")
    if rep.case is None:
        raise ValueError("representative has no case")
    rec = recipe(rep.p, rep.q, rep.case, rep.k1, rep.k2)
    budgets = rec.budgets
    cls = rep.cls
    lengths = tuple(reversed(cls.lengths)) if cls is not None else ()
    negatives = tuple(reversed(cls.negatives)) if cls is not None else ()
    groups = _groups(budgets, lengths)
    if groups is None:
        raise ValueError(f"budgets {budgets} do not fill blocks {lengths}")
    neg = [0] * len(budgets)
    for group, n, m in zip(groups, lengths, negatives):
        flip = rep.case is HopfCase.SL or (rep.case is HopfCase.LS and 0 in group)
        left = n - m if flip else m
        for c in group:
            take = min(left, budgets[c])
            neg[c] = take
            left -= take
    comps = [Component("L2", None, budgets[0] - neg[0], neg[0])]
    for j, (c, s) in enumerate(rec.aux, start=1):
        comps.append(Component("Aux", c, s - neg[j], neg[j]))
    comps.append(Component("L1", None, budgets[-1] - neg[-1], neg[-1]))
    return SurgeryDiagram(tuple(comps), rec.twist)


def expected_invariants(rep: HopfRep) -> DiagramInvariants:
    """The rep's invariants in the orientation convention of ``diagram_invariants``.

    In the large-large diagrams L2 runs against the root push-off.
    """
    sign2 = -1 if rep.case is HopfCase.LL else 1
    return DiagramInvariants(rep.tb1, rep.tb2, rep.rot1, sign2 * rep.rot2)


# --- rendering --------------------------------------------------------------------------


def _label(c: Component) -> str:
    if c.role == "Aux":
        return "[+1]" if c.coeff == 1 else "[-1]"
    return c.role


def _runs(d: SurgeryDiagram) -> list[tuple[Component, int]]:
    runs: list[tuple[Component, int]] = []
    for c in d.components:
        if runs and runs[-1][0] == c:
            runs[-1] = (c, runs[-1][1] + 1)
        else:
            runs.append((c, 1))
    return runs


def render_ascii(d: SurgeryDiagram) -> str:
    lines = [f"twist {d.twist}"] if d.twist else []
    for c, n in _runs(d):
        stab = f"stab +{c.stab_pos} -{c.stab_neg}"
        rep = f" x{n}" if n > 1 else ""
        lines.append(f"{_label(c):5} {stab}{rep}")
    return "\n".join(lines) + ("\n" if lines else "")


def render_svg(d: SurgeryDiagram) -> str:
    w, h, r = 70, 90, 28
    comps = d.components
    width = max(1, len(comps)) * w + 20
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{h + 40}">',
    ]
    for i, c in enumerate(comps):
        cx = 10 + w * i + w // 2
        stroke = "#1f4e9c" if c.role != "Aux" else "#333333"
        parts.append(
            f'<ellipse cx="{cx}" cy="{h // 2}" rx="{r + 8}" ry="{r}" fill="none" stroke="{stroke}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{cx}" y="{h // 2 + 4}" font-size="11" text-anchor="middle">{_label(c)}</text>')
        parts.append(
            f'<text x="{cx}" y="{h + 14}" font-size="10" text-anchor="middle">+{c.stab_pos} -{c.stab_neg}</text>'
        )
    if d.twist:
        parts.append(f'<text x="10" y="{h + 32}" font-size="10">twist {d.twist}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(d: SurgeryDiagram, format: str = "json") -> str:
    if format == "json":
        return json.dumps(d.to_json(), sort_keys=True)
    if format == "ascii":
        return render_ascii(d)
    if format == "svg":
        return render_svg(d)
    raise ValueError(f"unknown format {format!r}")
