"""Replay of the classification oracles as twelve numbered checks.

Each check returns a ``CheckResult`` listing every violation it found; the
scope caps ``p`` so that a fast run stays quick.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from . import oracles
from .classify import (
    HopfCase,
    NonLoose,
    NonLooseTorsion,
    all_reps,
    cf_coefficients,
    conjugate,
    dividing_slopes,
    enumerate_reps,
    stabilize,
    tb_rational,
    theorem_indices,
    torsion_census,
)
from .decorated import DecoratedPath, try_shorten, winds
from .farey import Slope, acw_neighbor, cw_neighbor, det, lift_path, minimal_path
from .surgery import build_diagram, smooth_chain, verify_lens

SCOPES = {"fast": 7, "full": 12}

LENS_P1 = [(p, 1) for p in range(2, 8)]
LENS_2N1 = [(2 * n + 1, 2) for n in (1, 2, 3)]
LENS_GENERAL = [(5, 3), (7, 3), (7, 4), (8, 3), (11, 4)]


@dataclass
class CheckResult:
    number: int
    title: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    budget: float = float("inf")

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def within_budget(self) -> bool:
        return self.seconds < self.budget

    def passed(self, timed: bool = False) -> bool:
        return self.ok and (self.within_budget or not timed)

    def line(self, timed: bool = False) -> str:
        """One report line; ``timed`` also fails a check that overran its budget."""
        status = "PASS" if self.passed(timed) else "FAIL"
        tail = f"; first: {self.failures[0]}" if self.failures else ""
        if self.ok and not self.within_budget:
            tail = "; over time budget"
        return f"{status} {self.number:2d} {self.title} ({self.checked} checks, {self.seconds:.1f}s of {self.budget:.0f}s){tail}"


def _lens_sets(pmax: int) -> list[tuple[int, int]]:
    return [(p, q) for p, q in LENS_P1 + LENS_2N1 + LENS_GENERAL if p <= pmax]


def _regimes(kmax: int) -> Iterator[tuple[HopfCase, int, int]]:
    for case in HopfCase:
        for k1 in range(kmax + 1):
            for k2 in range(kmax + 1):
                if case is HopfCase.LS and k2 == 0:
                    continue
                yield case, k1, k2


def check_table1(res: CheckResult, pmax: int) -> None:
    for p in range(2, min(pmax, 7) + 1):
        for k1 in range(4):
            for k2 in range(4):
                got = len(enumerate_reps(p, 1, HopfCase.LL, k1, k2))
                want = oracles.table1_count(p, k1, k2)
                res.checked += 1
                if got != want:
                    res.failures.append(f"L({p},1) large-large ({k1},{k2}): {got} != {want}")


def check_case_counts(res: CheckResult, pmax: int) -> None:
    for p in range(2, min(pmax, 7) + 1):
        for k1 in range(4):
            for k2 in range(4):
                got = len(enumerate_reps(p, 1, HopfCase.SL, k1, k2))
                want = oracles.case1_count(p, k1, k2)
                res.checked += 1
                if got != want:
                    res.failures.append(f"L({p},1) SL ({k1},{k2}): {got} != {want}")
                if k2 >= 1:
                    got = len(enumerate_reps(p, 1, HopfCase.LS, k1, k2))
                    want = oracles.case2_count(p, k1, k2)
                    res.checked += 1
                    if got != want:
                        res.failures.append(f"L({p},1) LS ({k1},{k2}): {got} != {want}")


def _rot_multiset(p: int, q: int, k1: int, k2: int) -> Counter:
    return Counter((r.rot1, r.rot2) for r in enumerate_reps(p, q, HopfCase.LL, k1, k2))


def check_table2(res: CheckResult, pmax: int) -> None:
    for p in (3, 5, 7):
        if p > pmax:
            continue
        for k1 in range(4):
            for k2 in range(4):
                got = _rot_multiset(p, 1, k1, k2)
                if (k1, k2) == (0, 0):
                    want = Counter({(Fraction(0), Fraction(0)): 1})
                elif k1 <= k2:
                    want = oracles.table2_rot(p, k1, k2)
                else:
                    # Cells below the diagonal follow by exchanging the components.
                    swapped = oracles.table2_rot(p, k2, k1)
                    want = Counter({(b, a): n for (a, b), n in swapped.items()})
                res.checked += 1
                if got != want:
                    res.failures.append(f"L({p},1) rotation cell ({k1},{k2}) differs")


def check_table3(res: CheckResult, pmax: int) -> None:
    for n in (1, 2, 3):
        p = 2 * n + 1
        if p > pmax:
            continue
        for k1 in range(4):
            for k2 in range(4):
                got = _rot_multiset(p, 2, k1, k2)
                want = oracles.table3_rot(n, k1, k2)
                res.checked += 1
                if got != want:
                    res.failures.append(
                        f"L({p},2) cell ({k1},{k2}): count {sum(got.values())} vs {sum(want.values())} or rot multiset differs"
                    )


def check_table4(res: CheckResult, pmax: int) -> None:
    for p, q in LENS_GENERAL:
        if p > pmax:
            continue
        a = cf_coefficients(p, q)
        for k1 in range(4):
            for k2 in range(4):
                got = len(enumerate_reps(p, q, HopfCase.LL, k1, k2))
                want = oracles.table4_count(a, k1, k2)
                res.checked += 1
                if got != want:
                    res.failures.append(f"L({p},{q}) ({k1},{k2}): {got} != {want}")


def check_tb(res: CheckResult, pmax: int) -> None:
    for p, q in _lens_sets(pmax):
        for case, k1, k2 in _regimes(5):
            s1, s2 = dividing_slopes(p, q, case, k1, k2)
            got = (tb_rational(p, q, s1, 1, case.size1), tb_rational(p, q, s2, 2, case.size2))
            want = oracles.tb_closed_form(p, q, case.size1, k1, case.size2, k2)
            res.checked += 1
            if got != want:
                res.failures.append(f"L({p},{q}) {case.value}({k1},{k2}): tb {got} != {want}")


def check_torsion(res: CheckResult, pmax: int) -> None:
    lenses = [(p, q) for p in (5, 7) for q in (1, 2, 3) if math.gcd(p, q) == 1 and p <= max(pmax, 5)]
    for p, q in lenses:
        for m in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
            for k1 in range(3):
                for k2 in range(3):
                    census = torsion_census(p, q, k1, k2, m)
                    want = oracles.torsion_count(q, k1, k2)
                    res.checked += 1
                    reps = census.reps
                    if len(reps) != want:
                        res.failures.append(f"L({p},{q}) t=({k1},{k2}) m={m}: {len(reps)} reps != {want}")
                        continue
                    if len({(r.rot1, r.rot2) for r in reps}) != len(reps):
                        res.failures.append(f"L({p},{q}) t=({k1},{k2}) m={m}: rotation numbers do not separate the pair")
                    tb = oracles.tb_closed_form(p, q, "large", k1, "large", k2)
                    if any((r.tb1, r.tb2) != tb for r in reps):
                        res.failures.append(f"L({p},{q}) t=({k1},{k2}) m={m}: tb differs from {tb}")
                    if any(not (r.loose1 and r.loose2) for r in reps):
                        res.failures.append(f"L({p},{q}) t=({k1},{k2}) m={m}: components should both be loose")


def _random_slope(rng: random.Random, bound: int) -> Slope:
    while True:
        num, den = rng.randint(-bound, bound), rng.randint(0, bound)
        if math.gcd(num, den) == 1:
            return Slope(num, den)


def check_farey(res: CheckResult, pmax: int, pairs: int = 500, bound: int = 30, seed: int = 20240601) -> None:
    search = max(oracles.denom_bound(), bound)
    rng = random.Random(seed)
    done = 0
    while done < pairs:
        s0, s1 = _random_slope(rng, bound), _random_slope(rng, bound)
        if s0 == s1:
            continue
        done += 1
        path = minimal_path(s0, s1)
        res.checked += 1
        vecs = lift_path(path.vertices)
        if any(det(u, v) != -1 for u, v in zip(vecs, vecs[1:])) or winds(vecs) and len(vecs) > 2:
            res.failures.append(f"path {s0} -> {s1} is not a clockwise Farey path")
            continue
        want = oracles.bfs_path_length(s0, s1, search)
        if want != len(path):
            res.failures.append(f"path {s0} -> {s1}: length {len(path)}, search found {want}")
    for den in range(1, bound + 1):
        for num in range(-bound, -den):
            if math.gcd(num, den) != 1:
                continue
            s = Slope(num, den)
            res.checked += 1
            if cw_neighbor(s) != oracles.brute_cw_neighbor(s, search):
                res.failures.append(f"clockwise neighbour of {s}")
            if acw_neighbor(s) != oracles.brute_acw_neighbor(s, search):
                res.failures.append(f"anticlockwise neighbour of {s}")


def alphabet_paths(max_len: int = 6) -> Iterator[tuple[tuple[int, int], ...]]:
    """Non-winding clockwise lifted paths over the fixed ten-slope alphabet."""
    alphabet = oracles.SHORTEN_ALPHABET

    def extend(vecs: list[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
        if len(vecs) > 1:
            yield tuple(vecs)
        if len(vecs) == max_len + 1:
            return
        last = vecs[-1]
        for s in alphabet:
            w = s.vector
            d = det(last, w)
            if d == 1:
                w = (-w[0], -w[1])
            elif d != -1:
                continue
            nxt = vecs + [w]
            if winds(nxt):
                continue
            yield from extend(nxt)

    for s in alphabet:
        yield from extend([(-1, 0) if s.is_inf else s.vector])


def check_shortening(res: CheckResult, pmax: int, max_len: int = 6) -> None:
    from itertools import product

    for vecs in alphabet_paths(max_len):
        n = len(vecs) - 1
        for signs in product((1, -1), repeat=n):
            res.checked += 1
            got = try_shorten(DecoratedPath(vecs, signs)).tight
            want = oracles.exhaustive_tight(vecs, signs)
            if got != want:
                res.failures.append(f"path {vecs} signs {signs}: try_shorten {got}, search {want}")


def check_stabilization(res: CheckResult, pmax: int) -> None:
    keys: dict[tuple, set] = {}

    def enumerated(p: int, q: int, case: HopfCase, k1: int, k2: int) -> set:
        idx = (p, q, case, k1, k2)
        if idx not in keys:
            keys[idx] = {x.key for x in enumerate_reps(*idx)}
        return keys[idx]

    for p, q in _lens_sets(pmax):
        for r in all_reps(p, q, 3):
            for comp in (1, 2):
                outs = {}
                for sign in (1, -1):
                    out = stabilize(r, comp, sign)
                    outs[sign] = out
                    if not isinstance(out, (NonLoose, NonLooseTorsion)):
                        continue
                    res.checked += 1
                    n = out.rep
                    tb0, tb1 = (r.tb1, n.tb1) if comp == 1 else (r.tb2, n.tb2)
                    ro0, ro1 = (r.rot1, n.rot1) if comp == 1 else (r.rot2, n.rot2)
                    if tb1 - tb0 != -1 or ro1 - ro0 != sign:
                        res.failures.append(f"{r.key} S{'+' if sign > 0 else '-'} on L{comp}: dtb={tb1 - tb0}, drot={ro1 - ro0}")
                    if isinstance(out, NonLoose):
                        other = (r.tb2, r.rot2) == (n.tb2, n.rot2) if comp == 1 else (r.tb1, r.rot1) == (n.tb1, n.rot1)
                        if not other:
                            res.failures.append(f"{r.key} S{sign:+d} on L{comp} moved the other component")
                        # The result is one of the enumerated representatives.
                        if n.case is not None and n.key not in enumerated(p, q, n.case, n.k1, n.k2):
                            res.failures.append(f"{r.key} S{sign:+d} on L{comp} left the enumeration")
                if all(isinstance(outs[s], NonLoose) for s in (1, -1)):
                    a = stabilize(outs[1].rep, comp, -1)
                    b = stabilize(outs[-1].rep, comp, 1)
                    if isinstance(a, NonLoose) and isinstance(b, NonLoose):
                        res.checked += 1
                        if a.rep.key != b.rep.key:
                            res.failures.append(f"{r.key} on L{comp}: S+S- != S-S+")


def check_surgery(res: CheckResult, pmax: int) -> None:
    for p, q in _lens_sets(pmax):
        for case, k1, k2 in _regimes(3):
            for r in enumerate_reps(p, q, case, k1, k2):
                res.checked += 1
                d = build_diagram(r)
                v = verify_lens(d, p, q)
                if not v.ok:
                    res.failures.append(f"{r.key}: {v.detail}")
                if smooth_chain(d) != smooth_chain(d.mirror()):
                    res.failures.append(f"{r.key}: mirroring changed the linking matrix")
                if build_diagram(conjugate(r)) != d.mirror():
                    res.failures.append(f"{r.key}: conjugate class is not the mirrored diagram")


def check_conjugation(res: CheckResult, pmax: int) -> None:
    for p, q in _lens_sets(pmax):
        for case, k1, k2 in _regimes(3):
            inv = Counter(r.invariants for r in enumerate_reps(p, q, case, k1, k2))
            flipped = Counter((t1, t2, -r1, -r2, -e) for (t1, t2, r1, r2, e) in inv.elements())
            res.checked += 1
            if inv != flipped:
                res.failures.append(f"L({p},{q}) {case.value}({k1},{k2}) is not symmetric under conjugation")


# (number, title, check, wall-clock budget in seconds)
CHECKS: list[tuple[int, str, Callable[[CheckResult, int], None], float]] = [
    (1, "L(p,1) large-large counts", check_table1, 5),
    (2, "L(p,1) mixed-size counts", check_case_counts, 5),
    (3, "L(p,1) rotation multisets", check_table2, 10),
    (4, "L(2n+1,2) counts and rotation multisets", check_table3, 30),
    (5, "L(p,q) product counts", check_table4, 30),
    (6, "tb closed forms", check_tb, 1),
    (7, "torsion census", check_torsion, 5),
    (8, "Farey operations against brute force", check_farey, 60),
    (9, "shortening against exhaustive search", check_shortening, 60),
    (10, "stabilization contract", check_stabilization, 60),
    (11, "surgery diagrams", check_surgery, 30),
    (12, "conjugation symmetry", check_conjugation, 10),
]


def run_check(number: int, pmax: int = SCOPES["full"]) -> CheckResult:
    num, title, fn, budget = next(c for c in CHECKS if c[0] == number)
    res = CheckResult(num, title, budget=budget)
    start = time.perf_counter()
    fn(res, pmax)
    res.seconds = time.perf_counter() - start
    return res


def run_all(scope: str = "fast", numbers: Iterable[int] | None = None) -> list[CheckResult]:
    pmax = SCOPES[scope]
    wanted = set(numbers) if numbers is not None else {c[0] for c in CHECKS}
    return [run_check(n, pmax) for n, *_ in CHECKS if n in wanted]
