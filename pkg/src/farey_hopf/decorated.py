"""Signed Farey paths, continued fraction blocks and consistent shortening.

A decorated path stores lifted primitive vectors rather than bare slopes.
Consecutive lifts satisfy ``det(v_i, v_{i+1}) = -1`` (one clockwise step), so
a path that winds past its starting slope is still represented faithfully.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

from .farey import FareyPath, Slope, Vector, det, from_vector, lift_path

EulerVector = tuple[int, int]


def turning_numbers(vectors: Sequence[Vector]) -> list[int]:
    """``c_i`` with ``v_{i+1} = -v_{i-1} + c_i v_i`` at each interior vertex."""
    return [-det(vectors[i - 1], vectors[i + 1]) for i in range(1, len(vectors) - 1)]


def winds(vectors: Sequence[Vector]) -> bool:
    """Whether the lifted path turns through at least a half turn."""
    v0 = vectors[0]
    return any(det(v0, v) >= 0 for v in vectors[1:])


@dataclass(frozen=True)
class DecoratedPath:
    vectors: tuple[Vector, ...]
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != len(self.vectors) - 1:
            raise ValueError("need exactly one sign per edge")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        for u, v in zip(self.vectors, self.vectors[1:]):
            if det(u, v) != -1:
                raise ValueError("consecutive lifts must span a clockwise Farey edge")

    @classmethod
    def from_path(cls, path: FareyPath | Sequence[Slope], signs: Sequence[int]) -> DecoratedPath:
        verts = path.vertices if isinstance(path, FareyPath) else tuple(path)
        return cls(tuple(lift_path(verts)), tuple(signs))

    @property
    def vertices(self) -> tuple[Slope, ...]:
        return tuple(from_vector(v) for v in self.vectors)

    @property
    def path(self) -> FareyPath:
        return FareyPath(self.vertices)

    def __len__(self) -> int:
        return len(self.signs)

    @property
    def winds(self) -> bool:
        return winds(self.vectors)

    def negate(self) -> DecoratedPath:
        return DecoratedPath(self.vectors, tuple(-s for s in self.signs))

    def to_json(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices], "signs": list(self.signs)}


PathLike = Union[FareyPath, DecoratedPath, Sequence[Vector]]


def _vectors(path: PathLike) -> tuple[Vector, ...]:
    if isinstance(path, DecoratedPath):
        return path.vectors
    if isinstance(path, FareyPath):
        return tuple(lift_path(path.vertices))
    return tuple(path)


def is_minimal(path: PathLike) -> bool:
    return all(c >= 2 for c in turning_numbers(_vectors(path)))


def _blocks(vectors: Sequence[Vector]) -> tuple[tuple[int, int], ...]:
    # Edges i-1 and i share a block iff the turning number at vertex i is 2.
    n_edges = len(vectors) - 1
    if n_edges <= 0:
        return ()
    blocks = []
    start = 0
    for i, c in enumerate(turning_numbers(vectors), start=1):
        if c != 2:
            blocks.append((start, i))
            start = i
    blocks.append((start, n_edges))
    return tuple(blocks)


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal continued fraction blocks as half-open edge ranges."""

    ranges: tuple[tuple[int, int], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in self.ranges)

    def block_of(self, edge: int) -> int:
        for j, (a, b) in enumerate(self.ranges):
            if a <= edge < b:
                return j
        raise IndexError(edge)

    def __len__(self) -> int:
        return len(self.ranges)


def block_decompose(path: PathLike) -> BlockDecomposition:
    vectors = _vectors(path)
    if not is_minimal(vectors):
        raise ValueError("block decomposition needs a minimal path")
    return BlockDecomposition(_blocks(vectors))


@dataclass(frozen=True, order=True)
class DecorationClass:
    """Shuffle class of a decoration: negative-sign count per block."""

    lengths: tuple[int, ...]
    negatives: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.lengths) != len(self.negatives):
            raise ValueError("one count per block")
        for n, m in zip(self.lengths, self.negatives):
            if not 0 <= m <= n:
                raise ValueError(f"negative count {m} outside 0..{n}")

    def conjugate(self) -> DecorationClass:
        return DecorationClass(self.lengths, tuple(n - m for n, m in zip(self.lengths, self.negatives)))

    @property
    def uniform_sign(self) -> int:
        """+1 or -1 when every edge carries that sign, else 0."""
        if all(m == 0 for m in self.negatives):
            return 1
        if all(m == n for n, m in zip(self.lengths, self.negatives)):
            return -1
        return 0

    def to_json(self) -> list[list[int]]:
        return [[n, m] for n, m in zip(self.lengths, self.negatives)]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> DecorationClass:
        return cls(tuple(int(n) for n, _ in data), tuple(int(m) for _, m in data))


def count_decorations(path: PathLike) -> int:
    total = 1
    for n in block_decompose(path).lengths:
        total *= n + 1
    return total


def enumerate_classes(path: PathLike) -> list[DecorationClass]:
    lengths = block_decompose(path).lengths
    return [DecorationClass(lengths, combo) for combo in itertools.product(*(range(n + 1) for n in lengths))]


def class_of(dp: DecoratedPath) -> DecorationClass:
    blocks = block_decompose(dp)
    negs = tuple(sum(1 for s in dp.signs[a:b] if s < 0) for a, b in blocks.ranges)
    return DecorationClass(blocks.lengths, negs)


def representative(path: PathLike, cls: DecorationClass) -> DecoratedPath:
    """A decorated path in ``cls``: each block lists its negative signs first."""
    vectors = _vectors(path)
    blocks = block_decompose(vectors)
    if blocks.lengths != cls.lengths:
        raise ValueError("class does not match the block structure of the path")
    signs: list[int] = []
    for n, m in zip(cls.lengths, cls.negatives):
        signs.extend([-1] * m + [1] * (n - m))
    return DecoratedPath(vectors, tuple(signs))


# --- relative Euler class ---------------------------------------------------------


def relative_euler_class(dp: DecoratedPath) -> EulerVector:
    """Poincare dual of the relative Euler class: sum of eps_i (v_i - v_{i-1})."""
    x = y = 0
    for eps, u, v in zip(dp.signs, dp.vectors, dp.vectors[1:]):
        x += eps * (v[0] - u[0])
        y += eps * (v[1] - u[1])
    return (x, y)


def evaluate(e: EulerVector, s: Slope) -> int:
    """Intersection pairing of the curve class ``e`` with the slope ``s``."""
    return det(s.vector, e)


# --- consistent shortening ----------------------------------------------------------


@dataclass(frozen=True)
class Tight:
    path: DecoratedPath
    moves: tuple[tuple[int, Slope, int], ...] = field(default=())

    tight = True


@dataclass(frozen=True)
class Overtwisted:
    tight = False


ShortenResult = Union[Tight, Overtwisted]


def _canonical(vectors: tuple[Vector, ...], signs: Sequence[int]) -> tuple:
    blocks = _blocks(vectors)
    return (vectors, blocks, tuple(sum(1 for s in signs[a:b] if s < 0) for a, b in blocks))


def _concrete(vectors, blocks, negs) -> list[int]:
    signs: list[int] = []
    for (a, b), m in zip(blocks, negs):
        signs.extend([-1] * m + [1] * (b - a - m))
    return signs


def _arrange(blocks, negs, edge: int, sign: int, at_end: bool) -> list[int] | None:
    # Signs of the block containing ``edge`` with ``sign`` moved to its end or start.
    for (a, b), m in zip(blocks, negs):
        if a <= edge < b:
            n = b - a
            have = m if sign < 0 else n - m
            if have == 0:
                return None
            rest_neg = m - (1 if sign < 0 else 0)
            rest = [-1] * rest_neg + [1] * (n - 1 - rest_neg)
            return rest + [sign] if at_end else [sign] + rest
    raise IndexError(edge)


@lru_cache(maxsize=None)
def _search(state: tuple) -> tuple | None:
    vectors, blocks, negs = state
    turning = turning_numbers(vectors)
    if all(c >= 2 for c in turning):
        return (state, ())
    for i, c in enumerate(turning, start=1):
        if c != 1:
            continue
        for sign in (1, -1):
            left = _arrange(blocks, negs, i - 1, sign, at_end=True)
            right = _arrange(blocks, negs, i, sign, at_end=False)
            if left is None or right is None:
                continue
            signs = _concrete(vectors, blocks, negs)
            lb = next(r for r in blocks if r[0] <= i - 1 < r[1])
            rb = next(r for r in blocks if r[0] <= i < r[1])
            signs[lb[0]:lb[1]] = left
            signs[rb[0]:rb[1]] = right
            new_signs = signs[: i - 1] + [sign] + signs[i + 1 :]
            new_vectors = vectors[:i] + vectors[i + 1 :]
            found = _search(_canonical(new_vectors, new_signs))
            if found is not None:
                final, moves = found
                return (final, ((i, from_vector(vectors[i]), sign),) + moves)
    return None


def try_shorten(dp: DecoratedPath) -> ShortenResult:
    """Decide tightness by searching shuffles and consistent shortenings.

    Returns ``Tight`` with a minimal decorated path when some sequence of
    within-block shuffles and consistent shortenings reaches a minimal path,
    otherwise ``Overtwisted``.  The recorded moves list ``(vertex index,
    removed slope, sign of the merged edge)`` in order of application.
    """
    if dp.winds:
        raise ValueError("path winds past its start; torsion layers are handled by the classifier")
    found = _search(_canonical(dp.vectors, dp.signs))
    if found is None:
        return Overtwisted()
    (vectors, blocks, negs), moves = found
    return Tight(DecoratedPath(vectors, tuple(_concrete(vectors, blocks, negs))), moves)
