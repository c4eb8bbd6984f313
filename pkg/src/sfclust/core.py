"""Grid universe, rectangular queries, translation query sets, and counting helpers.

Everything here is pure arithmetic on small immutable values; all heavier
machinery (curves, clustering, bounds) builds on these primitives.

Conventions:
    * A cell is a plain tuple of ``d`` integer coordinates, each in ``[0, s)``.
    * The origin ``(0, ..., 0)`` is the lower-left corner; a query's origin is
      its minimal-coordinate cell.
    * Axes are indexed 0-based.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Tuple

Cell = Tuple[int, ...]
Edge = Tuple[Cell, Cell]

#: Hard cap so every rank fits in a signed 64-bit integer.
MAX_CELLS = 2**63 - 1


@dataclass(frozen=True)
class Universe:
    """A cubic grid of side ``s`` in ``d`` dimensions (``d`` in {2, 3}).

    The side must be even: the layered constructions used throughout assume
    an integer half-side ``m = s // 2``. Odd sides are rejected outright
    rather than rounded.
    """

    d: int
    s: int

    def __post_init__(self):
        if self.d not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {self.d}")
        if self.s < 2:
            raise ValueError(f"side must be at least 2, got {self.s}")
        if self.s % 2 != 0:
            raise ValueError(f"side must be even, got {self.s}")
        if self.s**self.d > MAX_CELLS:
            raise ValueError(f"universe of side {self.s} exceeds 64-bit rank range")

    @property
    def n(self) -> int:
        """Total number of cells."""
        return self.s**self.d

    @property
    def m(self) -> int:
        """Half side length."""
        return self.s // 2

    def contains(self, cell: Sequence[int]) -> bool:
        return len(cell) == self.d and all(0 <= c < self.s for c in cell)

    def validate_cell(self, cell: Sequence[int]) -> None:
        if not self.contains(cell):
            raise ValueError(f"cell {tuple(cell)} not in [0, {self.s})^{self.d}")

    def cells(self) -> Iterator[Cell]:
        """Iterate all cells in lexicographic coordinate order."""
        return itertools.product(range(self.s), repeat=self.d)


@dataclass(frozen=True)
class RectQuery:
    """An axis-aligned box: origin cell plus positive side lengths."""

    origin: Cell
    lengths: Tuple[int, ...]

    def __post_init__(self):
        if len(self.origin) != len(self.lengths):
            raise ValueError("origin and lengths must have the same arity")
        if any(l < 1 for l in self.lengths):
            raise ValueError(f"lengths must be positive, got {self.lengths}")

    @property
    def d(self) -> int:
        return len(self.lengths)

    @property
    def size(self) -> int:
        """Number of cells in the box."""
        return math.prod(self.lengths)

    def validate_in(self, u: Universe) -> None:
        if self.d != u.d:
            raise ValueError(f"query is {self.d}-dimensional, universe is {u.d}-dimensional")
        for o, l in zip(self.origin, self.lengths):
            if o < 0 or l > u.s or o + l > u.s:
                raise ValueError(f"query {self} does not fit in side-{u.s} universe")

    def contains(self, cell: Sequence[int]) -> bool:
        return all(o <= c < o + l for c, o, l in zip(cell, self.origin, self.lengths))

    def cells(self) -> Iterator[Cell]:
        return itertools.product(
            *(range(o, o + l) for o, l in zip(self.origin, self.lengths))
        )


@dataclass(frozen=True)
class TranslationQuerySet:
    """All translations of a fixed box shape inside a universe.

    For side lengths ``l_i`` there are ``s - l_i + 1`` placements along axis
    ``i``; the set size is the product of those placement counts.
    """

    universe: Universe
    lengths: Tuple[int, ...]

    def __post_init__(self):
        if len(self.lengths) != self.universe.d:
            raise ValueError("lengths arity must match universe dimension")
        for l in self.lengths:
            if not 1 <= l <= self.universe.s:
                raise ValueError(f"side length {l} outside [1, {self.universe.s}]")

    def placements(self, axis: int) -> int:
        """Number of placements along ``axis`` (the quantity s - l + 1)."""
        return self.universe.s - self.lengths[axis] + 1

    @property
    def count(self) -> int:
        """Number of queries in the set."""
        return math.prod(self.placements(a) for a in range(self.universe.d))

    @property
    def query_size(self) -> int:
        return math.prod(self.lengths)

    def translations(self) -> Iterator[RectQuery]:
        for origin in itertools.product(
            *(range(self.placements(a)) for a in range(self.universe.d))
        ):
            yield RectQuery(origin, self.lengths)


@dataclass(frozen=True)
class NearCubeParams:
    """Side-length growth profile: l_i = phi_i * s**mu + psi_i.

    ``mu`` controls how the sides scale with the grid side; the ``phi``
    coefficients must be positive. ``psi`` offsets may be any sign.
    """

    mu: float
    phis: Tuple[float, ...]
    psis: Tuple[float, ...]

    def __post_init__(self):
        if not 0 <= self.mu <= 1:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")
        if len(self.phis) != len(self.psis):
            raise ValueError("phis and psis must have the same arity")
        if any(p <= 0 for p in self.phis):
            raise ValueError(f"phi coefficients must be positive, got {self.phis}")


def boundary_distance(cell: Sequence[int], u: Universe) -> int:
    """Distance from a cell to the grid boundary: min over axes of
    (coord + 1, s - coord). Ranges over [1, m]."""
    s = u.s
    return min(min(c + 1, s - c) for c in cell)


def edge_boundary_distance(a: Sequence[int], b: Sequence[int], u: Universe, axis: int) -> int:
    """Distance of the edge (a, b) to the boundary along one axis: the min of
    (coord + 1, s - coord) over the two endpoints' coordinates on that axis."""
    s = u.s
    return min(a[axis] + 1, s - a[axis], b[axis] + 1, s - b[axis])


def _axis_placements(s: int, l: int, x: int) -> int:
    # Number of origins o with o <= x < o + l and 0 <= o <= s - l.
    return min(x + 1, l, s - l + 1, s - x)


def _axis_pair_placements(s: int, l: int, x1: int, x2: int) -> int:
    # Number of origins whose span covers both x1 and x2.
    lo, hi = (x1, x2) if x1 <= x2 else (x2, x1)
    return max(0, min(lo, s - l) - max(0, hi - l + 1) + 1)


def containment_count(qs: TranslationQuerySet, cell: Sequence[int]) -> int:
    """How many queries of the translation set contain the cell.

    Separable per axis: the product over axes of
    min(coord + 1, l, s - l + 1, s - coord).
    """
    u = qs.universe
    u.validate_cell(cell)
    s = u.s
    out = 1
    for x, l in zip(cell, qs.lengths):
        out *= _axis_placements(s, l, x)
    return out


def pair_containment_count(qs: TranslationQuerySet, a: Sequence[int], b: Sequence[int]) -> int:
    """How many queries of the translation set contain both cells.

    Per axis the admissible origins form an interval (possibly empty); the
    result is the product of interval sizes.
    """
    u = qs.universe
    u.validate_cell(a)
    u.validate_cell(b)
    s = u.s
    out = 1
    for x1, x2, l in zip(a, b, qs.lengths):
        out *= _axis_pair_placements(s, l, x1, x2)
        if out == 0:
            return 0
    return out


def as_fraction(value) -> Fraction:
    """Normalize ints/Fractions to Fraction (helper shared by callers)."""
    return value if isinstance(value, Fraction) else Fraction(value)
