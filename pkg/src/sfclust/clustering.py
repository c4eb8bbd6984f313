"""Exact clustering numbers: interval decompositions, crossing counts, and
mean cluster counts over translation query sets.

Two independent routes to the mean cluster count are provided:

* ``mean_cluster_count`` sums, over the n-1 directed curve edges, the number
  of queries each edge crosses, adds the containment counts of the curve's
  first and last cells, and divides by twice the query-set size. Exact
  rational arithmetic, cost O(n) per query set.
* ``mean_cluster_count_enumerated`` walks every translation and counts
  clusters directly.

The two must agree exactly; the test suite enforces this across the whole
curve catalogue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .core import (
    RectQuery,
    TranslationQuerySet,
    containment_count,
    edge_boundary_distance,
    pair_containment_count,
)
from .curves import Curve

__all__ = [
    "IntervalDecomposition",
    "CrossingCounts",
    "cluster_intervals",
    "cluster_count_boundary",
    "query_edge_crossings",
    "crossing_count",
    "crossing_count_unit2d",
    "crossing_count_containment",
    "crossing_counts_array",
    "mean_cluster_count",
    "mean_cluster_count_enumerated",
    "mean_cluster_count_queries",
    "NAIVE_3D_CELL_LIMIT",
]

#: 3D boxes larger than this refuse the sort-based per-query path.
NAIVE_3D_CELL_LIMIT = 10**7


@dataclass(frozen=True)
class IntervalDecomposition:
    """A query's cells as maximal runs of consecutive ranks.

    ``intervals`` is sorted, disjoint, and non-adjacent; the number of
    intervals is the query's cluster count.
    """

    query: RectQuery
    intervals: Tuple[Tuple[int, int], ...]

    @property
    def count(self) -> int:
        return len(self.intervals)

    @property
    def covered(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)


@dataclass(frozen=True)
class CrossingCounts:
    entering: int
    leaving: int

    @property
    def total(self) -> int:
        return self.entering + self.leaving


def _box_slices(q: RectQuery):
    return tuple(slice(o, o + l) for o, l in zip(q.origin, q.lengths))


def _box_ranks(curve: Curve, q: RectQuery) -> np.ndarray:
    return curve.rank_grid()[_box_slices(q)].ravel()


def _guard_box_size(curve: Curve, q: RectQuery) -> None:
    if curve.universe.d == 3 and q.size > NAIVE_3D_CELL_LIMIT:
        raise ValueError(
            f"3D query with {q.size} cells exceeds the per-query limit "
            f"({NAIVE_3D_CELL_LIMIT}); use cluster_count_boundary on a continuous curve"
        )


def cluster_intervals(curve: Curve, q: RectQuery) -> IntervalDecomposition:
    """Sort the ranks of the query's cells and split at gaps."""
    q.validate_in(curve.universe)
    _guard_box_size(curve, q)
    ranks = np.sort(_box_ranks(curve, q))
    breaks = np.nonzero(np.diff(ranks) > 1)[0]
    starts = np.concatenate(([0], breaks + 1))
    ends = np.concatenate((breaks, [len(ranks) - 1]))
    intervals = tuple((int(ranks[a]), int(ranks[b])) for a, b in zip(starts, ends))
    return IntervalDecomposition(query=q, intervals=intervals)


def _cluster_count_sorted(curve: Curve, q: RectQuery) -> int:
    ranks = np.sort(_box_ranks(curve, q))
    return int(np.count_nonzero(np.diff(ranks) > 1)) + 1


def _boundary_flat_indices(q: RectQuery, s: int) -> np.ndarray:
    """Flat grid indices of the cells on the box's boundary shell, deduplicated."""
    d = q.d
    shape = (s,) * d
    pieces = []
    axis_ranges = [np.arange(o, o + l) for o, l in zip(q.origin, q.lengths)]
    for ax in range(d):
        faces = {q.origin[ax], q.origin[ax] + q.lengths[ax] - 1}
        for coord in faces:
            coords = [axis_ranges[i] for i in range(d)]
            coords[ax] = np.array([coord])
            mesh = np.meshgrid(*coords, indexing="ij")
            pieces.append(
                np.ravel_multi_index([m.ravel() for m in mesh], shape)
            )
    return np.unique(np.concatenate(pieces))


def cluster_count_boundary(curve: Curve, q: RectQuery) -> int:
    """Cluster count via boundary-shell inspection, for continuous curves only.

    A cell starts a cluster iff its rank is 0 or its curve predecessor lies
    outside the query. On a continuous curve the predecessor of an interior
    cell is a grid neighbor, hence inside the query, so only the boundary
    shell (plus the curve's first cell) needs checking. Cost is proportional
    to the query's surface.
    """
    if not curve.continuous:
        raise ValueError(
            f"boundary counting requires a continuous curve, {curve.curve_id} is not"
        )
    q.validate_in(curve.universe)
    u = curve.universe
    grid_flat = curve.rank_grid().ravel()
    bidx = _boundary_flat_indices(q, u.s)
    rb = grid_flat[bidx]

    count = int(np.count_nonzero(rb == 0))  # curve start inside the shell
    nonzero = rb[rb != 0]
    preds = curve.cells_by_rank()[nonzero - 1]
    outside = np.zeros(len(preds), dtype=bool)
    for ax in range(u.d):
        o, l = q.origin[ax], q.lengths[ax]
        outside |= (preds[:, ax] < o) | (preds[:, ax] >= o + l)
    count += int(np.count_nonzero(outside))

    first = tuple(int(c) for c in curve.cells_by_rank()[0])
    if q.contains(first):
        interior = all(
            o + 1 <= c <= o + l - 2
            for c, o, l in zip(first, q.origin, q.lengths)
        )
        if interior:
            count += 1
    return count


def query_edge_crossings(q: RectQuery, a: Sequence[int], b: Sequence[int]) -> CrossingCounts:
    """Whether the directed edge (a, b) enters and/or leaves a single query."""
    a_in, b_in = q.contains(a), q.contains(b)
    return CrossingCounts(entering=int(b_in and not a_in), leaving=int(a_in and not b_in))


def crossing_count_containment(qs: TranslationQuerySet, a, b) -> int:
    """Queries crossed by (a, b), via containment counts.

    A query is crossed iff it contains exactly one endpoint, so the count is
    I(a) + I(b) - 2 * I(both). Valid for any dimension and any cell pair.
    """
    return (
        containment_count(qs, a)
        + containment_count(qs, b)
        - 2 * pair_containment_count(qs, a, b)
    )


def crossing_count_unit2d(qs: TranslationQuerySet, a, b) -> int:
    """Queries crossed by a 2D axis-unit edge, via the placement-count product.

    Along the edge's own axis there are 0, 1, or 2 side placements that
    separate the endpoints, depending on how close the edge is to the
    boundary relative to the query length; along the perpendicular axis any
    placement covering the edge works.
    """
    u = qs.universe
    if u.d != 2:
        raise ValueError("unit-edge crossing formula is 2D only")
    dx = abs(a[0] - b[0])
    dy = abs(a[1] - b[1])
    if sorted((dx, dy)) != [0, 1]:
        raise ValueError(f"edge {a}->{b} is not an axis-aligned unit edge")
    axis = 0 if dx == 1 else 1
    perp = 1 - axis
    s, m = u.s, u.m
    l_axis = qs.lengths[axis]
    l_perp = qs.lengths[perp]
    nab_axis = edge_boundary_distance(a, b, u, axis)
    nab_perp = edge_boundary_distance(a, b, u, perp)
    if l_axis <= m:
        d_axis = 1 if nab_axis <= l_axis - 1 else 2
    else:
        d_axis = 1 if nab_axis <= s - l_axis else 0
    d_perp = min(l_perp, s + 1 - l_perp, nab_perp)
    return d_axis * d_perp


def _is_unit_edge(a, b) -> bool:
    diff = sum(abs(x - y) for x, y in zip(a, b))
    return diff == 1


def crossing_count(qs: TranslationQuerySet, a, b) -> int:
    """Number of queries in the translation set crossed by the edge (a, b).

    Dispatches to the 2D unit-edge product formula when it applies, and to
    the containment-difference route otherwise. Both are exact.
    """
    if qs.universe.d == 2 and _is_unit_edge(a, b):
        return crossing_count_unit2d(qs, a, b)
    return crossing_count_containment(qs, a, b)


def _containment_tables(qs: TranslationQuerySet) -> List[np.ndarray]:
    s = qs.universe.s
    xs = np.arange(s, dtype=np.int64)
    return [
        np.minimum.reduce([xs + 1, np.full(s, l, dtype=np.int64),
                           np.full(s, s - l + 1, dtype=np.int64), s - xs])
        for l in qs.lengths
    ]


def crossing_counts_array(qs: TranslationQuerySet, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vectorized containment-difference crossing counts.

    ``a`` and ``b`` are (N, d) coordinate arrays of edge endpoints.
    """
    s = qs.universe.s
    tables = _containment_tables(qs)
    i_a = np.ones(len(a), dtype=np.int64)
    i_b = np.ones(len(a), dtype=np.int64)
    pair = np.ones(len(a), dtype=np.int64)
    for ax, l in enumerate(qs.lengths):
        ca = tables[ax][a[:, ax]]
        cb = tables[ax][b[:, ax]]
        i_a *= ca
        i_b *= cb
        lo = np.minimum(a[:, ax], b[:, ax])
        hi = np.maximum(a[:, ax], b[:, ax])
        both = np.minimum(lo, s - l) - np.maximum(hi - l + 1, 0) + 1
        pair *= np.maximum(both, 0)
    return i_a + i_b - 2 * pair


def mean_cluster_count(curve: Curve, qs: TranslationQuerySet) -> Fraction:
    """Mean cluster count over all translations, via edge crossings.

    Every cluster of a query pairs one entering with one leaving edge, except
    at the curve's endpoints, which the two containment terms repair. The
    result is exact.
    """
    if qs.universe != curve.universe:
        raise ValueError("query set universe differs from curve universe")
    cells = curve.cells_by_rank()
    gamma_total = int(crossing_counts_array(qs, cells[:-1], cells[1:]).sum())
    first = tuple(int(c) for c in cells[0])
    last = tuple(int(c) for c in cells[-1])
    ends = containment_count(qs, first) + containment_count(qs, last)
    return Fraction(gamma_total + ends, 2 * qs.count)


def mean_cluster_count_enumerated(curve: Curve, qs: TranslationQuerySet) -> Fraction:
    """Mean cluster count by enumerating every translation."""
    if qs.universe != curve.universe:
        raise ValueError("query set universe differs from curve universe")
    total = 0
    count = 0
    for q in qs.translations():
        _guard_box_size(curve, q)
        total += _cluster_count_sorted(curve, q)
        count += 1
    return Fraction(total, count)


def mean_cluster_count_queries(curve: Curve, queries: Iterable[RectQuery]) -> Fraction:
    """Mean cluster count over an explicit collection of queries."""
    total = 0
    count = 0
    for q in queries:
        q.validate_in(curve.universe)
        _guard_box_size(curve, q)
        total += _cluster_count_sorted(curve, q)
        count += 1
    if count == 0:
        raise ValueError("empty query collection")
    return Fraction(total, count)
