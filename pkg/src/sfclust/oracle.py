"""Brute-force reference implementations.

Everything here recomputes quantities by direct enumeration, deliberately
sharing no counting logic with the closed-form production code, so that
agreement between the two is evidence rather than tautology. Size guards are
hard errors; callers needing scale must use the production paths.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .core import RectQuery, TranslationQuerySet
from .curves import Curve

__all__ = [
    "containment_count_brute",
    "pair_containment_count_brute",
    "crossing_count_brute",
    "crossing_count_queries_brute",
    "min_neighbor_crossing_brute",
    "min_crossing_brute",
    "mean_cluster_count_brute",
    "GAMMA_QUERYSET_LIMIT",
    "OMEGA_SIDE_LIMIT",
    "MEAN_WORK_LIMIT",
]

GAMMA_QUERYSET_LIMIT = 10**6
OMEGA_SIDE_LIMIT = 16
MEAN_WORK_LIMIT = 10**9


def _origins(qs: TranslationQuerySet):
    s = qs.universe.s
    return itertools.product(*(range(s - l + 1) for l in qs.lengths))


def _inside(origin, lengths, cell) -> bool:
    return all(o <= c < o + l for o, l, c in zip(origin, lengths, cell))


def _check_queryset_size(qs: TranslationQuerySet) -> None:
    if qs.count > GAMMA_QUERYSET_LIMIT:
        raise ValueError(
            f"translation set of size {qs.count} exceeds brute-force limit {GAMMA_QUERYSET_LIMIT}"
        )


def containment_count_brute(qs: TranslationQuerySet, cell) -> int:
    _check_queryset_size(qs)
    return sum(1 for o in _origins(qs) if _inside(o, qs.lengths, cell))


def pair_containment_count_brute(qs: TranslationQuerySet, a, b) -> int:
    _check_queryset_size(qs)
    return sum(
        1
        for o in _origins(qs)
        if _inside(o, qs.lengths, a) and _inside(o, qs.lengths, b)
    )


def crossing_count_brute(qs: TranslationQuerySet, a, b) -> int:
    """Queries crossed by the edge (a, b): entered plus left, by enumeration."""
    _check_queryset_size(qs)
    total = 0
    for o in _origins(qs):
        a_in = _inside(o, qs.lengths, a)
        b_in = _inside(o, qs.lengths, b)
        if a_in != b_in:
            total += 1
    return total


def crossing_count_queries_brute(queries: Sequence[RectQuery], a, b) -> int:
    """Crossing count against an explicit query list."""
    total = 0
    for q in queries:
        a_in = q.contains(a)
        b_in = q.contains(b)
        if a_in != b_in:
            total += 1
    return total


def _neighbors(cell, s):
    for ax in range(len(cell)):
        for step in (-1, 1):
            c = cell[ax] + step
            if 0 <= c < s:
                yield cell[:ax] + (c,) + cell[ax + 1 :]


def min_neighbor_crossing_brute(qs: TranslationQuerySet, cell) -> int:
    """Minimum crossing count over edges from the cell to its grid neighbors."""
    _check_queryset_size(qs)
    cell = tuple(cell)
    return min(
        crossing_count_brute(qs, cell, nb)
        for nb in _neighbors(cell, qs.universe.s)
    )


def min_crossing_brute(qs: TranslationQuerySet, cell) -> int:
    """Minimum crossing count over edges from the cell to any other cell."""
    u = qs.universe
    if u.s > OMEGA_SIDE_LIMIT:
        raise ValueError(f"side {u.s} exceeds brute-force limit {OMEGA_SIDE_LIMIT}")
    _check_queryset_size(qs)
    cell = tuple(cell)
    return min(
        crossing_count_brute(qs, cell, other)
        for other in u.cells()
        if other != cell
    )


def mean_cluster_count_brute(curve: Curve, qs: TranslationQuerySet) -> Fraction:
    """Mean cluster count by enumeration, with set-based cluster counting.

    Counts, for every translation, the cells whose predecessor rank is absent
    from the query (cluster starts). Iterates translations in reverse order;
    shares no helpers with the clustering module.
    """
    if qs.universe != curve.universe:
        raise ValueError("query set universe differs from curve universe")
    if qs.count * qs.query_size > MEAN_WORK_LIMIT:
        raise ValueError(
            f"brute-force work {qs.count * qs.query_size} exceeds limit {MEAN_WORK_LIMIT}"
        )
    total = 0
    n_queries = 0
    origins = list(_origins(qs))
    for o in reversed(origins):
        ranks = {
            curve.index(cell)
            for cell in itertools.product(
                *(range(oi, oi + l) for oi, l in zip(o, qs.lengths))
            )
        }
        starts = sum(1 for r in ranks if r - 1 not in ranks)
        total += starts
        n_queries += 1
    return Fraction(total, n_queries)
