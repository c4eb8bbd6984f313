"""Closed-form clustering formulas, lower bounds, and near-cube case analysis.

Values that carry a certified additive error are returned as
:class:`FormulaValue` with ``kind="exact-with-eps"`` and the error bound in
``slack``. Formulas that drop lower-order terms are marked
``kind="leading-order"``; their slack is not certified and they must never be
used in pass/fail decisions.

Lower bounds are computed from the exact per-cell neighbor-crossing minimum
summed over the whole grid (see :func:`neighbor_crossing_total`), not from
closed-form approximations of that sum: the closed forms are exposed
separately (:func:`neighbor_crossing_total_closed`) and cross-checked against
the exact summation by the test suite, which logs any discrepancy.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    NearCubeParams,
    RectQuery,
    TranslationQuerySet,
    Universe,
)
from .clustering import (
    crossing_count,
    crossing_counts_array,
    mean_cluster_count,
)
from .curves import Curve, OnionCurve2D

log = logging.getLogger(__name__)

__all__ = [
    "FormulaValue",
    "CaseLabel",
    "onion2d_mean_formula",
    "onion2d_edge_class_sums",
    "min_neighbor_crossing",
    "min_neighbor_crossing_closed",
    "min_crossing",
    "neighbor_crossing_grid",
    "neighbor_crossing_total",
    "neighbor_crossing_total_closed",
    "lower_bound_continuous",
    "lower_bound_general",
    "onion3d_mean_formula",
    "cube_lower_bound_formula_3d",
    "side_lengths_from_params",
    "near_cube_gap_ok",
    "classify_near_cube",
    "approx_ratio_upper",
    "rows_and_columns",
]


@dataclass(frozen=True)
class FormulaValue:
    """A formula result plus its certified additive error bound."""

    value: Fraction
    slack: Fraction
    kind: str  # "exact-with-eps" or "leading-order"
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("exact-with-eps", "leading-order"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.slack < 0:
            raise ValueError("slack must be non-negative")

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class CaseLabel:
    """Near-cube growth-case classification with its predicted ratio ceiling."""

    case: str  # "I".."V"
    mu: float
    phis: Tuple[float, ...]
    psis: Tuple[float, ...]
    lengths: Tuple[int, ...]
    eta_bound: Optional[float]  # None when no expression is available
    note: str = ""


def _check_lengths(s: int, *lengths: int) -> None:
    for l in lengths:
        if not 1 <= l <= s:
            raise ValueError(f"side length {l} outside [1, {s}]")


# ---------------------------------------------------------------------------
# Mean cluster count of the 2D onion curve (closed form).
# ---------------------------------------------------------------------------

def onion2d_mean_formula(l1: int, l2: int, s: int) -> FormulaValue:
    """Closed-form mean cluster count of the 2D onion curve over all
    translations of an l1 x l2 box on an s x s grid.

    Defined for sorted lengths; unsorted inputs are swapped (the curve is
    nearly symmetric in the two axes) and the swap is noted. The two clean
    regimes carry certified slack (5 when both lengths are at most s/2,
    2 when both exceed s/2); the straddling regime only has a leading-order
    value of s/3.
    """
    if s < 2 or s % 2:
        raise ValueError(f"side must be even and at least 2, got {s}")
    _check_lengths(s, l1, l2)
    note = ""
    if l1 > l2:
        l1, l2 = l2, l1
        note = "lengths swapped to l1 <= l2"
    m = s // 2
    big_l1 = s - l1 + 1
    big_l2 = s - l2 + 1
    if l2 <= m:
        poly = (
            Fraction(2, 3) * l2**3
            - Fraction(7, 2) * l1 * l2**2
            + Fraction(5, 2) * l1**2 * l2
            - m * (l2 - l1) * (l2 - 3 * l1)
        )
        value = Fraction(l1 + l2, 2) + Fraction(poly, big_l1 * big_l2)
        return FormulaValue(value, Fraction(5), "exact-with-eps", note)
    if l1 > m:
        value = big_l1 - big_l2 + Fraction(2 * big_l2**2, 3 * big_l1)
        return FormulaValue(value, Fraction(2), "exact-with-eps", note)
    extra = "straddling regime: leading-order value only"
    note = f"{note}; {extra}" if note else extra
    return FormulaValue(Fraction(2 * m, 3), Fraction(0), "leading-order", note)


def onion2d_edge_class_sums(qs: TranslationQuerySet) -> Tuple[int, int, int]:
    """Split the onion curve's total crossing count into its three edge-class
    sums (same-layer axis-0 edges, same-layer axis-1 edges completed with the
    per-ring missing edge, and the cross-layer correction).

    The three sums always recombine to the plain total over all curve edges;
    the third term is small relative to twice the query-set size.
    """
    u = qs.universe
    if u.d != 2:
        raise ValueError("edge-class decomposition is 2D only")
    curve = OnionCurve2D(u)
    cells = curve.cells_by_rank()
    a, b = cells[:-1], cells[1:]
    gammas = crossing_counts_array(qs, a, b)
    s = u.s
    la = np.minimum.reduce([np.minimum(a[:, ax] + 1, s - a[:, ax]) for ax in range(2)])
    lb = np.minimum.reduce([np.minimum(b[:, ax] + 1, s - b[:, ax]) for ax in range(2)])
    same_layer = la == lb
    horizontal = a[:, 0] != b[:, 0]
    s1 = int(gammas[same_layer & horizontal].sum())
    s2_partial = int(gammas[same_layer & ~horizontal].sum())
    e1_sum = int(gammas[~same_layer].sum())
    # Ring t's vertical run misses the edge closing the loop at its lower-left.
    e2_sum = 0
    for t in range(1, u.m + 1):
        e2_sum += crossing_count(qs, (t - 1, t), (t - 1, t - 1))
    return (s1, s2_partial + e2_sum, e1_sum - e2_sum)


# ---------------------------------------------------------------------------
# Per-cell minimum crossing counts (exact production paths).
# ---------------------------------------------------------------------------

def min_neighbor_crossing(qs: TranslationQuerySet, cell) -> int:
    """Exact minimum crossing count over edges to the cell's grid neighbors."""
    u = qs.universe
    u.validate_cell(cell)
    cell = tuple(cell)
    best = None
    for ax in range(u.d):
        for step in (-1, 1):
            c = cell[ax] + step
            if not 0 <= c < u.s:
                continue
            nb = cell[:ax] + (c,) + cell[ax + 1 :]
            g = crossing_count(qs, cell, nb)
            if best is None or g < best:
                best = g
    return best


def min_crossing(qs: TranslationQuerySet, cell) -> int:
    """Exact minimum crossing count over edges to every other cell (O(n))."""
    u = qs.universe
    u.validate_cell(cell)
    cell = tuple(cell)
    s = u.s
    i_cell = 1
    axis_i = []
    axis_pair = []
    xs = np.arange(s, dtype=np.int64)
    for x, l in zip(cell, qs.lengths):
        c_tab = np.minimum.reduce(
            [xs + 1, np.full(s, l, dtype=np.int64), np.full(s, s - l + 1, dtype=np.int64), s - xs]
        )
        i_cell *= int(c_tab[x])
        lo = np.minimum(xs, x)
        hi = np.maximum(xs, x)
        pair = np.maximum(np.minimum(lo, s - l) - np.maximum(hi - l + 1, 0) + 1, 0)
        axis_i.append(c_tab)
        axis_pair.append(pair)
    i_other = axis_i[0]
    pair_grid = axis_pair[0]
    for t_i, t_p in zip(axis_i[1:], axis_pair[1:]):
        i_other = np.multiply.outer(i_other, t_i)
        pair_grid = np.multiply.outer(pair_grid, t_p)
    gamma = i_cell + i_other - 2 * pair_grid
    gamma[cell] = np.iinfo(np.int64).max  # exclude the zero-length edge
    return int(gamma.min())


def neighbor_crossing_grid(qs: TranslationQuerySet) -> np.ndarray:
    """Exact per-cell neighbor-crossing minima for the whole grid, vectorized.

    For each axis the crossing count of a unit edge factors into per-axis
    placement counts, so one pass per axis covers all edges.
    """
    u = qs.universe
    s, d = u.s, u.d
    xs = np.arange(s, dtype=np.int64)
    tables = [
        np.minimum.reduce(
            [xs + 1, np.full(s, l, dtype=np.int64), np.full(s, s - l + 1, dtype=np.int64), s - xs]
        )
        for l in qs.lengths
    ]
    lam = np.full((s,) * d, np.iinfo(np.int64).max, dtype=np.int64)
    for ax in range(d):
        l = qs.lengths[ax]
        x = np.arange(s - 1, dtype=np.int64)
        pair = np.maximum(np.minimum(x, s - l) - np.maximum(x + 2 - l, 0) + 1, 0)
        along = tables[ax][:-1] + tables[ax][1:] - 2 * pair  # (s-1,)
        shape = [1] * d
        shape[ax] = s - 1
        g = along.reshape(shape)
        for other in range(d):
            if other == ax:
                continue
            shp = [1] * d
            shp[other] = s
            g = g * tables[other].reshape(shp)
        lo = [slice(None)] * d
        hi = [slice(None)] * d
        lo[ax] = slice(0, s - 1)
        hi[ax] = slice(1, s)
        lam[tuple(lo)] = np.minimum(lam[tuple(lo)], g)
        lam[tuple(hi)] = np.minimum(lam[tuple(hi)], g)
    return lam


def neighbor_crossing_total(qs: TranslationQuerySet) -> int:
    """Sum of the exact neighbor-crossing minima over all cells."""
    return int(neighbor_crossing_grid(qs).sum())


# ---------------------------------------------------------------------------
# Closed-form variants (quadrant formula and its grid total).
# ---------------------------------------------------------------------------

def _tau(k: int, l: int, s: int) -> int:
    return min(k + 1, l, s + 1 - l)


def min_neighbor_crossing_closed(qs: TranslationQuerySet, cell) -> int:
    """Closed-form per-cell neighbor-crossing minimum (2D, quadrant formula).

    The cell is folded into the lower-left quadrant by the grid's reflection
    symmetries; axes are swapped together with the lengths when l1 > l2.
    Defined when both lengths are at most s/2 or both exceed s/2; the
    straddling regime is refused (no closed form; use the exact minimum).

    Known limitation, kept as published: at a thin band of boundary-adjacent
    cells for extreme shapes (unit squares; both-lengths-large shapes) this
    formula can exceed the true minimum. The exact routes
    (:func:`min_neighbor_crossing`, :func:`neighbor_crossing_grid`) are
    authoritative.
    """
    u = qs.universe
    if u.d != 2:
        raise ValueError("closed-form minimum is 2D only")
    u.validate_cell(cell)
    s, m = u.s, u.m
    l1, l2 = qs.lengths
    i, j = cell
    if l1 > l2:
        l1, l2 = l2, l1
        i, j = j, i
    i = min(i, s - 1 - i)
    j = min(j, s - 1 - j)
    if l2 <= m:
        def h(t, l):
            return 1 if t <= l - 1 else 2
    elif l1 > m:
        def h(t, l):
            return 1 if t <= s - l else 0
    else:
        raise ValueError(
            "no closed form when one length is at most s/2 and the other exceeds it"
        )
    return min(h(i, l1) * _tau(j, l2, s), h(j, l2) * _tau(i, l1, s))


def neighbor_crossing_total_closed(l1: int, l2: int, s: int) -> Fraction:
    """Closed-form grid total of the quadrant formula minima (2D).

    Three polynomial cases; requires l1 <= l2 and refuses the straddling
    regime. Inherits the quadrant formula's boundary-band overcount for
    extreme shapes; compare against :func:`neighbor_crossing_total` before
    relying on it.
    """
    if s < 2 or s % 2:
        raise ValueError(f"side must be even and at least 2, got {s}")
    _check_lengths(s, l1, l2)
    if l1 > l2:
        raise ValueError("requires l1 <= l2")
    m = s // 2
    if l2 <= m:
        if 2 * l1 <= l2:
            total = 4 * (
                Fraction(l1, 6)
                - Fraction(l1**2, 2)
                + Fraction(l1**3, 12)
                - Fraction(l1 * l2, 2)
                + Fraction(l1**2 * l2, 2)
                + Fraction(3 * l1 * m, 2)
                - Fraction(5 * l1**2 * m, 4)
                - l1 * l2 * m
                + 2 * l1 * m**2
            )
        else:
            total = 4 * (
                Fraction(l1, 6)
                - Fraction(l1**2, 2)
                + Fraction(l1**3, 12)
                + Fraction(l1 * l2, 2)
                + Fraction(3 * l1**2 * l2, 2)
                - Fraction(l2**2, 2)
                - l1 * l2**2
                + Fraction(l2**3, 4)
                + Fraction(l1 * m, 2)
                - Fraction(9 * l1**2 * m, 4)
                + Fraction(l2 * m, 2)
                - Fraction(l2**2 * m, 4)
                + 2 * l1 * m**2
            )
        return total
    if l1 > m:
        big_l1 = s - l1 + 1
        big_l2 = s - l2 + 1
        return Fraction(2, 3) * (1 + 3 * big_l1 - big_l2) * big_l2 * (1 + big_l2)
    raise ValueError(
        "no closed form when one length is at most s/2 and the other exceeds it"
    )


# ---------------------------------------------------------------------------
# Lower bounds.
# ---------------------------------------------------------------------------

def lower_bound_continuous(qs: TranslationQuerySet) -> FormulaValue:
    """Mean-cluster-count lower bound for curves whose consecutive cells are
    always grid neighbors.

    Every non-final cell contributes its outgoing edge, whose crossing count
    is at least the cell's neighbor minimum; pairing crossings halves the
    sum. Dropping the final cell costs at most the grid's maximum minimum,
    which is within slack 1 of the returned value.
    """
    grid = neighbor_crossing_grid(qs)
    total = int(grid.sum())
    value = Fraction(total, 2 * qs.count)
    slack = Fraction(int(grid.max()), 2 * qs.count)
    return FormulaValue(value, min(slack, Fraction(1)), "exact-with-eps")


def lower_bound_general(qs: TranslationQuerySet) -> FormulaValue:
    """Mean-cluster-count lower bound valid for every bijection.

    An edge to an arbitrary cell crosses at least half as many queries as the
    best neighbor edge, so the bound is half the continuous one. Slack is 1
    in two dimensions and 2 in three.
    """
    cont = lower_bound_continuous(qs)
    slack = Fraction(1) if qs.universe.d == 2 else Fraction(2)
    return FormulaValue(cont.value / 2, slack, "exact-with-eps")


# ---------------------------------------------------------------------------
# 3D closed forms (cube query sets).
# ---------------------------------------------------------------------------

def onion3d_mean_formula(l: int, s: int) -> FormulaValue:
    """Mean cluster count of the 3D onion curve over cube queries of side l.

    Below half the grid side only the leading-order value is available; above
    it the closed form is a one-sided upper bound.
    """
    if s < 2 or s % 2:
        raise ValueError(f"side must be even and at least 2, got {s}")
    _check_lengths(s, l)
    big_l = s - l + 1
    if l <= s // 2:
        value = Fraction(l**2) - Fraction(2 * l**5, 5 * big_l**3)
        return FormulaValue(value, Fraction(0), "leading-order",
                            "omits lower-order terms")
    value = Fraction(3, 5) * big_l**2 + Fraction(13, 4) * big_l - Fraction(13, 6)
    return FormulaValue(value, Fraction(0), "exact-with-eps",
                        "one-sided upper bound")


def cube_lower_bound_formula_3d(l: int, s: int) -> FormulaValue:
    """Closed-form 3D lower bound for continuous curves on cube queries.

    Leading-order below half the grid side; exact with non-negative error
    above it. Halve for arbitrary bijections. Prefer
    :func:`lower_bound_continuous`, which is exact at any size.
    """
    if s < 2 or s % 2:
        raise ValueError(f"side must be even and at least 2, got {s}")
    _check_lengths(s, l)
    m = s // 2
    big_l = s - l + 1
    if l == 1:
        return FormulaValue(Fraction(1), Fraction(0), "exact-with-eps",
                            "single-cell queries form one cluster")
    if l <= m:
        value = Fraction(l**2) + Fraction(
            Fraction(29, 40) * l**5 + Fraction(15, 8) * m * l**4 - 3 * m**2 * l**3,
            big_l**3,
        )
        return FormulaValue(value, Fraction(0), "leading-order",
                            "omits lower-order terms")
    value = Fraction(3, 5) * big_l**2 - Fraction(3, 2) * big_l
    return FormulaValue(value, Fraction(1), "exact-with-eps")


# ---------------------------------------------------------------------------
# Near-cube case classification.
# ---------------------------------------------------------------------------

def side_lengths_from_params(params: NearCubeParams, d: int, s: int) -> Tuple[int, ...]:
    """Concrete side lengths at grid side s: round half up, clamp to [1, s]."""
    if len(params.phis) != d:
        raise ValueError(f"expected {d} phi values, got {len(params.phis)}")
    lengths = []
    for phi, psi in zip(params.phis, params.psis):
        raw = phi * s**params.mu + psi
        l = math.floor(raw + 0.5)
        lengths.append(max(1, min(s, l)))
    return tuple(lengths)


def near_cube_gap_ok(lengths: Sequence[int], s: int) -> bool:
    """Reporting-only check that the side lengths differ by a lower-order
    amount, operationalized at finite size as s / log2(s)."""
    gap = max(lengths) - min(lengths)
    return gap <= s / math.log2(s)


def _eta_bound_2d_equal_small(phi: float) -> float:
    # cube-shaped, growing like phi * s with phi <= 1/2
    return 2 * (1 + phi * (0.5 - phi) / (1 - 2.5 * phi + (5 / 3) * phi**2))


def _eta_bound_3d_small(phi: float) -> float:
    num = 0.75 * phi * (0.5 - phi) * (4 + 3 * phi)
    den = (1 - phi) ** 3 + (phi / 40) * (29 * phi**2 + 37.5 * phi - 30)
    return 2 + num / den


def classify_near_cube(params: NearCubeParams, d: int, s: int) -> CaseLabel:
    """Classify a side-length growth profile into cases I-V and report the
    predicted approximation-ratio ceiling of the onion curve for that case.

    Cases: I constant sides; II growth slower than the grid side; III growth
    proportional with coefficient at most 1/2; IV coefficient strictly
    between 1/2 and 1; V coefficient exactly 1 (sides differ from the grid
    side by constants). Mixed coefficients that straddle case boundaries are
    rejected.
    """
    if d not in (2, 3):
        raise ValueError("dimension must be 2 or 3")
    lengths = side_lengths_from_params(params, d, s)
    mu = params.mu
    phis = tuple(sorted(params.phis))
    psis = tuple(params.psis[i] for i in np.argsort(params.phis, kind="stable"))
    note = ""
    if not near_cube_gap_ok(lengths, s):
        note = "side-length gap exceeds the near-cube reporting threshold"

    if d == 3 and len(set(phis)) > 1:
        raise ValueError("3D analysis covers cube-shaped profiles only (equal phis)")

    if mu == 0:
        return CaseLabel("I", mu, phis, psis, lengths, 1.0, note)
    if mu < 1:
        bound = 1 + phis[-1] / phis[0] if d == 2 else 2.0
        return CaseLabel("II", mu, phis, psis, lengths, bound, note)

    # mu == 1
    lo, hi = phis[0], phis[-1]
    if hi > 1:
        raise ValueError(f"phi={hi} exceeds 1: sides cannot outgrow the grid")
    if hi <= 0.5:
        if d == 3:
            return CaseLabel("III", mu, phis, psis, lengths,
                             _eta_bound_3d_small(hi), note)
        if lo == hi:
            return CaseLabel("III", mu, phis, psis, lengths,
                             _eta_bound_2d_equal_small(hi), note)
        extra = "no published expression for unequal coefficients in this case"
        return CaseLabel("III", mu, phis, psis, lengths, None,
                         f"{note}; {extra}" if note else extra)
    if hi < 1:
        if lo <= 0.5:
            raise ValueError(
                "coefficients straddle 1/2: outside the analyzed cases"
            )
        if d == 3 or lo == hi:
            return CaseLabel("IV", mu, phis, psis, lengths, 2.0, note)
        bound = 2 + 3 * ((hi - lo) / (1 - hi)) ** 2
        return CaseLabel("IV", mu, phis, psis, lengths, bound, note)
    # hi == 1
    if lo < 1:
        raise ValueError("coefficients straddle 1: outside the analyzed cases")
    ps = tuple(sorted(psis))
    if any(p > 0 for p in ps):
        raise ValueError("offsets must be non-positive when sides grow like the grid side")
    if d == 3:
        psi = ps[0]
        if psi >= -1.5:
            extra = "ratio expression vacuous for offsets above -3/2"
            return CaseLabel("V", mu, phis, psis, lengths, None,
                             f"{note}; {extra}" if note else extra)
        return CaseLabel("V", mu, phis, psis, lengths,
                         2 + (95 / 6) / (-psi - 1.5), note)
    if ps[0] == ps[-1]:
        return CaseLabel("V", mu, phis, psis, lengths, 2.0, note)
    bound = 2 + 3 * ((ps[-1] - ps[0]) / (1 - ps[-1])) ** 2
    return CaseLabel("V", mu, phis, psis, lengths, bound, note)


# ---------------------------------------------------------------------------
# Approximation ratio (upper bound against the general lower bound).
# ---------------------------------------------------------------------------

def approx_ratio_upper(curve: Curve, qs: TranslationQuerySet) -> Fraction:
    """Mean cluster count divided by the general lower bound.

    Since the denominator lower-bounds what any bijection could achieve, the
    result upper-bounds the curve's true approximation ratio. Refused when
    the bound is not positive (ratio would be vacuous).
    """
    lb = lower_bound_general(qs)
    if lb.value <= 0:
        raise ValueError(f"lower bound {lb.value} is vacuous for lengths {qs.lengths}")
    return mean_cluster_count(curve, qs) / lb.value


def rows_and_columns(u: Universe) -> List[RectQuery]:
    """All full rows and all full columns of a 2D universe (2s queries)."""
    if u.d != 2:
        raise ValueError("rows-and-columns set is 2D only")
    s = u.s
    rows = [RectQuery((0, y), (s, 1)) for y in range(s)]
    cols = [RectQuery((x, 0), (1, s)) for x in range(s)]
    return rows + cols
