"""The curve catalogue: bijections between grid cells and ranks 0..n-1.

Implemented curves (ids):

    onion2d, onion3d   layered curves that enumerate boundary shells
                       outermost-first; onion2d walks each ring
                       counter-clockwise starting at the ring's lower-left
                       cell, onion3d orders each shell as two opposite faces,
                       four edge lines, and four side planes (see
                       ``_ONION3D_PART_DOC`` below).
    hilbert2d, hilbert3d
                       Hilbert curves via Skilling's transpose algorithm.
                       Orientation is fixed by that algorithm: the curve
                       starts at the origin and the most significant bit
                       group is carried by axis 0.
    z2d, z3d           Morton order: bit-interleave of coordinates, axis 0
                       in the least significant position of each bit group.
    gray2d             the Z interleave word reinterpreted as a binary
                       reflected Gray code (rank = inverse Gray code of the
                       interleave). One of several published variants.
    rowmajor, colmajor rank = y*s + x and x*s + y respectively (2D only).

All curves expose scalar ``index``/``cell_at`` plus cached full-grid arrays
(``rank_grid``/``cells_by_rank``) for vectorized analysis.
"""

from __future__ import annotations

import bisect
import math

import numpy as np

from .core import Cell, Universe

__all__ = [
    "Curve",
    "OnionCurve2D",
    "OnionCurve3D",
    "HilbertCurve",
    "ZOrderCurve",
    "GrayCurve",
    "RowMajorCurve",
    "ColMajorCurve",
    "SUPPORTED_CURVES",
    "make_curve",
    "onion_rank_2d",
    "onion_cell_2d",
]


# ---------------------------------------------------------------------------
# 2D onion ring walk, reused by the 3D construction for its square parts.
# ---------------------------------------------------------------------------

def onion_rank_2d(x: int, y: int, side: int) -> int:
    """Rank of (x, y) on the 2D onion curve over an even ``side`` grid.

    Ring t (outermost t=1) holds the cells at boundary distance t; within a
    ring the walk runs along the bottom row, up the right column, back along
    the top row, and down the left column.
    """
    t = min(x + 1, side - x, y + 1, side - y)
    j = side - 2 * (t - 1)          # side of the sub-square whose border is ring t
    base = side * side - j * j      # cells in the outer t-1 rings
    lx = x - (t - 1)
    ly = y - (t - 1)
    if ly == 0:
        ring = lx
    elif lx == j - 1:
        ring = j - 1 + ly
    elif ly == j - 1:
        ring = 3 * j - 3 - lx
    else:  # lx == 0, ly >= 1
        ring = 4 * j - 4 - ly
    return base + ring


def onion_cell_2d(rank: int, side: int) -> Cell:
    """Inverse of :func:`onion_rank_2d`."""
    if not 0 <= rank < side * side:
        raise ValueError(f"rank {rank} out of range for side {side}")
    # ranks below side^2 - j^2 lie outside the sub-square of side j, so the
    # ring holding `rank` has the smallest even j with j^2 >= side^2 - rank
    v = side * side - rank
    j = math.isqrt(v - 1) + 1 if v > 1 else 1
    j += j & 1
    t = (side - j) // 2 + 1
    rem = rank - (side * side - j * j)
    if rem <= j - 1:
        lx, ly = rem, 0
    elif rem <= 2 * j - 2:
        lx, ly = j - 1, rem - (j - 1)
    elif rem <= 3 * j - 3:
        lx, ly = 3 * j - 3 - rem, j - 1
    else:
        lx, ly = 0, 4 * j - 4 - rem
    return (lx + t - 1, ly + t - 1)


def _onion2d_grid(s: int) -> np.ndarray:
    x = np.arange(s, dtype=np.int64).reshape(-1, 1)
    y = np.arange(s, dtype=np.int64).reshape(1, -1)
    t = np.minimum(np.minimum(x + 1, s - x), np.minimum(y + 1, s - y))
    j = s - 2 * (t - 1)
    base = s * s - j * j
    lx = x - (t - 1)
    ly = y - (t - 1)
    ring = np.select(
        [ly == 0, lx == j - 1, ly == j - 1],
        [lx + 0 * j, j - 1 + ly, 3 * j - 3 - lx],
        default=4 * j - 4 - ly,
    )
    return base + ring


# ---------------------------------------------------------------------------
# Hilbert maps (Skilling's transpose algorithm), scalar and vectorized.
# ---------------------------------------------------------------------------

def _hilbert_rank(coords, order: int) -> int:
    d = len(coords)
    x = list(coords)
    m = 1 << (order - 1)
    q = m
    while q > 1:
        p = q - 1
        for i in range(d):
            if x[i] & q:
                x[0] ^= p
            else:
                t = (x[0] ^ x[i]) & p
                x[0] ^= t
                x[i] ^= t
        q >>= 1
    for i in range(1, d):
        x[i] ^= x[i - 1]
    t = 0
    q = m
    while q > 1:
        if x[d - 1] & q:
            t ^= q - 1
        q >>= 1
    for i in range(d):
        x[i] ^= t
    h = 0
    for b in range(order):
        for i in range(d):
            h |= ((x[i] >> b) & 1) << (b * d + (d - 1 - i))
    return h


def _hilbert_cell(rank: int, order: int, d: int):
    x = [0] * d
    for b in range(order):
        for i in range(d):
            x[i] |= ((rank >> (b * d + (d - 1 - i))) & 1) << b
    z = 2 << (order - 1)
    t = x[d - 1] >> 1
    for i in range(d - 1, 0, -1):
        x[i] ^= x[i - 1]
    x[0] ^= t
    q = 2
    while q != z:
        p = q - 1
        for i in range(d - 1, -1, -1):
            if x[i] & q:
                x[0] ^= p
            else:
                t = (x[0] ^ x[i]) & p
                x[0] ^= t
                x[i] ^= t
        q <<= 1
    return tuple(x)


def _hilbert_ranks_vec(coord_arrays, order: int) -> np.ndarray:
    d = len(coord_arrays)
    x = [np.asarray(c, dtype=np.int64).copy() for c in coord_arrays]
    m = 1 << (order - 1)
    q = m
    while q > 1:
        p = q - 1
        for i in range(d):
            mask = (x[i] & q) != 0
            t = (x[0] ^ x[i]) & p
            x0_ex = x[0] ^ t
            xi_ex = x[i] ^ t
            x0_inv = x[0] ^ p
            new_x0 = np.where(mask, x0_inv, x0_ex)
            if i != 0:
                x[i] = np.where(mask, x[i], xi_ex)
            x[0] = new_x0
        q >>= 1
    for i in range(1, d):
        x[i] ^= x[i - 1]
    t = np.zeros_like(x[0])
    q = m
    while q > 1:
        t = np.where((x[d - 1] & q) != 0, t ^ (q - 1), t)
        q >>= 1
    for i in range(d):
        x[i] ^= t
    h = np.zeros_like(x[0])
    for b in range(order):
        for i in range(d):
            h |= ((x[i] >> b) & 1) << (b * d + (d - 1 - i))
    return h


# ---------------------------------------------------------------------------
# Bit interleaving for Z-order / Gray curves.
# ---------------------------------------------------------------------------

def _interleave(coords, order: int):
    """Axis i contributes bit b to position b*d + i (axis 0 least significant)."""
    d = len(coords)
    h = 0
    for b in range(order):
        for i in range(d):
            h |= ((coords[i] >> b) & 1) << (b * d + i)
    return h


def _deinterleave(h: int, order: int, d: int):
    coords = [0] * d
    for b in range(order):
        for i in range(d):
            coords[i] |= ((h >> (b * d + i)) & 1) << b
    return tuple(coords)


def _interleave_vec(coord_arrays, order: int) -> np.ndarray:
    d = len(coord_arrays)
    h = np.zeros_like(np.asarray(coord_arrays[0], dtype=np.int64))
    for b in range(order):
        for i in range(d):
            h |= ((coord_arrays[i] >> b) & 1) << (b * d + i)
    return h


def _gray_decode(v):
    """Inverse binary reflected Gray code (prefix XOR). Works on ints and
    int64 ndarrays below 2**62."""
    shift = 1
    while shift < 64:
        v = v ^ (v >> shift)
        shift <<= 1
    return v


def _gray_encode(v):
    return v ^ (v >> 1)


# ---------------------------------------------------------------------------
# Curve base class.
# ---------------------------------------------------------------------------

class Curve:
    """A bijection between the cells of a universe and ranks 0..n-1."""

    curve_id: str = ""
    #: True only when every pair of rank-consecutive cells are grid neighbors.
    continuous: bool = False

    def __init__(self, universe: Universe):
        self.universe = universe
        self._grid = None
        self._cells_by_rank = None

    # subclasses implement these two on validated inputs
    def _index(self, cell) -> int:
        raise NotImplementedError

    def _cell_at(self, rank: int) -> Cell:
        raise NotImplementedError

    def index(self, cell) -> int:
        """Rank of a cell."""
        self.universe.validate_cell(cell)
        return self._index(tuple(cell))

    def cell_at(self, rank: int) -> Cell:
        """Cell holding a given rank."""
        if not 0 <= rank < self.universe.n:
            raise ValueError(f"rank {rank} outside [0, {self.universe.n})")
        return self._cell_at(int(rank))

    @property
    def first_cell(self) -> Cell:
        return self.cell_at(0)

    @property
    def last_cell(self) -> Cell:
        return self.cell_at(self.universe.n - 1)

    def rank_grid(self) -> np.ndarray:
        """Array of shape (s,)*d with the rank of every cell (axis i = coord i).

        Built once and cached; subclasses override ``_build_grid`` with
        vectorized constructions where it pays off.
        """
        if self._grid is None:
            grid = self._build_grid()
            grid.setflags(write=False)
            self._grid = grid
        return self._grid

    def _build_grid(self) -> np.ndarray:
        u = self.universe
        grid = np.empty((u.s,) * u.d, dtype=np.int64)
        for cell in u.cells():
            grid[cell] = self._index(cell)
        return grid

    def cells_by_rank(self) -> np.ndarray:
        """(n, d) array: row r is the coordinate tuple of rank r."""
        if self._cells_by_rank is None:
            u = self.universe
            flat = self.rank_grid().ravel()
            order = np.empty(u.n, dtype=np.int64)
            order[flat] = np.arange(u.n, dtype=np.int64)
            coords = np.stack(np.unravel_index(order, (u.s,) * u.d), axis=1)
            coords = coords.astype(np.int64)
            coords.setflags(write=False)
            self._cells_by_rank = coords
        return self._cells_by_rank

    def __repr__(self):
        return f"{type(self).__name__}(side={self.universe.s})"


class OnionCurve2D(Curve):
    curve_id = "onion2d"
    continuous = True

    def __init__(self, universe: Universe):
        if universe.d != 2:
            raise ValueError("onion2d requires a 2D universe")
        super().__init__(universe)

    def _index(self, cell):
        return onion_rank_2d(cell[0], cell[1], self.universe.s)

    def _cell_at(self, rank):
        return onion_cell_2d(rank, self.universe.s)

    def _build_grid(self):
        return _onion2d_grid(self.universe.s)


_ONION3D_PART_DOC = """\
Within shell t of a side-2m cube (coordinates i, j, k), the ten parts are
visited in this order, lines by increasing i, squares by the 2D onion curve
on the listed in-plane coordinates (first listed coordinate plays x):

     1. face   i = t-1            over (j, k), side 2m-2t+2
     2. face   i = 2m-t           over (j, k), side 2m-2t+2
     3. line   j = t-1,  k = t-1
     4. plane  j = t-1            over (i, k), side 2m-2t
     5. line   j = t-1,  k = 2m-t
     6. line   j = 2m-t, k = t-1
     7. plane  j = 2m-t           over (i, k), side 2m-2t
     8. line   j = 2m-t, k = 2m-t
     9. plane  k = t-1            over (i, j), side 2m-2t
    10. plane  k = 2m-t           over (i, j), side 2m-2t

Lines and planes span t <= i < 2m-t (and t <= j/k < 2m-t for planes).
"""


class OnionCurve3D(Curve):
    __doc__ = "3D onion curve: shells outermost-first.\n\n" + _ONION3D_PART_DOC

    curve_id = "onion3d"
    continuous = False  # adjacent parts within a shell do not always touch

    def __init__(self, universe: Universe):
        if universe.d != 3:
            raise ValueError("onion3d requires a 3D universe")
        super().__init__(universe)
        m = universe.m
        self._shell_starts = [self.shell_start(t, m) for t in range(1, m + 2)]

    @staticmethod
    def shell_start(t: int, m: int) -> int:
        """Total cells in shells 1..t-1 of a side-2m cube."""
        return 24 * m * m * (t - 1) - 24 * m * (t - 1) ** 2 + 8 * (t - 1) ** 3

    @staticmethod
    def part_sizes(t: int, m: int):
        face = (2 * m - 2 * t + 2) ** 2
        line = 2 * m - 2 * t
        plane = line * line
        return (face, face, line, plane, line, line, plane, line, plane, plane)

    def _index(self, cell):
        i, j, k = cell
        s = self.universe.s
        m = self.universe.m
        t = min(i + 1, s - i, j + 1, s - j, k + 1, s - k)
        lo = t - 1          # face coordinate on the low side
        hi = s - t          # face coordinate on the high side
        face_side = hi - lo + 1
        inner = face_side - 2  # side of the line/plane parts

        if i == lo:
            g, r = 1, onion_rank_2d(j - lo, k - lo, face_side)
        elif i == hi:
            g, r = 2, onion_rank_2d(j - lo, k - lo, face_side)
        elif j == lo:
            if k == lo:
                g, r = 3, i - t
            elif k == hi:
                g, r = 5, i - t
            else:
                g, r = 4, onion_rank_2d(i - t, k - t, inner)
        elif j == hi:
            if k == lo:
                g, r = 6, i - t
            elif k == hi:
                g, r = 8, i - t
            else:
                g, r = 7, onion_rank_2d(i - t, k - t, inner)
        elif k == lo:
            g, r = 9, onion_rank_2d(i - t, j - t, inner)
        else:  # k == hi
            g, r = 10, onion_rank_2d(i - t, j - t, inner)

        sizes = self.part_sizes(t, m)
        return self.shell_start(t, m) + sum(sizes[: g - 1]) + r

    def _cell_at(self, rank):
        s = self.universe.s
        m = self.universe.m
        t = bisect.bisect_right(self._shell_starts, rank)
        rem = rank - self._shell_starts[t - 1]
        sizes = self.part_sizes(t, m)
        g = 1
        for size in sizes:
            if rem < size:
                break
            rem -= size
            g += 1
        lo = t - 1
        hi = s - t
        face_side = hi - lo + 1
        inner = face_side - 2
        if g in (1, 2):
            j, k = onion_cell_2d(rem, face_side)
            i = lo if g == 1 else hi
            return (i, j + lo, k + lo)
        if g in (3, 5, 6, 8):
            i = t + rem
            j = lo if g in (3, 5) else hi
            k = lo if g in (3, 6) else hi
            return (i, j, k)
        if g in (4, 7):
            i, k = onion_cell_2d(rem, inner)
            j = lo if g == 4 else hi
            return (i + t, j, k + t)
        if g in (9, 10):
            i, j = onion_cell_2d(rem, inner)
            k = lo if g == 9 else hi
            return (i + t, j + t, k)
        raise ValueError(f"rank {rank} out of range")


class HilbertCurve(Curve):
    continuous = True

    def __init__(self, universe: Universe):
        if universe.s & (universe.s - 1) != 0:
            raise ValueError("hilbert curves require a power-of-two side")
        super().__init__(universe)
        self._order = universe.s.bit_length() - 1
        self.curve_id = f"hilbert{universe.d}d"

    def _index(self, cell):
        return _hilbert_rank(cell, self._order)

    def _cell_at(self, rank):
        return _hilbert_cell(rank, self._order, self.universe.d)

    def _build_grid(self):
        u = self.universe
        mesh = np.meshgrid(*([np.arange(u.s, dtype=np.int64)] * u.d), indexing="ij")
        ranks = _hilbert_ranks_vec([c.ravel() for c in mesh], self._order)
        return ranks.reshape((u.s,) * u.d)


class ZOrderCurve(Curve):
    continuous = False

    def __init__(self, universe: Universe):
        if universe.s & (universe.s - 1) != 0:
            raise ValueError("z-order curves require a power-of-two side")
        super().__init__(universe)
        self._order = universe.s.bit_length() - 1
        self.curve_id = f"z{universe.d}d"

    def _index(self, cell):
        return _interleave(cell, self._order)

    def _cell_at(self, rank):
        return _deinterleave(rank, self._order, self.universe.d)

    def _build_grid(self):
        u = self.universe
        mesh = np.meshgrid(*([np.arange(u.s, dtype=np.int64)] * u.d), indexing="ij")
        ranks = _interleave_vec([c.ravel() for c in mesh], self._order)
        return ranks.reshape((u.s,) * u.d)


class GrayCurve(Curve):
    curve_id = "gray2d"
    continuous = False

    def __init__(self, universe: Universe):
        if universe.d != 2:
            raise ValueError("gray2d requires a 2D universe")
        if universe.s & (universe.s - 1) != 0:
            raise ValueError("gray-code curve requires a power-of-two side")
        super().__init__(universe)
        self._order = universe.s.bit_length() - 1

    def _index(self, cell):
        return _gray_decode(_interleave(cell, self._order))

    def _cell_at(self, rank):
        return _deinterleave(_gray_encode(rank), self._order, self.universe.d)

    def _build_grid(self):
        u = self.universe
        mesh = np.meshgrid(*([np.arange(u.s, dtype=np.int64)] * u.d), indexing="ij")
        ranks = _gray_decode(_interleave_vec([c.ravel() for c in mesh], self._order))
        return ranks.reshape((u.s,) * u.d)


class RowMajorCurve(Curve):
    curve_id = "rowmajor"
    continuous = False

    def __init__(self, universe: Universe):
        if universe.d != 2:
            raise ValueError("rowmajor requires a 2D universe")
        super().__init__(universe)

    def _index(self, cell):
        return cell[1] * self.universe.s + cell[0]

    def _cell_at(self, rank):
        return (rank % self.universe.s, rank // self.universe.s)

    def _build_grid(self):
        s = self.universe.s
        x = np.arange(s, dtype=np.int64).reshape(-1, 1)
        y = np.arange(s, dtype=np.int64).reshape(1, -1)
        return y * s + x


class ColMajorCurve(Curve):
    curve_id = "colmajor"
    continuous = False

    def __init__(self, universe: Universe):
        if universe.d != 2:
            raise ValueError("colmajor requires a 2D universe")
        super().__init__(universe)

    def _index(self, cell):
        return cell[0] * self.universe.s + cell[1]

    def _cell_at(self, rank):
        return (rank // self.universe.s, rank % self.universe.s)

    def _build_grid(self):
        s = self.universe.s
        x = np.arange(s, dtype=np.int64).reshape(-1, 1)
        y = np.arange(s, dtype=np.int64).reshape(1, -1)
        return x * s + y


_REGISTRY = {
    "onion2d": (OnionCurve2D, 2),
    "onion3d": (OnionCurve3D, 3),
    "hilbert2d": (HilbertCurve, 2),
    "hilbert3d": (HilbertCurve, 3),
    "z2d": (ZOrderCurve, 2),
    "z3d": (ZOrderCurve, 3),
    "gray2d": (GrayCurve, 2),
    "rowmajor": (RowMajorCurve, 2),
    "colmajor": (ColMajorCurve, 2),
}

SUPPORTED_CURVES = tuple(_REGISTRY)


def curve_dimension(curve_id: str) -> int:
    if curve_id not in _REGISTRY:
        raise ValueError(f"unknown curve {curve_id!r}; supported: {', '.join(SUPPORTED_CURVES)}")
    return _REGISTRY[curve_id][1]


def side_supported(curve_id: str, s: int) -> bool:
    """Whether the curve is defined on an even side ``s``."""
    if curve_id not in _REGISTRY:
        return False
    if s < 2 or s % 2 != 0:
        return False
    if curve_id in ("hilbert2d", "hilbert3d", "z2d", "z3d", "gray2d"):
        return s & (s - 1) == 0
    return True


def make_curve(curve_id: str, s: int) -> Curve:
    """Build a curve by id on a side-``s`` universe of the appropriate dimension."""
    if curve_id not in _REGISTRY:
        raise ValueError(f"unknown curve {curve_id!r}; supported: {', '.join(SUPPORTED_CURVES)}")
    cls, d = _REGISTRY[curve_id]
    if curve_id in ("hilbert2d", "hilbert3d", "z2d", "z3d", "gray2d") and s & (s - 1) != 0:
        raise ValueError(f"{curve_id} requires the side to be a power of two, got {s}")
    return cls(Universe(d, s))
