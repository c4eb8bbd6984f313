#!/usr/bin/env python3
"""A tour of the curve catalogue: what each bijection looks like on a small
grid, which ones are continuous, and how the layered curves organize cells.

Run: python demos/01_curve_gallery.py
"""

import numpy as np

from sfclust import SUPPORTED_CURVES, make_curve
from sfclust.curves import side_supported


def show_grid(curve):
    """Print the rank of every cell, rows top-down so y grows upward."""
    grid = curve.rank_grid()
    s = curve.universe.s
    print(f"\n{curve.curve_id} on {s}x{s} (cell -> rank):")
    for y in range(s - 1, -1, -1):
        print("   " + " ".join(f"{int(grid[x, y]):3d}" for x in range(s)))


def continuity_report(curve):
    cells = curve.cells_by_rank()
    steps = np.abs(np.diff(cells, axis=0)).sum(axis=1)
    jumps = int(np.count_nonzero(steps != 1))
    kind = "continuous" if jumps == 0 else f"{jumps} jumps"
    print(f"  {curve.curve_id:10s} side {curve.universe.s:3d}: {kind}")


def main():
    print("=" * 64)
    print("Rank layouts on an 8x8 grid")
    print("=" * 64)
    for cid in ("onion2d", "hilbert2d", "z2d", "gray2d", "rowmajor"):
        show_grid(make_curve(cid, 8))

    print()
    print("=" * 64)
    print("Continuity: do consecutive ranks always sit in neighboring cells?")
    print("=" * 64)
    for cid in SUPPORTED_CURVES:
        s = 16 if side_supported(cid, 16) else 8
        continuity_report(make_curve(cid, s))
    print("\nNote the 3D onion curve: its jump count grows with the side, not")
    print("the volume, because only the hand-offs between shell parts jump.")

    print()
    print("=" * 64)
    print("The onion curve fills boundary shells outermost-first")
    print("=" * 64)
    curve = make_curve("onion3d", 8)
    cells = curve.cells_by_rank()
    s = 8
    layer = np.minimum.reduce(
        [np.minimum(cells[:, a] + 1, s - cells[:, a]) for a in range(3)]
    )
    for t in range(1, 5):
        ranks = np.nonzero(layer == t)[0]
        print(f"  shell {t}: ranks {ranks.min():4d}..{ranks.max():4d} ({len(ranks)} cells)")

    print("\nRound trips are exact for every curve:")
    for cid in SUPPORTED_CURVES:
        curve = make_curve(cid, 4 if side_supported(cid, 4) else 8)
        ok = all(curve.index(curve.cell_at(r)) == r for r in range(curve.universe.n))
        print(f"  {cid:10s}: inverse(index) == identity on all ranks: {ok}")


if __name__ == "__main__":
    main()
