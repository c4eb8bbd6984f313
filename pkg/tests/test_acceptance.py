"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings. Two sub-criteria are expected to fail and are left red on
purpose: the published quadrant closed form provably disagrees with the
definitional neighbor minimum on extreme shapes (criterion 6), and the 3D
ratio ceiling is exceeded in the near-full-cube regime where the underlying
analysis itself allows larger constants (criterion 8b). The assertion
messages carry the measured witnesses.
"""

import time
from fractions import Fraction

import numpy as np

from sfclust.core import RectQuery, TranslationQuerySet, Universe
from sfclust.clustering import cluster_intervals, mean_cluster_count, mean_cluster_count_queries
from sfclust.curves import SUPPORTED_CURVES, curve_dimension, make_curve, side_supported
from sfclust.experiments import BenchmarkConfig, run_benchmark
from sfclust.theory import approx_ratio_upper, rows_and_columns
from sfclust.verify import (
    check_crossing_formula,
    check_crossing_total_closed_form,
    check_half_bound,
    check_mean_identity,
    check_neighbor_min_closed_form,
    check_onion2d_formula,
    check_soundness,
)

LADDER_2D = (2, 4, 6, 8, 12, 16, 32, 64, 128, 256, 512)
LADDER_3D = (2, 4, 6, 8, 16, 32, 64)


class Budget:
    def __init__(self, label, seconds):
        self.label = label
        self.seconds = seconds
        self.start = time.time()

    def done(self, detail=""):
        elapsed = time.time() - self.start
        print(f"\nPASS {self.label} [{elapsed:.1f}s] {detail}")
        assert elapsed < self.seconds, f"{self.label}: {elapsed:.1f}s over {self.seconds}s budget"


def test_criterion_01_bijection_roundtrip_continuity():
    budget = Budget("criterion 1: bijections, roundtrips, onion continuity", 30)
    checked = 0
    for cid in SUPPORTED_CURVES:
        ladder = LADDER_2D if curve_dimension(cid) == 2 else LADDER_3D
        for s in ladder:
            if not side_supported(cid, s):
                continue
            curve = make_curve(cid, s)
            n = curve.universe.n
            grid = curve.rank_grid()
            assert np.array_equal(np.sort(grid.ravel()), np.arange(n)), (cid, s)
            for r in range(n):
                assert grid[curve.cell_at(r)] == r, (cid, s, r)
            checked += n
    for s in LADDER_2D:
        curve = make_curve("onion2d", s)
        cells = curve.cells_by_rank()
        steps = np.abs(np.diff(cells, axis=0)).sum(axis=1)
        assert np.all(steps == 1), f"onion2d discontinuous at side {s}"
        layers = np.minimum.reduce(
            [np.minimum(cells[:, a] + 1, s - cells[:, a]) for a in range(2)]
        )
        assert np.all(np.diff(layers) >= 0), f"onion2d layer order broken at side {s}"
    for s in LADDER_3D:
        curve = make_curve("onion3d", s)
        cells = curve.cells_by_rank()
        layers = np.minimum.reduce(
            [np.minimum(cells[:, a] + 1, s - cells[:, a]) for a in range(3)]
        )
        assert np.all(np.diff(layers) >= 0), f"onion3d layer order broken at side {s}"
    budget.done(f"{checked} cell/rank pairs")


def test_criterion_02_mean_identity():
    budget = Budget("criterion 2: edge-sum mean equals enumerated mean", 300)
    records = check_mean_identity(sides_2d=(4, 6, 8, 12, 16), sides_3d=(4, 8),
                                  all_triples_3d_max=4)
    for rec in records:
        assert rec["passed"], rec
    budget.done(records[0]["measured"])


def test_criterion_03_crossing_formula():
    budget = Budget("criterion 3: unit-edge crossing formula vs brute force", 120)
    records = check_crossing_formula(sides=(4, 6, 8, 12))
    for rec in records:
        assert rec["passed"], rec
    budget.done(records[0]["measured"])


def test_criterion_04_onion2d_formula_accuracy():
    budget = Budget("criterion 4: onion2d closed form within stated slack", 600)
    records = check_onion2d_formula(sides=(8, 16, 32))
    for rec in records:
        assert rec["passed"], rec
    budget.done("; ".join(r["measured"] for r in records))


def test_criterion_05_lower_bound_soundness():
    budget = Budget("criterion 5: no curve below the lower bounds", 600)
    records = check_soundness(sides_2d=(4, 6, 8, 12, 16), sides_3d=(8,))
    for rec in records:
        assert rec["passed"], rec
    budget.done(records[0]["measured"])


def test_criterion_06a_neighbor_min_closed_form():
    budget = Budget("criterion 6a: quadrant closed form equals brute minimum", 300)
    records = check_neighbor_min_closed_form(sides=(8, 12, 16))
    by_name = {r["name"]: r for r in records}
    exact = by_name["neighbor-crossing minimum: exact vs brute"]
    assert exact["passed"], exact
    closed = by_name["neighbor-crossing minimum: closed form vs brute"]
    # Known to fail: the published closed form overcounts at boundary-adjacent
    # cells for unit-square and both-sides-large shapes (witnesses in detail).
    assert closed["passed"], f"{closed['measured']}; {closed['detail']}"
    budget.done(exact["measured"])


def test_criterion_06b_half_bound():
    budget = Budget("criterion 6b: any-cell minimum at least half the neighbor minimum", 300)
    records = check_half_bound(side=8, shapes=((2, 2), (3, 5), (6, 6)))
    for rec in records:
        assert rec["passed"], rec
    budget.done(records[0]["measured"])


def test_criterion_06c_total_closed_form():
    budget = Budget("criterion 6c: closed-form grid total vs exact summation", 300)
    records = check_crossing_total_closed_form(sides=(8, 12, 16))
    # Known to fail in the both-sides-large regime: the closed form inherits
    # the quadrant formula's overcount (see 6a); the within-4s clause passes.
    for rec in records:
        assert rec["passed"], f"{rec['name']}: {rec['measured']}; {rec['detail']}"
    budget.done()


def test_criterion_07_hilbert_growth():
    budget = Budget("criterion 7: near-full-cube growth, fixed margin 4", 300)
    onion_cap = Fraction(2 * 4, 3) + 2
    prev = None
    factors = []
    for s in (16, 32, 64, 128):
        qs = TranslationQuerySet(Universe(2, s), (s - 3, s - 3))
        hil = mean_cluster_count(make_curve("hilbert2d", s), qs)
        oni = mean_cluster_count(make_curve("onion2d", s), qs)
        assert oni <= onion_cap, f"onion2d mean {float(oni):.3f} above {float(onion_cap):.2f} at s={s}"
        if prev is not None:
            factors.append(float(hil / prev))
            assert hil / prev >= Fraction(18, 10), f"2D growth {float(hil / prev):.2f} < 1.8 at s={s}"
        prev = hil
    prev3 = None
    for s in (16, 32):
        qs = TranslationQuerySet(Universe(3, s), (s - 3,) * 3)
        hil = mean_cluster_count(make_curve("hilbert3d", s), qs)
        if prev3 is not None:
            factors.append(float(hil / prev3))
            assert hil / prev3 >= 3, f"3D growth {float(hil / prev3):.2f} < 3.0"
        prev3 = hil
    budget.done(f"doubling factors {['%.2f' % f for f in factors]}")


def test_criterion_08a_ratio_ceiling_2d():
    budget = Budget("criterion 8a: 2D cube-sweep ratio ceiling 2.42", 600)
    curve = make_curve("onion2d", 256)
    worst, at = Fraction(0), None
    for l in range(16, 241, 16):
        qs = TranslationQuerySet(curve.universe, (l, l))
        ratio = approx_ratio_upper(curve, qs)
        if ratio > worst:
            worst, at = ratio, l
    assert worst <= Fraction(242, 100), f"ratio {float(worst):.4f} at side {at}"
    budget.done(f"max ratio {float(worst):.4f} at cube side {at}")


def test_criterion_08b_ratio_ceiling_3d():
    budget = Budget("criterion 8b: 3D cube-sweep ratio ceiling 3.6", 600)
    curve = make_curve("onion3d", 32)
    ratios = {}
    for l in range(4, 29, 4):
        qs = TranslationQuerySet(curve.universe, (l, l, l))
        ratios[l] = approx_ratio_upper(curve, qs)
    worst = max(ratios, key=ratios.get)
    # Known to fail at the near-full cube (small placement count): the
    # measured mean is honest and the denominator is the sound exact bound,
    # but their quotient exceeds 3.6 there.
    assert ratios[worst] <= Fraction(36, 10), (
        "ratios " + ", ".join(f"l={l}: {float(r):.3f}" for l, r in sorted(ratios.items()))
    )
    budget.done(f"max ratio {float(ratios[worst]):.4f} at cube side {worst}")


def test_criterion_09_large_square_example():
    budget = Budget("criterion 9: 7x7 query on the 8x8 grid", 1)
    q = RectQuery((0, 1), (7, 7))
    onion = cluster_intervals(make_curve("onion2d", 8), q)
    assert onion.count == 1 and onion.intervals == ((15, 63),)
    hilbert = cluster_intervals(make_curve("hilbert2d", 8), q)
    assert hilbert.count >= 4
    qs = TranslationQuerySet(Universe(2, 8), (7, 7))
    o_avg = mean_cluster_count(make_curve("onion2d", 8), qs)
    h_avg = mean_cluster_count(make_curve("hilbert2d", 8), qs)
    assert o_avg < h_avg
    budget.done(f"onion 1 cluster; this orientation's curve gives {hilbert.count}")


def _medians(result):
    return {(st[0], st[1]): st[2].median for st in result.stats}


def test_criterion_10_desk_scale_replication():
    budget = Budget("criterion 10: desk-scale random-cube replication", 900)
    sizes_2d = (244, 220, 196, 172, 148, 124, 100, 76, 52, 28)
    config2 = BenchmarkConfig("random-cubes", ("onion2d", "hilbert2d"), 2, 256,
                              seed=20240, count=1000, sizes=sizes_2d)
    med2 = _medians(run_benchmark(config2))
    violations = []
    for l in sizes_2d:
        o = med2[("onion2d", (l, l))]
        h = med2[("hilbert2d", (l, l))]
        if o > h:
            violations.append(f"2D side {l}: onion median {o} vs hilbert {h}")
    top = sizes_2d[0]
    assert 256 - top + 1 <= 256 // 16
    ratio2 = med2[("hilbert2d", (top, top))] / med2[("onion2d", (top, top))]
    assert ratio2 >= 5, f"2D top-size median ratio {ratio2:.2f} < 5"

    sizes_3d = (61, 54, 24, 19, 14, 9, 4)
    config3 = BenchmarkConfig("random-cubes", ("onion3d", "hilbert3d"), 3, 64,
                              seed=606, count=500, sizes=sizes_3d)
    med3 = _medians(run_benchmark(config3))
    for l in sizes_3d:
        o = med3[("onion3d", (l, l, l))]
        h = med3[("hilbert3d", (l, l, l))]
        if o > h:
            violations.append(f"3D side {l}: onion median {o} vs hilbert {h}")
    top3 = sizes_3d[0]
    assert 64 - top3 + 1 <= 64 // 16
    ratio3 = med3[("hilbert3d", (top3,) * 3)] / med3[("onion3d", (top3,) * 3)]
    assert ratio3 >= 5, f"3D top-size median ratio {ratio3:.2f} < 5"

    # determinism under a fixed seed
    rerun = run_benchmark(BenchmarkConfig("random-cubes", ("onion2d",), 2, 256,
                                          seed=20240, count=50, sizes=(148,)))
    again = run_benchmark(BenchmarkConfig("random-cubes", ("onion2d",), 2, 256,
                                          seed=20240, count=50, sizes=(148,)))
    assert rerun == again

    # Known to fail: exact measurement puts the onion median a few percent
    # above the hilbert median for mid-size squares (the ratio-maximizing
    # shape region) and for small 3D cubes, at full scale as well as here;
    # the means and the large-size dominance behave as published.
    assert not violations, (
        f"median dominance violated at {len(violations)} size(s) "
        f"(top-size ratios 2D {ratio2:.1f}, 3D {ratio3:.1f}): " + "; ".join(violations)
    )
    budget.done(f"top-size median ratios 2D {ratio2:.1f}, 3D {ratio3:.1f}")


def test_criterion_11_rows_and_columns():
    budget = Budget("criterion 11: rows+columns floor s/2", 60)
    for s in (8, 16, 32):
        u = Universe(2, s)
        rc = rows_and_columns(u)
        for cid in SUPPORTED_CURVES:
            if curve_dimension(cid) != 2 or not side_supported(cid, s):
                continue
            avg = mean_cluster_count_queries(make_curve(cid, s), rc)
            assert avg >= Fraction(s, 2), f"{cid} at s={s}: {float(avg):.3f} < {s / 2}"
        rm = mean_cluster_count_queries(make_curve("rowmajor", s), rc)
        assert rm == Fraction(1 + s, 2), f"rowmajor measured {rm}"
    budget.done()
