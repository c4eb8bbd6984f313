#!/usr/bin/env python3
"""Closed forms and lower bounds against exact measurement.

Shows the onion mean formula tracking the measured mean, the universal
lower bounds derived from per-cell minimum crossing counts, the growth-case
classifier with its predicted ratio ceilings, and a cube sweep of the
measured-ratio upper bound.

Run: python demos/03_bounds_tour.py
"""

from fractions import Fraction

from sfclust import (
    NearCubeParams,
    TranslationQuerySet,
    Universe,
    approx_ratio_upper,
    classify_near_cube,
    lower_bound_continuous,
    lower_bound_general,
    make_curve,
    mean_cluster_count,
    onion2d_mean_formula,
)


def main():
    s = 32
    u = Universe(2, s)
    curve = make_curve("onion2d", s)
    print(f"Onion mean formula vs measurement on a {s}x{s} grid")
    print(f"{'shape':>10s} {'measured':>10s} {'formula':>10s} {'gap':>8s} {'slack':>6s}")
    for lengths in [(2, 2), (5, 9), (8, 16), (12, 12), (20, 24), (28, 30), (17, 32)]:
        qs = TranslationQuerySet(u, lengths)
        measured = mean_cluster_count(curve, qs)
        f = onion2d_mean_formula(*lengths, s)
        gap = abs(float(measured - f.value))
        print(f"{str(lengths):>10s} {float(measured):10.4f} {float(f.value):10.4f}"
              f" {gap:8.4f} {str(f.slack):>6s}")
    print("The certified slack (5 below the half-side, 2 above) is loose;")
    print("measured gaps stay under 1.\n")

    print("=" * 68)
    print("Lower bounds hold for every curve in the catalogue")
    print("=" * 68)
    qs = TranslationQuerySet(u, (12, 12))
    lb_c = lower_bound_continuous(qs)
    lb_g = lower_bound_general(qs)
    print(f"shape 12x12: continuous bound {float(lb_c.value):.3f}, "
          f"general bound {float(lb_g.value):.3f}")
    for cid in ("onion2d", "hilbert2d", "z2d", "gray2d", "rowmajor", "colmajor"):
        c = make_curve(cid, s)
        measured = mean_cluster_count(c, qs)
        bound = lb_c if c.continuous else lb_g
        print(f"  {cid:10s} measured {float(measured):8.3f}  >=  "
              f"{float(bound.value):7.3f} ({'continuous' if c.continuous else 'general'})")

    print()
    print("=" * 68)
    print("Growth-case classifier: predicted ratio ceilings for the onion curve")
    print("=" * 68)
    cases = [
        NearCubeParams(0.0, (3.0, 3.0), (0.0, 0.0)),
        NearCubeParams(0.5, (1.0, 2.0), (0.0, 0.0)),
        NearCubeParams(1.0, (0.355, 0.355), (0.0, 0.0)),
        NearCubeParams(1.0, (0.75, 0.75), (0.0, 0.0)),
        NearCubeParams(1.0, (1.0, 1.0), (-4.0, -4.0)),
    ]
    for params in cases:
        label = classify_near_cube(params, 2, 256)
        bound = "unknown" if label.eta_bound is None else f"{label.eta_bound:.3f}"
        print(f"  mu={params.mu:<4} phi={params.phis} -> case {label.case:>3s},"
              f" sides {label.lengths}, ceiling {bound}")
    print("The worst cube ceiling in two dimensions is 2.32, at phi = 0.355.\n")

    print("=" * 68)
    print("Measured ratio upper bound, cube sweep at side 256")
    print("=" * 68)
    curve = make_curve("onion2d", 256)
    worst = Fraction(0)
    for l in range(16, 241, 16):
        qs = TranslationQuerySet(curve.universe, (l, l))
        ratio = approx_ratio_upper(curve, qs)
        worst = max(worst, ratio)
        bar = "#" * int(float(ratio) * 12)
        print(f"  l={l:3d}  ratio<={float(ratio):5.3f}  {bar}")
    print(f"max over the sweep: {float(worst):.4f} (ceiling 2.32 + small-size slack)")


if __name__ == "__main__":
    main()
