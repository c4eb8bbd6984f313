import itertools
import random

import pytest

from sfclust.core import TranslationQuerySet, Universe
from sfclust.clustering import (
    crossing_count_containment,
    crossing_count_unit2d,
    mean_cluster_count,
    mean_cluster_count_enumerated,
)
from sfclust.curves import make_curve
from sfclust.oracle import (
    GAMMA_QUERYSET_LIMIT,
    crossing_count_brute,
    mean_cluster_count_brute,
    min_crossing_brute,
    min_neighbor_crossing_brute,
)


@pytest.mark.parametrize("s", [4, 6, 8, 12])
def test_brute_matches_formula_on_all_unit_edges(s):
    u = Universe(2, s)
    edges = [((x, y), (x + 1, y)) for x in range(s - 1) for y in range(s)]
    edges += [((x, y), (x, y + 1)) for x in range(s) for y in range(s - 1)]
    for lengths in itertools.product(range(1, s + 1), repeat=2):
        qs = TranslationQuerySet(u, lengths)
        for a, b in edges:
            assert crossing_count_brute(qs, a, b) == crossing_count_unit2d(qs, a, b)


def test_brute_matches_containment_route_on_random_edges():
    s = 12
    u = Universe(2, s)
    rng = random.Random(7)
    for _ in range(100):
        lengths = (rng.randint(1, s), rng.randint(1, s))
        qs = TranslationQuerySet(u, lengths)
        a = (rng.randrange(s), rng.randrange(s))
        b = (rng.randrange(s), rng.randrange(s))
        if a == b:
            continue
        assert crossing_count_brute(qs, a, b) == crossing_count_containment(qs, a, b)


def test_never_separated_endpoints_cross_nothing():
    # whole-universe query set: both endpoints always co-contained
    u = Universe(2, 8)
    qs = TranslationQuerySet(u, (8, 8))
    assert crossing_count_brute(qs, (0, 0), (5, 3)) == 0


def test_neighbor_min_vs_any_min():
    u = Universe(2, 8)
    for lengths in [(2, 2), (3, 5), (6, 6)]:
        qs = TranslationQuerySet(u, lengths)
        for cell in u.cells():
            lam = min_neighbor_crossing_brute(qs, cell)
            om = min_crossing_brute(qs, cell)
            assert om <= lam
            assert 2 * om >= lam


def test_mean_oracle_triple_agreement():
    qs = TranslationQuerySet(Universe(2, 8), (3, 3))
    for cid in ("onion2d", "hilbert2d", "z2d"):
        curve = make_curve(cid, 8)
        assert (
            mean_cluster_count(curve, qs)
            == mean_cluster_count_enumerated(curve, qs)
            == mean_cluster_count_brute(curve, qs)
        )


def test_mean_oracle_full_rows():
    u = Universe(2, 8)
    rows = TranslationQuerySet(u, (8, 1))
    assert mean_cluster_count_brute(make_curve("rowmajor", 8), rows) == 1
    assert mean_cluster_count_brute(make_curve("colmajor", 8), rows) == 8


def test_size_guards_are_hard_errors():
    big = Universe(2, 2048)
    qs = TranslationQuerySet(big, (2, 2))
    assert qs.count > GAMMA_QUERYSET_LIMIT
    with pytest.raises(ValueError):
        crossing_count_brute(qs, (0, 0), (1, 0))
    with pytest.raises(ValueError):
        min_crossing_brute(TranslationQuerySet(Universe(2, 18), (2, 2)), (0, 0))
    huge_curve = make_curve("rowmajor", 1024)
    with pytest.raises(ValueError):
        mean_cluster_count_brute(huge_curve, TranslationQuerySet(huge_curve.universe, (512, 512)))
