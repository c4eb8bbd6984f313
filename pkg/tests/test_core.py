import itertools

import pytest
from hypothesis import given, strategies as st

from sfclust.core import (
    RectQuery,
    TranslationQuerySet,
    Universe,
    boundary_distance,
    containment_count,
    edge_boundary_distance,
    pair_containment_count,
)
from sfclust.oracle import containment_count_brute, pair_containment_count_brute


def test_universe_basics():
    u = Universe(2, 8)
    assert u.n == 64 and u.m == 4
    u3 = Universe(3, 4)
    assert u3.n == 64 and u3.m == 2


@pytest.mark.parametrize("d,s", [(2, 7), (2, 1), (2, 0), (3, 9), (1, 8), (4, 8)])
def test_universe_rejects_bad_parameters(d, s):
    with pytest.raises(ValueError):
        Universe(d, s)


def test_rect_query_validation():
    u = Universe(2, 8)
    RectQuery((0, 0), (8, 8)).validate_in(u)
    with pytest.raises(ValueError):
        RectQuery((0, 0), (9, 1)).validate_in(u)
    with pytest.raises(ValueError):
        RectQuery((5, 0), (4, 1)).validate_in(u)
    with pytest.raises(ValueError):
        RectQuery((0, 0), (0, 1))


def test_translation_set_count():
    u = Universe(2, 8)
    qs = TranslationQuerySet(u, (3, 3))
    assert qs.count == 36
    assert qs.placements(0) == 6
    assert len(list(qs.translations())) == 36
    assert TranslationQuerySet(u, (8, 8)).count == 1


@pytest.mark.parametrize(
    "cell,s,expected",
    [((0, 0), 8, 1), ((3, 4), 8, 4), ((1, 2, 3), 8, 2)],
)
def test_boundary_distance_examples(cell, s, expected):
    u = Universe(len(cell), s)
    assert boundary_distance(cell, u) == expected


@given(st.integers(min_value=1, max_value=16), st.data())
def test_boundary_distance_symmetry(half, data):
    s = 2 * half
    u = Universe(2, s)
    x = data.draw(st.integers(0, s - 1))
    y = data.draw(st.integers(0, s - 1))
    assert boundary_distance((x, y), u) == boundary_distance((y, x), u)
    assert boundary_distance((x, y), u) == boundary_distance((s - 1 - x, y), u)
    assert 1 <= boundary_distance((x, y), u) <= u.m


@pytest.mark.parametrize(
    "a,b,axis,expected",
    [(((3, 3)), (4, 3), 0, 4), ((0, 0), (1, 0), 0, 1), ((0, 0), (1, 0), 1, 1)],
)
def test_edge_boundary_distance_examples(a, b, axis, expected):
    u = Universe(2, 8)
    assert edge_boundary_distance(a, b, u, axis) == expected


def test_containment_count_examples():
    u = Universe(2, 8)
    qs = TranslationQuerySet(u, (3, 3))
    assert containment_count(qs, (0, 0)) == 1
    assert containment_count(qs, (3, 3)) == 9
    whole = TranslationQuerySet(u, (8, 8))
    for cell in ((0, 0), (5, 2), (7, 7)):
        assert containment_count(whole, cell) == 1


def test_pair_containment_examples():
    u = Universe(2, 8)
    qs = TranslationQuerySet(u, (3, 3))
    assert pair_containment_count(qs, (3, 3), (3, 3)) == containment_count(qs, (3, 3))
    assert pair_containment_count(qs, (3, 3), (4, 3)) == 6
    tiny = TranslationQuerySet(u, (2, 2))
    assert pair_containment_count(tiny, (0, 0), (3, 3)) == 0


@pytest.mark.parametrize("s", [4, 6, 8, 12, 16])
def test_containment_totals(s):
    """Summing containment over all cells counts each query once per cell."""
    u = Universe(2, s)
    for lengths in itertools.product(range(1, s + 1), repeat=2):
        qs = TranslationQuerySet(u, lengths)
        total = sum(containment_count(qs, cell) for cell in u.cells())
        assert total == qs.count * qs.query_size


@pytest.mark.parametrize("s", [4, 6, 8, 12])
def test_counts_match_enumeration(s):
    u = Universe(2, s)
    rng = __import__("random").Random(20240 + s)
    for lengths in itertools.product(range(1, s + 1), repeat=2):
        qs = TranslationQuerySet(u, lengths)
        for cell in u.cells():
            assert containment_count(qs, cell) == containment_count_brute(qs, cell)
        for _ in range(12):
            a = (rng.randrange(s), rng.randrange(s))
            b = (rng.randrange(s), rng.randrange(s))
            assert pair_containment_count(qs, a, b) == pair_containment_count_brute(qs, a, b)


@given(
    st.integers(min_value=1, max_value=6).map(lambda h: 2 * h),
    st.data(),
)
def test_pair_bounded_by_single(s, data):
    u = Universe(2, s)
    lengths = tuple(data.draw(st.integers(1, s)) for _ in range(2))
    qs = TranslationQuerySet(u, lengths)
    a = tuple(data.draw(st.integers(0, s - 1)) for _ in range(2))
    b = tuple(data.draw(st.integers(0, s - 1)) for _ in range(2))
    pair = pair_containment_count(qs, a, b)
    assert pair <= min(containment_count(qs, a), containment_count(qs, b))
    assert pair == pair_containment_count_brute(qs, a, b)


def test_containment_3d():
    u = Universe(3, 4)
    qs = TranslationQuerySet(u, (2, 3, 4))
    for cell in u.cells():
        assert containment_count(qs, cell) == containment_count_brute(qs, cell)
