"""Seeded query generators, box-plot statistics, and the benchmark runner.

Determinism contract: every generator consumes a single sequential stream
from :class:`SplitMix64`, so the query list depends only on its arguments.
The benchmark runner evaluates the same query list against every curve and
sorts its output rows, making results identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import RectQuery
from .clustering import cluster_count_boundary, cluster_intervals
from .curves import Curve, curve_dimension, make_curve

__all__ = [
    "SplitMix64",
    "BoxStats",
    "box_stats",
    "random_cubes",
    "fixed_ratio_rects",
    "random_corner_rects",
    "DEFAULT_RATIOS",
    "full_scale_cube_sizes",
    "desk_scale_cube_sizes",
    "BenchmarkConfig",
    "BenchmarkRow",
    "BenchmarkResult",
    "run_benchmark",
]


class SplitMix64:
    """SplitMix64 generator, fixed here so query streams are reproducible
    across platforms and implementations.

    State update adds 0x9E3779B97F4A7C15; output mixing xors-shifts by 30,
    27, 31 with multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
    """

    _GAMMA = 0x9E3779B97F4A7C15
    _MIX1 = 0xBF58476D1CE4E5B9
    _MIX2 = 0x94D049BB133111EB
    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self._MASK

    def next_u64(self) -> int:
        self.state = (self.state + self._GAMMA) & self._MASK
        z = self.state
        z = ((z ^ (z >> 30)) * self._MIX1) & self._MASK
        z = ((z ^ (z >> 27)) * self._MIX2) & self._MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError(f"need a positive range, got {n}")
        span = 1 << 64
        limit = span - span % n
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def up_to(self, hi: int) -> int:
        """Uniform integer in [0, hi]."""
        return self.below(hi + 1)


@dataclass(frozen=True)
class BoxStats:
    """Five-number summary plus mean, as drawn in a box plot."""

    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    count: int


def _quantile(sorted_vals: Sequence[float], p: float) -> float:
    # Nearest rank; when p*count lands exactly on a rank boundary the two
    # straddling values are averaged (the half-rank case).
    k = len(sorted_vals)
    r = p * k
    if r >= 1 and float(r) == int(r):
        i = int(r)
        if i >= k:
            return float(sorted_vals[-1])
        return (sorted_vals[i - 1] + sorted_vals[i]) / 2
    return float(sorted_vals[min(math.ceil(r) - 1, k - 1)])


def box_stats(values: Sequence[float]) -> BoxStats:
    """Min, quartiles, max, and mean of a non-empty collection."""
    vals = sorted(values)
    if not vals:
        raise ValueError("box_stats needs at least one value")
    return BoxStats(
        min=float(vals[0]),
        q1=_quantile(vals, 0.25),
        median=_quantile(vals, 0.5),
        q3=_quantile(vals, 0.75),
        max=float(vals[-1]),
        mean=sum(vals) / len(vals),
        count=len(vals),
    )


# ---------------------------------------------------------------------------
# Query generators.
# ---------------------------------------------------------------------------

def random_cubes(s: int, d: int, side_len: int, count: int, seed: int) -> List[RectQuery]:
    """Cubes of a fixed side with origins uniform over all feasible positions."""
    if not 1 <= side_len <= s:
        raise ValueError(f"side length {side_len} outside [1, {s}]")
    rng = SplitMix64(seed)
    hi = s - side_len
    out = []
    for _ in range(count):
        origin = tuple(rng.up_to(hi) for _ in range(d))
        out.append(RectQuery(origin, (side_len,) * d))
    return out


def fixed_ratio_rects(
    s: int,
    ratio: Fraction,
    step: int = 50,
    samples_per_size: int = 20,
    seed: int = 0,
    d: int = 2,
) -> List[RectQuery]:
    """Rectangles with a fixed ratio between the second and first side.

    The second side descends from the grid side in fixed steps; the first is
    its floor-quotient by the ratio. Sizes whose first side falls outside
    [1, s] are skipped; each accepted size gets ``samples_per_size`` uniform
    placements. In three dimensions the second and third sides are equal.
    """
    if step < 1:
        raise ValueError("step must be at least 1")
    ratio = Fraction(ratio)
    if ratio <= 0:
        raise ValueError("ratio must be positive")
    rng = SplitMix64(seed)
    out = []
    l2 = s
    while l2 >= 1:
        l1 = math.floor(l2 / ratio)
        if 1 <= l1 <= s:
            lengths = (l1, l2) if d == 2 else (l1, l2, l2)
            for _ in range(samples_per_size):
                origin = tuple(rng.up_to(s - l) for l in lengths)
                out.append(RectQuery(origin, lengths))
        l2 -= step
    return out


def random_corner_rects(s: int, d: int, count: int, seed: int) -> List[RectQuery]:
    """Smallest boxes containing two independently uniform cells."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        a = tuple(rng.up_to(s - 1) for _ in range(d))
        b = tuple(rng.up_to(s - 1) for _ in range(d))
        origin = tuple(min(x, y) for x, y in zip(a, b))
        lengths = tuple(abs(x - y) + 1 for x, y in zip(a, b))
        out.append(RectQuery(origin, lengths))
    return out


#: Side-length ratios used by the fixed-ratio experiment.
DEFAULT_RATIOS: Tuple[Fraction, ...] = (
    Fraction(1, 1024), Fraction(1, 512), Fraction(1, 4), Fraction(1, 2),
    Fraction(3, 4), Fraction(1), Fraction(4, 3), Fraction(2), Fraction(4),
    Fraction(512), Fraction(1024),
)

_FULL_SCALE_3D_SIZES = (472, 432, 192, 152, 112, 72, 32)


def full_scale_cube_sizes(d: int) -> Tuple[int, ...]:
    """Full-scale cube-size lists (2D side 1024, 3D side 512)."""
    if d == 2:
        return tuple(1024 - 50 * k for k in range(1, 20, 2))
    return _FULL_SCALE_3D_SIZES


def desk_scale_cube_sizes(s: int, d: int) -> Tuple[int, ...]:
    """Cube sizes for the random-cubes experiment at reduced grid side.

    2D scales the full-scale arithmetic descent proportionally (step
    50s/1024, floored). 3D scales the full-scale size list proportionally
    and, when needed, raises the largest size to s - s//16 + 1 so the
    near-full regime (placement count at most s/16 per axis) is represented.
    """
    if d == 2:
        step = max(1, (50 * s) // 1024)
        return tuple(l for k in range(1, 20, 2) if (l := s - step * k) >= 1)
    scaled = sorted(
        {max(1, min(s, round(x * s / 512))) for x in _FULL_SCALE_3D_SIZES},
        reverse=True,
    )
    near_full = s - s // 16 + 1
    if scaled[0] < near_full:
        scaled[0] = near_full
    return tuple(scaled)


# ---------------------------------------------------------------------------
# Benchmark runner.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkConfig:
    experiment: str  # "random-cubes" | "fixed-ratio" | "random-corners"
    curves: Tuple[str, ...]
    d: int
    s: int
    seed: int = 0
    count: int = 1000
    sizes: Optional[Tuple[int, ...]] = None
    ratio: Optional[Fraction] = None
    step: int = 50
    samples_per_size: int = 20
    workers: int = 1

    def __post_init__(self):
        if self.experiment not in ("random-cubes", "fixed-ratio", "random-corners"):
            raise ValueError(f"unknown experiment {self.experiment!r}")
        for cid in self.curves:
            if curve_dimension(cid) != self.d:
                raise ValueError(f"curve {cid} is not {self.d}-dimensional")
        if self.experiment == "fixed-ratio" and self.ratio is None:
            raise ValueError("fixed-ratio experiment needs a ratio")


@dataclass(frozen=True)
class BenchmarkRow:
    curve: str
    d: int
    s: int
    lengths: Tuple[int, ...]
    origin: Tuple[int, ...]
    clusters: int


@dataclass(frozen=True)
class BenchmarkResult:
    rows: Tuple[BenchmarkRow, ...]
    #: (curve, lengths-or-None, stats); lengths is None for per-curve groups
    stats: Tuple[Tuple[str, Optional[Tuple[int, ...]], BoxStats], ...]


def _generate_queries(config: BenchmarkConfig) -> List[RectQuery]:
    if config.experiment == "random-cubes":
        sizes = config.sizes or desk_scale_cube_sizes(config.s, config.d)
        queries = []
        for l in sizes:
            # per-size seed offset keeps each size's stream independent of
            # list order while remaining a pure function of (seed, size)
            queries.extend(random_cubes(config.s, config.d, l, config.count,
                                        config.seed * 1_000_003 + l))
        return queries
    if config.experiment == "fixed-ratio":
        return fixed_ratio_rects(
            config.s, config.ratio, step=config.step,
            samples_per_size=config.samples_per_size, seed=config.seed,
            d=config.d,
        )
    return random_corner_rects(config.s, config.d, config.count, config.seed)


def _count_clusters(curve: Curve, q: RectQuery) -> int:
    if curve.continuous:
        return cluster_count_boundary(curve, q)
    return cluster_intervals(curve, q).count


def _eval_chunk(curve_id: str, s: int, chunk) -> List[int]:
    # module-level so worker processes can unpickle it
    curve = make_curve(curve_id, s)
    return [_count_clusters(curve, RectQuery(o, l)) for o, l in chunk]


def run_benchmark(config: BenchmarkConfig) -> BenchmarkResult:
    """Evaluate the configured experiment; rows are sorted, stats grouped.

    Fixed-size experiments group statistics per (curve, lengths); the
    random-corners experiment (every query a different shape) groups per
    curve.
    """
    queries = _generate_queries(config)
    rows: List[BenchmarkRow] = []
    plain = [(q.origin, q.lengths) for q in queries]
    for cid in config.curves:
        if config.workers > 1 and len(plain) > 1:
            n_chunks = min(config.workers, len(plain))
            size = (len(plain) + n_chunks - 1) // n_chunks
            chunks = [plain[i : i + size] for i in range(0, len(plain), size)]
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                counted = pool.map(_eval_chunk, [cid] * len(chunks),
                                   [config.s] * len(chunks), chunks)
            counts = [c for chunk in counted for c in chunk]
        else:
            counts = _eval_chunk(cid, config.s, plain)
        for q, c in zip(queries, counts):
            rows.append(BenchmarkRow(cid, config.d, config.s, q.lengths, q.origin, c))
    rows.sort(key=lambda r: (r.curve, r.lengths, r.origin))

    stats: List[Tuple[str, Optional[Tuple[int, ...]], BoxStats]] = []
    if config.experiment == "random-corners":
        for cid in sorted(set(config.curves)):
            vals = [r.clusters for r in rows if r.curve == cid]
            if vals:
                stats.append((cid, None, box_stats(vals)))
    else:
        groups = sorted({(r.curve, r.lengths) for r in rows})
        for cid, lengths in groups:
            vals = [r.clusters for r in rows if r.curve == cid and r.lengths == lengths]
            stats.append((cid, lengths, box_stats(vals)))
    return BenchmarkResult(rows=tuple(rows), stats=tuple(stats))
