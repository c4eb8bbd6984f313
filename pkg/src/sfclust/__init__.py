"""Space-filling curves with exact clustering-number analysis.

Public surface: grid/query primitives (:mod:`sfclust.core`), the curve
catalogue (:mod:`sfclust.curves`), exact cluster counting
(:mod:`sfclust.clustering`), closed-form values and lower bounds
(:mod:`sfclust.theory`), brute-force oracles (:mod:`sfclust.oracle`), and
seeded benchmark experiments (:mod:`sfclust.experiments`).
"""

from .core import (
    Cell,
    Edge,
    NearCubeParams,
    RectQuery,
    TranslationQuerySet,
    Universe,
    boundary_distance,
    containment_count,
    edge_boundary_distance,
    pair_containment_count,
)
from .curves import SUPPORTED_CURVES, Curve, make_curve
from .clustering import (
    CrossingCounts,
    IntervalDecomposition,
    cluster_count_boundary,
    cluster_intervals,
    crossing_count,
    mean_cluster_count,
    mean_cluster_count_enumerated,
    mean_cluster_count_queries,
)
from .theory import (
    CaseLabel,
    FormulaValue,
    approx_ratio_upper,
    classify_near_cube,
    cube_lower_bound_formula_3d,
    lower_bound_continuous,
    lower_bound_general,
    min_crossing,
    min_neighbor_crossing,
    min_neighbor_crossing_closed,
    neighbor_crossing_total,
    neighbor_crossing_total_closed,
    onion2d_mean_formula,
    onion3d_mean_formula,
    rows_and_columns,
)
from .experiments import (
    BenchmarkConfig,
    BenchmarkResult,
    BoxStats,
    SplitMix64,
    box_stats,
    desk_scale_cube_sizes,
    fixed_ratio_rects,
    random_corner_rects,
    random_cubes,
    run_benchmark,
)

__version__ = "0.1.0"
