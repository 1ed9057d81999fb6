"""Joint multi-attribute ranking and projection analytics engine.

Pipeline: ingest a numeric dataset, infer attribute weights from
pairwise re-ranking constraints, discretize rank scores into ratings,
project the weighted data to 2-D, string rating polylines through the
projection, unroll them into a linear axis, and flag inconsistencies
between ranking order and projection proximity.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .axis import (
    AxisPlacement,
    RatingPolyline,
    build_axis,
    inverse_ordinal,
    project_onto_polyline,
    rating_line,
    self_defined_rating_line,
    sequence_ranking_line,
)
from .consistency import (
    TripleVerdict,
    classify_triple,
    cluster_gate,
    enumerate_inconsistencies,
    preference,
)
from .data import (
    Attribute,
    DataItem,
    Dataset,
    attribute_contributions,
    build_dataset,
    export_normalized_csv,
    load_csv,
    normalize,
)
from .projection import (
    Projection,
    ProjectionConfig,
    project,
    project_dataset,
    projection_distance,
    weighted_matrix,
)
from .ranking import (
    PairwiseConstraint,
    RankedItem,
    WeightVector,
    constraints_from_pairs,
    derive_constraints,
    marked_window,
    rank_all,
    rank_score,
    train_ranking_svm,
)
from .rating import (
    RatingPartition,
    ScoreDistribution,
    assign_ratings,
    entropy,
    find_split_points,
    partition_scores,
    quantize_scores,
)
from .schemes import (
    RankingScheme,
    SchemeComparison,
    SchemeStore,
    align_order,
    attribute_diff_coloring,
    attribute_similarity,
    compare_schemes,
    make_scheme,
)

__version__ = "0.1.0"
