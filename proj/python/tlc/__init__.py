"""Technology life-cycle indicators from patent classification data."""

from ._core import (
    Corpus,
    DisparityMatrix,
    Error,
    PatentRecord,
    YearlyDistribution,
    build_disparity,
    build_distributions,
    detrend_diff,
    dominant_cycle,
    entity_counts,
    gini_simpson,
    index_series,
    moving_average,
    parse_patents,
    periodogram,
    rao_stirling,
    read_patents,
    simpson,
    spearman,
    synth,
)

__all__ = [
    "Corpus",
    "DisparityMatrix",
    "Error",
    "PatentRecord",
    "YearlyDistribution",
    "build_disparity",
    "build_distributions",
    "detrend_diff",
    "dominant_cycle",
    "entity_counts",
    "gini_simpson",
    "index_series",
    "moving_average",
    "parse_patents",
    "periodogram",
    "rao_stirling",
    "read_patents",
    "simpson",
    "spearman",
    "synth",
]
