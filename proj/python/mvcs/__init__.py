"""Multi-view clusterability scoring, noisy-view detection and view corruption.

Matrices are NumPy arrays with one row per instance. Report-style results
(``score``, ``detect``, ``profile``) are returned as plain dicts with the same
layout as the command-line tool's JSON output.
"""

from ._core import (
    MultiViewDataset,
    MvcsError,
    ScoreConfig,
    corrupt,
    corrupt_conflict,
    corrupt_permutation,
    critical_bandwidth,
    detect,
    generate_synthetic,
    hopkins,
    kde_eval,
    knn,
    load_dataset,
    mode_count,
    neighborhood_consistency,
    principal_projection,
    profile,
    save_dataset,
    score,
    standardize,
)

__all__ = [
    "MultiViewDataset",
    "MvcsError",
    "ScoreConfig",
    "corrupt",
    "corrupt_conflict",
    "corrupt_permutation",
    "critical_bandwidth",
    "detect",
    "generate_synthetic",
    "hopkins",
    "kde_eval",
    "knn",
    "load_dataset",
    "mode_count",
    "neighborhood_consistency",
    "principal_projection",
    "profile",
    "save_dataset",
    "score",
    "standardize",
]
