from app.analysis.sensitivity import SensitivityReport, edge_flip_sensitivity
from app.analysis.stats import (
    ModelSummary,
    StatsReport,
    indegree_histogram,
    model_stats,
    outdegree_histogram,
    shared_latents_matrix,
    shared_measurements_matrix,
    summarize_model,
)
from app.analysis.synthetic import LinkFunction, SyntheticModel, simulate

__all__ = [
    "LinkFunction",
    "ModelSummary",
    "SensitivityReport",
    "StatsReport",
    "SyntheticModel",
    "edge_flip_sensitivity",
    "indegree_histogram",
    "model_stats",
    "outdegree_histogram",
    "shared_latents_matrix",
    "shared_measurements_matrix",
    "simulate",
    "summarize_model",
]
