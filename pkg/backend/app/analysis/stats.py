from collections import Counter
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from app.mcm.model import MeDILCausalModel


def indegree_histogram(m: MeDILCausalModel) -> dict[int, int]:
    """Number of measurements per count of latent parents."""
    counts = Counter(int(d) for d in m.biadjacency.sum(axis=0))
    return dict(sorted(counts.items()))


def outdegree_histogram(m: MeDILCausalModel) -> dict[int, int]:
    counts = Counter(int(d) for d in m.biadjacency.sum(axis=1))
    return dict(sorted(counts.items()))


def shared_latents_matrix(m: MeDILCausalModel) -> np.ndarray:
    """Entry (i, j) counts latents parenting both measurements; the diagonal is the in-degree."""
    b = m.biadjacency.astype(np.int64)
    return b.T @ b


def shared_measurements_matrix(m: MeDILCausalModel) -> np.ndarray:
    b = m.biadjacency.astype(np.int64)
    return b @ b.T


class ModelSummary(BaseModel):
    num_measurements: int
    num_latents: int
    num_edges: int
    indegree_median: float
    indegree_min: int
    indegree_max: int
    outdegree_median: float
    outdegree_min: int
    outdegree_max: int
    # per measurement: median over the other measurements of latents shared with it
    shared_latents_median: list[float]
    latent_pairs_disjoint_fraction: float


def _off_diagonal_rows(matrix: np.ndarray) -> list[np.ndarray]:
    n = matrix.shape[0]
    return [np.delete(matrix[i], i) for i in range(n)]


def summarize_model(m: MeDILCausalModel) -> ModelSummary:
    b = m.biadjacency
    indegree = b.sum(axis=0) if m.num_measurements else np.zeros(0, dtype=int)
    outdegree = b.sum(axis=1) if m.num_latents else np.zeros(0, dtype=int)

    shared = shared_latents_matrix(m)
    medians = [float(np.median(row)) if row.size else 0.0 for row in _off_diagonal_rows(shared)]

    overlap = shared_measurements_matrix(m)
    upper = overlap[np.triu_indices(m.num_latents, k=1)]
    disjoint = float(np.mean(upper == 0)) if upper.size else 0.0

    def _stats(values: np.ndarray) -> tuple[float, int, int]:
        if not values.size:
            return 0.0, 0, 0
        return float(np.median(values)), int(values.min()), int(values.max())

    in_med, in_min, in_max = _stats(indegree)
    out_med, out_min, out_max = _stats(outdegree)
    return ModelSummary(
        num_measurements=m.num_measurements,
        num_latents=m.num_latents,
        num_edges=m.num_edges,
        indegree_median=in_med,
        indegree_min=in_min,
        indegree_max=in_max,
        outdegree_median=out_med,
        outdegree_min=out_min,
        outdegree_max=out_max,
        shared_latents_median=medians,
        latent_pairs_disjoint_fraction=disjoint,
    )


class MatrixDocument(BaseModel):
    row_labels: list[str]
    column_labels: list[str]
    values: list[list[int]]

    @classmethod
    def from_array(cls, matrix: np.ndarray, labels: Sequence[str]) -> "MatrixDocument":
        labels = list(labels)
        return cls(row_labels=labels, column_labels=labels, values=matrix.astype(int).tolist())


class StatsReport(BaseModel):
    indegree_histogram: dict[int, int]
    outdegree_histogram: dict[int, int]
    shared_latents: MatrixDocument
    shared_measurements: MatrixDocument
    summary: ModelSummary


def model_stats(m: MeDILCausalModel) -> StatsReport:
    measurement_labels = [m.measurement_label(b) for b in range(m.num_measurements)]
    latent_labels = [m.latent_label(a) for a in range(m.num_latents)]
    return StatsReport(
        indegree_histogram=indegree_histogram(m),
        outdegree_histogram=outdegree_histogram(m),
        shared_latents=MatrixDocument.from_array(shared_latents_matrix(m), measurement_labels),
        shared_measurements=MatrixDocument.from_array(shared_measurements_matrix(m), latent_labels),
        summary=summarize_model(m),
    )


def _csv_cell(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def histogram_csv(histogram: dict[int, int], key_name: str) -> str:
    lines = [f"{key_name},count"]
    lines.extend(f"{key},{count}" for key, count in sorted(histogram.items()))
    return "\n".join(lines) + "\n"


def matrix_csv(document: MatrixDocument, corner: Optional[str] = "") -> str:
    lines = [",".join([_csv_cell(corner or ""), *(_csv_cell(label) for label in document.column_labels)])]
    for label, row in zip(document.row_labels, document.values):
        lines.append(",".join([_csv_cell(label), *(str(v) for v in row)]))
    return "\n".join(lines) + "\n"
