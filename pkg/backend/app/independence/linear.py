import numpy as np
from pydantic import BaseModel
from scipy.stats import pearsonr

from app.independence.estimate import IndependenceTestReport
from app.independence.samples import SampleMatrix


class LinearEdge(BaseModel):
    i: int
    j: int
    pearson_r: float
    p_value: float
    undetectable: bool


class LinearComparison(BaseModel):
    p_threshold: float
    edges: list[LinearEdge]
    undetectable_fraction: float


def linear_comparison(samples: SampleMatrix, report: IndependenceTestReport, p_threshold: float = 0.1) -> LinearComparison:
    """For every estimated dependence, would a Pearson test have missed it?"""
    edges = []
    for i, j in report.dependent_pairs():
        x = samples.column(i)
        y = samples.column(j)
        if np.ptp(x) == 0 or np.ptp(y) == 0:
            r, p = 0.0, 1.0
        else:
            result = pearsonr(x, y)
            r, p = float(result[0]), float(result[1])
        edges.append(LinearEdge(i=i, j=j, pearson_r=r, p_value=p, undetectable=p > p_threshold))
    missed = sum(edge.undetectable for edge in edges)
    return LinearComparison(
        p_threshold=p_threshold,
        edges=edges,
        undetectable_fraction=missed / len(edges) if edges else 0.0,
    )
