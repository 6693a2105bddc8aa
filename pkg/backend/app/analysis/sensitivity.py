from typing import Optional

from pydantic import BaseModel

from app.core.config import settings
from app.core.errors import InputError
from app.core.utils import get_app_logger
from app.ecc.cover import CoverObjective
from app.ecc.solver import SearchBudget, solve_ecc
from app.graph.udg import UndirectedDependencyGraph

PRECARIOUS_RATIO = 2.0


class EdgeFlip(BaseModel):
    i: int
    j: int
    was_edge: bool
    value: int
    ratio: Optional[float]
    precarious: bool


class SensitivityReport(BaseModel):
    objective: CoverObjective
    baseline: int
    flips: list[EdgeFlip]

    @property
    def precarious_pairs(self) -> list[tuple[int, int]]:
        return [(f.i, f.j) for f in self.flips if f.precarious]


def _toggled(g: UndirectedDependencyGraph, i: int, j: int) -> UndirectedDependencyGraph:
    rows = list(g.rows)
    rows[i] ^= 1 << j
    rows[j] ^= 1 << i
    return UndirectedDependencyGraph(rows, g.vertex_labels)


def edge_flip_sensitivity(
    g: UndirectedDependencyGraph,
    objective: CoverObjective | str = CoverObjective.CLIQUE_COUNT,
    max_vertices: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
) -> SensitivityReport:
    """
    Re-solve after flipping each single (in)dependence.

    A flip is precarious when it at least doubles or halves the optimum; from an
    edgeless baseline every flip is.
    """
    logger = get_app_logger()
    objective = CoverObjective(objective)
    cap = settings.sensitivity_max_vertices if max_vertices is None else max_vertices
    n = g.num_vertices
    if n > cap:
        raise InputError(f"edge flip sensitivity refuses n={n} above the cap of {cap}")

    baseline = solve_ecc(g, objective, budget)[0].objective_value
    flips = []
    for i in range(n):
        for j in range(i + 1, n):
            value = solve_ecc(_toggled(g, i, j), objective, budget)[0].objective_value
            if baseline:
                ratio = value / baseline
                precarious = ratio >= PRECARIOUS_RATIO or ratio <= 1.0 / PRECARIOUS_RATIO
            else:
                ratio = None
                precarious = True
            flips.append(EdgeFlip(i=i, j=j, was_edge=g.has_edge(i, j), value=value, ratio=ratio, precarious=precarious))

    logger.info(
        "analysis:sensitivity done objective=%s baseline=%s precarious=%s/%s",
        objective.value,
        baseline,
        sum(f.precarious for f in flips),
        len(flips),
    )
    return SensitivityReport(objective=objective, baseline=baseline, flips=flips)
