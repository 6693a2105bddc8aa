from typing import NamedTuple, Optional

from app.core.config import settings
from app.core.errors import BudgetExceededError
from app.ecc.cover import CoverObjective, EdgeCliqueCover
from app.ecc.solver import SearchBudget
from app.graph.udg import UndirectedDependencyGraph
from app.independence.estimate import IndependenceTestReport
from app.independence.samples import SampleMatrix
from app.mcm.model import MeDILCausalModel

from .graphbuilder import MinMCMGraphBuilder


class PipelineResult(NamedTuple):
    udg: UndirectedDependencyGraph
    report: Optional[IndependenceTestReport]
    cover: EdgeCliqueCover
    model: MeDILCausalModel


class PipelineBudgetError(BudgetExceededError):
    """Solver budget ran out; the estimated graph and test report are still attached."""

    def __init__(self, cause: BudgetExceededError, udg: UndirectedDependencyGraph, report: Optional[IndependenceTestReport]):
        self.cause = cause
        self.udg = udg
        self.report = report
        self.best_value = cause.best_value
        self.lower_bound = cause.lower_bound
        self.nodes = cause.nodes
        self.elapsed = cause.elapsed
        Exception.__init__(self, str(cause))


def _invoke(initial: dict, budget: Optional[SearchBudget], **overrides) -> PipelineResult:
    cfg = settings.with_overrides(**overrides)
    budget = budget or SearchBudget(time_limit=cfg.solver_time_budget, node_limit=cfg.solver_node_budget)
    app = MinMCMGraphBuilder(cfg, budget).build_graph()
    final = app.invoke(initial)
    if final.get("budget_error") is not None:
        raise PipelineBudgetError(final["budget_error"], final["udg"], final.get("report"))
    return PipelineResult(final["udg"], final.get("report"), final["cover"], final["model"])


def run_pipeline(
    samples: SampleMatrix,
    objective: CoverObjective | str = CoverObjective.CLIQUE_COUNT,
    budget: Optional[SearchBudget] = None,
    **test_params,
) -> PipelineResult:
    """
    Estimate the dependency graph, cover it optimally and build the model.

    ``test_params`` override the independence-test settings for this run.
    """
    initial = {"samples": samples, "objective": CoverObjective(objective)}
    return _invoke(initial, budget, **test_params)


def run_pipeline_from_udg(
    udg: UndirectedDependencyGraph,
    objective: CoverObjective | str = CoverObjective.CLIQUE_COUNT,
    budget: Optional[SearchBudget] = None,
) -> PipelineResult:
    initial = {"udg": udg, "report": None, "objective": CoverObjective(objective)}
    return _invoke(initial, budget)
