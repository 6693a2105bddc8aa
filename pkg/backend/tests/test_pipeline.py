import itertools

import numpy as np
import pytest

from app.core.config import settings
from app.core.errors import BudgetExceededError
from app.ecc import CoverObjective, SearchBudget
from app.independence import SampleMatrix
from app.mcm import induced_udg, is_observationally_consistent
from app.pipeline import PipelineBudgetError, run_pipeline, run_pipeline_from_udg
from app.pipeline.graphbuilder import MinMCMGraphBuilder, route_after_solve, route_entry

from conftest import cocktail_party

def product_design(num_variables: int, levels: int = 8, seed: int = 0) -> SampleMatrix:
    """Every combination of per-variable levels once: the empirical joint is exactly a product."""
    rng = np.random.default_rng(seed)
    grids = [rng.normal(size=levels) for _ in range(num_variables)]
    rows = [[grids[v][k] for v, k in enumerate(combo)] for combo in itertools.product(range(levels), repeat=num_variables)]
    return SampleMatrix.of(rows)

class TestFromUDG:
    def test_triangle_tail(self, triangle_tail, triangle_tail_model):
        result = run_pipeline_from_udg(triangle_tail)
        assert result.report is None
        assert result.model == triangle_tail_model
        assert [c.members for c in result.cover.cliques] == [(0, 1, 2), (2, 3)]
        assert is_observationally_consistent(result.model, result.udg)

    def test_overlap_assignment(self, overlap):
        result = run_pipeline_from_udg(overlap, CoverObjective.ASSIGNMENT_COUNT)
        assert result.cover.objective_value == 18
        assert result.model.num_edges == 18
        assert induced_udg(result.model) == overlap

    def test_objective_by_name(self, chorded_hexagon):
        result = run_pipeline_from_udg(chorded_hexagon, "assignment_count")
        assert result.cover.objective is CoverObjective.ASSIGNMENT_COUNT
        assert result.model.num_latents == 7

    def test_budget_failure_keeps_the_graph(self):
        g = cocktail_party(4)
        with pytest.raises(PipelineBudgetError) as info:
            run_pipeline_from_udg(g, budget=SearchBudget(node_limit=1))
        err = info.value
        assert isinstance(err, BudgetExceededError)
        assert err.exit_code == 2
        assert err.udg == g
        assert err.report is None
        assert err.best_value >= err.lower_bound > 0

class TestFromSamples:
    def test_common_cause_gives_one_latent(self):
        rng = np.random.default_rng(0)
        latent = rng.normal(size=300)
        values = np.column_stack([latent + 0.1 * rng.normal(size=300) for _ in range(4)])
        result = run_pipeline(SampleMatrix.of(values), num_permutations=50, seed=1)
        assert result.udg.num_edges == 6
        assert [result.model.children(a) for a in range(result.model.num_latents)] == [(0, 1, 2, 3)]
        assert result.report is not None and len(result.report.pairs) == 6

    def test_independent_variables_get_singletons(self):
        result = run_pipeline(product_design(3), num_permutations=100, seed=0)
        assert result.udg.num_edges == 0
        assert result.cover.cliques == []
        assert [result.model.children(a) for a in range(3)] == [(0,), (1,), (2,)]
        assert all(t.independent for t in result.report.pairs)

def test_routes():
    assert route_entry({"udg": object()}) == "solve_ecc"
    assert route_entry({"samples": object()}) == "estimate_udg"
    assert route_after_solve({"budget_error": None}) == "build_mcm"
    assert route_after_solve({"budget_error": BudgetExceededError("x", best_value=1, lower_bound=1, nodes=1, elapsed=0.0)}) != "build_mcm"

def test_graph_compiles():
    app = MinMCMGraphBuilder(settings, SearchBudget()).build_graph()
    assert set(app.get_graph().nodes) >= {"estimate_udg", "solve_ecc", "build_mcm"}

def test_budget_failure_after_estimation_keeps_report(monkeypatch):
    def exhausted(*args, **kwargs):
        raise BudgetExceededError("ecc:clique_count node budget exhausted", best_value=3, lower_bound=2, nodes=2, elapsed=0.0)

    monkeypatch.setattr("app.pipeline.nodes.solve_ecc", exhausted)
    samples = product_design(2)
    with pytest.raises(PipelineBudgetError) as info:
        run_pipeline(samples, num_permutations=10, seed=0)
    err = info.value
    assert err.report is not None
    assert err.udg == err.report.to_udg()
    assert (err.best_value, err.lower_bound) == (3, 2)
