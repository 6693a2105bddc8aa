from langgraph.graph import END, START, StateGraph

from app.core.config import Settings
from app.ecc.solver import SearchBudget

from .nodes import PipelineNode
from .state import MinMCMState


def route_entry(state: MinMCMState) -> str:
    if state.get("udg") is not None:
        return "solve_ecc"
    return "estimate_udg"


def route_after_solve(state: MinMCMState) -> str:
    if state.get("budget_error") is not None:
        return END
    return "build_mcm"


class MinMCMGraphBuilder:
    """
    This class builds the graph that turns samples (or a ready graph) into a minimal model.
    """

    def __init__(self, cfg: Settings, budget: SearchBudget):
        self.cfg = cfg
        self.budget = budget
        self.graph = StateGraph(MinMCMState)

    def build_graph(self):
        node = PipelineNode(self.cfg, self.budget)

        self.graph.add_node("estimate_udg", node.estimate_udg)
        self.graph.add_node("solve_ecc", node.solve_ecc)
        self.graph.add_node("build_mcm", node.build_mcm)

        # graph inputs skip estimation
        self.graph.add_conditional_edges(
            START,
            route_entry,
            {
                "estimate_udg": "estimate_udg",
                "solve_ecc": "solve_ecc",
            },
        )
        self.graph.add_edge("estimate_udg", "solve_ecc")
        self.graph.add_conditional_edges(
            "solve_ecc",
            route_after_solve,
            {
                "build_mcm": "build_mcm",
                END: END,
            },
        )
        self.graph.add_edge("build_mcm", END)

        return self.graph.compile()
