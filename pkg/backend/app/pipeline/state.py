from typing import Optional, TypedDict

from app.core.errors import BudgetExceededError
from app.ecc.cover import CoverObjective, EdgeCliqueCover
from app.graph.udg import UndirectedDependencyGraph
from app.independence.estimate import IndependenceTestReport
from app.independence.samples import SampleMatrix
from app.mcm.model import MeDILCausalModel


class MinMCMState(TypedDict, total=False):
    """
    Artifacts handed from stage to stage.

    Either ``samples`` or ``udg`` is present on entry; later stages fill in the rest.
    """

    samples: Optional[SampleMatrix]
    udg: UndirectedDependencyGraph
    report: Optional[IndependenceTestReport]
    objective: CoverObjective
    cover: EdgeCliqueCover
    model: MeDILCausalModel
    budget_error: Optional[BudgetExceededError]
