from app.core.config import Settings
from app.core.errors import BudgetExceededError, InvariantViolationError
from app.core.utils import get_app_logger, get_error_logger, log_stage_entry
from app.ecc.solver import SearchBudget, solve_ecc
from app.independence.estimate import estimate_udg
from app.mcm.build import build_mcm
from app.mcm.model import is_observationally_consistent, validate_mcm

from .state import MinMCMState

# pairwise latent separation is quadratic in the number of latents
LATENT_SEPARATION_MAX_LATENTS = 200


class PipelineNode:

    def __init__(self, cfg: Settings, budget: SearchBudget):
        self.cfg = cfg
        self.budget = budget

    def estimate_udg(self, state: MinMCMState) -> MinMCMState:
        logger = get_app_logger()
        error_logger = get_error_logger()
        log_stage_entry(logger, "pipeline", "estimate_udg")
        samples = state["samples"]
        try:
            udg, report = estimate_udg(
                samples,
                dcorr_threshold=self.cfg.dcorr_threshold,
                p_threshold=self.cfg.p_threshold,
                num_permutations=self.cfg.num_permutations,
                seed=self.cfg.seed,
                strict_exceedance=self.cfg.strict_exceedance,
                threads=self.cfg.threads,
            )
        except Exception as exc:
            error_logger.exception("pipeline:estimate error %s", exc)
            raise
        return {"udg": udg, "report": report}

    def solve_ecc(self, state: MinMCMState) -> MinMCMState:
        logger = get_app_logger()
        log_stage_entry(logger, "pipeline", f"solve_ecc {state['objective'].value}")
        try:
            cover, _ = solve_ecc(state["udg"], state["objective"], self.budget)
        except BudgetExceededError as exc:
            # ends the run early; udg and report stay in the state
            logger.info("pipeline:solve budget_exceeded best_value=%s lower_bound=%s", exc.best_value, exc.lower_bound)
            return {"budget_error": exc}
        return {"cover": cover, "budget_error": None}

    def build_mcm(self, state: MinMCMState) -> MinMCMState:
        logger = get_app_logger()
        error_logger = get_error_logger()
        log_stage_entry(logger, "pipeline", "build_mcm")
        udg = state["udg"]
        model = build_mcm(state["cover"], udg.num_vertices, udg.vertex_labels)

        if not is_observationally_consistent(model, udg):
            error_logger.error("pipeline:build model does not induce the estimated graph")
            raise InvariantViolationError("constructed model is not observationally consistent with its graph")
        validation = validate_mcm(model, check_latent_separation=model.num_latents <= LATENT_SEPARATION_MAX_LATENTS)
        if not validation.ok:
            failed = ", ".join(c.name for c in validation.checks if not c.passed)
            error_logger.error("pipeline:build structural checks failed %s", failed)
            raise InvariantViolationError(f"constructed model failed structural checks: {failed}")

        logger.info(
            "pipeline:build done latents=%s measurements=%s edges=%s",
            model.num_latents,
            model.num_measurements,
            model.num_edges,
        )
        return {"model": model}
