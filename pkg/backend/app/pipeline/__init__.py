from .runner import PipelineBudgetError, PipelineResult, run_pipeline, run_pipeline_from_udg

__all__ = ["PipelineBudgetError", "PipelineResult", "run_pipeline", "run_pipeline_from_udg"]
