from app.mcm.build import build_mcm
from app.mcm.dag import GeneralDag, d_separated
from app.mcm.export import ModelDocument, format_model, parse_model, read_model, to_dot
from app.mcm.model import (
    McmValidation,
    MeDILCausalModel,
    induced_udg,
    is_observationally_consistent,
    is_observationally_consistent_superset,
    to_dag,
    validate_mcm,
)

__all__ = [
    "GeneralDag",
    "McmValidation",
    "MeDILCausalModel",
    "ModelDocument",
    "build_mcm",
    "d_separated",
    "format_model",
    "induced_udg",
    "is_observationally_consistent",
    "is_observationally_consistent_superset",
    "parse_model",
    "read_model",
    "to_dag",
    "to_dot",
    "validate_mcm",
]
