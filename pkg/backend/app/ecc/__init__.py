from app.ecc.brute_force import brute_force_ecc
from app.ecc.cover import (
    CoverObjective,
    CoverVerification,
    EdgeCliqueCover,
    format_cover,
    parse_cover,
    read_cover,
    verify_cover,
)
from app.ecc.solver import (
    SearchBudget,
    SearchStats,
    greedy_upper_bound,
    min_assignment_ecc,
    min_clique_ecc,
    solve_ecc,
)

__all__ = [
    "CoverObjective",
    "CoverVerification",
    "EdgeCliqueCover",
    "SearchBudget",
    "SearchStats",
    "brute_force_ecc",
    "format_cover",
    "greedy_upper_bound",
    "min_assignment_ecc",
    "min_clique_ecc",
    "parse_cover",
    "read_cover",
    "solve_ecc",
    "verify_cover",
]
