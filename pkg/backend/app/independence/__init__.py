from app.independence.conditional import ConditionalRelation, ConditionalRelations, derive_conditional_relations
from app.independence.dcorr import distance_correlation
from app.independence.estimate import IndependenceTestReport, PairTest, estimate_udg, format_report, read_report
from app.independence.linear import LinearComparison, linear_comparison
from app.independence.permutation import exact_permutation_pvalue, permutation_pvalue
from app.independence.samples import SampleMatrix, format_samples, parse_samples, read_samples

__all__ = [
    "ConditionalRelation",
    "ConditionalRelations",
    "IndependenceTestReport",
    "LinearComparison",
    "PairTest",
    "SampleMatrix",
    "derive_conditional_relations",
    "distance_correlation",
    "estimate_udg",
    "exact_permutation_pvalue",
    "format_report",
    "format_samples",
    "linear_comparison",
    "parse_samples",
    "permutation_pvalue",
    "read_report",
    "read_samples",
]
