import numpy as np
import pytest

from app.core.errors import InputError
from app.independence import (
    SampleMatrix,
    derive_conditional_relations,
    distance_correlation,
    estimate_udg,
    exact_permutation_pvalue,
    format_report,
    linear_comparison,
    parse_samples,
    permutation_pvalue,
    read_report,
    read_samples,
)
from app.independence.conditional import ConditionalRelation, ConditionalRelations, is_dependent_given
from app.independence.estimate import is_independent
from app.independence.samples import format_samples


def _reference_dcorr(x, y):
    """Two-loop double centring, kept deliberately naive."""
    n = len(x)

    def centred(v):
        d = [[abs(v[i] - v[k]) for k in range(n)] for i in range(n)]
        row = [sum(d[i]) / n for i in range(n)]
        col = [sum(d[i][k] for i in range(n)) / n for k in range(n)]
        grand = sum(row) / n
        return [[d[i][k] - row[i] - col[k] + grand for k in range(n)] for i in range(n)]

    a = centred(list(x))
    b = centred(list(y))
    dcov = sum(a[i][k] * b[i][k] for i in range(n) for k in range(n)) / n**2
    var_x = sum(a[i][k] ** 2 for i in range(n) for k in range(n)) / n**2
    var_y = sum(b[i][k] ** 2 for i in range(n) for k in range(n)) / n**2
    if var_x <= 0 or var_y <= 0:
        return 0.0
    return (max(dcov, 0.0) / (var_x * var_y) ** 0.5) ** 0.5


class TestDistanceCorrelation:
    def test_identical_vectors(self):
        x = [1.0, 2.0, 3.0, 4.0, 5.0]
        assert distance_correlation(x, x) == pytest.approx(1.0, abs=1e-12)

    def test_constant_vector_is_zero(self):
        assert distance_correlation([7, 7, 7, 7], [1, 2, 3, 4]) == 0.0

    def test_squares_match_reference(self):
        x, y = [1, 2, 3, 4], [1, 4, 9, 16]
        assert distance_correlation(x, y) == pytest.approx(_reference_dcorr(x, y), abs=1e-10)

    def test_matches_reference_on_random_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(2, 65))
            x = rng.normal(size=n)
            y = x**2 + rng.normal(size=n) if rng.random() < 0.5 else rng.normal(size=n)
            assert distance_correlation(x, y) == pytest.approx(_reference_dcorr(x, y), abs=1e-10)

    def test_symmetric(self):
        rng = np.random.default_rng(1)
        x, y = rng.normal(size=40), rng.normal(size=40)
        assert distance_correlation(x, y) == distance_correlation(y, x)

    def test_positive_affine_invariance(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=50)
        y = np.sin(x) + 0.3 * rng.normal(size=50)
        base = distance_correlation(x, y)
        assert distance_correlation(3.5 * x - 2.0, y) == pytest.approx(base, abs=1e-10)
        assert distance_correlation(x, 0.25 * y + 10.0) == pytest.approx(base, abs=1e-10)

    def test_in_unit_interval(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            value = distance_correlation(rng.normal(size=30), rng.normal(size=30))
            assert 0.0 <= value <= 1.0

    @pytest.mark.parametrize(
        "x, y, match",
        [
            ([1, 2, 3], [1, 2], "length mismatch"),
            ([1], [2], "at least 2"),
            ([1, np.nan, 3], [1, 2, 3], "non-finite"),
            ([[1, 2], [3, 4]], [1, 2], "vector"),
        ],
    )
    def test_invalid_input(self, x, y, match):
        with pytest.raises(InputError, match=match):
            distance_correlation(x, y)


class TestPermutationPValue:
    def test_exact_enumeration_counts_order_preserving_shuffles(self):
        x = [1.0, 2.0, 3.0, 4.0]
        # identity and reversal both reproduce the distance matrix
        assert exact_permutation_pvalue(x, x) == pytest.approx(2 / 24)
        assert exact_permutation_pvalue(x, x, strict=True) == 0.0

    def test_identical_vectors_near_zero(self):
        x = np.arange(30, dtype=float)
        assert permutation_pvalue(x, x, 100, seed=4) <= 0.02

    def test_constant_gives_one(self):
        assert permutation_pvalue([1, 2, 3, 4, 5], [2, 2, 2, 2, 2], 50) == 1.0
        assert permutation_pvalue([1, 2, 3, 4, 5], [2, 2, 2, 2, 2], 50, strict=True) == 1.0
        assert exact_permutation_pvalue([1, 2, 3], [0, 0, 0]) == 1.0

    def test_deterministic_for_seed(self):
        rng = np.random.default_rng(8)
        x, y = rng.normal(size=60), rng.normal(size=60)
        assert permutation_pvalue(x, y, 200, seed=13) == permutation_pvalue(x, y, 200, seed=13)

    def test_requires_a_permutation(self):
        with pytest.raises(InputError):
            permutation_pvalue([1, 2, 3], [3, 1, 2], 0)

    def test_exact_refuses_large_samples(self):
        with pytest.raises(InputError):
            exact_permutation_pvalue(list(range(9)), list(range(9)))


def test_decision_rule_is_a_conjunction():
    assert is_independent(0.05, 0.5, 0.1, 0.1)
    assert not is_independent(0.15, 0.5, 0.1, 0.1)
    assert not is_independent(0.05, 0.05, 0.1, 0.1)
    assert not is_independent(0.1, 0.5, 0.1, 0.1)


class TestEstimateUDG:
    def test_copied_column_is_dependent(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=100)
        samples = SampleMatrix.of(np.column_stack([x, x]))
        udg, report = estimate_udg(samples, num_permutations=50, seed=1)
        assert udg.has_edge(0, 1)
        assert report.pair(1, 0).dcorr == pytest.approx(1.0)
        assert not report.pair(0, 1).independent

    def test_report_covers_every_pair(self):
        rng = np.random.default_rng(1)
        samples = SampleMatrix.of(rng.normal(size=(80, 4)), ["a", "b", "c", "d"])
        udg, report = estimate_udg(samples, num_permutations=20, seed=3, threads=1)
        assert [(t.i, t.j) for t in report.pairs] == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        assert udg.vertex_labels == ("a", "b", "c", "d")
        assert np.array_equal(udg.adjacency, udg.adjacency.T)
        assert set(udg.edges()) == set(report.dependent_pairs())

    def test_thread_count_does_not_change_results(self):
        rng = np.random.default_rng(2)
        x = rng.normal(size=60)
        values = np.column_stack([x, x + rng.normal(size=60), rng.normal(size=60)])
        samples = SampleMatrix.of(values)
        _, serial = estimate_udg(samples, num_permutations=40, seed=9, threads=1)
        _, parallel = estimate_udg(samples, num_permutations=40, seed=9, threads=3)
        assert serial == parallel

    def test_thresholds_recorded(self):
        rng = np.random.default_rng(3)
        samples = SampleMatrix.of(rng.normal(size=(30, 2)))
        _, report = estimate_udg(samples, dcorr_threshold=0.2, p_threshold=0.05, num_permutations=10, seed=0)
        assert (report.dcorr_threshold, report.p_threshold, report.num_permutations) == (0.2, 0.05, 10)

    def test_needs_two_variables(self):
        samples = SampleMatrix.of(np.zeros((5, 1)))
        with pytest.raises(InputError):
            estimate_udg(samples, num_permutations=5)

    def test_report_round_trip(self, tmp_path):
        rng = np.random.default_rng(4)
        samples = SampleMatrix.of(rng.normal(size=(30, 3)))
        _, report = estimate_udg(samples, num_permutations=10, seed=0)
        path = tmp_path / "report.json"
        path.write_text(format_report(report))
        assert read_report(path) == report

    def test_malformed_report(self, tmp_path):
        path = tmp_path / "report.json"
        path.write_text('{"num_variables": 1}')
        with pytest.raises(InputError, match="invalid report"):
            read_report(path)


class TestConditionalRelations:
    def test_collider_opens_when_both_depend_on_the_condition(self, triangle_tail):
        assert is_dependent_given(triangle_tail, 1, 3, 2)

    def test_independence_survives_when_condition_is_unrelated(self, triangle_tail):
        assert not is_dependent_given(triangle_tail, 0, 3, 1)

    def test_dependence_survives_any_condition(self, triangle_tail):
        assert is_dependent_given(triangle_tail, 0, 1, 2)
        assert is_dependent_given(triangle_tail, 0, 1, 3)

    def test_enumerates_every_triple(self, triangle_tail):
        relations = derive_conditional_relations(triangle_tail)
        assert len(relations) == 6 * 2
        lookup = ConditionalRelations(num_measurements=4, relations=relations)
        assert lookup.lookup(3, 1, 2).dependent
        assert not lookup.lookup(0, 3, 1).dependent

    def test_indices_must_be_distinct(self):
        with pytest.raises(ValueError):
            ConditionalRelation(i=0, j=1, given=1, dependent=True)


class TestSamples:
    def test_header_detected(self):
        samples = parse_samples("a,b\n1,2\n3,4\n")
        assert samples.column_labels == ("a", "b")
        assert samples.num_samples == 2
        assert samples.column(1).tolist() == [2.0, 4.0]

    def test_numeric_first_row_is_data(self):
        samples = parse_samples("1,2\n3,4\n5,6\n")
        assert samples.column_labels is None
        assert samples.num_samples == 3

    def test_header_flag_overrides_detection(self):
        assert parse_samples("1,2\n3,4\n5,6\n", header=True).column_labels == ("1", "2")

    @pytest.mark.parametrize(
        "text, line",
        [
            ("a,b\n1,2\n3\n", 3),
            ("1,2\n3,x\n", 2),
            ("1,2\n\n3,inf\n", 3),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(InputError) as info:
            parse_samples(text, source="s.csv")
        assert info.value.line == line

    def test_empty(self):
        with pytest.raises(InputError, match="no sample data"):
            parse_samples("\n\n")

    def test_single_observation(self):
        with pytest.raises(InputError, match="at least 2"):
            parse_samples("a,b\n1,2\n")

    def test_values_are_read_only(self):
        samples = SampleMatrix.of([[1, 2], [3, 4]])
        with pytest.raises(ValueError):
            samples.values[0, 0] = 9.0

    def test_file_round_trip(self, tmp_path):
        samples = SampleMatrix.of([[0.5, -1.25], [2.0, 3.0], [1e-3, 7.0]], ["x", "y"])
        path = tmp_path / "samples.csv"
        path.write_text(format_samples(samples))
        loaded = read_samples(path)
        assert loaded.column_labels == ("x", "y")
        assert np.array_equal(loaded.values, samples.values)


def test_linear_comparison_flags_quadratic_dependence():
    rng = np.random.default_rng(6)
    x = rng.uniform(-1, 1, size=400)
    samples = SampleMatrix.of(np.column_stack([x, x**2, 2 * x + 0.1 * rng.normal(size=400)]))
    _, report = estimate_udg(samples, num_permutations=50, seed=0)
    comparison = linear_comparison(samples, report)
    edges = {(e.i, e.j): e for e in comparison.edges}
    assert edges[(0, 2)].undetectable is False
    assert abs(edges[(0, 1)].pearson_r) < 0.2
    assert 0.0 <= comparison.undetectable_fraction <= 1.0
