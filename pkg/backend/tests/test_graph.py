import numpy as np
import pytest

from app.core.errors import InputError
from app.graph.bitset import iter_bits
from app.graph.cliques import maximal_cliques
from app.graph.generators import FragilePair, InstanceKind, generate_instance
from app.graph.io import UDGDocument, format_dense, format_edge_list, parse_udg, read_udg
from app.graph.udg import Clique, UndirectedDependencyGraph, connected_components, from_edge_list, is_clique


def _members(cliques):
    return [c.members for c in cliques]


class TestFromEdgeList:
    def test_triangle_tail_edges(self, triangle_tail):
        assert triangle_tail.num_vertices == 4
        assert triangle_tail.edges() == [(0, 1), (0, 2), (1, 2), (2, 3)]
        assert triangle_tail.has_edge(3, 2) and not triangle_tail.has_edge(0, 3)

    def test_edgeless(self):
        g = from_edge_list(3, [])
        assert g.num_edges == 0
        assert not g.adjacency.any()

    def test_duplicate_pairs_collapse(self):
        g = from_edge_list(2, [(0, 1), (1, 0)])
        assert g.edges() == [(0, 1)]

    @pytest.mark.parametrize("edge", [(0, 4), (-1, 2)])
    def test_out_of_range(self, edge):
        with pytest.raises(InputError):
            from_edge_list(4, [edge])

    def test_self_loop(self):
        with pytest.raises(InputError, match="self-loop"):
            from_edge_list(3, [(1, 1)])


class TestGraphInvariants:
    def test_adjacency_symmetric_zero_diagonal(self, overlap):
        adjacency = overlap.adjacency
        assert np.array_equal(adjacency, adjacency.T)
        assert not adjacency.diagonal().any()

    def test_asymmetric_rows_rejected(self):
        with pytest.raises(InputError, match="symmetric"):
            UndirectedDependencyGraph([0b10, 0b00])

    def test_from_adjacency(self, triangle_tail):
        assert UndirectedDependencyGraph.from_adjacency(triangle_tail.adjacency) == triangle_tail

    def test_labels_must_be_unique(self):
        with pytest.raises(InputError, match="unique"):
            from_edge_list(2, [(0, 1)], labels=["a", "a"])

    def test_default_labels_are_one_indexed(self, triangle_tail):
        assert triangle_tail.label(0) == "M1"
        assert triangle_tail.with_labels(["a", "b", "c", "d"]).label(3) == "d"


class TestIsClique:
    def test_triangle_tail_triangle(self, triangle_tail):
        assert is_clique(triangle_tail, {0, 1, 2})

    def test_triangle_tail_independent_pair_breaks_clique(self, triangle_tail):
        assert not is_clique(triangle_tail, {0, 1, 3})

    def test_singleton_and_empty(self, triangle_tail):
        assert is_clique(triangle_tail, {2})
        assert is_clique(triangle_tail, set())

    def test_out_of_range(self, triangle_tail):
        with pytest.raises(InputError):
            is_clique(triangle_tail, {0, 7})


class TestClique:
    def test_members_sorted(self):
        assert Clique(members=(3, 1, 2)).members == (1, 2, 3)

    def test_accepts_plain_list(self):
        assert Clique.model_validate([2, 0]).members == (0, 2)

    def test_rejects_duplicates_and_empty(self):
        with pytest.raises(ValueError):
            Clique(members=(1, 1))
        with pytest.raises(ValueError):
            Clique(members=())

    def test_mask(self):
        assert Clique.from_mask(0b1011).members == (0, 1, 3)
        assert Clique(members=(0, 1, 3)).mask == 0b1011


def _naive_maximal_cliques(g):
    n = g.num_vertices
    cliques = []
    for mask in range(1, 1 << n):
        members = list(iter_bits(mask))
        if all(g.has_edge(u, v) for a, u in enumerate(members) for v in members[a + 1 :]):
            cliques.append(mask)
    maximal = [c for c in cliques if not any(other != c and c & ~other == 0 for other in cliques)]
    return sorted(tuple(iter_bits(m)) for m in maximal)


class TestMaximalCliques:
    def test_triangle_tail(self, triangle_tail):
        assert _members(maximal_cliques(triangle_tail)) == [(0, 1, 2), (2, 3)]

    def test_complete_graph(self, k4):
        assert _members(maximal_cliques(k4)) == [(0, 1, 2, 3)]

    def test_chorded_hexagon_is_triangle_free(self, chorded_hexagon):
        cliques = maximal_cliques(chorded_hexagon)
        assert len(cliques) == 7
        assert all(c.size == 2 for c in cliques)

    def test_isolated_vertex_is_singleton(self):
        g = from_edge_list(3, [(0, 1)])
        assert _members(maximal_cliques(g)) == [(0, 1), (2,)]

    def test_empty_graph(self):
        assert maximal_cliques(from_edge_list(0, [])) == []

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_subset_enumeration(self, seed):
        n = 4 + seed % 9
        p = (0.25, 0.5, 0.75)[seed % 3]
        g = generate_instance(InstanceKind.ERDOS_RENYI, n=n, p=p, seed=seed)
        found = maximal_cliques(g)
        assert _members(found) == _naive_maximal_cliques(g)
        covered = {pair for c in found for pair in c.pairs()}
        assert covered == set(g.edges())


class TestGenerators:
    def test_erdos_renyi_extremes(self):
        assert generate_instance(InstanceKind.ERDOS_RENYI, n=5, p=0.0, seed=1).num_edges == 0
        assert generate_instance(InstanceKind.ERDOS_RENYI, n=5, p=1.0, seed=1).num_edges == 10

    @pytest.mark.parametrize("kind", [InstanceKind.ERDOS_RENYI, InstanceKind.TRIANGLE_FREE])
    def test_reproducible(self, kind):
        first = generate_instance(kind, n=15, p=0.4, seed=7)
        second = generate_instance(kind, n=15, p=0.4, seed=7)
        assert first == second

    def test_triangle_free_has_no_triangles(self):
        g = generate_instance("triangle_free", n=20, p=0.6, seed=3)
        assert g.num_edges > 0
        assert all(c.size <= 2 for c in maximal_cliques(g))

    def test_fragile_pair(self):
        pair = generate_instance(InstanceKind.FRAGILE_FOOTNOTE, n=5)
        assert isinstance(pair, FragilePair)
        assert pair.with_edge.has_edge(0, 1)
        assert not pair.without_edge.has_edge(0, 1)
        assert pair.without_edge.num_edges == 2 * (5 - 2)
        assert pair.with_edge.num_edges == 2 * (5 - 2) + 1

    @pytest.mark.parametrize(
        "kind, kwargs",
        [
            (InstanceKind.FRAGILE_FOOTNOTE, {"n": 2}),
            (InstanceKind.ERDOS_RENYI, {"n": 5, "p": 1.5}),
            (InstanceKind.ERDOS_RENYI, {"n": 5}),
            ("petersen", {"n": 10, "p": 0.5}),
        ],
    )
    def test_invalid_parameters(self, kind, kwargs):
        with pytest.raises(InputError):
            generate_instance(kind, **kwargs)


def test_connected_components():
    g = from_edge_list(6, [(0, 1), (1, 2), (4, 5)])
    assert connected_components(g) == [[0, 1, 2], [3], [4, 5]]


class TestIO:
    def test_edge_list_with_comments(self, triangle_tail):
        text = "# fig 1\nn 4\n0 1\n\n0 2\n1 2\n# tail\n2 3\n"
        assert parse_udg(text) == triangle_tail

    def test_dense(self, triangle_tail):
        text = "0,1,1,0\n1,0,1,0\n1,1,0,1\n0,0,1,0\n"
        assert parse_udg(text) == triangle_tail
        assert format_dense(triangle_tail) == text

    def test_json_document(self, triangle_tail):
        text = UDGDocument.from_graph(triangle_tail.with_labels(["a", "b", "c", "d"])).model_dump_json()
        parsed = parse_udg(text)
        assert parsed == triangle_tail
        assert parsed.vertex_labels == ("a", "b", "c", "d")

    def test_format_edge_list(self, triangle_tail):
        assert format_edge_list(triangle_tail) == "n 4\n0 1\n0 2\n1 2\n2 3\n"

    def test_read_from_file(self, tmp_path, chorded_hexagon):
        path = tmp_path / "chorded_hexagon.udg"
        path.write_text(format_edge_list(chorded_hexagon))
        assert read_udg(path) == chorded_hexagon

    @pytest.mark.parametrize(
        "text, line",
        [
            ("n 3\n0 1\n0 x\n", 3),
            ("n 3\n0 1\n0 5\n", 3),
            ("n 3\n\n1 1\n", 3),
            ("n three\n", 1),
            ("0,1\n1,0,0\n", 2),
            ("0,1\n0,0\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(InputError) as info:
            parse_udg(text, source="g.txt")
        assert info.value.line == line
        assert f"g.txt:{line}:" in str(info.value)

    def test_empty_input(self):
        with pytest.raises(InputError, match="no graph data"):
            parse_udg("# nothing\n\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            read_udg(tmp_path / "absent.txt")
