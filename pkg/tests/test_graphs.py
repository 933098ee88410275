import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graceful_aqc.graphs import (
    ExtendedAdjacency,
    Graph,
    GraphFormatError,
    NotEnoughLabelsError,
    Permutation,
    VertexLabelling,
    apply_permutation,
    complete_graph,
    cycle_graph,
    extend,
    generate_graph,
    is_graceful_labelling,
    labelled_adjacency,
    minor_diagonals,
    parse_edge_list_text,
    path_graph,
    star_graph,
)
from conftest import iter_all_graphs

# 5-vertex, 5-edge graph whose vertices carry the labels (1, 4, 5, 3, 0);
# the labelled 6x6 adjacency leaves label 2 for the padding vertex.
FIVE_EDGE_GRAPH = Graph(5, ((0, 1), (1, 2), (2, 3), (2, 4), (1, 4)))
FIVE_EDGE_LABELS = VertexLabelling((1, 4, 5, 3, 0))


class TestGraph:
    def test_normalizes_and_sorts_edges(self):
        g = Graph(3, ((2, 1), (1, 0)))
        assert g.edges == ((0, 1), (1, 2))
        assert g.n_edges == 2

    def test_rejects_self_loop(self):
        with pytest.raises(GraphFormatError):
            Graph(3, ((1, 1),))

    def test_rejects_duplicate_edge(self):
        with pytest.raises(GraphFormatError):
            Graph(3, ((0, 1), (1, 0)))

    def test_rejects_out_of_range_vertex(self):
        with pytest.raises(GraphFormatError):
            Graph(3, ((0, 3),))

    def test_admissibility(self):
        assert path_graph(3).is_admissible
        assert not Graph(4, ((0, 1), (2, 3))).is_admissible


class TestParsing:
    def test_round_trip(self):
        text = "4 3\n0 1\n1 2\n2 3\n"
        assert parse_edge_list_text(text) == path_graph(4)

    def test_rejects_bad_header(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list_text("4\n0 1\n")

    def test_rejects_edge_count_mismatch(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list_text("3 2\n0 1\n")

    def test_rejects_directed_duplicate(self):
        with pytest.raises(GraphFormatError):
            parse_edge_list_text("3 2\n0 1\n1 0\n")

    def test_generators(self):
        assert generate_graph("path:4") == path_graph(4)
        assert generate_graph("star:3") == star_graph(3)
        assert generate_graph("cycle:5") == cycle_graph(5)
        assert generate_graph("complete:3") == complete_graph(3)
        # path:2 and star:1 are both the single-edge graph
        assert generate_graph("path:2").edges == generate_graph("star:1").edges

    def test_generator_errors(self):
        with pytest.raises(GraphFormatError):
            generate_graph("torus:3")
        with pytest.raises(GraphFormatError):
            generate_graph("cycle:2")
        with pytest.raises(GraphFormatError):
            generate_graph("path:x")


class TestExtend:
    def test_five_edge_graph_pads_label_two(self):
        a = labelled_adjacency(FIVE_EDGE_GRAPH, FIVE_EDGE_LABELS)
        assert a.dim == 6
        assert np.all(a.matrix[2] == 0)
        assert np.all(a.matrix[:, 2] == 0)
        assert a.n_edges == 5

    def test_tree_is_unchanged(self):
        g = path_graph(4)
        a = extend(g)
        assert a.dim == 4
        expected = np.zeros((4, 4), dtype=np.uint8)
        for u, v in g.edges:
            expected[u, v] = expected[v, u] = 1
        assert np.array_equal(a.matrix, expected)

    def test_single_edge(self):
        a = extend(star_graph(1))
        assert np.array_equal(a.matrix, [[0, 1], [1, 0]])

    def test_rejects_too_many_vertices(self):
        with pytest.raises(NotEnoughLabelsError):
            extend(Graph(4, ((0, 1), (2, 3))))

    def test_rejects_edgeless(self):
        with pytest.raises(GraphFormatError):
            extend(Graph(1, ()))

    def test_preserves_edge_count(self):
        for g in [complete_graph(3), cycle_graph(4), star_graph(4)]:
            assert extend(g).n_edges == g.n_edges


class TestMinorDiagonals:
    def test_five_edge_graph_all_ones(self):
        a = labelled_adjacency(FIVE_EDGE_GRAPH, FIVE_EDGE_LABELS)
        assert minor_diagonals(a).weights == (1, 1, 1, 1, 1)

    def test_all_zero_matrix(self):
        a = ExtendedAdjacency(np.zeros((4, 4), dtype=np.uint8))
        assert minor_diagonals(a).weights == (0, 0, 0)

    def test_identity_path_repeats_label_one(self):
        # path 0-1-2 labelled (0, 1, 2): both edges get label 1
        assert minor_diagonals(extend(path_graph(3))).weights == (2, 0)

    def test_weights_sum_to_edge_count(self):
        for g in [path_graph(5), complete_graph(4), cycle_graph(5)]:
            a = extend(g)
            assert sum(minor_diagonals(a).weights) == g.n_edges

    def test_weight_bounded_by_diagonal_length(self):
        for g in iter_all_graphs(3):
            a = extend(g)
            for i, w in enumerate(minor_diagonals(a).weights, start=1):
                assert w <= a.dim - i


class TestIsGraceful:
    def test_five_edge_graph_labelling_is_graceful(self):
        assert is_graceful_labelling(labelled_adjacency(FIVE_EDGE_GRAPH, FIVE_EDGE_LABELS))

    def test_identity_path_is_not(self):
        assert not is_graceful_labelling(extend(path_graph(3)))

    def test_single_edge_is(self):
        assert is_graceful_labelling(extend(star_graph(1)))

    def test_agrees_with_direct_edge_label_check(self):
        # diagonal test vs the label-difference multiset, every labelling of
        # every graph with up to 4 edges
        for g in iter_all_graphs(4):
            a = extend(g)
            e = g.n_edges
            for images in itertools.permutations(range(a.dim)):
                b = apply_permutation(a, Permutation(images))
                diffs = Counter(abs(i - j) for i, j in b.edge_pairs())
                direct = diffs == Counter(range(1, e + 1))
                assert is_graceful_labelling(b) == direct


class TestApplyPermutation:
    def test_identity(self):
        a = extend(cycle_graph(4))
        b = apply_permutation(a, Permutation.identity(a.dim))
        assert np.array_equal(a.matrix, b.matrix)

    def test_path_becomes_graceful(self):
        a = extend(path_graph(3))
        b = apply_permutation(a, Permutation((0, 2, 1)))
        assert b.edge_pairs() == [(0, 2), (1, 2)]
        assert is_graceful_labelling(b)

    def test_inverse_round_trip(self):
        a = extend(complete_graph(3))
        p = Permutation((2, 0, 3, 1))
        b = apply_permutation(apply_permutation(a, p), p.inverse())
        assert np.array_equal(a.matrix, b.matrix)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_permutation(extend(path_graph(3)), Permutation((1, 0)))

    @given(st.data())
    def test_preserves_structure(self, data):
        g = data.draw(st.sampled_from([path_graph(4), cycle_graph(5), star_graph(3)]))
        a = extend(g)
        images = data.draw(st.permutations(range(a.dim)))
        b = apply_permutation(a, Permutation(tuple(images)))
        assert np.array_equal(b.matrix, b.matrix.T)
        assert np.all(np.diagonal(b.matrix) == 0)
        assert b.n_edges == a.n_edges
        assert sum(minor_diagonals(b).weights) == g.n_edges


class TestPermutation:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))
        with pytest.raises(ValueError):
            Permutation((0, 2))

    def test_inverse(self):
        p = Permutation((1, 2, 0))
        assert p.inverse().images == (2, 0, 1)


class TestVertexLabelling:
    def test_rejects_repeats(self):
        with pytest.raises(ValueError):
            VertexLabelling((0, 1, 1))

    def test_labelled_adjacency_validates_range(self):
        with pytest.raises(ValueError):
            labelled_adjacency(path_graph(3), VertexLabelling((0, 1, 5)))
        with pytest.raises(ValueError):
            labelled_adjacency(path_graph(3), VertexLabelling((0, 1)))


class TestExtendedAdjacency:
    def test_rejects_asymmetric(self):
        m = np.zeros((3, 3), dtype=np.uint8)
        m[0, 1] = 1
        with pytest.raises(ValueError):
            ExtendedAdjacency(m)

    def test_rejects_nonzero_diagonal(self):
        with pytest.raises(ValueError):
            ExtendedAdjacency(np.eye(3, dtype=np.uint8))

    def test_rejects_non_binary(self):
        m = np.zeros((2, 2), dtype=np.uint8)
        m[0, 1] = m[1, 0] = 2
        with pytest.raises(ValueError):
            ExtendedAdjacency(m)

    def test_matrix_is_read_only(self):
        a = extend(path_graph(3))
        with pytest.raises(ValueError):
            a.matrix[0, 1] = 0
