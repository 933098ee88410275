import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graceful_aqc.encoding import (
    DEFAULT_ENUMERATION_CAP_L,
    EncodingParams,
    bitstring_to_index,
    cost_c1,
    cost_c2,
    cost_c3,
    cost_vector,
    decode_bitstring,
    degeneracy_report_json,
    delta_product,
    encode_permutation,
    enumerate_degeneracy,
    index_to_bitstring,
    total_cost,
)
from graceful_aqc.errors import CapExceededError
from graceful_aqc.graphs import (
    Permutation,
    apply_permutation,
    complete_graph,
    cycle_graph,
    extend,
    is_graceful_labelling,
    minor_diagonals,
    path_graph,
    star_graph,
)
from conftest import iter_all_graphs

PATH3 = extend(path_graph(3))
PATH3_PARAMS = EncodingParams.for_adjacency(PATH3)


def blocks_to_string(values, params):
    """Pack raw block values (possibly invalid) into a bit string."""
    return "".join(format(v, f"0{params.u_bits}b") for v in values)


class TestParams:
    @pytest.mark.parametrize(
        "e,u,m,l",
        [(1, 1, 1, 2), (2, 2, 3, 6), (3, 2, 3, 8), (4, 3, 7, 15), (5, 3, 7, 18), (6, 3, 7, 21)],
    )
    def test_derived_quantities(self, e, u, m, l):
        p = EncodingParams.for_edge_count(e)
        assert (p.u_bits, p.m_prime, p.l_total) == (u, m, l)

    def test_m_prime_bounds(self):
        for e in range(1, 40):
            p = EncodingParams.for_edge_count(e)
            assert p.n_prime <= p.m_prime < 2 * (p.n_prime + 1)

    def test_rejects_inconsistent_fields(self):
        with pytest.raises(ValueError):
            EncodingParams(n_prime=2, u_bits=3, m_prime=7, l_total=9)


class TestEncodeDecode:
    def test_known_encodings(self):
        assert encode_permutation(Permutation((0, 2, 1)), PATH3_PARAMS) == "001001"
        assert encode_permutation(Permutation((1, 2, 0)), PATH3_PARAMS) == "011000"

    def test_identity_is_concatenation(self):
        p = EncodingParams.for_edge_count(4)
        expected = "".join(format(v, "03b") for v in range(5))
        assert encode_permutation(Permutation.identity(5), p) == expected

    def test_known_decodings(self):
        assert decode_bitstring("100001", PATH3_PARAMS) == (2, 0, 1)
        assert decode_bitstring("000000", PATH3_PARAMS) == (0, 0, 0)

    def test_decode_accepts_out_of_range_values(self):
        # a wider-than-minimal block size is legal as long as it covers 0..N'
        p = EncodingParams(n_prime=1, u_bits=2, m_prime=3, l_total=4)
        assert decode_bitstring("1111", p) == (3, 3)

    def test_decode_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            decode_bitstring("0101", PATH3_PARAMS)
        with pytest.raises(ValueError):
            decode_bitstring("0101x1", PATH3_PARAMS)

    def test_round_trips_exhaustive(self):
        for e in (1, 2, 3):
            params = EncodingParams.for_edge_count(e)
            for images in itertools.permutations(range(e + 1)):
                s = encode_permutation(Permutation(images), params)
                assert decode_bitstring(s, params) == images

    def test_index_conversions(self):
        assert bitstring_to_index("100001") == 33
        assert index_to_bitstring(33, 6) == "100001"


class TestDeltaProduct:
    def test_matches_equality_exhaustively(self):
        for u in range(1, 6):
            for x in range(1 << u):
                for y in range(1 << u):
                    assert delta_product(x, y, u) == int(x == y)


class TestCosts:
    def test_c1_examples(self):
        assert cost_c1(encode_permutation(Permutation((0, 2, 1)), PATH3_PARAMS), PATH3_PARAMS) == 0
        assert cost_c1(blocks_to_string((3, 0, 1), PATH3_PARAMS), PATH3_PARAMS) == 1
        assert cost_c1(blocks_to_string((3, 3, 3), PATH3_PARAMS), PATH3_PARAMS) == 3

    def test_c1_is_zero_when_no_spare_values(self):
        # e = 3 fills the 2-bit range exactly, so no block can be out of range
        params = EncodingParams.for_edge_count(3)
        for idx in range(0, 1 << params.l_total, 17):
            assert cost_c1(index_to_bitstring(idx, params.l_total), params) == 0

    def test_c2_examples(self):
        assert cost_c2(encode_permutation(Permutation((1, 2, 0)), PATH3_PARAMS), PATH3_PARAMS) == 0
        assert cost_c2(blocks_to_string((1, 1, 0), PATH3_PARAMS), PATH3_PARAMS) == 1
        assert cost_c2(blocks_to_string((2, 2, 2), PATH3_PARAMS), PATH3_PARAMS) == 3

    def test_c3_ground_string(self):
        assert cost_c3("001001", PATH3, PATH3_PARAMS) == 0

    def test_c3_identity_path(self):
        # both edges get label 1: (1-2)^2 + (1-0)^2 = 2
        s = encode_permutation(Permutation.identity(3), PATH3_PARAMS)
        assert s == "000110"
        assert cost_c3(s, PATH3, PATH3_PARAMS) == 2

    def test_c3_matches_minor_diagonal_profile(self):
        # on permutation strings, c3 equals the squared shortfalls of the
        # relabelled graph's diagonal counts
        for g in [path_graph(4), star_graph(3), cycle_graph(4), complete_graph(3)]:
            a = extend(g)
            params = EncodingParams.for_adjacency(a)
            for images in itertools.permutations(range(a.dim)):
                p = Permutation(images)
                s = encode_permutation(p, params)
                weights = minor_diagonals(apply_permutation(a, p)).weights
                assert cost_c3(s, a, params) == sum((1 - w) ** 2 for w in weights)

    def test_permutation_validity_iff_c1_c2_vanish(self):
        params = EncodingParams.for_edge_count(2)
        for idx in range(1 << params.l_total):
            s = index_to_bitstring(idx, params.l_total)
            values = decode_bitstring(s, params)
            is_perm = sorted(values) == list(range(params.n_blocks))
            vanishes = cost_c1(s, params) == 0 and cost_c2(s, params) == 0
            assert is_perm == vanishes


class TestTotalCost:
    def test_ground_strings(self):
        for s in ("001001", "011000", "010010", "100001"):
            assert total_cost(s, PATH3, PATH3_PARAMS).total == 0

    def test_exactly_four_zeros_among_64(self):
        zeros = [
            idx
            for idx in range(64)
            if total_cost(index_to_bitstring(idx, 6), PATH3, PATH3_PARAMS).total == 0
        ]
        assert len(zeros) == 4

    def test_single_edge_two_zeros_among_4(self):
        a = extend(star_graph(1))
        params = EncodingParams.for_adjacency(a)
        totals = [total_cost(index_to_bitstring(i, 2), a, params).total for i in range(4)]
        assert totals.count(0) == 2

    def test_breakdown_sums(self):
        s = blocks_to_string((3, 1, 1), PATH3_PARAMS)
        b = total_cost(s, PATH3, PATH3_PARAMS)
        assert b.total == b.c1 + b.c2 + b.c3

    def test_zero_iff_relabelling_is_graceful(self):
        # bridge between the cost view and the matrix-diagonal view, all
        # permutations of all graphs with up to 3 edges
        for g in iter_all_graphs(3):
            a = extend(g)
            params = EncodingParams.for_adjacency(a)
            for images in itertools.permutations(range(a.dim)):
                p = Permutation(images)
                s = encode_permutation(p, params)
                zero = total_cost(s, a, params).total == 0
                assert zero == is_graceful_labelling(apply_permutation(a, p))


class TestCostVector:
    def test_matches_scalar_exhaustively_small(self):
        for g in [star_graph(1), path_graph(3), path_graph(4), complete_graph(3)]:
            a = extend(g)
            params = EncodingParams.for_adjacency(a)
            size = 1 << params.l_total
            vector = cost_vector(a, params, 0, size)
            for idx in range(size):
                s = index_to_bitstring(idx, params.l_total)
                assert vector[idx] == total_cost(s, a, params).total

    def test_matches_scalar_sampled_l15(self):
        a = extend(path_graph(5))
        params = EncodingParams.for_adjacency(a)
        rng = np.random.default_rng(7)
        indices = rng.integers(0, 1 << params.l_total, size=200)
        for idx in indices:
            idx = int(idx)
            chunk = cost_vector(a, params, idx, 1)
            s = index_to_bitstring(idx, params.l_total)
            assert chunk[0] == total_cost(s, a, params).total

    @given(st.integers(min_value=0, max_value=(1 << 15) - 1))
    @settings(max_examples=60, deadline=None)
    def test_scalar_vector_agreement_property(self, idx):
        a = extend(cycle_graph(4))
        params = EncodingParams.for_adjacency(a)
        s = index_to_bitstring(idx, params.l_total)
        assert cost_vector(a, params, idx, 1)[0] == total_cost(s, a, params).total


class TestEnumeration:
    def test_star4(self):
        report = enumerate_degeneracy(extend(star_graph(4)))
        assert report.min_cost == 0
        assert report.d_count == 48
        assert report.graceful

    def test_cycle5_not_graceful(self):
        report = enumerate_degeneracy(extend(cycle_graph(5)))
        assert report.min_cost > 0
        assert report.d_count == 1220
        assert not report.graceful

    def test_minimizers_are_lexicographic_and_complete(self):
        report = enumerate_degeneracy(PATH3)
        assert list(report.minimizers) == sorted(report.minimizers)
        assert set(report.minimizers) == {"001001", "011000", "010010", "100001"}
        assert not report.minimizers_truncated

    def test_minimizer_truncation_keeps_exact_count(self):
        report = enumerate_degeneracy(extend(cycle_graph(5)), max_minimizers=100)
        assert report.d_count == 1220
        assert len(report.minimizers) == 100
        assert report.minimizers_truncated
        full = enumerate_degeneracy(extend(cycle_graph(5)))
        assert report.minimizers == full.minimizers[:100]

    def test_cap_refusal(self):
        g = star_graph(12)  # e=12, U=4, L=52
        with pytest.raises(CapExceededError):
            enumerate_degeneracy(extend(g), cap_l=DEFAULT_ENUMERATION_CAP_L)

    def test_report_json_fields(self):
        import json

        g = path_graph(3)
        report = enumerate_degeneracy(extend(g))
        doc = json.loads(degeneracy_report_json(report, g))
        assert doc["graph"] == {"n_vertices": 3, "edges": [[0, 1], [1, 2]]}
        assert doc["n_prime"] == 2
        assert doc["u_bits"] == 2
        assert doc["l_total"] == 6
        assert doc["min_cost"] == 0
        assert doc["d_count"] == 4
        assert doc["graceful"] is True
        assert doc["minimizers"] == ["001001", "010010", "011000", "100001"]
