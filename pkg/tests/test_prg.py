"""Tests for hypergraph sampling, predicate evaluation, and the generator."""

import math
import random
from collections import Counter

import pytest

from rexkit._seeds import derive_seed, random_bits
from rexkit.prg import (
    Hypergraph, HypergraphFormatError, Predicate, default_predicate,
    eval_predicate, parse_hypergraph, parse_predicate, prg_output, restrict,
    sample_hypergraph, serialize_hypergraph, serialize_predicate,
)


class TestSampling:
    def test_edges_are_distinct_tuples(self):
        rng = random.Random(1)
        graph = sample_hypergraph(10, 500, 4, rng)
        for edge in graph.edges:
            assert len(set(edge)) == 4
            assert all(1 <= v <= 10 for v in edge)

    def test_k_equals_n_gives_permutations(self):
        rng = random.Random(2)
        graph = sample_hypergraph(4, 50, 4, rng)
        for edge in graph.edges:
            assert sorted(edge) == [1, 2, 3, 4]

    def test_k_larger_than_n_rejected(self):
        with pytest.raises(ValueError):
            sample_hypergraph(3, 1, 4, random.Random(0))

    def test_fixed_seed_reproduces(self):
        g1 = sample_hypergraph(12, 100, 3, random.Random(99))
        g2 = sample_hypergraph(12, 100, 3, random.Random(99))
        assert g1 == g2

    def test_k1_frequencies_within_3_sigma(self):
        rng = random.Random(derive_seed(99, "prg-k1"))
        graph = sample_hypergraph(8, 100000, 1, rng)
        counts = Counter(edge[0] for edge in graph.edges)
        sigma = math.sqrt(100000 * (1 / 8) * (7 / 8))
        for v in range(1, 9):
            assert abs(counts[v] - 12500) <= 3 * sigma

    def test_position_pairs_chi_square(self):
        # Each ordered pair of edge positions should be uniform over the 56
        # ordered distinct index pairs; 93.17 is the df=55 upper 0.1% point.
        rng = random.Random(derive_seed(99, "chi2"))
        graph = sample_hypergraph(8, 28000, 3, rng)
        expected = 28000 / 56
        for a, b in ((0, 1), (0, 2), (1, 2)):
            counts = Counter((e[a], e[b]) for e in graph.edges)
            chi2 = sum((counts[(i, j)] - expected) ** 2 / expected
                       for i in range(1, 9) for j in range(1, 9) if i != j)
            assert chi2 < 93.17


class TestRestrict:
    def test_examples(self):
        assert restrict("1010", (1, 3)) == "11"
        assert restrict("1010", (2, 4)) == "00"

    def test_permutation_equivariance(self):
        x = "110100"
        base = restrict(x, (1, 3, 5))
        assert restrict(x, (3, 1, 5)) == base[1] + base[0] + base[2]
        assert restrict(x, (5, 3, 1)) == base[::-1]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            restrict("101", (4,))


class TestPredicate:
    def test_table_validation(self):
        with pytest.raises(ValueError):
            Predicate(2, (0, 1, 1))
        with pytest.raises(ValueError):
            Predicate(1, (0, 2))

    def test_all_ones(self):
        p = Predicate(2, (1, 1, 1, 1))
        assert all(eval_predicate(p, u) == 1 for u in ("00", "01", "10", "11"))

    def test_xor_lookup(self):
        p = default_predicate(2)
        assert eval_predicate(p, "10") == 1
        assert eval_predicate(p, "11") == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            eval_predicate(default_predicate(3), "10")

    def test_default_predicate_values(self):
        p = default_predicate(3)
        assert eval_predicate(p, "000") == 0
        assert eval_predicate(p, "111") == 0  # 1 xor (1 and 1)
        assert eval_predicate(p, "100") == 1  # 1 xor 0
        assert eval_predicate(p, "110") == 1
        assert eval_predicate(p, "011") == 1
        assert default_predicate(1).table == (0, 1)
        with pytest.raises(ValueError):
            default_predicate(0)

    def test_default_predicate_is_balanced(self):
        for k in (1, 2, 3, 4, 5):
            table = default_predicate(k).table
            assert sum(table) == len(table) // 2


class TestGenerator:
    def test_empty_stretch(self):
        graph = Hypergraph(4, 2, ())
        assert prg_output(default_predicate(2), graph, "1010") == ""

    def test_single_edge_xor(self):
        graph = Hypergraph(2, 2, ((1, 2),))
        assert prg_output(default_predicate(2), graph, "11") == "0"

    def test_matches_per_bit_recomputation(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.choice((4, 6, 8))
            k = rng.randint(1, 3)
            graph = sample_hypergraph(n, rng.randint(0, 10), k, rng)
            predicate = default_predicate(k)
            x = random_bits(rng, n)
            out = prg_output(predicate, graph, x)
            assert len(out) == graph.m
            for i, edge in enumerate(graph.edges):
                assert int(out[i]) == eval_predicate(predicate, restrict(x, edge))

    def test_arity_mismatches(self):
        graph = Hypergraph(4, 2, ((1, 2),))
        with pytest.raises(ValueError):
            prg_output(default_predicate(3), graph, "1010")
        with pytest.raises(ValueError):
            prg_output(default_predicate(2), graph, "10")


class TestFormats:
    def test_hypergraph_roundtrip(self):
        graph = sample_hypergraph(8, 5, 3, random.Random(3))
        text = serialize_hypergraph(graph)
        assert text.startswith("hg 8 5 3\n")
        assert parse_hypergraph(text) == graph

    def test_predicate_roundtrip(self):
        p = default_predicate(3)
        text = serialize_predicate(p)
        assert text == "pred 3 00011110\n"
        assert parse_predicate(text) == p

    @pytest.mark.parametrize("text,fragment", [
        ("", "line 1"),
        ("hg 4 1\n1 2\n", "line 1"),
        ("hg 4 2 2\n1 2\n", "promises 2 edges"),
        ("hg 4 1 2\n1 x\n", "line 2"),
        ("hg 4 1 2\n1 1\n", "repeats"),
    ])
    def test_hypergraph_errors(self, text, fragment):
        with pytest.raises(HypergraphFormatError, match=fragment):
            parse_hypergraph(text)

    def test_predicate_errors(self):
        with pytest.raises(HypergraphFormatError):
            parse_predicate("pred 2 012\n")
        with pytest.raises(HypergraphFormatError):
            parse_predicate("tbl 2 0110\n")
