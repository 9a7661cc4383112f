import json
import math
from collections import Counter

import numpy as np
import pytest

from scargraph.graphs import girth, is_regular
from scargraph.named import cycle_graph
from scargraph.pairing import (guaranteed_girth, identify_onto_anchors,
                               pair_trees, path_count_cumulative,
                               path_count_exact, path_count_total)
from scargraph.trees import build_dary_tree


class TestPathCountFormulas:
    @pytest.mark.parametrize("d,r,s,expected", [
        (2, 1, 1, 2),
        (2, 1, 2, 4),
        (3, 2, 2, 8),
    ])
    def test_exact_examples(self, d, r, s, expected):
        assert path_count_exact(d, r, s) == expected

    def test_exact_errors(self):
        with pytest.raises(ValueError):
            path_count_exact(2, 0, 1)
        with pytest.raises(ValueError):
            path_count_exact(2, 3, 2)

    def test_total_examples(self):
        assert path_count_total(2, 1) == 2
        assert path_count_total(2, 2) == 6
        assert path_count_total(3, 2) == 20
        assert path_count_total(3, 2) == sum(
            path_count_exact(3, r, 2) for r in (1, 2))

    def test_total_is_row_sum_of_exact(self):
        for d in (2, 3, 4):
            for s in range(1, 7):
                assert path_count_total(d, s) == sum(
                    path_count_exact(d, r, s) for r in range(1, s + 1))

    def test_cumulative_telescopes(self):
        assert path_count_cumulative(2, 1) == 3
        assert path_count_cumulative(2, 2) == 9
        for d in (2, 3, 4):
            for k in range(0, 6):
                assert path_count_cumulative(d, k) == \
                    1 + sum(path_count_total(d, s) for s in range(1, k + 1))


def alternating_path_counts(pairing, source_slot, max_len):
    """DFS enumeration of simple paths from one identified vertex to any
    identified vertex, counted by (length, number of identified vertices
    hit after the start).  Independent oracle for the closed-form counts."""
    g = pairing.glued
    adj = g.adjacency_lists()
    deg = g.degrees()
    identified = set(int(v) for v in np.nonzero(deg == 2)[0])
    start = sorted(identified)[source_slot]
    counts = Counter()

    def dfs(v, length, segs, visited):
        if length > 0 and v in identified:
            counts[(length, segs + 1)] += 1
        if length == max_len:
            return
        nsegs = segs + 1 if (v in identified and length > 0) else segs
        for w in adj[v]:
            if w not in visited:
                visited.add(w)
                dfs(w, length + 1, nsegs, visited)
                visited.discard(w)

    dfs(start, 0, 0, {start})
    return counts


class TestBruteForcePathOracle:
    @pytest.mark.parametrize("d,D", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
    def test_counts_match_formulas(self, d, D):
        p = pair_trees(d, D, seed=1)
        assert p.glued.n <= 500
        gv = p.achieved_girth
        # the closed form needs cycle-free structure to depth 2s and every
        # segment turning below the root (s < D; the counting claim is only
        # ever applied with s <= k < D)
        smax = max(s for s in range(1, D) if 2 * s < gv)
        counts = alternating_path_counts(p, 0, 2 * smax)
        for s in range(1, smax + 1):
            total = 0
            for r in range(1, s + 1):
                expected = path_count_exact(d, r, s)
                assert counts.get((2 * s, r), 0) == expected
                total += expected
            assert total == path_count_total(d, s)
        # odd lengths never connect identified vertices (bipartite halves)
        assert all(length % 2 == 0 for (length, _) in counts)


class TestPairTrees:
    @pytest.mark.parametrize("d,D", [(2, 1), (2, 3), (2, 4), (3, 2), (3, 4), (4, 2)])
    def test_girth_bound(self, d, D):
        n = (d + 1) * d ** (D - 1)
        p = pair_trees(d, D, seed=0)
        stated = math.floor(2 * math.log(n - 1) / math.log(2 * d - 1)) + 2
        assert p.achieved_girth >= stated
        assert p.achieved_girth >= guaranteed_girth(d, n)
        assert p.achieved_girth % 2 == 0
        assert girth(p.glued) == p.achieved_girth

    def test_degree_structure(self):
        p = pair_trees(3, 3, seed=2)
        deg = p.glued.degrees()
        n_identified = int((deg == 2).sum())
        assert n_identified == 4 * 3 ** 2
        assert set(deg.tolist()) == {1 + 3, 2, 3 + 1}  # root d+1, glued 2, internal d+1

    def test_pi_is_a_bijection(self):
        p = pair_trees(2, 4, seed=3)
        assert sorted(p.pi.tolist()) == list(range(len(p.pi)))

    def test_determinism(self):
        a = pair_trees(3, 4, seed=9)
        b = pair_trees(3, 4, seed=9)
        assert np.array_equal(a.pi, b.pi)
        assert a.achieved_girth == b.achieved_girth
        assert a.swap_count == b.swap_count
        c = pair_trees(3, 4, seed=10)
        assert not np.array_equal(a.pi, c.pi)

    def test_depth_one_any_bijection_works(self):
        p = pair_trees(2, 1, seed=0)
        assert p.glued.n == 5 and p.achieved_girth == 4 and p.swap_count == 0

    def test_json_fields(self, tmp_path):
        p = pair_trees(2, 3, seed=4)
        path = tmp_path / "pairing.json"
        p.save(path)
        data = json.loads(path.read_text())
        assert set(data) == {"d", "D", "pi", "girth", "swaps", "seed"}
        assert data["girth"] == p.achieved_girth

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            pair_trees(1, 3)
        with pytest.raises(ValueError):
            pair_trees(2, 0)


class TestIdentifyOntoAnchors:
    def test_star_on_far_cycle_anchors(self):
        g = cycle_graph(20)
        tree = build_dary_tree(2, 1)
        out = identify_onto_anchors(g, tree, [0, 7, 14], seed=0)
        assert out.n == 21
        # cycles through the new center: 2 + pairwise anchor distance >= 8
        assert girth(out) == 8

    def test_depth_zero_rejected(self):
        with pytest.raises(ValueError, match="depth-0"):
            identify_onto_anchors(cycle_graph(6), build_dary_tree(2, 0), [0])

    def test_anchor_count_mismatch(self):
        with pytest.raises(ValueError, match="anchors"):
            identify_onto_anchors(cycle_graph(20), build_dary_tree(2, 1), [0, 7])

    def test_duplicate_anchors(self):
        with pytest.raises(ValueError, match="distinct"):
            identify_onto_anchors(cycle_graph(20), build_dary_tree(2, 1),
                                  [0, 7, 7])

    def test_far_anchors_leave_girth_at_input_level(self):
        # anchors farther than 2*depth + girth keep all new cycles longer
        g = cycle_graph(30)
        tree = build_dary_tree(2, 1)
        out = identify_onto_anchors(g, tree, [0, 10, 20], seed=1)
        assert girth(out) == min(30, 2 + 10)

    def test_deeper_tree_improves_over_worst_case(self):
        g = cycle_graph(24)
        tree = build_dary_tree(2, 2)
        anchors = [0, 2, 6, 10, 14, 18]
        out = identify_onto_anchors(g, tree, anchors, seed=0)
        assert is_regular(out) is None  # anchors gain degree, interior d+1
        assert girth(out) >= 6
