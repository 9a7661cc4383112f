import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from scargraph.graphs import (ConstructionError, bfs_distances, girth,
                              is_regular, vertex_expansion)
from scargraph.named import cycle_graph, petersen_graph, star_graph
from scargraph.scars import (ScarSite, carve_site, expected_vertex_count,
                             glue, greedy_packing, localized_eigenvector,
                             multi_glue, odd_level_witness)
from scargraph.trees import interior_size, radial_spectrum


class TestCarveSite:
    def test_mcgee_r1(self, mcgee):
        site = carve_site(mcgee, 0, 1)
        assert len(site.leaves) == 3 and len(site.partners) == 3
        assert len(np.unique(site.partners)) == 3
        dist = bfs_distances(mcgee, 0).dist
        assert all(dist[v] == 2 for v in site.partners)
        for u, v in site.removed_matching:
            assert v in mcgee.neighbors(int(u))

    def test_r_zero_rejected(self, mcgee):
        with pytest.raises(ValueError):
            carve_site(mcgee, 0, 0)

    def test_lps_leaf_count(self, lps_h):
        site = carve_site(lps_h, 0, 1)
        assert len(site.leaves) == 6 and len(site.partners) == 6

    def test_ball_not_tree_rejected(self):
        with pytest.raises(ValueError, match="not a tree"):
            carve_site(petersen_graph(), 0, 1)  # girth 5 < 2(r+1)+2


class TestGlue:
    def test_mcgee_single_site(self, mcgee_sg):
        assert mcgee_sg.graph.n == 26
        assert is_regular(mcgee_sg.graph) == 3
        assert mcgee_sg.girth >= 4

    def test_expected_vertex_counts(self, mcgee_sg, lps_sg, lps_sg_r2):
        assert mcgee_sg.graph.n == expected_vertex_count(24, 2, 1, 1)
        assert lps_sg.graph.n == expected_vertex_count(12180, 5, 1, 1)
        assert lps_sg_r2.graph.n == expected_vertex_count(12180, 5, 2, 1)

    def test_interior_size_closed_form(self):
        # interior of a depth-r tree: (d^r + d^(r-1) - 2)/(d - 1)
        for d in (2, 3, 4, 5):
            for r in range(1, 7):
                assert interior_size(d, r) == \
                    (d ** r + d ** (r - 1) - 2) // (d - 1)

    def test_sites_too_close_rejected(self, mcgee):
        s0 = carve_site(mcgee, 0, 1)
        s1 = carve_site(mcgee, 2, 1)
        with pytest.raises(ValueError, match="distance"):
            glue(mcgee, [s0, s1], seed=0)

    def test_glued_graph_girth_recorded(self, lps_sg):
        assert lps_sg.girth == girth(lps_sg.graph)


class TestLocalizedEigenvector:
    def test_r1_explicit_form(self, mcgee_sg):
        nu = localized_eigenvector(mcgee_sg, 0, 0.0)
        site = mcgee_sg.sites[0]
        u, u2 = int(site.root), int(site.t2_levels[0][0])
        expected = np.zeros(26)
        expected[u] = 1 / math.sqrt(2)
        expected[u2] = -1 / math.sqrt(2)
        assert np.allclose(nu, expected)
        assert np.abs(mcgee_sg.graph.csr() @ nu).max() == 0.0

    def test_r2_pair(self, lps_sg_r2):
        spec = radial_spectrum(5, 1)
        a = lps_sg_r2.graph.csr()
        site = lps_sg_r2.sites[0]
        allowed = set(int(v) for v in np.concatenate([site.v1, site.v2]))
        for lam in spec.eigenvalues:
            nu = localized_eigenvector(lps_sg_r2, 0, float(lam))
            assert abs(np.linalg.norm(nu) - 1.0) <= 1e-12
            assert np.abs(a @ nu - lam * nu).max() <= 1e-10
            support = np.nonzero(np.abs(nu) > 1e-12)[0]
            assert set(int(v) for v in support) <= allowed
            assert abs(float(lam)) < 2 * math.sqrt(5)

    def test_wrong_eigenvalue_rejected(self, mcgee_sg):
        with pytest.raises(ValueError, match="radial"):
            localized_eigenvector(mcgee_sg, 0, 1.0)

    def test_opposite_eigenvalues_share_support(self, lps_sg_r2):
        spec = radial_spectrum(5, 1)
        nu_minus = localized_eigenvector(lps_sg_r2, 0, float(spec.eigenvalues[0]))
        nu_plus = localized_eigenvector(lps_sg_r2, 0, float(spec.eigenvalues[1]))
        s_minus = set(np.nonzero(np.abs(nu_minus) > 1e-12)[0].tolist())
        s_plus = set(np.nonzero(np.abs(nu_plus) > 1e-12)[0].tolist())
        assert s_minus == s_plus and len(s_plus) == 14


class TestMultiGlue:
    def test_zero_sites_identity(self, mcgee):
        sg = multi_glue(mcgee, 0, 1, seed=1)
        assert sg.graph.n == mcgee.n and not sg.sites

    def test_mcgee_two_sites_impossible(self, mcgee):
        with pytest.raises(ConstructionError, match="packing"):
            multi_glue(mcgee, 2, 1, seed=1)

    def test_two_sites_orthogonal_disjoint(self, cubic6_sg2):
        nus = [localized_eigenvector(cubic6_sg2, i, 0.0) for i in range(2)]
        supports = [set(np.nonzero(np.abs(nu) > 1e-12)[0].tolist())
                    for nu in nus]
        assert not (supports[0] & supports[1])
        assert float(nus[0] @ nus[1]) == 0.0

    def test_regularity(self, cubic6_sg2):
        assert is_regular(cubic6_sg2.graph) == 3


class TestGreedyPacking:
    def test_min_dist_one_returns_everything(self, petersen):
        assert len(greedy_packing(petersen, 1)) == 10

    def test_petersen_independent_set(self, petersen):
        picks = greedy_packing(petersen, 2)
        # pairwise non-adjacent
        for a, b in itertools.combinations(picks.tolist(), 2):
            assert b not in petersen.neighbors(a)
        # lemma bound with d = 2: 10 * 1 / (3 * 4) < 1, so at least 1
        assert len(picks) >= 1
        # brute-force maximum independent set of Petersen is 4
        best = 0
        for mask in range(1 << 10):
            subset = [i for i in range(10) if mask >> i & 1]
            if all(b not in petersen.neighbors(a)
                   for a, b in itertools.combinations(subset, 2)):
                best = max(best, len(subset))
        assert best == 4
        assert len(picks) <= best

    def test_pairwise_distance_on_cycle(self):
        g = cycle_graph(12)
        picks = greedy_packing(g, 3)
        dist_maps = {int(v): bfs_distances(g, int(v)).dist for v in picks}
        for a, b in itertools.combinations(picks.tolist(), 2):
            assert dist_maps[a][b] >= 3

    def test_lemma_bound_on_regular_graphs(self, mcgee, petersen, cubic6):
        for g in (mcgee, petersen, cubic6):
            d = is_regular(g) - 1
            for k in (1, 2, 3):
                picks = greedy_packing(g, k)
                bound = g.n * (d - 1) / ((d + 1) * d ** k)
                assert len(picks) >= bound

    def test_irregular_rejected(self):
        with pytest.raises(ValueError):
            greedy_packing(star_graph(3), 2)


class TestOddLevelWitness:
    def test_r1_is_the_two_roots(self, mcgee_sg):
        site = mcgee_sg.sites[0]
        w = odd_level_witness(site)
        assert set(w.tolist()) == {int(site.root), int(site.t2_levels[0][0])}

    def test_r2_size_and_expansion(self, lps_sg_r2):
        site = lps_sg_r2.sites[0]
        w = odd_level_witness(site)
        d = lps_sg_r2.d
        assert len(w) == 2 * (d + 1)  # level 1 of both trees
        ratio = vertex_expansion(lps_sg_r2.graph, w)
        assert ratio < Fraction(d + 1, 2)

    def test_r3_level_selection(self):
        # synthetic site: levels 0 and 2 of both trees are selected
        d = 2
        lv = [np.array([0]), np.array([1, 2, 3]), np.array([4, 5, 6, 7, 8, 9])]
        lv2 = [a + 10 for a in lv]
        site = ScarSite(0, 3, d, lv, np.zeros(0, np.int64),
                        np.zeros(0, np.int64), np.zeros((0, 2), np.int64),
                        lv2, None)
        w = odd_level_witness(site)
        assert len(w) == 2 * (1 + (d + 1) * d)

    def test_unglued_site_rejected(self, mcgee):
        site = carve_site(mcgee, 0, 1)
        with pytest.raises(ValueError):
            odd_level_witness(site)
