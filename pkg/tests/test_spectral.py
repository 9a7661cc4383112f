import math

import numpy as np
import pytest

from scargraph.named import (complete_graph, cycle_graph, petersen_graph,
                             random_regular_graph)
from scargraph.scars import interface_quadratic_bound
from scargraph.spectral import (_extreme_dense, _extreme_iterative,
                                extreme_eigenvalues, kahale_check,
                                kahale_instance, kahale_sequence, residual,
                                second_eigenvector, spectral_threshold,
                                tree_quadratic_bound_check)
from scargraph.trees import build_dary_tree


class TestExtremeEigenvalues:
    def test_cycle_spectrum(self):
        s = extreme_eigenvalues(cycle_graph(6))
        assert s.lambda_top == pytest.approx(2.0, abs=1e-9)
        assert s.lambda2_abs == pytest.approx(2.0, abs=1e-9)  # bipartite
        assert sorted(np.round(s.eigenvalues, 9)) == pytest.approx(
            [-2, -1, -1, 1, 1, 2])

    def test_petersen(self):
        s = extreme_eigenvalues(petersen_graph())
        w = np.sort(s.eigenvalues)
        assert w[-1] == pytest.approx(3.0)
        assert np.sum(np.abs(w - 1.0) < 1e-9) == 5
        assert np.sum(np.abs(w + 2.0) < 1e-9) == 4
        assert s.lambda2_abs == pytest.approx(2.0)

    def test_complete_graph(self):
        s = extreme_eigenvalues(complete_graph(4))
        assert s.lambda_top == pytest.approx(3.0)
        assert s.lambda2_abs == pytest.approx(1.0)

    def test_dense_and_iterative_agree(self):
        g = random_regular_graph(1200, 4, seed=21)
        dense = _extreme_dense(g, 2)
        it = _extreme_iterative(g, 2, 1e-12, seed=0)
        assert abs(dense.lambda2_abs - it.lambda2_abs) <= 1e-8
        assert abs(dense.lambda_top - it.lambda_top) <= 1e-8
        assert it.residual_bound <= 1e-8
        assert it.iterations > 0

    def test_deflation_never_reports_trivial(self):
        for seed in (0, 1, 2):
            g = random_regular_graph(600, 3, seed=seed)
            it = _extreme_iterative(g, 1, 1e-12, seed=0)
            assert it.lambda2_abs < 3.0 - 0.05

    def test_disconnected_rejected(self):
        from scargraph.graphs import build_graph
        g = build_graph(4, [(0, 1), (2, 3)])
        with pytest.raises(ValueError):
            extreme_eigenvalues(g)


class TestResidual:
    def test_exact_eigenvectors(self):
        g = cycle_graph(4)
        assert residual(g, np.ones(4), 2.0) == (0.0, 0.0)
        assert residual(g, np.array([1.0, 0, -1, 0]), 0.0) == (0.0, 0.0)

    def test_basis_vector(self):
        g = cycle_graph(4)
        rinf, r2 = residual(g, np.array([1.0, 0, 0, 0]), 0.0)
        assert r2 == pytest.approx(math.sqrt(2))
        assert rinf == pytest.approx(1.0)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            residual(cycle_graph(4), np.zeros(4), 0.0)


class TestThresholds:
    def test_d2_values(self):
        thm, prop = spectral_threshold(2)
        assert prop == pytest.approx(5 / math.sqrt(3))   # b sqrt(d)
        b = prop / math.sqrt(2)
        assert b == pytest.approx(5 / math.sqrt(6))
        assert round(b, 5) == 2.04124
        assert thm == pytest.approx(3.0)

    def test_d5_values(self):
        thm, prop = spectral_threshold(5)
        assert prop == pytest.approx(14 / 3)
        assert thm == pytest.approx(3 / math.sqrt(2) * math.sqrt(5))

    def test_ordering_up_to_d50(self):
        for d in range(2, 51):
            thm, prop = spectral_threshold(d)
            b = prop / math.sqrt(d)
            assert b < 3 / math.sqrt(2) < 3.0
            assert prop < thm < 3 * math.sqrt(d)


class TestTreeQuadraticBound:
    def test_zero_vector(self):
        t = build_dary_tree(2, 1)
        qb = tree_quadratic_bound_check(t, np.zeros(t.graph.n))
        assert qb.lhs == 0 and qb.rhs == 0 and qb.ok

    def test_root_indicator(self):
        t = build_dary_tree(2, 1)
        f = np.zeros(t.graph.n)
        f[t.root] = 1.0
        qb = tree_quadratic_bound_check(t, f)
        assert qb.lhs == 0.0
        assert qb.rhs == pytest.approx(2 * math.sqrt(2))
        assert qb.ok

    def test_random_vectors(self):
        # the bound is a theorem; one failure would be a build-breaking bug
        rng = np.random.default_rng(0)
        trees = [build_dary_tree(d, depth)
                 for d in (2, 3, 4) for depth in (1, 2, 3, 4, 5)]
        for t in trees:
            for _ in range(10_000 // len(trees) + 1):
                f = rng.standard_normal(t.graph.n)
                assert tree_quadratic_bound_check(t, f).ok


class TestKahaleChecker:
    def test_tree_ball_equality(self):
        # s_i = d^(-i/2) is harmonic for 2 sqrt(d) away from the root
        d = 3
        t = build_dary_tree(d, 4)
        s_layers = [d ** (-i / 2) for i in range(5)]
        inst = kahale_instance(t.graph, [t.root], 4, s_layers, 2 * math.sqrt(d))
        v = kahale_check(t.graph, inst)
        assert v.condition1 and v.condition2 and v.condition3
        assert abs(v.condition3_margin) <= 1e-12  # equality off the root

    def test_nonconstant_s_reported(self):
        d = 2
        t = build_dary_tree(d, 3)
        s_layers = [d ** (-i / 2) for i in range(4)]
        inst = kahale_instance(t.graph, [t.root], 3, s_layers, 2 * math.sqrt(d))
        inst.s[int(t.levels[3][0])] *= 2.0  # break constancy on layer h
        v = kahale_check(t.graph, inst)
        assert not v.condition2

    def test_constructed_instance_around_new_root(self, lps_sg):
        site = lps_sg.sites[0]
        vprime = int(site.t3_levels[0][0])
        d = lps_sg.d
        s_layers = [d ** (-i / 2) for i in range(3)]
        inst = kahale_instance(lps_sg.graph, [vprime], 2, s_layers,
                               2 * math.sqrt(d))
        lam2, vec2 = second_eigenvector(lps_sg.graph)
        v = kahale_check(lps_sg.graph, inst, test_vec=vec2, test_mu=lam2)
        assert v.conditions_ok
        assert v.premise_ok
        assert v.conclusion


class TestKahaleSequence:
    def test_worked_example(self):
        seq = kahale_sequence(2, 0.1, 3, length=4)
        assert seq.c == pytest.approx(math.sqrt(1.5))
        assert seq.x[0] == pytest.approx(1 / seq.c)          # 0.81650
        assert round(float(seq.x[0]), 5) == 0.81650
        assert seq.x[1] == pytest.approx(seq.b + 0.1 - 1 / seq.x[0])
        assert round(float(seq.x[1]), 5) == 0.91650

    def test_c_plus_inverse_identity(self):
        for d in range(2, 51):
            seq = kahale_sequence(d, 0.1, 2)
            assert abs(seq.c + 1 / seq.c - seq.b) <= 1e-12

    def test_level_r_identity(self):
        for d in range(2, 21):
            seq = kahale_sequence(d, 0.05, 3)
            assert seq.checks["level_r_identity"] <= 1e-12

    def test_monotone_and_capped(self):
        eps = 0.1
        seq = kahale_sequence(2, eps, 2, length=15)
        x = seq.x
        assert (np.diff(x) >= -1e-15).all()
        for i in range(math.ceil(1 / eps), len(x)):
            assert x[i] == pytest.approx(seq.c, abs=1e-12)
        assert seq.checks["x_reaches_c"]

    def test_endpoint_fixed_points(self):
        # g(x) = b - 1/x fixes both ends of [1/c, c]
        for d in range(2, 51):
            seq = kahale_sequence(d, 0.1, 2)
            for x0 in (1 / seq.c, seq.c):
                assert abs((seq.b - 1 / x0) - x0) <= 1e-12

    def test_all_pointwise_checks(self):
        for d in (2, 3, 5, 11):
            seq = kahale_sequence(d, 0.1, 4, length=12)
            assert seq.checks["root_level"]
            assert seq.checks["interior_levels"]
            assert seq.checks["beyond_r"]

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            kahale_sequence(1, 0.1, 2)
        with pytest.raises(ValueError):
            kahale_sequence(2, 0.0, 2)
        with pytest.raises(ValueError):
            kahale_sequence(2, 0.1, 0)


class TestInterfaceQuadraticAudit:
    def test_bound_on_constructed_graphs(self, mcgee_sg, lps_sg):
        for sg in (mcgee_sg, lps_sg):
            rng = np.random.default_rng(1)
            n = sg.graph.n
            for _ in range(100):
                g = rng.standard_normal(n)
                g -= g.mean()
                g /= np.linalg.norm(g)
                lhs, rhs = interface_quadratic_bound(sg, g)
                assert lhs <= rhs + 1e-9
