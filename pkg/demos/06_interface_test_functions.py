"""Why the glued graph stays nearly Ramanujan: super-harmonic test
functions pin down the eigenvector mass near the gluing interface.

The layer sequence s_i = c^i d^(-i/2) (then steepened by the x-recurrence)
satisfies A s <= mu s around the carved roots for mu = (b + eps) sqrt(d),
b = (3d-1)/sqrt(d(2d-1)); the layered-growth lemma then forces any
eigenvector with |lambda| >= mu to push its mass outward, away from the
interface."""

import math

import numpy as np

from scargraph import (kahale_check, kahale_instance, kahale_sequence,
                       lps_graph, multi_glue, second_eigenvector,
                       spectral_threshold)

d = 5
seq = kahale_sequence(d, epsilon=0.1, r=1, length=6)
print(f"b = {seq.b:.6f}, c = {seq.c:.6f}, c + 1/c - b = "
      f"{seq.c + 1/seq.c - seq.b:.1e}")
print("x ratios:", np.round(seq.x, 6))
print("s values:", np.round(seq.s, 6))
print("pointwise checks:", seq.checks)
thm, prop = spectral_threshold(d)
print(f"resulting bounds: {prop:.5f} sharper vs {thm:.5f} round")

h = lps_graph(5, 29)
sg = multi_glue(h, 1, 1, seed=7)
site = sg.sites[0]

# growth away from the pair of carved roots, mu = (b + 0.1) sqrt(d)
mu = (seq.b + 0.1) * math.sqrt(d)
inst = kahale_instance(sg.graph,
                       [int(site.root), int(site.t2_levels[0][0])],
                       h=4, s_by_layer=seq.s[:5], mu=mu)
verdict = kahale_check(sg.graph, inst)
print(f"\naround the carved roots: A s <= mu s margin "
      f"{verdict.condition3_margin:+.2e} (holds: {verdict.condition3})")

# growth away from the replacement root, s_i = d^(-i/2), mu = lambda_2
lam2, vec2 = second_eigenvector(sg.graph)
inst2 = kahale_instance(sg.graph, [int(site.t3_levels[0][0])], h=2,
                        s_by_layer=[d ** (-i / 2) for i in range(3)], mu=lam2)
verdict2 = kahale_check(sg.graph, inst2, test_vec=vec2, test_mu=lam2)
print(f"around the new root with the actual lambda2 = {lam2:.6f}:")
print(f"  conditions: {verdict2.conditions_ok}, mass ratios "
      f"{verdict2.ratio_lo:.3e} -> {verdict2.ratio_hi:.3e} "
      f"(outward growth: {verdict2.conclusion})")
