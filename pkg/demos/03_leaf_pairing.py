"""Gluing two trees leaf-to-leaf with the swap loop.

Starting from a random bijection between the leaf sets, each swap
destroys a shortest cycle without creating a shorter one, so the girth
climbs to floor(2 log_{2d-1}(n-1)) + 2, within a factor ~2 of the best
possible for any graph of this size.
"""

import math

from scargraph import girth, pair_trees, path_count_exact, path_count_total

for d, depth in [(2, 4), (3, 4), (4, 4)]:
    n = (d + 1) * d ** (depth - 1)
    p = pair_trees(d, depth, seed=0)
    bound = math.floor(2 * math.log(n - 1) / math.log(2 * d - 1)) + 2
    print(f"d={d} depth={depth}: {n} identified leaves, "
          f"girth {p.achieved_girth} (bound {bound}) "
          f"after {p.swap_count} swaps")
    assert girth(p.glued) == p.achieved_girth

# Why the bound holds: from any identified vertex there are exactly
# m(r, s) alternating paths of length 2s with r tree segments, so at most
# (2d-1)^k identified vertices sit within distance 2k and a far partner
# always exists for the swap.
d = 3
print("\npath counts from one identified vertex (d=3):")
for s in (1, 2, 3):
    row = [path_count_exact(d, r, s) for r in range(1, s + 1)]
    print(f"  length {2*s}: by segment count {row}, total {path_count_total(d, s)}")
