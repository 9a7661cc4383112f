"""Radial eigenvalues of d-ary trees.

A depth-D tree has exactly D+1 eigenvalues with level-constant
eigenvectors, all strictly inside (-2 sqrt d, 2 sqrt d); over all depths
they fill that interval densely.  Everything comes from the small level
quotient matrix, never from the full tree.
"""

import numpy as np

from scargraph import (build_dary_tree, level_mass_profile, lift_radial,
                       nearest_radial_eigenvalue, quotient_matrix,
                       radial_spectrum)

d = 2
print("level quotient for d=2, depth 3:")
print(quotient_matrix(d, 3))

for depth in range(1, 6):
    rs = radial_spectrum(d, depth)
    print(f"depth {depth}: {np.round(rs.eigenvalues, 4)}")

# Lifting a profile onto the tree gives an exact eigenvector.
depth = 4
tree = build_dary_tree(d, depth)
rs = radial_spectrum(d, depth)
lam, prof = rs.eigenvalues[1], rs.profiles[1]
v = lift_radial(tree, prof)
residual = np.abs(tree.graph.csr() @ v - lam * v).max()
print(f"\nlifted eigenvector at lambda={lam:.6f}: residual {residual:.2e}")
print("per-level squared mass:", np.round(level_mass_profile(v, tree), 4))

# Density in practice: how deep until some radial eigenvalue approaches
# a target value?
for target in (0.5, 1.3, 2.5):
    res = nearest_radial_eigenvalue(d, target, tol=1e-3, max_depth=40)
    print(f"target {target}: found={res.found} depth={res.depth} "
          f"lambda={res.eigenvalue:.6f} gap={res.gap:.2e}")
