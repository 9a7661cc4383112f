"""The full construction: carve a tree out of the expander base, glue two
replacement trees on, and certify a fully localized eigenvector.

The output graph stays (d+1)-regular and nearly Ramanujan, yet carries an
exact eigenvector supported on a vanishing fraction of the vertices; the
certificate records the measured girth, spectral radius, residuals and
scarring witnesses, and can be re-verified from the graph alone.
"""

import numpy as np

from scargraph import (build_certificate, localized_eigenvector, lps_graph,
                       multi_glue, verify_certificate)

h = lps_graph(5, 29)
print("base:", h)

# one site of radius 2: the carved tree interior is 1 + 6 = 7 vertices
sg = multi_glue(h, k_sites=1, r=2, seed=3)
print(f"glued: {sg.graph.n} vertices, girth {sg.girth}")

cert = build_certificate(sg)
print(f"nontrivial spectral radius {cert.lambda_max_nontrivial:.6f} "
      f"vs threshold {cert.spectral_threshold:.6f}")
for rec in cert.localized:
    print(f"localized eigenpair: lambda={rec.eigenvalue:+.6f} "
          f"support {len(rec.support)} of {cert.M} vertices, "
          f"residual {rec.residual_inf:.1e}, witness {rec.witness_value:.8f}")

nu = localized_eigenvector(sg, 0, cert.localized[1].eigenvalue)
print("eigenvector values on its support:",
      np.unique(np.round(nu[np.abs(nu) > 1e-12], 6)))

report = verify_certificate(sg.graph, cert)
print("\nindependent re-verification:", "PASSED" if report.passed else "FAILED")
