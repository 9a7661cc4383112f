"""Eigenvalue machinery: extreme eigenvalues of sparse adjacency operators,
residual certification, the tree quadratic-form bound, the layered growth
(Kahale-style) checker, and the super-harmonic test-function sequence used
to bound eigenvector mass near the gluing interface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg as spla
from scipy.linalg import eigh

from .graphs import Graph, is_connected, is_regular
from .trees import DaryTree

DENSE_CUTOFF = 4096


class EigensolverError(RuntimeError):
    """Iterative eigensolver failed to converge; carries partial results."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


@dataclass
class SpectralSummary:
    lambda_top: float
    lambda2_abs: float
    method: str                      # "dense" | "iterative"
    iterations: int
    residual_bound: float
    pairs: list                      # (eigenvalue, residual 2-norm) extremes
    eigenvalues: np.ndarray | None = None   # full spectrum on the dense path


def residual(g: Graph, v, lam: float):
    """(max-norm, 2-norm) of A v - lam v via one sparse multiply."""
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        raise ValueError("vector must be nonzero")
    r = g.csr() @ v - lam * v
    return float(np.abs(r).max()), float(np.linalg.norm(r))


def extreme_eigenvalues(g: Graph, how_many: int = 2, tol: float = 1e-10,
                        seed: int = 0) -> SpectralSummary:
    """Extreme adjacency eigenvalues with certified residuals.

    Dense symmetric solve up to 4096 vertices; beyond that an implicitly
    restarted Lanczos with a seeded start vector, targeting both spectrum
    ends, plus deflation of the all-ones eigenvector on connected regular
    graphs so lambda2_abs never reports the trivial eigenvalue.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    if g.n <= DENSE_CUTOFF:
        return _extreme_dense(g, how_many)
    return _extreme_iterative(g, how_many, tol, seed)


def _extreme_dense(g: Graph, how_many: int) -> SpectralSummary:
    a = g.csr().toarray()
    w, vecs = eigh(a)
    top = float(w[-1])
    lam2 = max(abs(float(w[0])), abs(float(w[-2]))) if g.n > 1 else 0.0
    k = min(how_many, g.n)
    picks = list(range(g.n - k, g.n)) + list(range(k))
    pairs = []
    for i in sorted(set(picks), key=lambda i: -w[i]):
        r = float(np.linalg.norm(a @ vecs[:, i] - w[i] * vecs[:, i]))
        pairs.append((float(w[i]), r))
    res = max(r for _, r in pairs) if pairs else 0.0
    return SpectralSummary(top, lam2, "dense", 0, res, pairs, w)


def _extreme_iterative(g: Graph, how_many, tol, seed) -> SpectralSummary:
    a = g.csr()
    n = g.n
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(n)
    maxiter = int(50 * math.sqrt(n)) + 100
    count = [0]

    def mv(x):
        count[0] += 1
        return a @ x

    op = spla.LinearOperator((n, n), matvec=mv, dtype=float)
    k = max(2, min(how_many, n - 2))
    try:
        w_hi, v_hi = spla.eigsh(op, k=k, which="LA", v0=v0, tol=tol,
                                maxiter=maxiter)
        w_lo, v_lo = spla.eigsh(op, k=k, which="SA", v0=v0, tol=tol,
                                maxiter=maxiter)
    except spla.ArpackNoConvergence as exc:
        raise EigensolverError(
            f"Lanczos did not converge within {maxiter} iterations",
            partial=exc.eigenvalues) from exc

    pairs = []
    for w, vv in [(w_hi, v_hi), (w_lo, v_lo)]:
        for i in range(len(w)):
            r = float(np.linalg.norm(a @ vv[:, i] - w[i] * vv[:, i]))
            pairs.append((float(w[i]), r))
    pairs.sort(key=lambda p: -p[0])
    top = pairs[0][0]

    deg = is_regular(g)
    if deg is not None:
        # restrict to the complement of the all-ones top eigenvector
        def mv_defl(x):
            count[0] += 1
            z = x - x.mean()
            y = a @ z
            return y - y.mean()

        opd = spla.LinearOperator((n, n), matvec=mv_defl, dtype=float)
        try:
            w2, v2 = spla.eigsh(opd, k=1, which="LM", v0=v0, tol=tol,
                                maxiter=maxiter)
        except spla.ArpackNoConvergence as exc:
            raise EigensolverError(
                f"deflated Lanczos did not converge within {maxiter} iterations",
                partial=exc.eigenvalues) from exc
        lam2 = abs(float(w2[0]))
        vec = v2[:, 0] - v2[:, 0].mean()
        vec /= np.linalg.norm(vec)
        lam_signed = float(vec @ (a @ vec))
        r2 = float(np.linalg.norm(a @ vec - lam_signed * vec))
        pairs.append((lam_signed, r2))
    else:
        lam2 = max(abs(pairs[1][0]), abs(pairs[-1][0]))
        r2 = 0.0
    res = max(r for _, r in pairs)
    return SpectralSummary(top, lam2, "iterative", count[0], res, pairs, None)


def second_eigenvector(g: Graph, tol: float = 1e-10, seed: int = 0):
    """(lambda, vector) attaining the nontrivial spectral radius of a
    connected regular graph."""
    if g.n <= DENSE_CUTOFF:
        a = g.csr().toarray()
        w, vecs = eigh(a)
        i = 0 if abs(w[0]) >= abs(w[-2]) else g.n - 2
        return float(w[i]), vecs[:, i]
    a = g.csr()
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(g.n)

    def mv(x):
        z = x - x.mean()
        y = a @ z
        return y - y.mean()

    op = spla.LinearOperator((g.n, g.n), matvec=mv, dtype=float)
    w, v = spla.eigsh(op, k=1, which="LM", v0=v0, tol=tol,
                      maxiter=int(50 * math.sqrt(g.n)) + 100)
    vec = v[:, 0] - v[:, 0].mean()
    vec /= np.linalg.norm(vec)
    lam = float(vec @ (a @ vec))
    return lam, vec


def spectral_threshold(d: int):
    """(theorem bound (3/sqrt 2) sqrt d, sharper bound (3d-1)/sqrt(2d-1)).

    The sharper constant b = (3d-1)/sqrt(d(2d-1)) satisfies
    b < 3/sqrt(2) < 3 for every d >= 2.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    theorem = 3.0 / math.sqrt(2.0) * math.sqrt(d)
    proposition = (3.0 * d - 1.0) / math.sqrt(2.0 * d - 1.0)
    assert proposition < theorem < 3.0 * math.sqrt(d)
    return theorem, proposition


@dataclass
class QuadraticBound:
    lhs: float
    rhs: float
    ok: bool


def tree_quadratic_bound_check(tree: DaryTree, f) -> QuadraticBound:
    """|f^T A_T f| <= 2 sqrt(d) sum_W f^2 + sqrt(d) sum_L f^2 on a d-ary tree
    (W = non-leaves, L = leaves); holds for every f."""
    f = np.asarray(f, dtype=float)
    if len(f) != tree.graph.n:
        raise ValueError("vector length must match tree size")
    lhs = abs(float(f @ (tree.graph.csr() @ f)))
    sd = math.sqrt(tree.d)
    leaves = tree.leaves
    leaf_mass = float(np.sum(f[leaves] ** 2))
    total = float(np.sum(f ** 2))
    rhs = 2.0 * sd * (total - leaf_mass) + sd * leaf_mass
    return QuadraticBound(lhs, rhs, lhs <= rhs + 1e-12)


# -- layered growth checker ---------------------------------------------------

@dataclass
class KahaleInstance:
    """Layer structure around a vertex set X with a per-layer positive
    test function s and a growth rate mu."""
    X: list
    h: int
    layers: list                 # X_0..X_h as vertex index arrays
    s: np.ndarray                # per-vertex values, 0 outside the layers
    mu: float


def kahale_instance(g: Graph, X, h: int, s_by_layer, mu: float) -> KahaleInstance:
    """Build layers X_i = vertices at distance i from X and spread the
    per-layer s values onto them."""
    X = sorted(int(v) for v in X)
    if h < 1:
        raise ValueError("h must be at least 1")
    if len(s_by_layer) < h + 1:
        raise ValueError("need s values for layers 0..h")
    dist = np.full(g.n, -1, dtype=np.int64)
    for v in X:
        dist[v] = 0
    from collections import deque
    adj = g.adjacency_lists()
    q = deque(X)
    while q:
        x = q.popleft()
        dx = dist[x]
        if dx >= h:
            continue
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx + 1
                q.append(y)
    layers = [np.nonzero(dist == i)[0] for i in range(h + 1)]
    s = np.zeros(g.n)
    for i, lay in enumerate(layers):
        s[lay] = s_by_layer[i]
    return KahaleInstance(X, h, layers, s, mu)


@dataclass
class KahaleVerdict:
    layer_regular: dict            # (i, j) -> (constant?, value or None)
    condition1: bool
    condition2: bool
    condition3: bool
    condition3_margin: float       # min over checked v of |mu| s(v) - As(v)
    premise_ok: bool | None = None
    ratio_lo: float | None = None  # layer h-1 mass ratio of the test vector
    ratio_hi: float | None = None  # layer h mass ratio
    conclusion: bool | None = None

    @property
    def conditions_ok(self) -> bool:
        return self.condition1 and self.condition2 and self.condition3


def kahale_check(g: Graph, inst: KahaleInstance, test_vec=None,
                 test_mu: float | None = None, tol: float = 1e-9) -> KahaleVerdict:
    """Verify the three layered-growth conditions, and, given an (exact)
    eigenvector as test_vec, the outward mass-ratio conclusion.

    Condition 1 (layer regularity) is checked for the layer pairs
    (h-1, h-1), (h-1, h), (h, h-1), (h, h) only; the verdict records which
    pairs hold.  Condition 3 checks A s <= |mu| s on every vertex within
    distance h-1 of X.
    """
    h = inst.h
    layers = inst.layers
    if any(len(lay) == 0 for lay in layers):
        raise ValueError("inconsistent layers: some layer up to h is empty")
    near = np.concatenate(layers[:h])         # distance <= h-1
    in_layer = {}
    for j in (h - 1, h):
        mask = np.zeros(g.n, dtype=bool)
        mask[layers[j]] = True
        in_layer[j] = mask

    adj = g.adjacency_lists()
    layer_regular = {}
    cond1 = True
    for i in (h - 1, h):
        for j in (h - 1, h):
            counts = {sum(in_layer[j][w] for w in adj[int(v)])
                      for v in layers[i]}
            const = len(counts) == 1
            layer_regular[(i, j)] = (const, counts.pop() if const else None)
            cond1 &= const

    svals = [inst.s[lay] for lay in layers]
    cond2 = all(np.ptp(sv) == 0 for sv in (svals[h - 1], svals[h]))
    positive = all((sv > 0).all() for sv in svals)

    As = g.csr() @ inst.s
    margin = float((abs(inst.mu) * inst.s[near] - As[near]).min())
    cond3 = positive and margin >= -tol

    verdict = KahaleVerdict(layer_regular, cond1, cond2, cond3, margin)
    if test_vec is not None:
        gv = np.asarray(test_vec, dtype=float)
        mu_g = abs(test_mu) if test_mu is not None else abs(inst.mu)
        Ag = g.csr() @ gv
        premise = float(np.abs(np.abs(Ag[near]) - mu_g * np.abs(gv[near])).max())
        verdict.premise_ok = premise <= max(tol, 1e-6)
        num_hi = float(np.sum(gv[layers[h]] ** 2))
        den_hi = float(np.sum(inst.s[layers[h]] ** 2))
        num_lo = float(np.sum(gv[layers[h - 1]] ** 2))
        den_lo = float(np.sum(inst.s[layers[h - 1]] ** 2))
        verdict.ratio_lo = num_lo / den_lo
        verdict.ratio_hi = num_hi / den_hi
        verdict.conclusion = verdict.ratio_hi >= verdict.ratio_lo - tol
    return verdict


# -- interface test-function sequence -----------------------------------------

@dataclass
class TestFunctionSequence:
    """The layer values s_i (and ratio drivers x_i) that are super-harmonic
    for growth rate (b + epsilon) sqrt(d) around the carved tree pair.

    b = (3d-1)/sqrt(d(2d-1)) and c = sqrt((2d-1)/d) satisfy c + 1/c = b.
    s_i = c^i d^(-i/2) up to layer r, then the decay steepens: the ratio
    between consecutive scaled terms follows x_1 = 1/c,
    x_{i+1} = min(b + eps - 1/x_i, c), which is nondecreasing and reaches c
    after at most ceil(1/eps) steps.
    """
    d: int
    epsilon: float
    r: int
    length: int
    b: float
    c: float
    x: np.ndarray              # x_1 .. x_{length+1}
    s: np.ndarray              # s_0 .. s_{r+1+length}
    checks: dict = field(default_factory=dict)


def kahale_sequence(d: int, epsilon: float, r: int, length: int = 0
                    ) -> TestFunctionSequence:
    if d < 2:
        raise ValueError("d must be at least 2")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if r < 1:
        raise ValueError("r must be at least 1")
    b = (3.0 * d - 1.0) / math.sqrt(d * (2.0 * d - 1.0))
    c = math.sqrt((2.0 * d - 1.0) / d)
    sd = math.sqrt(d)

    nx = length + 1
    x = np.empty(max(nx, 1))
    x[0] = 1.0 / c
    for i in range(1, nx):
        x[i] = min(b + epsilon - 1.0 / x[i - 1], c)

    s = np.empty(r + 2 + length)
    for i in range(r + 1):
        s[i] = c ** i * d ** (-i / 2.0)
    alpha = c ** (r - 1)
    s[r + 1] = alpha * d ** (-(r + 1) / 2.0)
    for i in range(1, length + 1):
        alpha *= x[i - 1]          # alpha_i = alpha_{i-1} x_i
        s[r + 1 + i] = alpha * d ** (-(r + 1 + i) / 2.0)

    mu = (b + epsilon) * sd
    checks = {
        "c_plus_inverse_is_b": abs(c + 1.0 / c - b),
        "root_level": (c / sd) * (d + 1) <= mu + 1e-12,
        "interior_levels": (1.0 / c + c) <= b + epsilon + 1e-12,
        "level_r_identity": abs(2.0 / c + (d - 1.0) / (d * c) - b),
        "beyond_r": all(1.0 / x[i] + x[i + 1] <= b + epsilon + 1e-12
                        for i in range(nx - 1)),
        "x_nondecreasing": bool((np.diff(x) >= -1e-15).all()),
        "x_reaches_c": bool(all(abs(x[i] - c) <= 1e-12
                                for i in range(math.ceil(1.0 / epsilon), nx))),
    }
    return TestFunctionSequence(d, epsilon, r, length, b, c, x, s, checks)
