"""Ramanujan base graphs: the quaternion Cayley-graph family over PSL(2, q),
an external edge-list loader, and the validator that decides which carving
radii a measured base actually supports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, build_graph, girth, is_bipartite, is_connected, \
    is_regular, load_edge_list
from .spectral import extreme_eigenvalues

load_graph = load_edge_list


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre_symbol(a: int, p: int) -> int:
    """1 if a is a nonzero square mod p, -1 if not, 0 if p divides a."""
    a %= p
    if a == 0:
        return 0
    ls = pow(a, (p - 1) // 2, p)
    return -1 if ls == p - 1 else 1


def sqrt_minus_one(q: int, seed: int = 0) -> int:
    """A square root of -1 mod q (q prime, q = 1 mod 4), found by powering
    seeded random candidates; nonresidues succeed, so a few tries suffice."""
    rng = np.random.default_rng(seed)
    for _ in range(128):
        z = int(rng.integers(2, q))
        i = pow(z, (q - 1) // 4, q)
        if (i * i) % q == q - 1:
            return i
    raise RuntimeError(f"no sqrt(-1) mod {q} found; is q = 1 mod 4 prime?")


def quaternion_generators(p: int) -> list:
    """Integer quaternions (a0, a1, a2, a3) with a0^2+a1^2+a2^2+a3^2 = p,
    a0 positive odd, the rest even; for p = 1 mod 4 there are exactly p+1."""
    lim = int(math.isqrt(p))
    evens = range(-(lim - lim % 2), lim + 1, 2)
    sols = []
    for a0 in range(1, lim + 1, 2):
        rest = p - a0 * a0
        for a1 in evens:
            if a1 * a1 > rest:
                continue
            for a2 in evens:
                if a1 * a1 + a2 * a2 > rest:
                    continue
                for a3 in evens:
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 == p:
                        sols.append((a0, a1, a2, a3))
    return sols


@dataclass
class LpsParams:
    """Parameters of the quaternion Cayley graph: primes p, q = 1 mod 4 with
    q > 2 sqrt(p); the graph is (p+1)-regular on PSL(2,q) when p is a square
    mod q (the non-bipartite branch this package supports)."""
    p: int
    q: int
    legendre: int = field(init=False)

    def __post_init__(self):
        if not _is_prime(self.p) or self.p % 4 != 1:
            raise ValueError(f"p = {self.p} must be a prime = 1 mod 4")
        if not _is_prime(self.q) or self.q % 4 != 1:
            raise ValueError(f"q = {self.q} must be a prime = 1 mod 4")
        if self.p == self.q:
            raise ValueError("p and q must be distinct")
        if self.q * self.q <= 4 * self.p:
            raise ValueError(f"need q > 2 sqrt(p), got q = {self.q}")
        self.legendre = legendre_symbol(self.p, self.q)


def lps_graph(p_or_params, q: int | None = None) -> Graph:
    """The (p+1)-regular quaternion Cayley graph on PSL(2, q).

    Vertices are the q(q^2-1)/2 projective matrices with square determinant;
    generators come from the p+1 quaternion solutions mapped through a square
    root of -1 mod q.  Only the non-bipartite case (p a square mod q) is
    generated; the bipartite case is rejected with guidance.
    """
    params = p_or_params if isinstance(p_or_params, LpsParams) \
        else LpsParams(p_or_params, q)
    p, q = params.p, params.q
    if params.legendre != 1:
        raise ValueError(
            f"p = {p} is not a square mod q = {q}: that branch is bipartite "
            f"on all of PGL(2, q); pick another q (e.g. one with (p|q) = 1)")
    iq = sqrt_minus_one(q)
    sols = quaternion_generators(p)
    if len(sols) != p + 1:
        raise RuntimeError(
            f"found {len(sols)} quaternion solutions, expected p+1 = {p + 1}")

    inv = [0] * q
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)

    def canon(m):
        # scale so the first nonzero of (a, b) is 1; faithful on PSL in PGL
        a, b, c, dd = m
        s = inv[a] if a % q else inv[b]
        return ((a * s) % q, (b * s) % q, (c * s) % q, (dd * s) % q)

    gens = []
    for a0, a1, a2, a3 in sols:
        gens.append(canon(((a0 + iq * a1) % q, (a2 + iq * a3) % q,
                           (-a2 + iq * a3) % q, (a0 - iq * a1) % q)))
    if len(set(gens)) != p + 1:
        raise RuntimeError("generator matrices collide; q too small?")

    verts = []
    for b in range(q):
        for c in range(q):
            for dd in range(q):
                det = (dd - b * c) % q
                if det and legendre_symbol(det, q) == 1:
                    verts.append((1, b, c, dd))
    for c in range(1, q):
        for dd in range(q):
            if legendre_symbol(q - c, q) == 1:
                verts.append((0, 1, c, dd))
    expected = q * (q * q - 1) // 2
    if len(verts) != expected:
        raise RuntimeError(
            f"enumerated {len(verts)} PSL elements, expected {expected}")
    index = {v: i for i, v in enumerate(verts)}
    edges = set()
    for v in verts:
        a, b, c, dd = v
        i = index[v]
        for e, f, gg, hh in gens:
            w = canon(((a * e + b * gg) % q, (a * f + b * hh) % q,
                       (c * e + dd * gg) % q, (c * f + dd * hh) % q))
            j = index[w]
            if i == j:
                raise RuntimeError("generator fixes a vertex; not simple")
            edges.add((min(i, j), max(i, j)))
    g = build_graph(len(verts), sorted(edges))
    if is_regular(g) != p + 1:
        raise RuntimeError("Cayley graph is not (p+1)-regular")
    return g


def generator_matrices(p: int, q: int) -> list:
    """The canonical projective generator matrices, for inverse-closure and
    distinctness checks."""
    iq = sqrt_minus_one(q)
    inv = [0] * q
    for a in range(1, q):
        inv[a] = pow(a, q - 2, q)

    def canon(m):
        a, b, c, dd = m
        s = inv[a] if a % q else inv[b]
        return ((a * s) % q, (b * s) % q, (c * s) % q, (dd * s) % q)

    out = []
    for a0, a1, a2, a3 in quaternion_generators(p):
        out.append(canon(((a0 + iq * a1) % q, (a2 + iq * a3) % q,
                          (-a2 + iq * a3) % q, (a0 - iq * a1) % q)))
    return out


@dataclass
class BaseReport:
    """Measured facts about a candidate base graph and the checks they
    imply for carving radius r."""
    n: int
    degree: int | None
    bipartite: bool
    girth: float
    lambda2_abs: float
    ramanujan_ok: bool
    girth_ok_for_r: int          # largest radius the measured girth admits
    checks: dict

    @property
    def all_ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> str:
        out = dict(n=self.n, degree=self.degree, bipartite=self.bipartite,
                   girth=(None if self.girth == math.inf else int(self.girth)),
                   lambda2_abs=self.lambda2_abs, ramanujan_ok=self.ramanujan_ok,
                   girth_ok_for_r=self.girth_ok_for_r, checks=self.checks)
        return json.dumps(out, sort_keys=True)


def validate_base(g: Graph, d: int, r: int, tol: float = 1e-8) -> BaseReport:
    """Check, by measurement, everything the gluing construction needs from
    a base: (d+1)-regularity, non-bipartiteness, girth > 4r (site margin),
    girth > 2(r+1)+1 (tree balls), and nontrivial spectral radius within
    2 sqrt(d) + tol.  Failures are reported, not raised."""
    deg = is_regular(g)
    gv = girth(g)
    summary = extreme_eigenvalues(g) if is_connected(g) and g.n else None
    lam2 = summary.lambda2_abs if summary else math.inf
    bip = is_bipartite(g)
    ram_ok = lam2 <= 2.0 * math.sqrt(d) + tol
    rmax = 0
    while gv > max(4 * (rmax + 1), 2 * (rmax + 2) + 1):
        rmax += 1
    checks = {
        "regular_d_plus_1": deg == d + 1,
        "connected": summary is not None,
        "non_bipartite": not bip,
        "girth_exceeds_4r": gv > 4 * r,
        "tree_balls_radius_r_plus_1": gv > 2 * (r + 1) + 1,
        "ramanujan_margin": ram_ok,
    }
    return BaseReport(g.n, deg, bip, gv, lam2, ram_ok, rmax, checks)
