"""Immutable undirected simple graphs and the combinatorial primitives
(distances, girth, balls, expansion, cycle statistics) everything else
builds on.

Vertices are dense integer indices ``0..n-1``.  Adjacency is stored in CSR
form (an offset array plus one flat, per-vertex-sorted neighbor array) so
traversals stay cache friendly; Python adjacency lists and a scipy sparse
matrix are derived lazily and cached.  A :class:`Graph` is immutable after
construction, so all queries are safe to run concurrently.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

INFINITE_GIRTH = math.inf


class EdgeListFormatError(ValueError):
    """Malformed edge-list file; the message names the offending line."""


class ConstructionError(RuntimeError):
    """A construction contract (girth target, packing, regularity) failed."""


class Graph:
    """Undirected simple graph, immutable after construction.

    Use :func:`build_graph` (or the loaders in :mod:`scargraph.base`) rather
    than calling the constructor directly.
    """

    __slots__ = ("n", "indptr", "indices", "_adj", "_csr")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        indptr.setflags(write=False)
        indices.setflags(write=False)
        self._adj = None
        self._csr = None

    @property
    def num_edges(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def edges(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees())
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def adjacency_lists(self) -> tuple:
        """Per-vertex neighbor lists as plain Python lists (cached)."""
        if self._adj is None:
            idx = self.indices.tolist()
            ptr = self.indptr.tolist()
            self._adj = tuple(idx[ptr[v]:ptr[v + 1]] for v in range(self.n))
        return self._adj

    def csr(self) -> sp.csr_matrix:
        """Adjacency as a scipy CSR matrix with float64 data (cached)."""
        if self._csr is None:
            data = np.ones(len(self.indices), dtype=np.float64)
            self._csr = sp.csr_matrix(
                (data, self.indices.copy(), self.indptr.copy()),
                shape=(self.n, self.n))
        return self._csr

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return i < len(nb) and nb[i] == v

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(n: int, edges) -> Graph:
    """Canonical Graph from a vertex count and an iterable of vertex pairs.

    Rejects out-of-range endpoints, self-loops and duplicate edges.
    """
    if n < 0:
        raise ValueError("vertex count must be nonnegative")
    e = np.asarray(list(edges), dtype=np.int64)
    if e.size == 0:
        e = e.reshape(0, 2)
    if e.ndim != 2 or e.shape[1] != 2:
        raise ValueError("edges must be pairs of vertex indices")
    if e.size and (e.min() < 0 or e.max() >= n):
        bad = e[(e < 0).any(axis=1) | (e >= n).any(axis=1)][0]
        raise ValueError(f"edge endpoint out of range [0, {n}): {tuple(bad)}")
    if (e[:, 0] == e[:, 1]).any():
        v = int(e[e[:, 0] == e[:, 1]][0, 0])
        raise ValueError(f"self-loop at vertex {v}")
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    key = lo * n + hi
    order = np.argsort(key, kind="stable")
    if len(key) > 1 and (np.diff(key[order]) == 0).any():
        i = order[np.nonzero(np.diff(key[order]) == 0)[0][0]]
        raise ValueError(f"duplicate edge ({int(lo[i])}, {int(hi[i])})")
    return _graph_from_half_edges(n, lo, hi)


def _graph_from_half_edges(n, lo, hi) -> Graph:
    # assumes lo < hi elementwise, no duplicates
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return Graph(n, indptr, dst.astype(np.int32 if n < 2**31 else np.int64))


@dataclass
class DistanceMap:
    """BFS hop counts from one source; -1 marks vertices beyond ``cap``."""
    source: int
    dist: np.ndarray
    cap: int | None = None


def bfs_distances(g: Graph, source: int, cap: int | None = None) -> DistanceMap:
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range")
    adj = g.adjacency_lists()
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    q = deque([source])
    while q:
        x = q.popleft()
        dx = dist[x]
        if cap is not None and dx >= cap:
            continue
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dx + 1
                q.append(y)
    return DistanceMap(source, dist, cap)


def girth(g: Graph):
    """Length of the shortest cycle; ``math.inf`` for forests.

    Per-vertex truncated BFS: the first non-tree edge seen from source s
    closes a walk of length dist[x]+dist[y]+1 which contains a cycle no
    longer than that, and for s on a shortest cycle the bound is attained.
    BFS from s is cut off once 2*dist exceeds the best cycle found so far,
    so the worst case O(n*m) is only reached on forests.
    """
    adj = g.adjacency_lists()
    n = g.n
    best = INFINITE_GIRTH
    dist = [0] * n
    par = [-1] * n
    seen = [-1] * n
    for s in range(n):
        seen[s] = s
        dist[s] = 0
        par[s] = -1
        q = [s]
        qi = 0
        while qi < len(q):
            x = q[qi]
            qi += 1
            dx = dist[x]
            if 2 * dx >= best:
                break
            dx1 = dx + 1
            px = par[x]
            for y in adj[x]:
                if seen[y] != s:
                    seen[y] = s
                    dist[y] = dx1
                    par[y] = x
                    q.append(y)
                elif y != px:
                    c = dx + dist[y] + 1
                    if c < best:
                        best = c
    return int(best) if best < INFINITE_GIRTH else INFINITE_GIRTH


def shortest_cycle_through(g: Graph, v: int):
    """Shortest cycle containing v: returns (length, cycle) or (inf, None).

    For each edge (v, u), the shortest cycle through that edge is 1 plus the
    shortest v-u path avoiding it, which one BFS per neighbor finds exactly.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    adj = g.adjacency_lists()
    n = g.n
    best = INFINITE_GIRTH
    best_cycle = None
    for u in adj[v]:
        # BFS from v to u without the edge (v, u); cutoff at current best
        dist = {v: 0}
        par = {v: -1}
        q = deque([v])
        found = False
        while q and not found:
            x = q.popleft()
            dx = dist[x]
            if dx + 1 >= best:
                break
            for y in adj[x]:
                if x == v and y == u:
                    continue
                if y not in dist:
                    dist[y] = dx + 1
                    par[y] = x
                    if y == u:
                        found = True
                        break
                    q.append(y)
        if found:
            length = dist[u] + 1
            if length < best:
                best = length
                path = []
                x = u
                while x != -1:
                    path.append(x)
                    x = par[x]
                best_cycle = path  # [u, ..., v]; closing edge (v, u) implicit
    if best_cycle is None:
        return INFINITE_GIRTH, None
    return int(best), best_cycle


@dataclass
class Ball:
    """Induced subgraph on a radius-R ball, with its BFS layer structure."""
    center: int
    radius: int
    vertices: np.ndarray        # original ids, sorted by (distance, id)
    layers: list = field(default_factory=list)  # original ids per distance
    subgraph: Graph | None = None
    is_tree: bool = False


def ball(g: Graph, v: int, radius: int) -> Ball:
    """Induced subgraph on all vertices within ``radius`` hops of v."""
    dm = bfs_distances(g, v, cap=radius)
    layers = [np.sort(np.nonzero(dm.dist == r)[0]) for r in range(radius + 1)]
    layers = [lay for lay in layers if len(lay)]
    verts = np.concatenate(layers) if layers else np.array([v], dtype=np.int64)
    local = {int(w): i for i, w in enumerate(verts)}
    edges = []
    for w in verts:
        for z in g.neighbors(int(w)):
            z = int(z)
            if z in local and w < z:
                edges.append((local[int(w)], local[z]))
    sub = build_graph(len(verts), edges)
    # the ball is connected, so acyclic iff m = n - 1
    return Ball(v, radius, verts, [lay.tolist() for lay in layers],
                sub, sub.num_edges == sub.n - 1)


def is_bipartite(g: Graph) -> bool:
    adj = g.adjacency_lists()
    color = np.full(g.n, -1, dtype=np.int8)
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            cx = color[x]
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - cx
                    q.append(y)
                elif color[y] == cx:
                    return False
    return True


def is_regular(g: Graph):
    """Common degree if the graph is regular, else None."""
    if g.n == 0:
        return 0
    deg = g.degrees()
    d0 = int(deg[0])
    return d0 if (deg == d0).all() else None


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return int((bfs_distances(g, 0).dist >= 0).sum()) == g.n


def vertex_expansion(g: Graph, S) -> Fraction:
    """|N(S) \\ S| / |S| with the external neighborhood convention."""
    S = set(int(v) for v in S)
    if not S:
        raise ValueError("S must be nonempty")
    for v in S:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    nbrs = set()
    for v in S:
        nbrs.update(int(w) for w in g.neighbors(v))
    nbrs -= S
    return Fraction(len(nbrs), len(S))


def bs_cycle_fraction(g: Graph, radius: int) -> Fraction:
    """Fraction of vertices whose radius-R ball contains a cycle.

    The ball around v is connected, so it contains a cycle iff its induced
    edge count reaches its vertex count.
    """
    adj = g.adjacency_lists()
    count = 0
    for v in range(g.n):
        dm = bfs_distances(g, v, cap=radius)
        inside = np.nonzero(dm.dist >= 0)[0]
        mask = dm.dist >= 0
        twice_edges = sum(int(mask[y]) for x in inside for y in adj[int(x)])
        if twice_edges // 2 >= len(inside):
            count += 1
    return Fraction(count, g.n) if g.n else Fraction(0, 1)


# -- edge-list text format ---------------------------------------------------
#
# First line "n m", then m lines "u v" (0-based, whitespace-separated).

def load_edge_list(path) -> Graph:
    """Parse the edge-list text format, rejecting malformed input with
    line-numbered errors."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise EdgeListFormatError("line 1: missing header 'n m'")
    head = lines[0].split()
    if len(head) != 2:
        raise EdgeListFormatError("line 1: header must be 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise EdgeListFormatError("line 1: header must hold two integers") from None
    if n < 0 or m < 0:
        raise EdgeListFormatError("line 1: n and m must be nonnegative")
    body = [(i + 2, ln) for i, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != m:
        raise EdgeListFormatError(
            f"header declares {m} edges but file has {len(body)} edge lines")
    edges = []
    seen = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListFormatError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(
                f"line {lineno}: endpoints must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListFormatError(
                f"line {lineno}: endpoint out of range [0, {n})")
        if u == v:
            raise EdgeListFormatError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise EdgeListFormatError(f"line {lineno}: duplicate edge {key}")
        seen.add(key)
        edges.append((u, v))
    return build_graph(n, edges)


def save_edge_list(g: Graph, path) -> None:
    e = g.edges()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {len(e)}\n")
        for u, v in e:
            fh.write(f"{u} {v}\n")
