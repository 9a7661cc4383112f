"""Leaf pairing by iterated edge swaps.

Two depth-D d-ary trees glued leaf-to-leaf along a bijection form a graph
whose every cycle threads the identified leaves.  Starting from a seeded
random bijection, repeatedly pick an identified vertex on a shortest cycle
and exchange its movable tree-parent with that of a far-away identified
vertex; each exchange destroys the chosen cycle and creates none as short,
so the girth climbs to the logarithmic target.  The same engine re-wires
tree leaves onto anchor vertices of an ambient graph, where cycles through
the host count too.

Exact path-counting formulas for alternating leaf-to-leaf paths in the
glued double tree are provided as oracles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graphs import ConstructionError, Graph, build_graph
from .trees import DaryTree, level_sizes

_BIG = 10 ** 9


# -- path counting -------------------------------------------------------------

def path_count_exact(d: int, r: int, s: int) -> int:
    """Number of alternating leaf-to-leaf paths of half-length s made of
    exactly r tree segments, from a fixed identified vertex:
    2 C(s-1, r-1) (d-1)^r d^(s-r)."""
    if r < 1:
        raise ValueError("segment count r must be at least 1")
    if r > s:
        raise ValueError("segment count r cannot exceed half-length s")
    return 2 * math.comb(s - 1, r - 1) * (d - 1) ** r * d ** (s - r)


def path_count_total(d: int, s: int) -> int:
    """Alternating leaf-to-leaf paths of length exactly 2s from a fixed
    identified vertex: 2(d-1)(2d-1)^(s-1)."""
    if s < 1:
        raise ValueError("half-length s must be at least 1")
    return 2 * (d - 1) * (2 * d - 1) ** (s - 1)


def path_count_cumulative(d: int, k: int) -> int:
    """1 + sum of path_count_total(d, s) for s <= k, which telescopes to
    (2d-1)^k; bounds the identified vertices within distance 2k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return (2 * d - 1) ** k


def _floor_log(base: int, value: int) -> int:
    """Largest t >= 0 with base**t <= value (value >= 1), exactly."""
    t = 0
    acc = base
    while acc <= value:
        t += 1
        acc *= base
    return t


def girth_target(d: int, n_leaves: int) -> int:
    """floor(2 log_{2d-1}(n-1)) + 2, rounded up to even (cycle lengths in
    the pure double tree are even)."""
    t = _floor_log(2 * d - 1, (n_leaves - 1) ** 2) + 2
    return t if t % 2 == 0 else t + 1


def guaranteed_girth(d: int, n_leaves: int) -> int:
    """2 floor(log_{2d-1}(n-1)) + 2, the level up to which a far partner is
    guaranteed by the path-count bound."""
    return 2 * _floor_log(2 * d - 1, n_leaves - 1) + 2


# -- mutable swap state --------------------------------------------------------

class _SwapState:
    """Adjacency kept simultaneously as Python lists (for scalar BFS) and
    CSR arrays (for vectorized scans); swaps only ever replace one neighbor
    entry by another, so degrees never change and both stay in sync."""

    def __init__(self, n: int, edges):
        lists = [[] for _ in range(n)]
        for u, v in edges:
            lists[u].append(v)
            lists[v].append(u)
        self.n = n
        self.lists = lists
        deg = np.fromiter((len(a) for a in lists), dtype=np.int64, count=n)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=self.indptr[1:])
        flat = [w for a in lists for w in a]
        self.indices = np.array(flat, dtype=np.int64)

    def _replace(self, u: int, old: int, new: int):
        a = self.lists[u]
        a[a.index(old)] = new
        s, e = self.indptr[u], self.indptr[u + 1]
        seg = self.indices[s:e]
        seg[np.nonzero(seg == old)[0][0]] = new

    def exchange_parents(self, x: int, y: int, px: int, py: int):
        """Edges (x, px), (y, py) become (x, py), (y, px)."""
        self._replace(x, px, py)
        self._replace(y, py, px)
        self._replace(px, x, y)
        self._replace(py, y, x)

    def csr_bool(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.uint8)
        return sp.csr_matrix((data, self.indices, self.indptr),
                             shape=(self.n, self.n))

    def to_graph(self) -> Graph:
        return build_graph(self.n, [(u, v) for u in range(self.n)
                                    for v in self.lists[u] if u < v])


def _cycle_through_edge(lists, x: int, parent: int, cutoff: int) -> int:
    """Shortest cycle length through the edge (x, parent), or a big value if
    it exceeds ``cutoff``.  Equals 1 + dist(x, parent) with the edge removed."""
    if cutoff < 3:
        return _BIG
    dist = {x: 0}
    q = []
    for w in lists[x]:
        if w != parent and w not in dist:
            dist[w] = 1
            q.append(w)
    qi = 0
    limit = cutoff - 2
    while qi < len(q):
        w = q[qi]
        qi += 1
        dw = dist[w]
        for z in lists[w]:
            if z == parent:
                return dw + 2
            if dw < limit and z not in dist:
                dist[z] = dw + 1
                q.append(z)
    return _BIG


def _bfs_mark(state: _SwapState, src: int, max_depth: int) -> np.ndarray:
    """Boolean mask of vertices within max_depth hops of src (CSR gather)."""
    indptr, indices = state.indptr, state.indices
    seen = np.zeros(state.n, dtype=bool)
    seen[src] = True
    frontier = np.array([src], dtype=np.int64)
    for _ in range(max_depth):
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        base = np.repeat(starts, counts)
        offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        nbrs = indices[base + offs]
        new = nbrs[~seen[nbrs]]
        if new.size == 0:
            break
        seen[new] = True
        frontier = np.unique(new)
    return seen


def _batched_cycle_scan(state: _SwapState, points: np.ndarray,
                        parents: np.ndarray, cutoff: int,
                        chunk: int = 2048) -> np.ndarray:
    """Cycle length through each movable edge (points[i], parents[i]), with
    lengths above ``cutoff`` reported as _BIG.  One frontier-expansion BFS
    per point, run in bulk as sparse boolean matrix products."""
    npts = len(points)
    out = np.full(npts, _BIG, dtype=np.int64)
    steps = cutoff - 2
    if steps < 1:
        return out
    A = state.csr_bool()
    indptr, indices = state.indptr, state.indices
    for lo in range(0, npts, chunk):
        rows = np.arange(lo, min(lo + chunk, npts))
        R = len(rows)
        pts = points[rows]
        tgt = parents[rows]
        visited = np.zeros((R, state.n), dtype=bool)
        visited[np.arange(R), pts] = True
        fr, fc = [], []
        for i in range(R):
            nb = indices[indptr[pts[i]]:indptr[pts[i] + 1]]
            nb = nb[nb != tgt[i]]
            fr.append(np.full(len(nb), i, dtype=np.int64))
            fc.append(nb)
        fr = np.concatenate(fr) if fr else np.zeros(0, np.int64)
        fc = np.concatenate(fc) if fc else np.zeros(0, np.int64)
        visited[fr, fc] = True
        hit = np.full(R, -1, dtype=np.int64)
        F = sp.csr_matrix((np.ones(len(fr), np.uint8), (fr, fc)),
                          shape=(R, state.n))
        for step in range(1, steps + 1):
            F = (F @ A).tocoo()
            r, c = F.row, F.col
            keep = ~visited[r, c]
            r, c = r[keep], c[keep]
            if len(r) == 0:
                break
            hits = c == tgt[r]
            if hits.any():
                for i in np.unique(r[hits]):
                    if hit[i] < 0:
                        hit[i] = step
            visited[r, c] = True
            live = hit[r] < 0
            r, c = r[live], c[live]
            if len(r) == 0:
                break
            F = sp.csr_matrix((np.ones(len(r), np.uint8), (r, c)),
                              shape=(R, state.n))
        got = hit >= 0
        out[rows[got]] = hit[got] + 2
    return out


# -- the swap engine -----------------------------------------------------------

@dataclass
class _EngineResult:
    achieved: int          # min cycle length through the movable edges
    swaps: int
    stalled: bool          # stopped at a local optimum short of the target


def _run_swaps(state: _SwapState, points: np.ndarray, slots: np.ndarray,
               slot_parent: np.ndarray, target: int, guaranteed: int,
               max_swaps: int) -> _EngineResult:
    """Raise the shortest cycle through the movable edges to ``target``.

    At level g (current shortest), a far partner at distance >= target keeps
    every newly created cycle at length >= min(target, 2g) > g.  Below the
    ``guaranteed`` level such a partner exists by the path-count bound and
    its absence is a hard internal error; at or above it we fall back to
    trying every partner and accepting a swap only when neither rewired edge
    carries a cycle of length <= g afterwards.  When even that stalls, the
    engine stops and reports honestly.
    """
    npts = len(points)
    if len(np.unique(slot_parent)) <= 1:
        # all leaves hang off one parent: every assignment is the same graph
        return _EngineResult(_BIG, 0, False)
    swaps = 0

    def do_swap(i, j):
        state.exchange_parents(points[i], points[j], slot_parent[slots[i]],
                               slot_parent[slots[j]])
        slots[i], slots[j] = slots[j], slots[i]

    while True:
        parents = slot_parent[slots]
        c = _batched_cycle_scan(state, points, parents, target - 1)
        g = int(c.min())
        if g >= target:
            return _EngineResult(g if g < _BIG else _BIG, swaps, False)
        moved = False
        for i in np.nonzero(c == g)[0]:
            x = int(points[i])
            if _cycle_through_edge(state.lists, x, int(slot_parent[slots[i]]),
                                   g) > g:
                continue  # an earlier swap in this pass already fixed it
            # far partner: nothing within distance target-1 of x
            seen = _bfs_mark(state, x, target - 1)
            far = np.nonzero(~seen[points])[0]
            if far.size:
                do_swap(i, int(far[0]))
                swaps += 1
                moved = True
            elif g < guaranteed:
                # the path-count bound promises a partner beyond the
                # guaranteed radius; a swap with it creates nothing <= g
                seen = _bfs_mark(state, x, guaranteed - 2)
                far = np.nonzero(~seen[points])[0]
                if not far.size:
                    raise ConstructionError(
                        f"no partner beyond distance {guaranteed - 2} at "
                        f"level {g}: path-count bound violated")
                do_swap(i, int(far[0]))
                swaps += 1
                moved = True
            else:
                for j in range(npts):
                    if j == i or slot_parent[slots[j]] == slot_parent[slots[i]]:
                        continue
                    do_swap(i, j)
                    ok_i = _cycle_through_edge(
                        state.lists, x, int(slot_parent[slots[i]]), g) > g
                    ok_j = ok_i and _cycle_through_edge(
                        state.lists, int(points[j]),
                        int(slot_parent[slots[j]]), g) > g
                    if ok_j:
                        swaps += 1
                        moved = True
                        break
                    do_swap(i, j)  # revert; the exchange is an involution
            if swaps > max_swaps:
                raise ConstructionError("swap budget exhausted; not terminating")
        if not moved:
            return _EngineResult(g, swaps, True)


def _exact_min_cycle(state: _SwapState, points, parents, hard_cap: int,
                     start: int = 4) -> int:
    """Exact min cycle length through the movable edges by deepening scans."""
    cutoff = max(4, start)
    while True:
        c = _batched_cycle_scan(state, points, parents, min(cutoff, hard_cap))
        g = int(c.min()) if len(c) else _BIG
        if g < _BIG:
            return g
        if cutoff >= hard_cap:
            return _BIG
        cutoff *= 2


# -- gluing two trees ----------------------------------------------------------

@dataclass
class Pairing:
    """A leaf bijection between two depth-D d-ary trees and the glued graph.

    Vertex layout of ``glued``: T1 interior in level order, then the n
    identified leaves in T1 leaf order, then T2 interior in level order.
    ``pi[i] = j`` means T1 leaf i is identified with T2 leaf j.
    """
    d: int
    depth: int
    pi: np.ndarray
    glued: Graph
    achieved_girth: int
    swap_count: int
    seed: int

    def to_json(self) -> str:
        return json.dumps({"d": self.d, "D": self.depth,
                           "pi": self.pi.tolist(),
                           "girth": self.achieved_girth,
                           "swaps": self.swap_count, "seed": self.seed},
                          sort_keys=True)

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json() + "\n")


def _double_tree_layout(d: int, depth: int):
    """Interior edges and per-slot leaf parents for two disjoint trees.

    Returns (total interior size per tree I, leaf count n, edges, t1_parent
    per slot, t2_parent per slot); identified vertex for slot i is I + i.
    """
    sizes = level_sizes(d, depth - 1)
    I = sum(sizes)
    n = (d + 1) * d ** (depth - 1)
    offs = np.concatenate([[0], np.cumsum(sizes)])
    edges = []
    for base in (0, I + n):
        for lvl in range(1, depth):
            branch = d + 1 if lvl == 1 else d
            for j in range(sizes[lvl]):
                edges.append((base + offs[lvl] + j,
                              base + offs[lvl - 1] + j // branch))
    branch = d + 1 if depth == 1 else d
    t1p = np.array([offs[depth - 1] + i // branch for i in range(n)])
    t2p = t1p + (I + n)
    return I, n, edges, t1p, t2p


def pair_trees(d: int, depth: int, seed: int = 0) -> Pairing:
    """Glue two depth-``depth`` d-ary trees leaf-to-leaf with girth at least
    floor(2 log_{2d-1}(n-1)) + 2, n = (d+1) d^(depth-1), by seeded random
    start plus girth-improving swaps."""
    if d < 2:
        raise ValueError("branching d must be at least 2")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    I, n, edges, t1p, t2p = _double_tree_layout(d, depth)
    rng = np.random.default_rng(seed)
    pi = rng.permutation(n)
    points = I + np.arange(n)
    for i in range(n):
        edges.append((int(points[i]), int(t1p[i])))
        edges.append((int(points[i]), int(t2p[pi[i]])))
    state = _SwapState(2 * I + n, edges)
    target = girth_target(d, n)
    guaranteed = guaranteed_girth(d, n)
    slots = pi.copy()
    res = _run_swaps(state, points, slots, t2p, target, guaranteed,
                     max_swaps=10 * n + 1000)
    girth = _exact_min_cycle(state, points, t2p[slots], 4 * depth + 2,
                             start=min(res.achieved, 4 * depth + 2))
    if girth < guaranteed:
        raise ConstructionError(
            f"pairing girth {girth} below guaranteed {guaranteed}")
    return Pairing(d, depth, slots, state.to_graph(), girth, res.swaps,
                   seed)


def identify_onto_anchors(g: Graph, tree: DaryTree, anchors,
                          seed: int = 0) -> Graph:
    """Attach a tree to ``g`` by identifying its leaves with the anchor
    vertices, choosing the bijection by girth-improving swaps on the
    combined graph (ambient cycles count); stops at a local optimum of
    (girth, -number of shortest cycles)."""
    anchors = np.asarray(list(anchors), dtype=np.int64)
    if tree.depth < 1:
        raise ValueError("a depth-0 tree has no leaves distinct from its root")
    nleaves = len(tree.leaves)
    if len(anchors) != nleaves:
        raise ValueError(f"need {nleaves} anchors, got {len(anchors)}")
    if len(np.unique(anchors)) != len(anchors):
        raise ValueError("anchors must be pairwise distinct")
    if anchors.size and (anchors.min() < 0 or anchors.max() >= g.n):
        raise ValueError("anchor out of range")
    edges = [tuple(e) for e in g.edges()]
    base = g.n
    # interior vertices of the tree get ids base..base+I-1 in level order
    interior = np.concatenate(tree.levels[:-1])
    local = {int(v): base + i for i, v in enumerate(interior)}
    for lvl in range(1, tree.depth):
        for v in tree.levels[lvl]:
            p = int(tree.graph.neighbors(int(v))[0])  # parent is the smallest id
            edges.append((local[int(v)], local[p]))
    slot_parent = np.array(
        [local[int(tree.graph.neighbors(int(leaf))[0])] for leaf in tree.leaves],
        dtype=np.int64)
    rng = np.random.default_rng(seed)
    slots = rng.permutation(nleaves)
    for i in range(nleaves):
        edges.append((int(anchors[i]), int(slot_parent[slots[i]])))
    state = _SwapState(base + len(interior), edges)
    cap = 2 * tree.depth + 2 * g.n  # no cycle through the tree can be longer
    _run_swaps(state, anchors, slots, slot_parent, cap, 0,
               max_swaps=10 * nleaves + 1000)
    return state.to_graph()
