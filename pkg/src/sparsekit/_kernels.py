"""Compiled shortest-path-tree kernel shared by Dijkstra and spanner growth.

The kernel is edge-based: the frontier heap holds border edges ordered by
(cost, edge id), so among equal-cost border edges the smallest edge id wins.
That tie rule is load-bearing: it makes tree growth deterministic and lets
the partitioned SPT construction reproduce Dijkstra's parents exactly.
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _less(hcost, htie, i, j):
    if hcost[i] != hcost[j]:
        return hcost[i] < hcost[j]
    return htie[i] < htie[j]


@njit(cache=True)
def _push(hcost, htie, hu, hv, heid, size, c, tie, u, v, eid):
    i = size
    hcost[i] = c
    htie[i] = tie
    hu[i] = u
    hv[i] = v
    heid[i] = eid
    while i > 0:
        p = (i - 1) >> 1
        if _less(hcost, htie, i, p):
            hcost[i], hcost[p] = hcost[p], hcost[i]
            htie[i], htie[p] = htie[p], htie[i]
            hu[i], hu[p] = hu[p], hu[i]
            hv[i], hv[p] = hv[p], hv[i]
            heid[i], heid[p] = heid[p], heid[i]
            i = p
        else:
            break
    return size + 1


@njit(cache=True)
def _pop(hcost, htie, hu, hv, heid, size):
    c = hcost[0]
    u = hu[0]
    v = hv[0]
    eid = heid[0]
    size -= 1
    if size > 0:
        hcost[0] = hcost[size]
        htie[0] = htie[size]
        hu[0] = hu[size]
        hv[0] = hv[size]
        heid[0] = heid[size]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            best = i
            if l < size and _less(hcost, htie, l, best):
                best = l
            if r < size and _less(hcost, htie, r, best):
                best = r
            if best == i:
                break
            hcost[i], hcost[best] = hcost[best], hcost[i]
            htie[i], htie[best] = htie[best], htie[i]
            hu[i], hu[best] = hu[best], hu[i]
            hv[i], hv[best] = hv[best], hv[i]
            heid[i], heid[best] = heid[best], heid[i]
            i = best
    return c, u, v, eid, size


@njit(cache=True)
def sptree(indptr, adj_node, adj_eid, weights, sources, source_dists, bound, n):
    """Grow a shortest-path tree under edge costs 1/w.

    sources/source_dists seed the heap (a multi-source search is a virtual
    source attached by zero-cost links). ``bound`` of length n restricts
    relaxation: a node v may only be reached at cost strictly below
    bound[v] (pass an empty array to disable). Edges of weight 0 are
    forbidden and never traversed.

    Returns (dist, parent_edge, parent_node, reached, expansions, scans):
    dist is +inf outside the tree, parent ids are -1 at sources/unreached,
    expansions counts degree queries and scans counts neighbor+weight probe
    pairs, for ledger accounting.
    """
    INF = np.inf
    use_bound = bound.shape[0] == n

    dist = np.full(n, INF)
    tent = np.full(n, INF)
    parent_edge = np.full(n, -1, dtype=np.int64)
    parent_node = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(n, dtype=np.uint8)

    cap = adj_node.shape[0] + sources.shape[0] + 1
    hcost = np.empty(cap)
    htie = np.empty(cap, dtype=np.int64)
    hu = np.empty(cap, dtype=np.int64)
    hv = np.empty(cap, dtype=np.int64)
    heid = np.empty(cap, dtype=np.int64)
    size = 0

    for s_idx in range(sources.shape[0]):
        s = sources[s_idx]
        d0 = source_dists[s_idx]
        if use_bound and d0 >= bound[s]:
            continue
        size = _push(hcost, htie, hu, hv, heid, size, d0, -1 - s_idx, -1, s, -1)
        if d0 < tent[s]:
            tent[s] = d0

    reached = 0
    expansions = 0
    scans = 0
    while size > 0:
        c, u, v, eid, size = _pop(hcost, htie, hu, hv, heid, size)
        if visited[v] == 1:
            continue
        visited[v] = 1
        dist[v] = c
        parent_edge[v] = eid
        parent_node[v] = u
        reached += 1
        expansions += 1
        for idx in range(indptr[v], indptr[v + 1]):
            w2 = adj_node[idx]
            e2 = adj_eid[idx]
            scans += 1
            if visited[w2] == 1:
                continue
            wt = weights[e2]
            if wt <= 0.0:
                continue
            cand = c + 1.0 / wt
            if use_bound and cand >= bound[w2]:
                continue
            if cand <= tent[w2]:
                tent[w2] = cand
                size = _push(hcost, htie, hu, hv, heid, size, cand, e2, v, w2, e2)

    return dist, parent_edge, parent_node, reached, expansions, scans


_EMPTY_BOUND = np.empty(0, dtype=np.float64)


def run_sptree(G, sources, source_dists=None, bound=None, weights=None):
    """Python-side wrapper normalizing arguments for the kernel."""
    src = np.asarray(sources, dtype=np.int64)
    sd = (np.zeros(len(src)) if source_dists is None
          else np.asarray(source_dists, dtype=np.float64))
    b = _EMPTY_BOUND if bound is None else np.asarray(bound, dtype=np.float64)
    w = G.edge_w if weights is None else np.asarray(weights, dtype=np.float64)
    return sptree(G.indptr, G.adj_node, G.adj_eid, w, src, sd, b, G.n)
