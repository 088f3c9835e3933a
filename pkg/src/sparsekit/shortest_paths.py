"""Shortest-path trees: plain Dijkstra, minfind, and the partitioned variant.

Both tree algorithms grow by repeatedly adding the border edge of minimal
(cost, edge id), where the cost of traversing an edge is 1/w. Because they
share that tie rule they produce identical distance arrays *and* identical
parents, which the test suite checks exactly.

minfind is the type-constrained minimum finder used by the partitioned
construction: executed classically, it also charges the caller's ledger the
modeled sqrt(N*d) cost a quantum minimum-finding routine would pay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import run_sptree
from .graph import WeightedGraph
from .oracle import CostLedger


@dataclass
class ShortestPathTree:
    """Tree rooted at ``root``; dist is +inf outside the root's component."""

    root: int
    dist: np.ndarray
    parent_node: np.ndarray
    parent_edge: np.ndarray

    def reached(self) -> np.ndarray:
        return np.isfinite(self.dist)


@dataclass
class PartitionState:
    """Snapshot of the partitioned construction directly after step 3."""

    sizes: list[int]
    tree_size: int
    borders: list[list[tuple[float, int, int, int]]]


def dijkstra(G: WeightedGraph, v0: int, ledger: CostLedger | None = None,
             weights: np.ndarray | None = None) -> ShortestPathTree:
    """Exact SPT over the component of v0; zero-weight edges never traversed."""
    dist, pedge, pnode, _, expansions, scans = run_sptree(G, [v0], weights=weights)
    if ledger is not None:
        ledger.add_classical(2 * scans + expansions)
    return ShortestPathTree(v0, dist, pnode, pedge)


def minfind(d: int, items, ledger: CostLedger | None = None, tiebreak=None):
    """Indices of per-type minima for the d cheapest types.

    ``items`` is a sequence of (value, type) pairs, values in R or +inf.
    The result I has size min(d, #distinct types), pairwise-distinct types,
    and the defining property: no item outside I beats an item of I unless
    I already holds an item of the same type at most as expensive.

    ``tiebreak`` optionally supplies per-item keys used to order equal
    values (defaults to the item index); the partitioned SPT passes edge
    ids here so its choices line up with Dijkstra's.
    """
    n_items = len(items)
    if ledger is not None and n_items > 0:
        ledger.add_quantum(math.sqrt(n_items * max(d, 1)))
    best: dict = {}
    for idx, (f, g) in enumerate(items):
        tie = tiebreak[idx] if tiebreak is not None else idx
        cur = best.get(g)
        if cur is None or (f, tie) < (cur[0], cur[1]):
            best[g] = (f, tie, idx)
    ranked = sorted(best.values())
    return [idx for (_, _, idx) in ranked[:d]]


def spt_partitioned(G: WeightedGraph, v0: int, ledger: CostLedger | None = None,
                    weights: np.ndarray | None = None, audit=None) -> ShortestPathTree:
    """SPT via partitioned border sets and minfind.

    Maintains node partitions whose sizes are nonincreasing powers of two
    with each partition larger than all later ones combined; the border set
    of the top partition is recomputed by minfind every iteration, merged
    partitions get a fresh one when they surface. ``audit``, when given, is
    called with state snapshots and minfind transcripts for invariant
    checking in tests.
    """
    n = G.n
    w = G.edge_w if weights is None else np.asarray(weights, dtype=np.float64)
    dist = np.full(n, np.inf)
    parent_node = np.full(n, -1, dtype=np.int64)
    parent_edge = np.full(n, -1, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    dist[v0] = 0.0
    in_tree[v0] = True

    partitions: list[list[int]] = [[v0]]
    borders: list[list[tuple[float, int, int, int]]] = [[]]

    while True:
        # step 3: fresh border set for the top partition
        top = partitions[-1]
        items, eids, ends = [], [], []
        for u in top:
            lo, hi = G.indptr[u], G.indptr[u + 1]
            if ledger is not None:
                ledger.add_classical(1)  # degree query
            for pos in range(lo, hi):
                v = int(G.adj_node[pos])
                eid = int(G.adj_eid[pos])
                wt = w[eid]
                if ledger is not None:
                    ledger.add_classical(2)  # neighbor + weight query
                f = dist[u] + 1.0 / wt if (wt > 0.0 and not in_tree[v]) else np.inf
                items.append((f, v))
                eids.append(eid)
                ends.append((u, v))
        chosen = minfind(len(top), items, ledger=ledger, tiebreak=eids)
        borders[-1] = [(items[i][0], eids[i], ends[i][0], ends[i][1]) for i in chosen]
        if audit is not None:
            audit({"event": "minfind", "d": len(top), "items": items,
                   "tiebreak": eids, "selected": chosen})
            audit({"event": "partitions",
                   "state": PartitionState([len(p) for p in partitions],
                                           int(in_tree.sum()),
                                           [list(b) for b in borders])})

        # step 4: cheapest border edge into a node outside the tree
        best = None
        for B in borders:
            for (f, eid, u, v) in B:
                if in_tree[v]:
                    continue
                if best is None or (f, eid) < (best[0], best[1]):
                    best = (f, eid, u, v)
        # step 5: only forbidden (or no) border edges remain
        if best is None or not math.isfinite(best[0]):
            break

        f, eid, u, v = best
        in_tree[v] = True
        dist[v] = f
        parent_node[v] = u
        parent_edge[v] = eid
        partitions.append([v])
        borders.append([])

        # step 9: binary-counter merge of equal-size top partitions
        while len(partitions) >= 2 and len(partitions[-1]) == len(partitions[-2]):
            partitions[-2].extend(partitions[-1])
            partitions.pop()
            borders.pop()
            borders[-1] = []  # recomputed at the next step 3

    return ShortestPathTree(v0, dist, parent_node, parent_edge)
