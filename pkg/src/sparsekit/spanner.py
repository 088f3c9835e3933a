"""Spanner construction from restricted shortest-path trees, and packings.

The construction samples a hierarchy of node levels, each keeping nodes
with probability n^(-1/k), and grows one shortest-path tree per node around
the nodes that drop out of a level. A tree from v spans the cluster of
nodes strictly closer to v than to the next level, enforced during growth
by refusing relaxations whose tentative distance reaches the cached
distance-to-level table. The union of tree edges is a (2k-1)-spanner.

A packing stacks spanners on residual graphs: every spanner's edges are
zeroed out of the weight view seen by the next one, so the layers are
edge-disjoint and each spans what the earlier ones left behind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import run_sptree
from .graph import WeightedGraph
from .oracle import CostLedger


def default_levels(n: int) -> int:
    """Level count giving stretch 2*ceil(log2 n) - 1 with near-linear size."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


@dataclass
class Spanner:
    """Edge-id subgraph keeping original weights, with stretch 2k-1."""

    edge_ids: np.ndarray
    k: int
    seed: int
    n: int

    @property
    def stretch(self) -> int:
        return 2 * self.k - 1

    @property
    def size(self) -> int:
        return len(self.edge_ids)

    def to_graph(self, G: WeightedGraph) -> WeightedGraph:
        return G.subgraph(self.edge_ids)


@dataclass
class SpannerPacking:
    """Ordered edge-disjoint spanners of successive residual graphs.

    Only the non-empty prefix is stored explicitly: once the residual runs
    out of positive-weight edges, all remaining spanners are empty.
    """

    spanners: list[Spanner]
    r: int
    m: int
    n: int

    def spanner(self, j: int) -> Spanner:
        if not 0 <= j < self.r:
            raise IndexError(j)
        if j < len(self.spanners):
            return self.spanners[j]
        k = self.spanners[0].k if self.spanners else 1
        return Spanner(np.zeros(0, dtype=np.int64), k, 0, self.n)

    def union_mask(self) -> np.ndarray:
        mask = np.zeros(self.m, dtype=bool)
        for sp in self.spanners:
            mask[sp.edge_ids] = True
        return mask

    def residual_weights(self, base_weights: np.ndarray) -> np.ndarray:
        """Implicit residual view: packed edges read as weight 0."""
        w = np.asarray(base_weights, dtype=np.float64).copy()
        w[self.union_mask()] = 0.0
        return w


def build_spanner(G: WeightedGraph, k: int | None = None, seed: int = 0,
                  weights: np.ndarray | None = None,
                  ledger: CostLedger | None = None,
                  resample_limit: int = 10) -> Spanner:
    """Grow a (2k-1)-spanner of G (or of a weight view of G).

    Each tree growth charges the ledger its classical probe count and the
    modeled sqrt(nodes * edge probes) cost of a search-based tree builder.
    """
    n = G.n
    if k is None:
        k = default_levels(n)
    if k < 1:
        raise ValueError("k must be >= 1")
    w = G.edge_w if weights is None else np.asarray(weights, dtype=np.float64)
    rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x535052]))
    p_keep = n ** (-1.0 / k) if n > 1 else 0.0

    in_spanner = np.zeros(G.m, dtype=bool)
    level_prev = np.arange(n)
    for level in range(1, k + 1):
        if level < k and len(level_prev) > 0:
            for _ in range(resample_limit):
                keep = rng.random(len(level_prev)) < p_keep
                if keep.sum() < len(level_prev):
                    break
            level_cur = level_prev[keep]
        else:
            level_cur = np.zeros(0, dtype=np.int64)

        if len(level_cur) > 0:
            delta_level, _, _, reached, expansions, scans = run_sptree(
                G, level_cur, weights=w)
            if ledger is not None:
                ledger.add_classical(2 * scans + expansions)
                ledger.add_quantum(math.sqrt(max(reached, 1) * max(scans, 1)))
        else:
            delta_level = np.full(n, np.inf)

        dropped = level_prev[~np.isin(level_prev, level_cur)] if len(level_cur) else level_prev
        for v in dropped:
            dist, pedge, _, reached, expansions, scans = run_sptree(
                G, [v], bound=delta_level, weights=w)
            if ledger is not None:
                ledger.add_classical(2 * scans + expansions)
                ledger.add_quantum(math.sqrt(max(reached, 1) * max(scans, 1)))
            tree_edges = pedge[np.isfinite(dist) & (pedge >= 0)]
            in_spanner[tree_edges] = True
        level_prev = level_cur
        if len(level_prev) == 0 and level < k:
            break  # lower levels are empty; remaining iterations are no-ops

    return Spanner(np.nonzero(in_spanner)[0].astype(np.int64), k, seed, n)


def spanner_packing(G: WeightedGraph, r: int, seed: int = 0,
                    k: int | None = None,
                    weights: np.ndarray | None = None,
                    ledger: CostLedger | None = None) -> SpannerPacking:
    """r-packing of spanners over successive residual weight views."""
    if r < 1:
        raise ValueError("r must be >= 1")
    resid = (G.edge_w if weights is None else np.asarray(weights, dtype=np.float64)).copy()
    spanners: list[Spanner] = []
    for j in range(r):
        if not (resid > 0).any():
            break  # residual exhausted: all remaining spanners empty
        sp = build_spanner(G, k=k, seed=_derive(seed, j), weights=resid, ledger=ledger)
        resid[sp.edge_ids] = 0.0
        spanners.append(sp)
    return SpannerPacking(spanners, r, G.m, G.n)


def _derive(seed: int, j: int) -> int:
    return (seed * 0x9E3779B1 + j * 0x85EBCA77 + 1) & 0x7FFFFFFFFFFFFFFF
