"""Weighted undirected graphs in compressed adjacency form.

Edges carry conductances: weight w means traversal cost 1/w, and w = 0 is
the sentinel for a forbidden edge (infinite cost). Parallel input edges are
merged by summing weights, matching Laplacian semantics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import (
    BadNodeId,
    BadWeight,
    LengthMismatch,
    RejectedEdge,
    TooLargeForDense,
)

DENSE_GUARD = 4096


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable undirected weighted graph.

    Edge i connects ``edge_u[i] < edge_v[i]`` with weight ``edge_w[i]``.
    Adjacency is stored CSR-style: the neighbors of node v are
    ``adj_node[indptr[v]:indptr[v+1]]`` with matching edge ids in
    ``adj_eid``. Weights are always looked up through the edge id, so a
    caller can reinterpret the same structure under a different weight
    vector (residual views, implicit reweightings).
    """

    n: int
    edge_u: np.ndarray
    edge_v: np.ndarray
    edge_w: np.ndarray
    indptr: np.ndarray
    adj_node: np.ndarray
    adj_eid: np.ndarray
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edge_u)

    @property
    def total_weight(self) -> float:
        return float(self.edge_w.sum())

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> tuple[np.ndarray, np.ndarray]:
        """(neighbor ids, edge ids) of node v, in stored order."""
        lo, hi = self.indptr[v], self.indptr[v + 1]
        return self.adj_node[lo:hi], self.adj_eid[lo:hi]

    def edge_weight(self, eid: int) -> float:
        return float(self.edge_w[eid])

    def edges(self):
        """Iterate (u, v, w) triples in canonical order."""
        for i in range(self.m):
            yield int(self.edge_u[i]), int(self.edge_v[i]), float(self.edge_w[i])

    def with_weights(self, new_w: np.ndarray) -> "WeightedGraph":
        """Same structure, different weight vector (length m, finite, >= 0)."""
        w = np.asarray(new_w, dtype=np.float64)
        if w.shape != self.edge_w.shape:
            raise LengthMismatch(f"expected {self.m} weights, got {w.shape}")
        if np.any(~np.isfinite(w)) or np.any(w < 0):
            raise BadWeight("weights must be finite and >= 0")
        return WeightedGraph(self.n, self.edge_u, self.edge_v, w,
                             self.indptr, self.adj_node, self.adj_eid)

    def subgraph(self, edge_ids, weights=None) -> "WeightedGraph":
        """Graph on the same node set keeping only the given edges.

        ``weights`` optionally reassigns the kept edges' weights (aligned
        with ``edge_ids``).
        """
        ids = np.asarray(edge_ids, dtype=np.int64)
        w = self.edge_w[ids] if weights is None else np.asarray(weights, dtype=np.float64)
        return build_graph(self.n, list(zip(self.edge_u[ids].tolist(),
                                            self.edge_v[ids].tolist(),
                                            w.tolist())))

    def components(self) -> np.ndarray:
        """Component label per node, connectivity via positive-weight edges.

        Labels are normalized to the smallest node id in each component, so
        equal partitions get equal label arrays.
        """
        if "components" not in self._cache:
            self._cache["components"] = component_labels(self)
        return self._cache["components"]

    def is_connected(self) -> bool:
        return self.n <= 1 or bool((self.components() == 0).all())


def component_labels(G: WeightedGraph, weights: np.ndarray | None = None) -> np.ndarray:
    """Connected-component labels under positive entries of a weight view."""
    w = G.edge_w if weights is None else weights
    keep = w > 0
    mat = sp.csr_matrix(
        (np.ones(int(keep.sum())), (G.edge_u[keep], G.edge_v[keep])),
        shape=(G.n, G.n),
    )
    _, raw = sp.csgraph.connected_components(mat, directed=False)
    # normalize: label = smallest node id in the component
    first = np.full(raw.max() + 1 if G.n else 0, -1, dtype=np.int64)
    for v in range(G.n - 1, -1, -1):
        first[raw[v]] = v
    return first[raw] if G.n else np.zeros(0, dtype=np.int64)


def build_graph(n: int, raw_edges) -> WeightedGraph:
    """Validate and canonicalize an edge list into a WeightedGraph.

    Parallel edges are merged by summing weights; stored edges are sorted by
    (min endpoint, max endpoint), which makes construction deterministic
    under any input order.
    """
    if n < 0:
        raise BadNodeId("node count must be >= 0")
    us, vs, ws = [], [], []
    for (u, v, w) in raw_edges:
        if u == v:
            raise RejectedEdge(f"self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise BadNodeId(f"edge ({u},{v}) outside [0,{n})")
        w = float(w)
        if math.isnan(w) or math.isinf(w) or w < 0:
            raise BadWeight(f"edge ({u},{v}) has weight {w}")
        us.append(min(u, v))
        vs.append(max(u, v))
        ws.append(w)

    eu = np.asarray(us, dtype=np.int64)
    ev = np.asarray(vs, dtype=np.int64)
    ew = np.asarray(ws, dtype=np.float64)
    if len(eu):
        key = eu * n + ev
        uniq, inv = np.unique(key, return_inverse=True)
        merged_w = np.zeros(len(uniq))
        np.add.at(merged_w, inv, ew)
        eu = (uniq // n).astype(np.int64)
        ev = (uniq % n).astype(np.int64)
        ew = merged_w

    m = len(eu)
    # CSR adjacency over both directions
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, eu, 1)
    np.add.at(deg, ev, 1)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    adj_node = np.zeros(2 * m, dtype=np.int64)
    adj_eid = np.zeros(2 * m, dtype=np.int64)
    cursor = indptr[:-1].copy()
    for i in range(m):
        u, v = eu[i], ev[i]
        adj_node[cursor[u]] = v
        adj_eid[cursor[u]] = i
        cursor[u] += 1
        adj_node[cursor[v]] = u
        adj_eid[cursor[v]] = i
        cursor[v] += 1

    for arr in (eu, ev, ew, indptr, adj_node, adj_eid):
        arr.setflags(write=False)
    return WeightedGraph(n, eu, ev, ew, indptr, adj_node, adj_eid)


def cut_value(G: WeightedGraph, members) -> float:
    """Total weight crossing the cut (members, complement)."""
    S = _as_member_mask(G.n, members)
    cross = S[G.edge_u] ^ S[G.edge_v]
    return float(G.edge_w[cross].sum())


def _as_member_mask(n: int, members) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = np.fromiter(members, dtype=np.int64) if not isinstance(members, np.ndarray) else members
    if idx.dtype == bool:
        mask = idx.copy()
    else:
        if len(idx) and (idx.min() < 0 or idx.max() >= n):
            raise BadNodeId("cut member outside [0, n)")
        mask[idx] = True
    k = int(mask.sum())
    if k == 0 or k == n:
        raise BadNodeId("cut must be a nonempty proper subset")
    return mask


def laplacian_quadratic(G: WeightedGraph, x) -> float:
    """sum_e w_e (x_u - x_v)^2."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (G.n,):
        raise LengthMismatch(f"expected vector of length {G.n}")
    d = x[G.edge_u] - x[G.edge_v]
    return float((G.edge_w * d * d).sum())


def dense_laplacian(G: WeightedGraph, guard: int = DENSE_GUARD) -> np.ndarray:
    """Dense L = D - A. Guarded; intended for verification-scale graphs."""
    if G.n > guard:
        raise TooLargeForDense(f"n={G.n} exceeds dense guard {guard}")
    L = np.zeros((G.n, G.n))
    u, v, w = G.edge_u, G.edge_v, G.edge_w
    np.add.at(L, (u, v), -w)
    np.add.at(L, (v, u), -w)
    np.add.at(L, (u, u), w)
    np.add.at(L, (v, v), w)
    return L


def sparse_laplacian(G: WeightedGraph, weights: np.ndarray | None = None) -> sp.csr_matrix:
    """CSR Laplacian, optionally under a weight view."""
    w = G.edge_w if weights is None else np.asarray(weights, dtype=np.float64)
    u, v = G.edge_u, G.edge_v
    rows = np.concatenate([u, v, u, v])
    cols = np.concatenate([v, u, u, v])
    vals = np.concatenate([-w, -w, w, w])
    return sp.csr_matrix((vals, (rows, cols)), shape=(G.n, G.n))


def incidence_matrix(G: WeightedGraph) -> sp.csr_matrix:
    """Signed m x n incidence under the fixed u < v orientation."""
    m = G.m
    rows = np.concatenate([np.arange(m), np.arange(m)])
    cols = np.concatenate([G.edge_u, G.edge_v])
    vals = np.concatenate([np.ones(m), -np.ones(m)])
    return sp.csr_matrix((vals, (rows, cols)), shape=(m, G.n))


def gnp_random_graph(n: int, p: float, w_lo: float = 1.0, w_hi: float = 1.0,
                     seed: int = 0, force_connected: bool = False) -> WeightedGraph:
    """Erdos-Renyi G(n, p) with uniform weights in [w_lo, w_hi]."""
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x47]))
    iu, iv = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    us, vs = iu[keep], iv[keep]
    if force_connected and n > 1:
        order = rng.permutation(n)
        us = np.concatenate([us, order[:-1]])
        vs = np.concatenate([vs, order[1:]])
    if w_lo == w_hi:
        ws = np.full(len(us), float(w_lo))
    else:
        ws = rng.uniform(w_lo, w_hi, size=len(us))
    return build_graph(n, zip(us.tolist(), vs.tolist(), ws.tolist()))


def random_m_edge_graph(n: int, m: int, w_lo: float = 1.0, w_hi: float = 1.0,
                        seed: int = 0) -> WeightedGraph:
    """Uniform random simple graph with exactly m edges."""
    total = n * (n - 1) // 2
    if m > total:
        raise BadNodeId(f"cannot place {m} simple edges on {n} nodes")
    rng = np.random.default_rng(np.random.SeedSequence([seed, 0x4D]))
    flat = rng.choice(total, size=m, replace=False)
    flat.sort()
    # invert the row-major upper-triangle index
    iu, iv = np.triu_indices(n, k=1)
    us, vs = iu[flat], iv[flat]
    ws = np.full(m, float(w_lo)) if w_lo == w_hi else rng.uniform(w_lo, w_hi, size=m)
    return build_graph(n, zip(us.tolist(), vs.tolist(), ws.tolist()))


def complete_graph(n: int, w: float = 1.0) -> WeightedGraph:
    iu, iv = np.triu_indices(n, k=1)
    return build_graph(n, zip(iu.tolist(), iv.tolist(), [w] * len(iu)))
