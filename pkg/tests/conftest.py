"""Shared test helpers: brute-force oracles independent of the library paths."""

import numpy as np
import pytest

from sparsekit import build_graph, gnp_random_graph


def bellman_ford(G, v0, weights=None):
    """O(n m) exact distances under edge cost 1/w; zero weights forbidden."""
    w = G.edge_w if weights is None else weights
    dist = np.full(G.n, np.inf)
    dist[v0] = 0.0
    for _ in range(G.n):
        changed = False
        for i in range(G.m):
            if w[i] <= 0:
                continue
            c = 1.0 / w[i]
            u, v = int(G.edge_u[i]), int(G.edge_v[i])
            if dist[u] + c < dist[v]:
                dist[v] = dist[u] + c
                changed = True
            if dist[v] + c < dist[u]:
                dist[u] = dist[v] + c
                changed = True
        if not changed:
            break
    return dist


def apsp_costs(n, edge_u, edge_v, edge_w):
    """Floyd-Warshall all-pairs distances under cost 1/w."""
    D = np.full((n, n), np.inf)
    np.fill_diagonal(D, 0.0)
    for u, v, w in zip(edge_u, edge_v, edge_w):
        if w > 0:
            c = 1.0 / w
            if c < D[u, v]:
                D[u, v] = D[v, u] = c
    for k in range(n):
        D = np.minimum(D, D[:, k, None] + D[None, k, :])
    return D


def graph_apsp(G, weights=None):
    w = G.edge_w if weights is None else weights
    return apsp_costs(G.n, G.edge_u, G.edge_v, w)


def minfind_postcondition_holds(items, d, selected, tiebreak=None):
    """Literal O(N d) check of the minfind output contract."""
    types = {g for _, g in items}
    if len(selected) != min(d, len(types)):
        return False
    sel_types = [items[i][1] for i in selected]
    if len(set(sel_types)) != len(sel_types):
        return False
    by_type = {items[i][1]: items[i][0] for i in selected}
    for j, (fj, gj) in enumerate(items):
        if j in selected:
            continue
        for i in selected:
            if fj < items[i][0]:
                if gj not in by_type or by_type[gj] > fj:
                    return False
    return True


def random_mixed_graph(seed, n_lo=4, n_hi=40, zero_frac=0.2):
    """Random weighted graph, a fraction of edges forced to weight zero."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_lo, n_hi + 1))
    G = gnp_random_graph(n, float(rng.uniform(0.1, 0.6)), 0.5, 3.0, seed=seed + 1)
    if G.m and zero_frac > 0:
        w = G.edge_w.copy()
        kill = rng.random(G.m) < zero_frac
        w[kill] = 0.0
        G = G.with_weights(w)
    return G


def grid_graph(rows, cols, w=1.0):
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, w))
            if r + 1 < rows:
                edges.append((v, v + cols, w))
    return build_graph(rows * cols, edges)


def cycle_graph(n, w=1.0):
    return build_graph(n, [(i, (i + 1) % n, w) for i in range(n)])


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240901)
