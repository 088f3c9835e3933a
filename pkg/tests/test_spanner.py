import numpy as np
import pytest

import sparsekit as sk
from conftest import graph_apsp


def _stretch_ok(G, spanner, slack=1e-9):
    DG = graph_apsp(G)
    w_sub = np.zeros(G.m)
    w_sub[spanner.edge_ids] = G.edge_w[spanner.edge_ids]
    DH = graph_apsp(G, weights=w_sub)
    t = spanner.stretch
    finite = np.isfinite(DG)
    return np.all(DH[finite] <= t * DG[finite] * (1 + slack) + slack)


def test_k1_spanner_is_whole_graph():
    K = sk.complete_graph(3)
    sp = sk.build_spanner(K, k=1, seed=0)
    assert sp.size == 3
    assert sp.stretch == 1


def test_k1_preserves_all_distances():
    G = sk.gnp_random_graph(25, 0.3, 0.5, 2.0, seed=4)
    sp = sk.build_spanner(G, k=1, seed=1)
    DG = graph_apsp(G)
    w_sub = np.zeros(G.m)
    w_sub[sp.edge_ids] = G.edge_w[sp.edge_ids]
    DH = graph_apsp(G, weights=w_sub)
    assert np.allclose(DG, DH, equal_nan=True)


@pytest.mark.parametrize("seed", range(8))
def test_stretch_bound_random_graphs(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(16, 80))
    G = sk.gnp_random_graph(n, float(rng.uniform(0.1, 0.5)), 0.5, 2.0, seed=seed + 50)
    sp = sk.build_spanner(G, seed=seed)
    assert _stretch_ok(G, sp), f"stretch violated at seed {seed}"


def test_spanner_keeps_positive_bridges():
    # path of cliques: the path edges are bridges and must survive
    edges = []
    for b in range(3):
        base = b * 5
        edges += [(base + i, base + j, 1.0) for i in range(5) for j in range(i + 1, 5)]
    edges += [(4, 5, 2.0), (9, 10, 2.0)]
    G = sk.build_graph(15, edges)
    bridge_ids = [i for i, (u, v, w) in enumerate(G.edges()) if (u, v) in ((4, 5), (9, 10))]
    for seed in range(5):
        sp = sk.build_spanner(G, seed=seed)
        assert set(bridge_ids) <= set(sp.edge_ids.tolist())


def test_spanner_connected_when_graph_connected():
    for seed in range(5):
        G = sk.gnp_random_graph(40, 0.2, 1.0, 2.0, seed=seed, force_connected=True)
        sp = sk.build_spanner(G, seed=seed)
        H = sp.to_graph(G)
        assert H.is_connected()


def test_spanner_deterministic():
    G = sk.gnp_random_graph(30, 0.3, 1.0, 2.0, seed=9)
    a = sk.build_spanner(G, seed=123)
    b = sk.build_spanner(G, seed=123)
    assert np.array_equal(a.edge_ids, b.edge_ids)


def test_packing_single_layer_matches_spanner():
    G = sk.gnp_random_graph(30, 0.4, 1.0, 2.0, seed=2)
    pk = sk.spanner_packing(G, 1, seed=5)
    assert len(pk.spanners) == 1


def test_packing_of_tree_only_first_layer():
    # a spanner must keep every bridge, so a tree's packing empties after H_1
    rng = np.random.default_rng(0)
    order = rng.permutation(12)
    G = sk.build_graph(12, [(int(order[i]), int(order[i + 1]), 1.0 + i) for i in range(11)])
    pk = sk.spanner_packing(G, 3, seed=1)
    assert len(pk.spanners) == 1  # trailing spanners implicit and empty
    assert pk.spanner(0).size == 11
    assert pk.spanner(1).size == 0
    assert pk.spanner(2).size == 0


def test_packing_disjoint_and_layerwise_spanners():
    G = sk.gnp_random_graph(36, 0.5, 0.5, 2.0, seed=8)
    pk = sk.spanner_packing(G, 5, seed=3)
    seen = set()
    resid_w = G.edge_w.copy()
    for sp in pk.spanners:
        ids = set(sp.edge_ids.tolist())
        assert not ids & seen, "packing layers share an edge"
        # layer must be a spanner of the residual it was grown on
        DG = graph_apsp(G, weights=resid_w)
        w_sub = np.zeros(G.m)
        w_sub[sp.edge_ids] = resid_w[sp.edge_ids]
        DH = graph_apsp(G, weights=w_sub)
        finite = np.isfinite(DG)
        assert np.all(DH[finite] <= sp.stretch * DG[finite] * (1 + 1e-9) + 1e-9)
        resid_w[sp.edge_ids] = 0.0
        seen |= ids


def test_expected_size_bound():
    from sparsekit.spanner import default_levels

    # mean over seeds within 4 k n^(1+1/k), the acceptance budget
    for n in (64, 128):
        G = sk.gnp_random_graph(n, 0.3, 1.0, 2.0, seed=n)
        sizes = [sk.build_spanner(G, seed=s).size for s in range(12)]
        k = default_levels(n)
        assert np.mean(sizes) <= 4 * k * n ** (1 + 1 / k)
