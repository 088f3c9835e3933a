import numpy as np
import pytest

import sparsekit as sk
from sparsekit.resistance import (
    edge_resistance_estimates,
    exact_resistance_matrix,
    sketch_rows,
)
from conftest import cycle_graph


def test_exact_single_edge_and_path():
    G = sk.build_graph(2, [(0, 1, 4.0)])
    assert sk.exact_resistance(G, 0, 1) == pytest.approx(0.25)
    P = sk.build_graph(4, [(0, 1, 1.0), (1, 2, 2.0), (2, 3, 4.0)])
    assert sk.exact_resistance(P, 0, 3) == pytest.approx(1 + 0.5 + 0.25)


def test_exact_complete_graph_pair():
    K = sk.complete_graph(8)
    assert sk.exact_resistance(K, 2, 5) == pytest.approx(2 / 8)


def test_exact_different_components():
    G = sk.build_graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(sk.DifferentComponents):
        sk.exact_resistance(G, 0, 3)
    assert sk.exact_resistance(G, 2, 3) == pytest.approx(1.0)


def test_foster_identity():
    for seed in range(10):
        G = sk.gnp_random_graph(40, 0.2, 0.5, 3.0, seed=seed, force_connected=True)
        total = sum(w * sk.exact_resistance(G, u, v) for u, v, w in G.edges())
        assert total == pytest.approx(G.n - 1, rel=1e-9)


def test_rayleigh_monotonicity():
    # deleting a non-bridge edge never decreases any effective resistance
    for seed in range(6):
        G = sk.gnp_random_graph(14, 0.45, 0.5, 2.0, seed=seed, force_connected=True)
        R0 = exact_resistance_matrix(G)
        rng = np.random.default_rng(seed)
        for _ in range(4):
            e = int(rng.integers(0, G.m))
            w2 = G.edge_w.copy()
            w2[e] = 0.0
            H = G.with_weights(w2)
            if not H.is_connected():
                continue
            R1 = exact_resistance_matrix(H)
            assert np.all(R1 >= R0 - 1e-9)


def test_resistance_triangle_inequality():
    G = sk.gnp_random_graph(20, 0.3, 0.5, 2.0, seed=9, force_connected=True)
    R = exact_resistance_matrix(G)
    rng = np.random.default_rng(1)
    for _ in range(200):
        s, t, u = rng.choice(20, size=3, replace=False)
        assert R[s, u] <= R[s, t] + R[t, u] + 1e-9


def test_oracle_dimension_formula():
    assert sketch_rows(256, 0.5) == 24 * 8 * 4
    G = sk.gnp_random_graph(64, 0.4, 1.0, 1.0, seed=0, force_connected=True)
    o = sk.build_resistance_oracle(G, 0.5, seed=1)
    assert o.q == sketch_rows(64, 0.5)
    assert o.Z.shape == (o.q, 64)


def test_oracle_two_node_graph():
    G = sk.build_graph(2, [(0, 1, 2.0)])
    o = sk.build_resistance_oracle(G, 0.5, seed=3)
    est = sk.query_resistance(o, 0, 1)
    assert (1 - 0.5) * 0.5 <= est <= (1 + 0.5) * 0.5


def test_oracle_rejects_disconnected():
    G = sk.build_graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(sk.Disconnected):
        sk.build_resistance_oracle(G, 0.5)


def test_oracle_accuracy_all_pairs():
    G = sk.gnp_random_graph(100, 0.3, 1.0, 1.0, seed=4, force_connected=True)
    o = sk.build_resistance_oracle(G, 0.25, seed=9)
    R = exact_resistance_matrix(G)
    d = np.einsum("qi,qi->i", o.Z, o.Z)
    est = d[:, None] + d[None, :] - 2 * (o.Z.T @ o.Z)
    iu = np.triu_indices(G.n, 1)
    ratio = est[iu] / R[iu]
    ok = (ratio >= 1 - 1.1 * 0.25) & (ratio <= 1 + 1.1 * 0.25)
    assert ok.mean() >= 0.95


def test_query_properties():
    G = sk.gnp_random_graph(30, 0.4, 1.0, 2.0, seed=2, force_connected=True)
    o = sk.build_resistance_oracle(G, 0.5, seed=5)
    assert sk.query_resistance(o, 7, 7) == 0.0
    assert sk.query_resistance(o, 3, 11) == sk.query_resistance(o, 11, 3)
    assert sk.query_resistance(o, 0, 1) >= 0.0


def test_edge_estimates_match_queries():
    G = sk.gnp_random_graph(25, 0.4, 1.0, 2.0, seed=8, force_connected=True)
    o = sk.build_resistance_oracle(G, 0.5, seed=2)
    est = edge_resistance_estimates(o, G)
    for i in (0, G.m // 2, G.m - 1):
        u, v = int(G.edge_u[i]), int(G.edge_v[i])
        assert est[i] == pytest.approx(sk.query_resistance(o, u, v))


def test_commute_time():
    G2 = sk.build_graph(2, [(0, 1, 1.0)])
    assert sk.commute_time(G2, sk.exact_resistance(G2, 0, 1)) == pytest.approx(2.0)
    K = sk.complete_graph(8)
    assert sk.commute_time(K, sk.exact_resistance(K, 0, 1)) == pytest.approx(14.0)


def test_commute_time_scale_invariant():
    G = sk.gnp_random_graph(20, 0.4, 1.0, 2.0, seed=3, force_connected=True)
    c1 = sk.commute_time(G, sk.exact_resistance(G, 0, 5))
    H = G.with_weights(G.edge_w * 3.0)
    c2 = sk.commute_time(H, sk.exact_resistance(H, 0, 5))
    assert c1 == pytest.approx(c2)


def test_dissipated_power():
    G = sk.gnp_random_graph(50, 0.25, 0.5, 2.0, seed=6, force_connected=True)
    assert sk.dissipated_power(G, np.zeros(50)) == 0.0
    j = np.zeros(50)
    j[4], j[17] = 1.0, -1.0
    assert sk.dissipated_power(G, j) == pytest.approx(
        sk.exact_resistance(G, 4, 17), rel=1e-6)
    rng = np.random.default_rng(0)
    jr = rng.normal(size=50)
    jr -= jr.mean()
    Lp = np.linalg.pinv(sk.dense_laplacian(G))
    assert sk.dissipated_power(G, jr) == pytest.approx(jr @ Lp @ jr, rel=1e-6)
    with pytest.raises(sk.UnbalancedDemand):
        sk.dissipated_power(G, np.ones(50))


def test_oracle_roundtrip_persistence(tmp_path):
    G = cycle_graph(12)
    o = sk.build_resistance_oracle(G, 0.5, seed=7)
    path = str(tmp_path / "z.oracle")
    sk.save_oracle(o, path)
    o2 = sk.load_oracle(path)
    assert o2.q == o.q and o2.n == o.n and o2.epsilon == o.epsilon
    assert np.array_equal(o2.Z, o.Z)
