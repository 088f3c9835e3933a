import numpy as np
import pytest

import sparsekit as sk


EPS_HALF = 0.5  # 1/eps^2 = 4 per side


def test_b_eps_rejects_degenerate():
    with pytest.raises(sk.BadEpsilon):
        sk.gen_b_eps(1.0)
    with pytest.raises(sk.BadEpsilon):
        sk.gen_b_eps(0.3)  # 1/eps^2 not an integer


def test_b_eps_half():
    B = sk.gen_b_eps(EPS_HALF, seed=4)
    assert B.n == 8 and B.m == 8
    for i in range(4):
        assert B.degree(i) == 2
    # bipartite: all edges cross the side boundary
    assert all(u < 4 <= v for u, v, _ in B.edges())


def test_b_eps_quarter_degrees():
    B = sk.gen_b_eps(0.25, seed=1)
    assert B.n == 32 and B.m == 16 * 8
    assert all(B.degree(i) == 8 for i in range(16))


def test_valid_input_figure_shape():
    x = sk.gen_valid_input(8, 16, 1 / np.sqrt(2), seed=0)
    assert (x.ell, x.c, x.N) == (2, 2, 2)
    assert ((x.positions >= 0).sum(axis=2) == 1).all()


def test_valid_input_counts_and_determinism():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sk.EpsilonTooSmallWarning)
        x1 = sk.gen_valid_input(64, 512, 0.25, seed=8)
        x2 = sk.gen_valid_input(64, 512, 0.25, seed=8)
    assert np.array_equal(x1.positions, x2.positions)
    total_nonzero = (x1.positions >= 0).sum()
    assert total_nonzero == x1.ell * x1.c * (x1.c // 2)


def test_valid_input_bad_shapes():
    with pytest.raises(sk.BadShape):
        sk.gen_valid_input(10, 20, 0.5)  # eps^2 n/2 not integral
    with pytest.raises(sk.BadShape):
        sk.gen_valid_input(8, 32, 1 / np.sqrt(2))  # m > n^2/4


def test_matching_edges_identity_and_bounds():
    M0 = sk.matching_edges(0, 512, 64)
    assert M0 == [(i, i) for i in range(16)]
    with pytest.raises(sk.BadShape):
        sk.matching_edges(32, 512, 64)
    lefts = [a for a, _ in sk.matching_edges(3, 512, 64)]
    assert len(set(lefts)) == len(lefts)


def test_matching_partition_exhaustive():
    # n=16, m=32: matchings must tile [2m/n] x [n/2] exactly once
    seen = {}
    for j in range(8):
        for pair in sk.matching_edges(j, 32, 16):
            seen[pair] = seen.get(pair, 0) + 1
    assert len(seen) == 4 * 8
    assert set(seen.values()) == {1}


@pytest.fixture(scope="module")
def hidden():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sk.EpsilonTooSmallWarning)
        x = sk.gen_valid_input(64, 512, 0.25, seed=5)
    return x, sk.build_hidden_graph(x)


def test_hidden_graph_counts(hidden):
    x, hg = hidden
    assert hg.n_edges == 2 * x.m
    assert hg.n_nodes <= 2 * x.n
    G = hg.to_graph()
    assert G.m == 2 * x.m  # no duplicate edges after flipping


def test_hidden_graph_block_subgraph_matches_x(hidden):
    x, hg = hidden
    G = hg.to_graph()
    half = x.n // 2
    got = {(u, v) for u, v, w in G.edges() if w > 0}
    expect = set()
    for (k, i, j) in x.nonzero_strings():
        expect.add((hg.l1(k, i), hg.r1(k, j)))
    assert got == expect
    # every other edge has zero weight
    assert all(w in (0.0, 1.0) for _, _, w in G.edges())


def test_hidden_graph_degrees_oblivious(hidden):
    import warnings
    x, hg = hidden
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sk.EpsilonTooSmallWarning)
        other = sk.gen_valid_input(64, 512, 0.25, seed=777)
    hg2 = sk.build_hidden_graph(other)
    assert np.array_equal(hg.degree_sequence(), hg2.degree_sequence())


def test_hidden_graph_query_consistency(hidden):
    x, hg = hidden
    G = hg.to_graph()
    # adjacency answered via queries must reproduce the materialized graph
    adj_q = {v: set() for v in range(hg.n_nodes)}
    for v in range(hg.n_nodes):
        for i in range(hg.degree(v)):
            nbr, w = hg.neighbor(v, i)
            adj_q[v].add((nbr, w))
    adj_m = {v: set() for v in range(hg.n_nodes)}
    for u, v, w in G.edges():
        adj_m[u].add((v, w))
        adj_m[v].add((u, w))
    assert adj_q == adj_m


def test_hidden_graph_single_lookup_per_query(hidden):
    x, _ = hidden
    hg = sk.build_hidden_graph(x)  # fresh counters
    assert hg.x_lookups == 0
    rng = np.random.default_rng(0)
    for _ in range(1000):
        v = int(rng.integers(0, hg.n_nodes))
        hg.neighbor(v, int(rng.integers(0, hg.degree(v))))
    assert hg.x_lookups == 1000
    before = hg.x_lookups
    hg.degree(3)
    assert hg.x_lookups == before  # degree queries are free


def test_audit_full_and_empty(hidden):
    x, hg = hidden
    G = hg.to_graph()
    assert sk.audit_sparsifier_recovery(x, G) == 1.0
    empty = sk.build_graph(hg.n_nodes, [])
    assert sk.audit_sparsifier_recovery(x, empty) == 0.0


def test_audit_on_sparsifier(hidden):
    x, hg = hidden
    G = hg.to_graph()
    spr = sk.refined_sparsify(G, 0.25, seed=2)
    frac = sk.audit_sparsifier_recovery(x, spr)
    assert 0.0 <= frac <= 1.0
