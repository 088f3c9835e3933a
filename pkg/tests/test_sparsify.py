import numpy as np
import pytest
from scipy import stats

import sparsekit as sk
from sparsekit.graph import dense_laplacian
from sparsekit.resistance import exact_resistance_matrix


def test_half_sparsify_packing_exhausts_small_graph():
    # default packing constants exceed the whole edge set: output is G
    K = sk.complete_graph(16)
    spr = sk.half_sparsify(K, 0.5, seed=0)
    assert spr.size == K.m
    assert np.array_equal(spr.weights, K.edge_w)


def test_half_sparsify_binomial_sampling():
    # small packing constant so the quarter-probability coin really fires
    K = sk.complete_graph(64)
    total_draws = 0
    total_kept = 0
    for seed in range(100):
        spr = sk.half_sparsify(K, 0.5, seed=seed, c_pack=0.01)
        psize = spr.provenance["packing_size"]
        total_draws += K.m - psize
        total_kept += spr.size - psize
    mean = total_draws / 4
    sigma = np.sqrt(total_draws * 0.25 * 0.75)
    assert abs(total_kept - mean) <= 3 * sigma


def test_half_sparsify_spectral_pass_rate_default_constants():
    # at the stated packing count the packing exhausts K_64, so the halving
    # round is the identity and the spectral check passes trivially
    K = sk.complete_graph(64)
    passes = 0
    for seed in range(30):
        spr = sk.half_sparsify(K, 0.5, seed=seed)
        rep = sk.verify_spectral(K, spr.to_graph(), 0.5)
        passes += rep.passed
    assert passes >= 27


def test_half_sparsify_real_sampling_stays_spectrally_bounded():
    # sub-theoretic packing count: the guarantee shrinks to eps = 1, which a
    # genuine quarter-sampled reweighting must still satisfy
    K = sk.complete_graph(64)
    passes = 0
    for seed in range(30):
        spr = sk.half_sparsify(K, 1.0, seed=seed, c_pack=0.01)
        assert spr.size < K.m
        rep = sk.verify_spectral(K, spr.to_graph(), 1.0)
        passes += rep.passed
    assert passes >= 27


def test_ks_identity_when_m_at_most_n():
    G = sk.build_graph(6, [(i, i + 1, 2.0) for i in range(5)])
    spr = sk.ks_sparsify(G, 0.5, seed=1)
    assert spr.provenance["T"] == 0
    assert spr.size == G.m
    assert np.array_equal(spr.weights, G.edge_w)


def test_ks_weight_law_powers_of_four():
    K = sk.complete_graph(96)
    spr = sk.ks_sparsify(K, 1.0, seed=3, c_pack=0.002)
    assert spr.size < K.m  # sampling actually happened
    ratios = spr.weights / K.edge_w[spr.edge_ids]
    exps = np.log(ratios) / np.log(4.0)
    assert np.abs(exps - np.round(exps)).max() < 1e-12
    assert np.all(np.round(exps) >= 0)


def test_ks_single_round_spectral_pass():
    # m <= 2n forces T = 1; the output must still verify at its epsilon
    G = sk.gnp_random_graph(40, 0.03, 1.0, 2.0, seed=17, force_connected=True)
    assert G.n < G.m <= 2 * G.n
    with pytest.warns(sk.EpsilonTooSmallWarning):  # tiny m makes eps nominal
        spr = sk.ks_sparsify(G, 0.5, seed=2)
    assert spr.provenance["T"] == 1
    assert sk.verify_spectral(G, spr.to_graph(), 0.5).passed


def test_ks_small_eps_warns():
    K = sk.complete_graph(32)
    with pytest.warns(sk.EpsilonTooSmallWarning):
        sk.ks_sparsify(K, 0.05, seed=0)


def test_ks_spectral_pass_with_default_constants():
    # with the default packing constant the rounds keep everything at this
    # scale, so the output must be exactly G and trivially pass
    G = sk.gnp_random_graph(128, 0.4, 1.0, 2.0, seed=5)
    spr = sk.ks_sparsify(G, 0.5, seed=7)
    assert spr.size <= G.m
    rep = sk.verify_spectral(G, spr.to_graph(), 0.5)
    assert rep.passed


def test_ks_deterministic():
    K = sk.complete_graph(48)
    a = sk.ks_sparsify(K, 1.0, seed=11, c_pack=0.003)
    b = sk.ks_sparsify(K, 1.0, seed=11, c_pack=0.003)
    assert np.array_equal(a.edge_ids, b.edge_ids)
    assert np.array_equal(a.weights, b.weights)


def test_ks_kwise_vs_uniform_distribution_equality():
    # replacing the k-wise source by true randomness must not move the
    # kept-size distribution (two-sample KS at alpha = 0.01)
    K = sk.complete_graph(32)
    a = np.array([sk.ks_sparsify(K, 1.0, seed=10_000 + s, c_pack=1e-3,
                                 bit_source="kwise").size for s in range(200)])
    b = np.array([sk.ks_sparsify(K, 1.0, seed=20_000 + s, c_pack=1e-3,
                                 bit_source="uniform").size for s in range(200)])
    assert stats.ks_2samp(a, b).pvalue > 0.01


def test_resistance_sample_cap_keeps_everything():
    K = sk.complete_graph(16)
    R = exact_resistance_matrix(K)[K.edge_u, K.edge_v]
    spr = sk.resistance_sample(K, R, eps=0.25, C=4.0, seed=0)
    assert spr.size == K.m
    assert np.array_equal(spr.weights, K.edge_w)


def test_resistance_sample_tree_fully_kept():
    G = sk.build_graph(8, [(i, i + 1, 0.5 + i) for i in range(7)])
    R = 1.0 / G.edge_w  # exact on a tree
    spr = sk.resistance_sample(G, R, eps=0.5, C=4.0, seed=3)
    assert spr.size == G.m
    assert np.array_equal(spr.weights, G.edge_w)


def test_resistance_sample_rejects_bad_estimates():
    G = sk.build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)])
    with pytest.raises(sk.BadEstimate):
        sk.resistance_sample(G, [1.0, 0.0], eps=0.5)
    with pytest.raises(sk.BadEstimate):
        sk.resistance_sample(G, [1.0, np.inf], eps=0.5)


def test_resistance_sample_unbiased_mean_laplacian():
    K = sk.complete_graph(48)
    R = exact_resistance_matrix(K)[K.edge_u, K.edge_v]
    C = 0.05  # below the cap so the sampler really subsamples
    p = np.minimum(1.0, C * K.edge_w * R * np.log2(K.n) / 0.25)
    assert p.max() < 1.0
    acc = np.zeros((K.n, K.n))
    trials = 200
    for seed in range(trials):
        spr = sk.resistance_sample(K, R, eps=0.5, C=C, seed=seed)
        acc += dense_laplacian(spr.to_graph())
    mean_L = acc / trials
    LG = dense_laplacian(K)
    # per-entry 3 sigma of the off-diagonal Bernoulli average:
    # entry -w/p with prob p, so var = w^2 (1-p)/p / trials
    var = (K.edge_w ** 2 * (1 - p) / p) / trials
    bound = 3 * np.sqrt(var)
    off_err = np.abs(mean_L - LG)[K.edge_u, K.edge_v]
    assert (off_err <= bound + 1e-12).mean() >= 0.97


def test_refined_eps_one_nonempty_connected():
    G = sk.gnp_random_graph(80, 0.3, 1.0, 2.0, seed=2, force_connected=True)
    spr = sk.refined_sparsify(G, 1.0, seed=4)
    H = spr.to_graph()
    assert spr.size > 0
    assert H.is_connected()
    assert sk.verify_spectral(G, H, 1.0).passed


def test_refined_stage3_estimates_close_to_exact():
    # the sketch is built at oracle_eps; stage-3 estimates must sandwich the
    # true resistances within (1 +- 1.1 * oracle_eps) for nearly all edges
    G = sk.gnp_random_graph(120, 0.3, 1.0, 2.0, seed=6, force_connected=True)
    oracle_eps = 0.25
    spr = sk.refined_sparsify(G, 0.25, seed=9, oracle_eps=oracle_eps)
    est = spr.provenance["resistance_estimates"]
    exact = exact_resistance_matrix(G)[G.edge_u, G.edge_v]
    ratio = est / exact
    frac = ((ratio >= 1 - 1.1 * oracle_eps) & (ratio <= 1 + 1.1 * oracle_eps)).mean()
    assert frac >= 0.95


def test_refined_weights_are_w_over_p():
    G = sk.gnp_random_graph(64, 0.4, 1.0, 2.0, seed=12, force_connected=True)
    spr = sk.refined_sparsify(G, 1.0, seed=1, C=0.2)
    p = spr.provenance["keep_probs"]
    w = G.edge_w[spr.edge_ids]
    assert np.allclose(spr.weights * p, w)


def test_refined_deterministic():
    G = sk.gnp_random_graph(64, 0.3, 1.0, 2.0, seed=3)
    a = sk.refined_sparsify(G, 0.5, seed=21)
    b = sk.refined_sparsify(G, 0.5, seed=21)
    assert np.array_equal(a.edge_ids, b.edge_ids)
    assert np.array_equal(a.weights, b.weights)


def test_verify_spectral_identity_and_boundary():
    G = sk.gnp_random_graph(24, 0.5, 1.0, 2.0, seed=1, force_connected=True)
    rep = sk.verify_spectral(G, G, 0.3)
    assert rep.passed and rep.lambda_min == pytest.approx(1.0) \
        and rep.lambda_max == pytest.approx(1.0)
    eps = 0.3
    H = G.with_weights(G.edge_w * (1 + eps))
    rep = sk.verify_spectral(G, H, eps)
    assert rep.passed
    assert rep.lambda_max == pytest.approx(1 + eps)
    assert not sk.verify_spectral(G, H, eps / 2).passed


def test_verify_spectral_component_mismatch():
    G = sk.build_graph(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
    H = G.with_weights(np.array([1.0, 0.0, 1.0]))  # bridge dropped
    with pytest.raises(sk.ComponentMismatch):
        sk.verify_spectral(G, H, 0.5)


def test_verify_spectral_implies_cuts():
    G = sk.gnp_random_graph(40, 0.4, 1.0, 2.0, seed=5, force_connected=True)
    H = G.with_weights(G.edge_w * (1 + 0.2 * np.sin(np.arange(G.m))))
    eps = 0.35
    if sk.verify_spectral(G, H, eps).passed:
        assert sk.verify_cuts(G, H, eps, trials=200, seed=1) == 1.0


def test_verify_cuts_identity_and_missing_bridge():
    G = sk.build_graph(5, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)])
    assert sk.verify_cuts(G, G, 0.1, trials=20, seed=0) == 1.0
    H = G.with_weights(np.array([1.0, 1.0, 0.0, 1.0]))
    frac = sk.verify_cuts(G, H, 0.5, trials=50, seed=0)
    assert frac < 1.0
