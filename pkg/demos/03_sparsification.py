"""The three samplers and the spectral/cut verification harness.

The refined pipeline is the workhorse: a rough constant-quality pass, a
resistance sketch of the result, then independent edge sampling of the
original graph with probabilities proportional to weight x resistance.
At small n the theory constants keep almost every sampling probability at
the min(1, .) cap, so outputs stay dense; shrink the constants (c_pack, C)
to watch real subsampling happen.
"""

import numpy as np

import sparsekit as sk

G = sk.gnp_random_graph(192, 0.5, 1.0, 2.0, seed=2, force_connected=True)
print(f"input: n={G.n} m={G.m}")

led = sk.CostLedger()
spr = sk.refined_sparsify(G, 0.5, seed=4, ledger=led)
rep = sk.verify_spectral(G, spr.to_graph(), 0.5)
print(f"\nrefined at defaults: {spr.size} edges, "
      f"pencil in [{rep.lambda_min:.3f}, {rep.lambda_max:.3f}], pass={rep.passed}")
print("query ledger:", led.to_dict())

# force the sampler into its subsampling regime with a small constant
# (push C much lower and the sample starts dropping cuts entirely)
spr2 = sk.refined_sparsify(G, 1.0, seed=4, C=0.8)
H2 = spr2.to_graph()
rep2 = sk.verify_spectral(G, H2, 1.0)
frac = sk.verify_cuts(G, H2, 1.0, trials=200, seed=1)
print(f"\nrefined with C=0.8 at eps=1: {spr2.size} edges "
      f"({100 * spr2.size / G.m:.0f}% kept), pencil "
      f"[{rep2.lambda_min:.3f}, {rep2.lambda_max:.3f}], "
      f"cut pass fraction {frac:.3f}")

# the iterated halving sparsifier with an intentionally tiny packing count
K = sk.complete_graph(96)
spr3 = sk.ks_sparsify(K, 1.0, seed=9, c_pack=0.002)
ratios = spr3.weights / K.edge_w[spr3.edge_ids]
exponents = sorted({int(e) for e in np.round(np.log(ratios) / np.log(4))})
print(f"\niterated halving on K_96: {spr3.size} of {K.m} edges after "
      f"{spr3.provenance['rounds_run']} rounds; "
      f"weights are powers of four with exponents {exponents}")
