"""Shortest-path trees and spanners.

Two tree builders are available: classical Dijkstra and the partitioned
variant that alternates minfind calls over border sets kept in power-of-two
partitions. They produce identical trees, but the partitioned one also logs
the modeled cost a search-based minimum finder would pay.
"""

import numpy as np

import sparsekit as sk
from sparsekit.spanner import default_levels

G = sk.gnp_random_graph(96, 0.15, 0.5, 2.0, seed=12, force_connected=True)

led = sk.CostLedger()
t1 = sk.dijkstra(G, 0, ledger=led)
t2 = sk.spt_partitioned(G, 0, ledger=led)
print("identical distances:", np.array_equal(t1.dist, t2.dist))
print("identical parents:  ", np.array_equal(t1.parent_edge, t2.parent_edge))
print("ledger after both runs:", led.to_dict())

# a (2k-1)-spanner: sparse subgraph, all distances within the stretch factor
k = default_levels(G.n)
spn = sk.build_spanner(G, k=k, seed=3)
print(f"\nspanner with k={k}: {spn.size} of {G.m} edges, stretch {spn.stretch}")

H = spn.to_graph(G)
worst = 0.0
for s in range(0, G.n, 13):
    dg = sk.dijkstra(G, s).dist
    dh = sk.dijkstra(H, s).dist
    finite = np.isfinite(dg) & (dg > 0)
    worst = max(worst, (dh[finite] / dg[finite]).max())
print(f"worst observed stretch from sampled sources: {worst:.2f}")

# packings: edge-disjoint spanners of successive residual graphs
pk = sk.spanner_packing(G, 4, seed=5)
print("\npacking layer sizes:", [sp.size for sp in pk.spanners],
      f"(residual after: {int((pk.residual_weights(G.edge_w) > 0).sum())} edges)")
