"""Effective resistances: exact oracle, sketch oracle, and derived quantities.

The sketch stores q = ceil(24 log2(n)/eps^2) rows; a pair query is just the
squared distance between two length-q columns. Commute times and dissipated
power come along for free.
"""

import numpy as np

import sparsekit as sk

G = sk.gnp_random_graph(80, 0.25, 1.0, 2.0, seed=6, force_connected=True)

# exact values via the dense pseudoinverse
R_03 = sk.exact_resistance(G, 0, 3)
print(f"exact R(0,3) = {R_03:.4f}")
print(f"commute time 2*W*R = {sk.commute_time(G, R_03):.2f}")

# the sum rule: conductance-weighted resistances add up to n-1
total = sum(w * sk.exact_resistance(G, u, v) for u, v, w in G.edges())
print(f"sum of w_e R_e = {total:.6f} (n-1 = {G.n - 1})")

# sketch oracle: build once, query any pair in O(q)
oracle = sk.build_resistance_oracle(G, eps=0.25, seed=1)
print(f"\nsketch dimensions: {oracle.q} x {oracle.n}")
rng = np.random.default_rng(0)
errs = []
for _ in range(12):
    s, t = rng.choice(G.n, size=2, replace=False)
    est = sk.query_resistance(oracle, int(s), int(t))
    exact = sk.exact_resistance(G, int(s), int(t))
    errs.append(abs(est / exact - 1))
print(f"median relative query error over 12 pairs: {np.median(errs):.3f}")

sk.save_oracle(oracle, "/tmp/demo_z.oracle")
reloaded = sk.load_oracle("/tmp/demo_z.oracle")
print("persisted and reloaded:", np.array_equal(reloaded.Z, oracle.Z))

# dissipated power of a multi-terminal current demand
j = np.zeros(G.n)
j[0], j[1], j[2] = 2.0, -1.0, -1.0
print(f"\ndissipated power of a 2:-1:-1 demand: {sk.dissipated_power(G, j):.4f}")
