"""Hard instances: graphs whose sparsifiers must reveal hidden bits.

A valid input x packs one secret bit position per node pair into short
strings; the derived graph hides the resulting bipartite blocks among
zero-weight decoy edges so that degrees reveal nothing and each adjacency
query costs exactly one lookup into x. Any good cut sparsifier must surface
a constant fraction of the hidden bits.
"""

import warnings

import numpy as np

import sparsekit as sk

n, m, eps = 64, 512, 0.25
with warnings.catch_warnings():
    warnings.simplefilter("ignore", sk.EpsilonTooSmallWarning)
    x = sk.gen_valid_input(n, m, eps, seed=11)
print(f"hidden input: {x.ell} blocks of {x.c}x{x.c} strings, {x.N} bits each")
print(f"nonzero strings: {len(x.nonzero_strings())}")

hg = sk.build_hidden_graph(x)
print(f"\nhidden graph: {hg.n_nodes} nodes (<= 2n = {2 * n}), "
      f"{hg.n_edges} edges (= 2m = {2 * m})")

# degrees are a constant of the mother graph, independent of x
with warnings.catch_warnings():
    warnings.simplefilter("ignore", sk.EpsilonTooSmallWarning)
    other = sk.gen_valid_input(n, m, eps, seed=999)
print("degree sequence independent of x:",
      np.array_equal(hg.degree_sequence(),
                     sk.build_hidden_graph(other).degree_sequence()))

# query cost: one x lookup per neighbor query, none for degrees
rng = np.random.default_rng(0)
for _ in range(500):
    v = int(rng.integers(0, hg.n_nodes))
    hg.neighbor(v, int(rng.integers(0, hg.degree(v))))
print(f"x lookups after 500 neighbor queries: {hg.x_lookups}")

# sparsify the materialized graph and audit how many bits it reveals
G = hg.to_graph()
spr = sk.refined_sparsify(G, eps, seed=1)
frac = sk.audit_sparsifier_recovery(x, spr)
print(f"\nsparsifier with {spr.size} edges reveals "
      f"{100 * frac:.0f}% of the hidden nonzero strings")

# the smaller standalone block family
B = sk.gen_b_eps(0.25, seed=2)
print(f"\nstandalone block B(eps=1/4): {B.n} nodes, {B.m} edges, "
      f"left degrees all {B.degree(0)}")
