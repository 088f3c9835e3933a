"""Build weighted graphs, evaluate cuts, and touch the Laplacian views.

Weights are conductances: an edge of weight w costs 1/w to traverse, and a
weight of 0 marks a forbidden edge. Parallel edges merge by summing their
conductances.
"""

import numpy as np

import sparsekit as sk

# two parallel edges between 0 and 1 act like one conductance of 3
G = sk.build_graph(4, [(0, 1, 1.0), (0, 1, 2.0), (1, 2, 1.0), (2, 3, 0.5)])
print("nodes:", G.n, " edges:", G.m, " total weight:", G.total_weight)
for u, v, w in G.edges():
    print(f"  edge {u}-{v}  w={w}")

# cuts and the quadratic form agree: val(S) = x_S^T L x_S
S = {0, 1}
x = np.zeros(G.n)
x[list(S)] = 1.0
print("cut value of {0,1}:", sk.cut_value(G, S))
print("quadratic form at its indicator:", sk.laplacian_quadratic(G, x))

L = sk.dense_laplacian(G)
print("dense Laplacian row sums (all zero):", L.sum(axis=1))
print("smallest eigenvalue (PSD):", np.linalg.eigvalsh(L)[0])

# a random graph, saved and loaded through the edge-list text format
from sparsekit import graphio

R = sk.gnp_random_graph(32, 0.3, 1.0, 2.0, seed=7, force_connected=True)
graphio.write_edge_list(R, "/tmp/demo_graph.txt")
R2 = graphio.read_edge_list("/tmp/demo_graph.txt")
print("round-trip identical:", np.array_equal(R.edge_w, R2.edge_w))
