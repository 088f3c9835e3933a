"""Linear solving on sparsifiers, SDD systems, eigenpairs, and min cut."""

import numpy as np
import scipy.sparse as sp

import sparsekit as sk
from sparsekit.graph import dense_laplacian

G = sk.gnp_random_graph(160, 0.2, 1.0, 2.0, seed=8, force_connected=True)
rng = np.random.default_rng(1)
b = rng.normal(size=G.n)
b -= b.mean()

direct = sk.solve_laplacian(G, b, tol=1e-10)
via = sk.solve_via_sparsifier(G, b, eps=0.1, seed=2)
print(f"direct solve: {direct.iterations} iterations, residual {direct.residual:.2e}")
print(f"via sparsifier ({via.info['sparsifier_edges']} edges): "
      f"residual {via.residual:.2e}, deviation {np.linalg.norm(via.x - direct.x):.2e}")

# an SDD system with positive off-diagonals: doubled into an SDDM system,
# solved there, and recovered by halving
n = 64
W = np.zeros((n, n))
Gr = sk.gnp_random_graph(n, 0.15, 0.5, 2.0, seed=3, force_connected=True)
signs = np.where(rng.random(Gr.m) < 0.5, 1.0, -1.0)
W[Gr.edge_u, Gr.edge_v] = Gr.edge_w * signs
W += W.T
A = sp.csr_matrix(np.diag(np.abs(W).sum(1) + rng.random(n)) + W)
bb = rng.normal(size=n)
res = sk.sdd_solve(sk.SddSystem(A, bb), eps=0.1, seed=5)
x_exact = np.linalg.solve(A.toarray(), bb)
print(f"\nSDD solve residual {res.residual:.2e}, "
      f"2-norm error {np.linalg.norm(res.x - x_exact):.2e}")

# bottom eigenpairs, computed on an eps/10 sparsifier
vals, vecs = sk.bottom_eigs(G, k=4, eps=0.25, seed=7)
dense_vals = np.linalg.eigvalsh(dense_laplacian(G))[:4]
print("\nbottom eigenvalues (sparsified | dense):")
for l in range(4):
    print(f"  {vals[l]:10.5f} | {dense_vals[l]:10.5f}")

# approximate min cut: exact algorithm on the sparsifier, value priced in G
members, value = sk.min_cut_approx(G, eps=0.1, seed=4)
_, exact_value = sk.stoer_wagner(G)
print(f"\nmin cut: approx {value:.2f} vs exact {exact_value:.2f} "
      f"(side of {len(members)} nodes)")
