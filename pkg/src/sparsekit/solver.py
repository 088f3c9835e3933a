"""Laplacian/SDD solving, eigenpairs, and approximate min cut.

The iterative core is Jacobi-preconditioned conjugate gradients, run
blockwise over many right-hand sides at once (the resistance sketch's row
solves all go through one blocked call). Singular Laplacian blocks are
handled in pseudoinverse semantics: right-hand sides and iterates are kept
mean-zero per connected component.

SDD systems reduce to twice-larger SDDM systems (a doubling construction
whose solution halves back exactly), which are sparsified through the graph
of their off-diagonal part, preserving the diagonal excess.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import Disconnected, NoConvergenceWarning, NotSDD, NotSDDM
from .graph import (
    WeightedGraph,
    build_graph,
    component_labels,
    cut_value,
    sparse_laplacian,
)
from .sparsify import refined_sparsify


@dataclass
class SolveResult:
    """Solution plus the actually-achieved relative residual."""

    x: np.ndarray
    iterations: int
    residual: float
    converged: bool
    projected: bool = False
    info: dict = field(default_factory=dict)


def _demean(X: np.ndarray, labels: np.ndarray, roots=None) -> np.ndarray:
    """Remove per-component means (columnwise); roots limits the components."""
    out = X.copy()
    for root in (np.unique(labels) if roots is None else roots):
        idx = labels == root
        out[idx] -= out[idx].mean(axis=0)
    return out


def _cg(A, B: np.ndarray, diag: np.ndarray, tol: float, max_iter: int,
        labels: np.ndarray | None = None, singular_roots=None):
    """Blocked CG with per-column step sizes and early freezing.

    When ``labels``/``singular_roots`` are given, residuals are re-projected
    onto the mean-zero subspace of those components to stop numerical drift
    out of the operator's image.
    """
    n, k = B.shape
    bnorm = np.linalg.norm(B, axis=0)
    X = np.zeros_like(B)
    R = B.copy()
    active = bnorm > 0
    d = np.where(diag > 0, diag, 1.0)

    Zp = R / d[:, None]
    P = Zp.copy()
    rz = np.einsum("ij,ij->j", R, Zp)
    iters = 0
    for iters in range(1, max_iter + 1):
        if not active.any():
            iters -= 1
            break
        AP = A @ P
        pAp = np.einsum("ij,ij->j", P, AP)
        ok = active & (pAp > 0)
        alpha = np.where(ok, rz / np.where(pAp > 0, pAp, 1.0), 0.0)
        X += alpha[None, :] * P
        R -= alpha[None, :] * AP
        if labels is not None and iters % 32 == 0:
            R = _demean(R, labels, singular_roots)
        res = np.linalg.norm(R, axis=0)
        active = ok & (res > tol * bnorm)
        Znew = R / d[:, None]
        rz_new = np.einsum("ij,ij->j", R, Znew)
        beta = np.where(rz > 0, rz_new / np.where(rz > 0, rz, 1.0), 0.0)
        P = Znew + beta[None, :] * P
        rz = rz_new
    return X, iters, ~active


def cg_block(G: WeightedGraph, B: np.ndarray, tol: float = 1e-8,
             weights: np.ndarray | None = None,
             max_iter: int | None = None):
    """Solve L X = B for many right-hand sides in pseudoinverse semantics.

    Columns of B are projected per component; returned columns are
    mean-zero per component. Returns (X, iterations, converged mask).
    """
    L = sparse_laplacian(G, weights)
    labels = component_labels(G, weights)
    if max_iter is None:
        max_iter = 20 * max(G.n, 1)
    B2 = _demean(np.asarray(B, dtype=np.float64), labels)
    X, iters, conv = _cg(L, B2, L.diagonal(), tol, max_iter, labels=labels)
    return _demean(X, labels), iters, conv


def solve_laplacian(G: WeightedGraph, b, tol: float = 1e-8,
                    weights: np.ndarray | None = None,
                    max_iter: int | None = None) -> SolveResult:
    """Jacobi-preconditioned CG solve of L x = b to relative residual tol.

    An unbalanced b is projected onto the image (mean removed per
    component) and the result is flagged.
    """
    b = np.asarray(b, dtype=np.float64)
    if b.shape != (G.n,):
        raise ValueError(f"b must have length {G.n}")
    labels = component_labels(G, weights)
    b_proj = _demean(b[:, None], labels)[:, 0]
    projected = not np.allclose(b, b_proj, rtol=0, atol=1e-12 * (np.abs(b).max() or 1.0))

    if not b_proj.any():
        return SolveResult(np.zeros(G.n), 0, 0.0, True, projected)

    L = sparse_laplacian(G, weights)
    if max_iter is None:
        max_iter = 20 * G.n
    X, iters, conv = _cg(L, b_proj[:, None], L.diagonal(), tol, max_iter, labels=labels)
    x = _demean(X, labels)[:, 0]
    residual = float(np.linalg.norm(L @ x - b_proj) / np.linalg.norm(b_proj))
    converged = bool(conv[0])
    if not converged:
        warnings.warn(f"CG hit the {max_iter}-iteration cap at residual "
                      f"{residual:.3g}", NoConvergenceWarning)
    return SolveResult(x, iters, residual, converged, projected)


def solve_via_sparsifier(G: WeightedGraph, b, eps: float, seed: int = 0,
                         tol: float = 1e-10, **refined_kwargs) -> SolveResult:
    """Sparsify at eps, then solve the sparsifier's system tightly.

    When the sparsifier verifies at eps the solution satisfies
    ||x~ - x||_{L_G} <= 2 eps ||x||_{L_G}.
    """
    spr = refined_sparsify(G, eps, seed=seed, **refined_kwargs)
    H = spr.to_graph()
    used_fallback = False
    if not np.array_equal(H.components(), G.components()):
        H, used_fallback = G, True  # sampling lost a component; solve exactly
    res = solve_laplacian(H, b, tol=tol)
    res.info.update(sparsifier_edges=int(spr.size),
                    sparsifier_fallback=used_fallback,
                    provenance=spr.provenance)
    return res


@dataclass
class SddSystem:
    """Sparse symmetric weakly diagonally dominant system A x = b."""

    A: sp.csr_matrix
    b: np.ndarray

    def __post_init__(self):
        self.A = sp.csr_matrix(self.A)
        self.b = np.asarray(self.b, dtype=np.float64)
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.b.shape != (n,):
            raise NotSDD("shape mismatch between A and b")
        if (self.A - self.A.T).power(2).sum() > 1e-24 * max(self.A.power(2).sum(), 1.0):
            raise NotSDD("A is not symmetric")
        diag = self.A.diagonal()
        off = abs(self.A) @ np.ones(n) - np.abs(diag)
        scale = float(np.abs(diag).max() or 1.0)
        if np.any(diag + 1e-12 * scale < off):
            raise NotSDD("row dominance A_ii >= sum_j |A_ij| violated")

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def decomposition(self):
        """A = D + P + N: diagonal, positive and negative off-diagonal parts."""
        D = sp.diags(self.A.diagonal())
        off = self.A - D
        P = off.maximum(0)
        N = off.minimum(0)
        return D, P, N


def gremban_reduce(system: SddSystem):
    """Double the SDD system into an SDDM one; recover halves the solution.

    Returns (A_hat, b_hat, recover) with A_hat = [[D+N, -P], [-P, D+N]],
    b_hat = [b; -b], and recover(z_hat) = (z_hat_1 - z_hat_2)/2.
    """
    D, P, N = system.decomposition()
    block = D + N
    A_hat = sp.bmat([[block, -P], [-P, block]], format="csr")
    b_hat = np.concatenate([system.b, -system.b])
    n = system.n

    def recover(z_hat: np.ndarray) -> np.ndarray:
        return (z_hat[:n] - z_hat[n:]) / 2.0

    return A_hat, b_hat, recover


def _sddm_parts(A: sp.csr_matrix):
    """Split an SDDM matrix into its graph and diagonal excess."""
    n = A.shape[0]
    if (A - A.T).power(2).sum() > 1e-24 * max(A.power(2).sum(), 1.0):
        raise NotSDDM("matrix is not symmetric")
    coo = sp.coo_matrix(sp.triu(A, k=1))
    if len(coo.data) and coo.data.max() > 1e-12 * max(abs(A.diagonal()).max(), 1.0):
        raise NotSDDM("positive off-diagonal entries present")
    mask = coo.data < 0
    G = build_graph(n, zip(coo.row[mask].tolist(), coo.col[mask].tolist(),
                           (-coo.data[mask]).tolist()))
    excess = A.diagonal() - sparse_laplacian(G).diagonal()
    if np.any(excess < -1e-9 * max(abs(A.diagonal()).max(), 1.0)):
        raise NotSDDM("diagonal dominance violated")
    return G, excess


def sddm_sparsify(A_hat: sp.csr_matrix, eps: float, seed: int = 0,
                  **refined_kwargs) -> sp.csr_matrix:
    """Sparsify the graph part of an SDDM matrix, keeping its diagonal.

    The output is L~ + diag(A_hat) - diag(L~) for a sparsified L~, and is
    returned unchanged when sparsification would not shrink it.
    """
    A_hat = sp.csr_matrix(A_hat)
    G, _ = _sddm_parts(A_hat)
    if G.m == 0:
        return A_hat.copy()
    spr = refined_sparsify(G, eps, seed=seed, **refined_kwargs)
    if spr.size >= G.m:
        return A_hat.copy()
    L_til = sparse_laplacian(spr.to_graph())
    return sp.csr_matrix(L_til + sp.diags(A_hat.diagonal() - L_til.diagonal()))


def _solve_sddm(M: sp.csr_matrix, b: np.ndarray, tol: float,
                max_iter: int | None = None) -> SolveResult:
    """CG on an SDDM matrix; zero-excess components get Laplacian semantics."""
    G, excess = _sddm_parts(M)
    labels = component_labels(G)
    scale = float(abs(M.diagonal()).max() or 1.0)
    singular_roots = [root for root in np.unique(labels)
                      if excess[labels == root].max(initial=0.0) <= 1e-12 * scale]
    b_proj = b.copy()
    if singular_roots:
        b_proj = _demean(b[:, None], labels, singular_roots)[:, 0]
    projected = not np.allclose(b, b_proj, rtol=0, atol=1e-12 * (np.abs(b).max() or 1.0))
    if not b_proj.any():
        return SolveResult(np.zeros(M.shape[0]), 0, 0.0, True, projected)
    if max_iter is None:
        max_iter = 20 * M.shape[0]
    X, iters, conv = _cg(M, b_proj[:, None], M.diagonal(), tol, max_iter,
                         labels=labels if singular_roots else None,
                         singular_roots=singular_roots or None)
    x = X[:, 0]
    if singular_roots:
        x = _demean(X, labels, singular_roots)[:, 0]
    residual = float(np.linalg.norm(M @ x - b_proj) / np.linalg.norm(b_proj))
    converged = bool(conv[0])
    if not converged:
        warnings.warn(f"CG hit the {max_iter}-iteration cap at residual "
                      f"{residual:.3g}", NoConvergenceWarning)
    return SolveResult(x, iters, residual, converged, projected)


def sdd_solve(system: SddSystem, eps: float, seed: int = 0,
              tol: float = 1e-10, **refined_kwargs) -> SolveResult:
    """Reduce to SDDM, sparsify, solve, and recover.

    The A-norm error against the exact solution is O(eps); the acceptance
    budget is 4 eps.
    """
    A_hat, b_hat, recover = gremban_reduce(system)
    A_til = sddm_sparsify(A_hat, eps, seed=seed, **refined_kwargs)
    inner = _solve_sddm(A_til, b_hat, tol)
    z = recover(inner.x)
    bnorm = np.linalg.norm(system.b)
    residual = (float(np.linalg.norm(system.A @ z - system.b) / bnorm)
                if bnorm > 0 else 0.0)
    return SolveResult(z, inner.iterations, residual, inner.converged,
                       inner.projected,
                       info={"sddm_nnz": int(A_til.nnz), "inner_residual": inner.residual})


def bottom_eigs(G: WeightedGraph, k: int, eps: float, seed: int = 0,
                **refined_kwargs):
    """k smallest Laplacian eigenpairs, computed on an eps/10 sparsifier.

    Returns (values ascending, vectors as columns); vectors are orthonormal
    and satisfy the quadratic-form certificate v^T L_G v <= (1+eps) lambda
    when the sparsifier verifies.
    """
    if not 1 <= k < G.n:
        raise ValueError("need 1 <= k < n")
    spr = refined_sparsify(G, eps / 10.0, seed=seed, **refined_kwargs)
    H = spr.to_graph()
    L = sparse_laplacian(H).tocsc()
    rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x4549]))
    v0 = rng.random(G.n)
    # shift-invert around -1: the spectrum is >= 0, so the k eigenvalues
    # closest to -1 are exactly the k smallest; L + I is always invertible
    vals, vecs = spla.eigsh(L, k=k, sigma=-1.0, which="LM", v0=v0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def stoer_wagner(G: WeightedGraph):
    """Exact global min cut (members, value) by maximum-adjacency phases."""
    n = G.n
    if n < 2:
        raise Disconnected("min cut needs at least two nodes")
    W = np.zeros((n, n))
    W[G.edge_u, G.edge_v] = G.edge_w
    W[G.edge_v, G.edge_u] = G.edge_w

    act = np.arange(n)
    groups: list[list[int]] = [[i] for i in range(n)]
    best_val = np.inf
    best_members: list[int] = []
    while len(act) > 1:
        sub = W[np.ix_(act, act)]
        c = len(act)
        conn = sub[0].copy()
        added = np.zeros(c, dtype=bool)
        added[0] = True
        conn[0] = -np.inf
        order = [0]
        for _ in range(c - 1):
            nxt = int(np.argmax(conn))
            order.append(nxt)
            added[nxt] = True
            last_w = conn[nxt]
            conn += sub[nxt]
            conn[added] = -np.inf
        t = act[order[-1]]
        s = act[order[-2]]
        if last_w < best_val:
            best_val = float(last_w)
            best_members = list(groups[t])
        # contract t into s
        W[s, :] += W[t, :]
        W[:, s] += W[:, t]
        W[s, s] = 0.0
        groups[s].extend(groups[t])
        act = act[act != t]
    return frozenset(best_members), best_val


def min_cut_approx(G: WeightedGraph, eps: float, seed: int = 0,
                   **refined_kwargs):
    """Sparsify at eps, cut the sparsifier exactly, price the cut in G.

    The returned value is the chosen cut's exact value in the original
    graph (hence always >= the true min cut); it is within
    (1+eps)/(1-eps) of optimal when the sparsifier verifies.
    """
    if not G.is_connected():
        raise Disconnected("min cut requires a connected graph")
    spr = refined_sparsify(G, eps, seed=seed, **refined_kwargs)
    H = spr.to_graph()
    if not H.is_connected():
        H = G  # sampling dropped a cut entirely; fall back to the exact stage
    members, _ = stoer_wagner(H)
    return members, cut_value(G, members)
