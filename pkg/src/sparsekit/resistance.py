"""Effective resistances: exact dense oracle and the sketch oracle.

The sketch oracle stores a q x n matrix Z with q = ceil(24 log2(n)/eps^2).
Row i solves L z_i = y_i where y_i applies random +-1/sqrt(q) signs per edge
to the sqrt(w)-scaled signed incidence; squared column distances of Z then
approximate effective resistances within 1 +- eps for all pairs with high
probability. Queries cost O(q).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadEstimate, DifferentComponents, Disconnected, TooLargeForDense
from .graph import DENSE_GUARD, WeightedGraph, dense_laplacian, incidence_matrix
from .oracle import CostLedger


def laplacian_pseudoinverse(G: WeightedGraph, guard: int = DENSE_GUARD) -> np.ndarray:
    """Dense pinv of the Laplacian, cached on the graph object."""
    if G.n > guard:
        raise TooLargeForDense(f"n={G.n} exceeds dense guard {guard}")
    if "lap_pinv" not in G._cache:
        G._cache["lap_pinv"] = np.linalg.pinv(dense_laplacian(G, guard))
    return G._cache["lap_pinv"]


def exact_resistance(G: WeightedGraph, s: int, t: int,
                     guard: int = DENSE_GUARD) -> float:
    """(chi_s - chi_t)^T L^+ (chi_s - chi_t) via the dense pseudoinverse."""
    if s == t:
        return 0.0
    labels = G.components()
    if labels[s] != labels[t]:
        raise DifferentComponents(f"nodes {s} and {t} are not connected")
    Lp = laplacian_pseudoinverse(G, guard)
    return float(Lp[s, s] + Lp[t, t] - 2 * Lp[s, t])


def exact_resistance_matrix(G: WeightedGraph, guard: int = DENSE_GUARD) -> np.ndarray:
    """All-pairs resistances; +inf across components."""
    Lp = laplacian_pseudoinverse(G, guard)
    d = np.diag(Lp)
    R = d[:, None] + d[None, :] - 2 * Lp
    labels = G.components()
    R[labels[:, None] != labels[None, :]] = np.inf
    np.fill_diagonal(R, 0.0)
    return R


@dataclass
class ResistanceOracle:
    """Sketch matrix Z; squared column distances estimate resistances."""

    Z: np.ndarray
    n: int
    q: int
    epsilon: float
    seed: int
    solver_tol: float
    log_base: float = 2.0


def sketch_rows(n: int, eps: float, log_base: float = 2.0) -> int:
    log_n = math.log(max(n, 2)) / math.log(log_base)
    return math.ceil(24.0 * log_n / (eps * eps))


def sketch_oracle(G: WeightedGraph, eps: float, seed: int = 0,
                  solver_tol: float = 1e-8, log_base: float = 2.0,
                  require_connected: bool = True,
                  row_chunk: int = 256) -> ResistanceOracle:
    """Build the sketch; the public entry point rejects disconnected graphs.

    Sign rows are drawn from independent per-row substreams so the rows are
    reproducible regardless of chunking. All q right-hand sides go through
    one blocked conjugate-gradient solve at relative residual solver_tol.
    """
    from .solver import cg_block

    if not 0 < eps <= 1:
        raise ValueError("eps must be in (0, 1]")
    if require_connected and not G.is_connected():
        raise Disconnected("resistance oracle requires a connected graph")
    n, m = G.n, G.m
    q = sketch_rows(n, eps, log_base)

    sqrt_w = np.sqrt(G.edge_w)
    B = incidence_matrix(G)
    Y = np.zeros((q, n))
    for lo in range(0, q, row_chunk):
        hi = min(lo + row_chunk, q)
        S = np.empty((hi - lo, m))
        for i in range(lo, hi):
            rng = np.random.default_rng(
                np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x5A52, i]))
            S[i - lo] = rng.integers(0, 2, size=m) * 2.0 - 1.0
        # y = B^T (signs * sqrt(w)) / sqrt(q), one chunk of rows at a time
        Y[lo:hi] = (S * sqrt_w[None, :] / math.sqrt(q)) @ B

    Z, _, _ = cg_block(G, Y.T, tol=solver_tol)
    return ResistanceOracle(Z.T, n, q, eps, seed, solver_tol, log_base)


def build_resistance_oracle(G: WeightedGraph, eps: float, seed: int = 0,
                            solver_tol: float = 1e-8,
                            log_base: float = 2.0) -> ResistanceOracle:
    return sketch_oracle(G, eps, seed=seed, solver_tol=solver_tol,
                         log_base=log_base, require_connected=True)


def query_resistance(oracle: ResistanceOracle, s: int, t: int,
                     ledger: CostLedger | None = None) -> float:
    diff = oracle.Z[:, s] - oracle.Z[:, t]
    if ledger is not None:
        ledger.add_classical(2 * oracle.q)
    return float(diff @ diff)


def edge_resistance_estimates(oracle: ResistanceOracle, G: WeightedGraph,
                              chunk: int = 2048) -> np.ndarray:
    """Vectorized query_resistance over all edges of G (chunked in m)."""
    out = np.empty(G.m)
    for lo in range(0, G.m, chunk):
        hi = min(lo + chunk, G.m)
        diff = oracle.Z[:, G.edge_u[lo:hi]] - oracle.Z[:, G.edge_v[lo:hi]]
        out[lo:hi] = np.einsum("qe,qe->e", diff, diff)
    return out


def commute_time(G: WeightedGraph, R: float) -> float:
    """Random-walk round-trip time 2 W R for a pair at effective resistance R."""
    if R < 0:
        raise BadEstimate("resistance must be >= 0")
    return 2.0 * G.total_weight * R


def dissipated_power(G: WeightedGraph, demand, tol: float = 1e-10) -> float:
    """j^T L^+ j for a per-component balanced current demand j."""
    from .errors import UnbalancedDemand
    from .solver import solve_laplacian

    j = np.asarray(demand, dtype=np.float64)
    if j.shape != (G.n,):
        raise UnbalancedDemand(f"demand must have length {G.n}")
    labels = G.components()
    scale = float(np.abs(j).sum()) or 1.0
    for root in np.unique(labels):
        if abs(j[labels == root].sum()) > 1e-9 * scale:
            raise UnbalancedDemand(f"demand does not balance on component {root}")
    if not j.any():
        return 0.0
    res = solve_laplacian(G, j, tol=tol)
    return float(j @ res.x)


def save_oracle(oracle: ResistanceOracle, path: str) -> None:
    """Persist as a one-line JSON header followed by the little-endian blob."""
    header = {
        "format": "sparsekit-zoracle",
        "version": 1,
        "n": oracle.n,
        "q": oracle.q,
        "epsilon": oracle.epsilon,
        "seed": oracle.seed,
        "tol": oracle.solver_tol,
        "log_base": oracle.log_base,
    }
    with open(path, "wb") as fh:
        fh.write(json.dumps(header, sort_keys=True).encode("utf-8"))
        fh.write(b"\n")
        fh.write(oracle.Z.astype("<f8").tobytes())


def load_oracle(path: str) -> ResistanceOracle:
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("utf-8"))
        if header.get("format") != "sparsekit-zoracle":
            raise ValueError(f"{path} is not a resistance oracle file")
        blob = fh.read()
    Z = np.frombuffer(blob, dtype="<f8").reshape(header["q"], header["n"]).copy()
    return ResistanceOracle(Z, header["n"], header["q"], header["epsilon"],
                            header["seed"], header["tol"], header["log_base"])
