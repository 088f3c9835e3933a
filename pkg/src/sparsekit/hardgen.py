"""Hard-instance generators: graphs whose sparsifiers must reveal hidden bits.

The family hides a union of unsparsifiable random bipartite blocks inside a
larger oblivious graph. A hidden input x assigns, per block and node pair,
a short bit string with at most one set bit; set bits become unit-weight
edges of the block union B(x). Every unset bit "flips" its pair of matched
edges into two zero-weight decoys, so node degrees carry no information
about x, and one adjacency-list query can be answered with a single lookup
into x.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import BadEpsilon, BadShape, EpsilonTooSmallWarning
from .graph import WeightedGraph, build_graph
from .oracle import CostLedger


def _as_exact_int(value: float, name: str) -> int:
    out = round(value)
    if out <= 0 or abs(value - out) > 1e-9:
        raise BadShape(f"{name} = {value} must be a positive integer")
    return int(out)


def gen_b_eps(eps: float, seed: int = 0) -> WeightedGraph:
    """Random bipartite block: 1/eps^2 nodes per side, left degree half.

    Each left node connects to a uniformly random half of the right side
    with unit weights. Requires 1/eps^2 to be an even integer >= 2 (so
    eps <= 1/sqrt(2)), else the construction degenerates.
    """
    try:
        c = _as_exact_int(1.0 / (eps * eps), "1/eps^2")
    except BadShape as exc:
        raise BadEpsilon(str(exc)) from None
    if c < 2 or c % 2:
        raise BadEpsilon(f"1/eps^2 = {c} must be even and >= 2")
    rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x4245]))
    edges = []
    for i in range(c):
        for j in sorted(rng.choice(c, size=c // 2, replace=False).tolist()):
            edges.append((i, c + j, 1.0))
    return build_graph(2 * c, edges)


@dataclass
class HiddenInput:
    """Hidden bit strings x^(k)_{i,j}: position of the set bit or -1.

    ``positions`` has shape (ell, c, c); entry (k, i, j) is the index of
    the set bit within the length-N string of block k, pair (i, j), or -1
    when the string is all zeros. Every row (k, i) has exactly c/2 nonzero
    strings.
    """

    n: int
    m: int
    epsilon: float
    ell: int
    c: int
    N: int
    positions: np.ndarray
    seed: int

    def validate(self) -> None:
        if self.positions.shape != (self.ell, self.c, self.c):
            raise BadShape("positions shape mismatch")
        if self.positions.min() < -1 or self.positions.max() >= self.N:
            raise BadShape("bit position out of range")
        per_row = (self.positions >= 0).sum(axis=2)
        if not (per_row == self.c // 2).all():
            raise BadShape("every row must have exactly c/2 nonzero strings")

    def nonzero_strings(self) -> set[tuple[int, int, int]]:
        ks, is_, js = np.nonzero(self.positions >= 0)
        return set(zip(ks.tolist(), is_.tolist(), js.tolist()))


def hidden_shape(n: int, m: int, eps: float) -> tuple[int, int, int]:
    """(ell, c, N) for the hidden family, validating divisibility."""
    ell = _as_exact_int(eps * eps * n / 2.0, "eps^2*n/2")
    c = _as_exact_int(1.0 / (eps * eps), "1/eps^2")
    N = _as_exact_int(2.0 * eps * eps * m / n, "2*eps^2*m/n")
    if m > n * n / 4:
        raise BadShape(f"m = {m} exceeds n^2/4 = {n * n / 4:g}")
    if c % 2:
        raise BadShape(f"1/eps^2 = {c} must be even")
    if 2 * m // n > n // 2:
        raise BadShape("2m/n must be at most n/2")
    return ell, c, N


def gen_valid_input(n: int, m: int, eps: float, seed: int = 0) -> HiddenInput:
    """Uniform valid hidden input: c/2 nonzero strings per row, one bit each."""
    ell, c, N = hidden_shape(n, m, eps)
    if eps < math.sqrt(n / m) - 1e-12:
        warnings.warn(
            f"eps={eps:.4g} below sqrt(n/m)={math.sqrt(n / m):.4g}; instance "
            "is degenerate for sparsification but still well formed",
            EpsilonTooSmallWarning)
    rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x4849]))
    positions = np.full((ell, c, c), -1, dtype=np.int64)
    for k in range(ell):
        for i in range(c):
            cols = rng.choice(c, size=c // 2, replace=False)
            positions[k, i, cols] = rng.integers(0, N, size=c // 2)
    return HiddenInput(n, m, eps, ell, c, N, positions, seed)


def matching_edges(j: int, m: int, n: int) -> list[tuple[int, int]]:
    """j-th diagonal matching of the complete bipartite (2m/n) x (n/2) graph."""
    half = n // 2
    rows = _as_exact_int(2 * m / n, "2m/n")
    if not 0 <= j < half:
        raise BadShape(f"matching index {j} outside [0, {half})")
    if rows > half:
        raise BadShape("2m/n must be at most n/2")
    return [(i, (i + j) % half) for i in range(rows)]


class HiddenGraph:
    """Query-access view of the hidden graph G(x).

    Node layout: [0, n/2) left block nodes, [n/2, n) right block nodes,
    then 2m/n decoy-left and n/2 decoy-right nodes. Degrees are constants
    of the oblivious mother graph; every neighbor query resolves through
    exactly one lookup into x (counted in ``x_lookups``).
    """

    def __init__(self, x: HiddenInput, ledger: CostLedger | None = None):
        x.validate()
        self.x = x
        self.ledger = ledger if ledger is not None else CostLedger()
        self.x_lookups = 0
        self.n = x.n
        self.m = x.m
        self.ell, self.c, self.N = x.ell, x.c, x.N
        self.rows2 = 2 * x.m // x.n            # left decoy nodes
        self.half = x.n // 2                   # right decoy nodes
        self.off_r1 = x.n // 2
        self.off_l2 = x.n
        self.off_r2 = x.n + self.rows2
        self.n_nodes = x.n + self.rows2 + self.half
        self.n_edges = 2 * x.m

    # node-id helpers
    def l1(self, k: int, i: int) -> int:
        return k * self.c + i

    def r1(self, k: int, j: int) -> int:
        return self.off_r1 + k * self.c + j

    def _bit(self, k: int, i: int, j: int, l: int) -> int:
        self.x_lookups += 1
        self.ledger.add_classical(1)
        return int(self.x.positions[k, i, j] == l)

    def _slot(self, k: int, i: int, s: int):
        """Decode slot s of left node (k, i): pair column, bit index, decoys."""
        j, l = divmod(s, self.N)
        jidx = k + i * self.ell            # matching assigned to this left node
        l2 = self.off_l2 + s
        r2 = self.off_r2 + (s + jidx) % self.half
        return j, l, l2, r2

    def degree(self, v: int) -> int:
        if v < self.off_r1 or self.off_r1 <= v < self.off_l2:
            return 2 * self.m // self.n
        if v < self.off_r2:
            return self.half
        if v < self.n_nodes:
            return self.rows2
        raise BadShape(f"node {v} out of range")

    def neighbor(self, v: int, idx: int) -> tuple[int, float]:
        """idx-th neighbor and weight; costs exactly one x lookup."""
        if not 0 <= idx < self.degree(v):
            raise BadShape(f"neighbor index {idx} out of range at node {v}")
        if v < self.off_r1:                         # left block node
            k, i = divmod(v, self.c)
            j, l, l2, r2 = self._slot(k, i, idx)
            if self._bit(k, i, j, l):
                return self.r1(k, j), 1.0
            return l2, 0.0
        if v < self.off_l2:                         # right block node
            k, j = divmod(v - self.off_r1, self.c)
            i, l = divmod(idx, self.N)
            _, _, l2, r2 = self._slot(k, i, j * self.N + l)
            if self._bit(k, i, j, l):
                return self.l1(k, i), 1.0
            return r2, 0.0
        if v < self.off_r2:                         # decoy-left node
            s = v - self.off_l2
            jidx = idx
            k, i = jidx % self.ell, jidx // self.ell
            j, l = divmod(s, self.N)
            if self._bit(k, i, j, l):
                return self.off_r2 + (s + jidx) % self.half, 0.0
            return self.l1(k, i), 0.0
        # decoy-right node
        beta = v - self.off_r2
        s = idx
        jidx = (beta - s) % self.half
        k, i = jidx % self.ell, jidx // self.ell
        j, l = divmod(s, self.N)
        if self._bit(k, i, j, l):
            return self.off_l2 + s, 0.0
        return self.r1(k, j), 0.0

    def degree_sequence(self) -> np.ndarray:
        return np.array([self.degree(v) for v in range(self.n_nodes)])

    def to_graph(self) -> WeightedGraph:
        """Materialize all 2m edges (unit block edges plus zero decoys)."""
        edges = []
        for k in range(self.ell):
            for i in range(self.c):
                for s in range(2 * self.m // self.n):
                    j, l, l2, r2 = self._slot(k, i, s)
                    if self.x.positions[k, i, j] == l:
                        edges.append((self.l1(k, i), self.r1(k, j), 1.0))
                        edges.append((l2, r2, 0.0))
                    else:
                        edges.append((self.l1(k, i), l2, 0.0))
                        edges.append((self.r1(k, j), r2, 0.0))
        return build_graph(self.n_nodes, edges)


def build_hidden_graph(x: HiddenInput, ledger: CostLedger | None = None) -> HiddenGraph:
    """Validate the matching layout and wrap x in query access."""
    g = HiddenGraph(x, ledger)
    # distinct-ends guarantee: every left node's slots map to distinct decoy
    # lefts by construction; check the right-end analog explicitly at build
    half, rows2 = g.half, g.rows2
    for k in range(x.ell):
        for i in range(x.c):
            jidx = k + i * x.ell
            rights = [(s + jidx) % half for s in range(rows2)]
            if len(set(rights)) != rows2:
                raise BadShape("matched decoy-right ends collide")
    return g


def audit_sparsifier_recovery(x: HiddenInput, H) -> float:
    """Fraction of nonzero strings identified by positive block edges of H.

    H may be a Sparsifier or a WeightedGraph over the hidden graph's nodes.
    """
    G = H.to_graph() if hasattr(H, "to_graph") else H
    c = x.c
    found: set[tuple[int, int, int]] = set()
    half = x.n // 2
    for u, v, w in G.edges():
        if w <= 0:
            continue
        if u < half <= v < x.n:
            k1, i = divmod(u, c)
            k2, j = divmod(v - half, c)
            if k1 == k2:
                found.add((k1, i, j))
    nonzero = x.nonzero_strings()
    if not nonzero:
        return 0.0
    return len(found & nonzero) / len(nonzero)
