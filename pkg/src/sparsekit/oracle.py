"""Query-counted graph access, k-wise independent bits, and cost modeling.

The toolkit executes everything classically but keeps two books: exact
counts of classical adjacency-list queries, and the modeled cost a
search-based (Grover-style) implementation would pay for the same step.
Modeled costs report the bare square-root law; polylog factors are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange
from .graph import WeightedGraph

# x^16 + x^12 + x^3 + x + 1, primitive over GF(2): powers of x enumerate all
# 65535 nonzero field elements (checked in tests via the exp-table period).
_GF_POLY = 0x1100B
_GF_ORDER = 1 << 16


def _build_gf_tables():
    exp = np.zeros(2 * (_GF_ORDER - 1), dtype=np.int64)
    log = np.zeros(_GF_ORDER, dtype=np.int64)
    x = 1
    for i in range(_GF_ORDER - 1):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & _GF_ORDER:
            x ^= _GF_POLY
    exp[_GF_ORDER - 1:] = exp[: _GF_ORDER - 1]  # wraparound spares a modulo
    return exp, log


_GF_EXP, _GF_LOG = _build_gf_tables()


def gf16_mul(a, b):
    """Carry-less multiplication in GF(2^16), vectorized over numpy arrays."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64),
                               np.asarray(b, dtype=np.int64))
    out = np.zeros(a.shape, dtype=np.int64)
    nz = (a != 0) & (b != 0)
    out[nz] = _GF_EXP[_GF_LOG[a[nz]] + _GF_LOG[b[nz]]]
    return out


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer; collapses 64-bit indices onto the field."""
    z = x.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


@dataclass
class CostLedger:
    """Monotone per-run accounting of classical and modeled quantum queries."""

    classical_queries: int = 0
    modeled_quantum_queries: float = 0.0

    def add_classical(self, k: int) -> None:
        if k < 0:
            raise ValueError("counts are monotone")
        self.classical_queries += int(k)

    def add_quantum(self, q: float) -> None:
        if q < 0:
            raise ValueError("counts are monotone")
        self.modeled_quantum_queries += float(q)

    def merge(self, other: "CostLedger") -> "CostLedger":
        """Associative combine for ledgers of parallel tasks."""
        self.classical_queries += other.classical_queries
        self.modeled_quantum_queries += other.modeled_quantum_queries
        return self

    def to_dict(self) -> dict:
        return {
            "classical_queries": int(self.classical_queries),
            "modeled_quantum_queries": float(self.modeled_quantum_queries),
        }


def grover_cost(n_items: int, n_marked: float) -> float:
    """Modeled queries for repeated search finding n_marked among n_items.

    Floors the marked count at one so an unsuccessful search still pays a
    full sweep of sqrt(N).
    """
    if n_marked > n_items:
        raise ValueError("n_marked must be <= n_items")
    return math.sqrt(n_items * max(n_marked, 1.0))


class QueryOracle:
    """Adjacency-list access with per-kind query counters.

    Each public access increments exactly one counter. The aggregate also
    flows into an optional CostLedger so pipeline totals line up.
    """

    def __init__(self, G: WeightedGraph, ledger: CostLedger | None = None):
        self.graph = G
        self.ledger = ledger if ledger is not None else CostLedger()
        self.degree_queries = 0
        self.neighbor_queries = 0
        self.weight_queries = 0

    def degree(self, v: int) -> int:
        if not 0 <= v < self.graph.n:
            raise IndexOutOfRange(f"node {v}")
        self.degree_queries += 1
        self.ledger.add_classical(1)
        return self.graph.degree(v)

    def neighbor(self, v: int, k: int) -> tuple[int, float]:
        """k-th stored neighbor of v and the connecting edge's weight."""
        lo, hi = self.graph.indptr[v], self.graph.indptr[v + 1]
        if not 0 <= k < hi - lo:
            raise IndexOutOfRange(f"neighbor index {k} at node {v}")
        self.neighbor_queries += 1
        self.ledger.add_classical(1)
        eid = self.graph.adj_eid[lo + k]
        return int(self.graph.adj_node[lo + k]), float(self.graph.edge_w[eid])

    def weight(self, v: int, k: int) -> float:
        """Weight of the k-th incident edge of v."""
        lo, hi = self.graph.indptr[v], self.graph.indptr[v + 1]
        if not 0 <= k < hi - lo:
            raise IndexOutOfRange(f"edge index {k} at node {v}")
        self.weight_queries += 1
        self.ledger.add_classical(1)
        return float(self.graph.edge_w[self.graph.adj_eid[lo + k]])


class KWiseBits:
    """k-wise independent biased bits via polynomial hashing over GF(2^16).

    A uniformly random degree-(k-1) polynomial is evaluated at a field
    element derived from the index; the bit is 1 iff the value falls below
    ``threshold``, so P(bit = 1) = threshold / 2^16 exactly. Any <= k
    distinct indices that map to distinct field elements yield jointly
    independent bits. Indices below 2^16 map to themselves, keeping the
    guarantee exact on desk-scale domains; larger indices are mixed onto
    the field and collisions make the guarantee approximate.
    """

    def __init__(self, k: int, seed: int, threshold: int = 1 << 14):
        if not 1 <= k <= _GF_ORDER:
            raise ValueError("k must be in [1, 2^16]")
        if not 0 <= threshold <= _GF_ORDER:
            raise ValueError("threshold must be in [0, 2^16]")
        self.k = int(k)
        self.seed = int(seed)
        self.threshold = int(threshold)
        rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF, 0x6B77]))
        self.coefficients = rng.integers(0, _GF_ORDER, size=k, dtype=np.int64)

    def _points(self, indices: np.ndarray) -> np.ndarray:
        idx = np.asarray(indices, dtype=np.int64)
        small = idx < _GF_ORDER
        pts = np.empty(idx.shape, dtype=np.int64)
        pts[small] = idx[small]
        if not small.all():
            pts[~small] = (_mix64(idx[~small]) & np.uint64(0xFFFF)).astype(np.int64)
        return pts

    def values(self, indices) -> np.ndarray:
        """Field values of the hash polynomial at the given indices."""
        pts = self._points(np.atleast_1d(np.asarray(indices, dtype=np.int64)))
        acc = np.full(pts.shape, int(self.coefficients[-1]), dtype=np.int64)
        for c in self.coefficients[-2::-1]:
            acc = gf16_mul(acc, pts) ^ int(c)
        return acc

    def bits(self, indices) -> np.ndarray:
        return (self.values(indices) < self.threshold).astype(np.uint8)

    def bit(self, index: int) -> int:
        return int(self.bits([index])[0])


class UniformBits:
    """Fully random bit string with the same interface as KWiseBits.

    Implemented as the splitmix64 sequence addressed by index, so reads are
    consistent, order-independent, and vectorized.
    """

    def __init__(self, seed: int, p: float = 0.25):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.p = float(p)
        self._base = _mix64(np.asarray([self.seed], dtype=np.uint64))[0]

    def bits(self, indices) -> np.ndarray:
        idx = np.atleast_1d(np.asarray(indices, dtype=np.int64)).astype(np.uint64)
        stream = self._base + (idx + np.uint64(1)) * np.uint64(0x9E3779B97F4A7C15)
        u = (_mix64(stream) >> np.uint64(11)).astype(np.float64) / float(1 << 53)
        return (u < self.p).astype(np.uint8)

    def bit(self, index: int) -> int:
        return int(self.bits([index])[0])


def implicit_weight(eid: int, i: int, membership, bit_sources, base_w: float) -> float:
    """Weight of an edge after i rounds of implicit half-sparsification.

    ``membership`` lists the packing rounds (1-based, ascending) containing
    the edge; ``bit_sources[l-1]`` is round l's bit string. With k packing
    memberships among rounds 1..i and j the last of them (0 if none), the
    edge survives iff every round in (j, i] outside the membership set drew
    bit 1, and its weight is then base_w * 4^(i-k).
    """
    mem = [r for r in membership if r <= i]
    k = len(mem)
    j = mem[-1] if mem else 0
    memset = set(mem)
    for l in range(j + 1, i + 1):
        if l in memset:
            continue
        if bit_sources[l - 1].bit(eid) == 0:
            return 0.0
    return base_w * (4.0 ** (i - k))


def implicit_weights_bulk(i: int, membership_rounds: list[list[int]],
                          bit_sources, base_w: np.ndarray) -> np.ndarray:
    """Vectorized implicit_weight over all edges of a graph.

    Equivalent to calling implicit_weight per edge; bit strings are
    evaluated one full round at a time so the polynomial hashing runs as a
    batched Horner pass.
    """
    m = len(base_w)
    if i == 0:
        return base_w.astype(np.float64).copy()
    in_round = np.zeros((i, m), dtype=bool)
    for e, rounds in enumerate(membership_rounds):
        for r in rounds:
            if r <= i:
                in_round[r - 1, e] = True
    k = in_round.sum(axis=0)
    # last membership round per edge, 0 when none
    j = np.zeros(m, dtype=np.int64)
    for r in range(i):
        j[in_round[r]] = r + 1
    alive = base_w > 0
    eids = np.arange(m, dtype=np.int64)
    for r in range(1, i + 1):
        check = alive & ~in_round[r - 1] & (j < r)
        if check.any():
            drawn = bit_sources[r - 1].bits(eids[check])
            dead = eids[check][drawn == 0]
            alive[dead] = False
    out = np.zeros(m, dtype=np.float64)
    out[alive] = base_w[alive] * (4.0 ** (i - k[alive]))
    return out
