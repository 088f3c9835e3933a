"""Graph and vector file I/O.

Native edge-list text format: first line "n m", then m lines "u v w" with
0-based node ids and a decimal weight. Matrix Market coordinate files are
also accepted for ingestion (symmetric patterns; diagonal entries are
skipped). Weights round-trip exactly via repr.
"""

from __future__ import annotations

import io

import numpy as np
import scipy.io

from .errors import BadShape
from .graph import WeightedGraph, build_graph


def write_edge_list(G: WeightedGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{G.n} {G.m}\n")
        for u, v, w in G.edges():
            fh.write(f"{u} {v} {w!r}\n")


def read_edge_list(path_or_file) -> WeightedGraph:
    fh = open(path_or_file, "r", encoding="utf-8") if isinstance(path_or_file, str) else path_or_file
    try:
        header = fh.readline().split()
        if len(header) != 2:
            raise BadShape("first line must be 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for _ in range(m):
            parts = fh.readline().split()
            if len(parts) != 3:
                raise BadShape("edge lines must be 'u v w'")
            edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
        return build_graph(n, edges)
    finally:
        if isinstance(path_or_file, str):
            fh.close()


def read_matrix_market(path: str) -> WeightedGraph:
    """Coordinate-format ingestion; off-diagonal entries become edges."""
    mat = scipy.io.mmread(path).tocoo()
    if mat.shape[0] != mat.shape[1]:
        raise BadShape("matrix market graph must be square")
    edges = {}
    for i, j, v in zip(mat.row.tolist(), mat.col.tolist(), mat.data.tolist()):
        if i == j:
            continue  # diagonal entries carry no edge
        key = (min(i, j), max(i, j))
        if key not in edges:
            edges[key] = float(v)
    return build_graph(mat.shape[0], [(u, v, w) for (u, v), w in sorted(edges.items())])


def read_graph(path: str) -> WeightedGraph:
    if path.endswith((".mtx", ".mm")):
        return read_matrix_market(path)
    return read_edge_list(path)


def write_vector(x: np.ndarray, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for val in np.asarray(x, dtype=np.float64):
            fh.write(f"{float(val)!r}\n")


def read_vector(path: str) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return np.array([float(tok) for tok in fh.read().split()], dtype=np.float64)


def graph_to_string(G: WeightedGraph) -> str:
    buf = io.StringIO()
    buf.write(f"{G.n} {G.m}\n")
    for u, v, w in G.edges():
        buf.write(f"{u} {v} {w!r}\n")
    return buf.getvalue()
