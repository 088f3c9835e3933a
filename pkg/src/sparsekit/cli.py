"""Command-line front end.

One binary, subcommand style. Every run prints a versioned JSON stats
record to stdout (query ledger, provenance, timings); file artifacts are
byte-deterministic given (inputs, seed, flags). Config precedence is
flags > environment (SPARSEKIT_SEED, SPARSEKIT_C_PACK, SPARSEKIT_C) >
defaults. Exit codes: 0 success, 2 verification failure, 1 error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import graphio
from .errors import SparsekitError
from .graph import WeightedGraph, gnp_random_graph, random_m_edge_graph
from .hardgen import audit_sparsifier_recovery, build_hidden_graph, gen_valid_input
from .oracle import CostLedger
from .resistance import (
    build_resistance_oracle,
    load_oracle,
    query_resistance,
    save_oracle,
)
from .solver import SddSystem, bottom_eigs, min_cut_approx, sdd_solve, solve_laplacian
from .spanner import build_spanner
from .sparsify import (
    Sparsifier,
    half_sparsify,
    ks_sparsify,
    refined_sparsify,
    verify_spectral,
)

DEFAULT_SEED = 1729
STATS_SCHEMA = "sparsekit-stats/1"


def _env(name: str, cast, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    return cast(raw)


def _resolve(flag_value, env_name: str, cast, default):
    if flag_value is not None:
        return flag_value
    return _env(env_name, cast, default)


def _emit_stats(command: str, config: dict, ledger: CostLedger,
                result: dict, t0: float, out=None) -> None:
    out = out if out is not None else sys.stdout
    record = {
        "schema": STATS_SCHEMA,
        "command": command,
        "config": config,
        "ledger": ledger.to_dict(),
        "result": result,
        "timings": {"total_s": time.perf_counter() - t0},
    }
    json.dump(record, out, sort_keys=True, default=_jsonable)
    out.write("\n")


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, frozenset):
        return sorted(obj)
    raise TypeError(f"not JSON-serializable: {type(obj)}")


def _provenance_doc(sparsifier: Sparsifier) -> dict:
    prov = sparsifier.provenance
    return {
        "method": prov.get("method"),
        "seed": prov.get("seed"),
        "epsilon": prov.get("epsilon"),
        "T": prov.get("rough_provenance", prov).get("T", prov.get("T", 0)),
        "c_pack": prov.get("c_pack"),
        "C": prov.get("C"),
        "edges": int(sparsifier.size),
    }


def _sidecar(sparsifier: Sparsifier, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_provenance_doc(sparsifier), fh, sort_keys=True)
        fh.write("\n")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sparsekit",
                                 description="spectral sparsification toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate graphs")
    gsub = g.add_subparsers(dest="kind", required=True)
    gr = gsub.add_parser("random", help="G(n, p) or fixed-m random graph")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--p", type=float, default=None)
    gr.add_argument("--m", type=int, default=None)
    gr.add_argument("--wmin", type=float, default=1.0)
    gr.add_argument("--wmax", type=float, default=1.0)
    gr.add_argument("--seed", type=int, default=None)
    gr.add_argument("out")
    gh = gsub.add_parser("hard", help="hidden-sparsifier lower-bound instance")
    gh.add_argument("--n", type=int, required=True)
    gh.add_argument("--m", type=int, required=True)
    gh.add_argument("--epsilon", type=float, required=True)
    gh.add_argument("--seed", type=int, default=None)
    gh.add_argument("--handle", action="store_true",
                    help="write a JSON handle for oracle-mode benchmarking "
                         "instead of materializing the graph")
    gh.add_argument("out")

    s = sub.add_parser("sparsify", help="spectral sparsification")
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--method", choices=["ks", "refined", "half"], default="refined")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--c-pack", dest="c_pack", type=float, default=None)
    s.add_argument("--C", dest="C", type=float, default=None)
    s.add_argument("--verify", action="store_true",
                   help="run the dense spectral check on the output")
    s.add_argument("input")
    s.add_argument("out")

    v = sub.add_parser("verify", help="spectral verification of a sparsifier")
    v.add_argument("--epsilon", type=float, required=True)
    v.add_argument("graph")
    v.add_argument("sparsifier")

    sp = sub.add_parser("spanner", help="build a spanner")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("input")
    sp.add_argument("out")

    r = sub.add_parser("resistance", help="effective-resistance oracle")
    rsub = r.add_subparsers(dest="kind", required=True)
    rb = rsub.add_parser("build")
    rb.add_argument("--epsilon", type=float, required=True)
    rb.add_argument("--seed", type=int, default=None)
    rb.add_argument("--tol", type=float, default=1e-8)
    rb.add_argument("input")
    rb.add_argument("out")
    rq = rsub.add_parser("query")
    rq.add_argument("oracle")
    rq.add_argument("s", type=int)
    rq.add_argument("t", type=int)

    so = sub.add_parser("solve", help="linear solving")
    ssub = so.add_subparsers(dest="kind", required=True)
    sl = ssub.add_parser("laplacian")
    sl.add_argument("--tol", type=float, default=1e-8)
    sl.add_argument("input")
    sl.add_argument("b")
    sl.add_argument("--out", default=None)
    sd = ssub.add_parser("sdd")
    sd.add_argument("--epsilon", type=float, default=0.1)
    sd.add_argument("--seed", type=int, default=None)
    sd.add_argument("input", help="SDD matrix in Matrix Market format")
    sd.add_argument("b")
    sd.add_argument("--out", default=None)

    mc = sub.add_parser("mincut", help="approximate min cut via sparsifier")
    mc.add_argument("--epsilon", type=float, default=0.1)
    mc.add_argument("--seed", type=int, default=None)
    mc.add_argument("input")

    ei = sub.add_parser("eigs", help="bottom Laplacian eigenpairs")
    ei.add_argument("--k", type=int, default=4)
    ei.add_argument("--epsilon", type=float, default=0.25)
    ei.add_argument("--seed", type=int, default=None)
    ei.add_argument("input")
    ei.add_argument("--out", default=None, help="write eigenvectors here")

    be = sub.add_parser("bench", help="query-cost benchmarks")
    bsub = be.add_subparsers(dest="kind", required=True)
    bs = bsub.add_parser("sweep", help="modeled-cost scaling over m = n*2^j")
    bs.add_argument("--n", type=int, default=128)
    bs.add_argument("--js", type=str, default="2,3,4,5")
    bs.add_argument("--epsilon", type=float, default=1.0)
    bs.add_argument("--seed", type=int, default=None)
    bs.add_argument("--c-pack", dest="c_pack", type=float, default=1e-4)
    bs.add_argument("--C", dest="C", type=float, default=0.05)
    bh = bsub.add_parser("hard", help="sparsifier recovery on hidden instances")
    bh.add_argument("--n", type=int, default=64)
    bh.add_argument("--m", type=int, default=512)
    bh.add_argument("--epsilon", type=float, default=0.25)
    bh.add_argument("--seed", type=int, default=None)

    return ap


def _load_graph(path: str) -> WeightedGraph:
    if path.endswith(".json"):
        with open(path, encoding="utf-8") as fh:
            handle = json.load(fh)
        if handle.get("type") != "hidden-graph-handle":
            raise SparsekitError(f"{path} is not a hidden-graph handle")
        x = gen_valid_input(handle["n"], handle["m"], handle["epsilon"], handle["seed"])
        return build_hidden_graph(x).to_graph()
    return graphio.read_graph(path)


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    t0 = time.perf_counter()
    ledger = CostLedger()
    try:
        return _dispatch(args, ledger, t0)
    except SparsekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args, ledger: CostLedger, t0: float) -> int:
    seed = _resolve(getattr(args, "seed", None), "SPARSEKIT_SEED", int, DEFAULT_SEED)
    c_pack = _resolve(getattr(args, "c_pack", None), "SPARSEKIT_C_PACK", float, 1.0)
    big_c = _resolve(getattr(args, "C", None), "SPARSEKIT_C", float, 4.0)

    if args.command == "gen" and args.kind == "random":
        if args.m is not None:
            G = random_m_edge_graph(args.n, args.m, args.wmin, args.wmax, seed)
        else:
            G = gnp_random_graph(args.n, args.p if args.p is not None else 0.5,
                                 args.wmin, args.wmax, seed)
        graphio.write_edge_list(G, args.out)
        _emit_stats("gen random", vars(args) | {"seed": seed}, ledger,
                    {"n": G.n, "m": G.m}, t0)
        return 0

    if args.command == "gen" and args.kind == "hard":
        if args.handle:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump({"type": "hidden-graph-handle", "n": args.n,
                           "m": args.m, "epsilon": args.epsilon,
                           "seed": seed}, fh, sort_keys=True)
                fh.write("\n")
            result = {"handle": args.out}
        else:
            x = gen_valid_input(args.n, args.m, args.epsilon, seed)
            hg = build_hidden_graph(x, ledger)
            graphio.write_edge_list(hg.to_graph(), args.out)
            result = {"nodes": hg.n_nodes, "edges": hg.n_edges}
        _emit_stats("gen hard", {"n": args.n, "m": args.m,
                                 "epsilon": args.epsilon, "seed": seed},
                    ledger, result, t0)
        return 0

    if args.command == "sparsify":
        G = _load_graph(args.input)
        if args.method == "refined":
            spr = refined_sparsify(G, args.epsilon, seed=seed, C=big_c,
                                   c_pack=c_pack, ledger=ledger)
        elif args.method == "ks":
            spr = ks_sparsify(G, args.epsilon, seed=seed, c_pack=c_pack,
                              ledger=ledger)
        else:
            spr = half_sparsify(G, args.epsilon, seed=seed, c_pack=c_pack,
                                ledger=ledger)
        H = spr.to_graph()
        graphio.write_edge_list(H, args.out)
        _sidecar(spr, args.out + ".json")
        result = {"input_edges": G.m, "output_edges": spr.size,
                  "provenance": _provenance_doc(spr)}
        code = 0
        if args.verify:
            report = verify_spectral(G, H, args.epsilon)
            result["spectral"] = {"lambda_min": report.lambda_min,
                                  "lambda_max": report.lambda_max,
                                  "pass": report.passed}
            code = 0 if report.passed else 2
        _emit_stats("sparsify", {"method": args.method, "epsilon": args.epsilon,
                                 "seed": seed, "c_pack": c_pack, "C": big_c},
                    ledger, result, t0)
        return code

    if args.command == "verify":
        G = _load_graph(args.graph)
        H = _load_graph(args.sparsifier)
        report = verify_spectral(G, H, args.epsilon)
        _emit_stats("verify", {"epsilon": args.epsilon}, ledger,
                    {"lambda_min": report.lambda_min,
                     "lambda_max": report.lambda_max,
                     "pass": report.passed}, t0)
        return 0 if report.passed else 2

    if args.command == "spanner":
        G = _load_graph(args.input)
        spn = build_spanner(G, k=args.k, seed=seed, ledger=ledger)
        graphio.write_edge_list(spn.to_graph(G), args.out)
        _emit_stats("spanner", {"k": spn.k, "seed": seed}, ledger,
                    {"stretch": spn.stretch, "edges": spn.size}, t0)
        return 0

    if args.command == "resistance" and args.kind == "build":
        G = _load_graph(args.input)
        oracle = build_resistance_oracle(G, args.epsilon, seed=seed,
                                         solver_tol=args.tol)
        save_oracle(oracle, args.out)
        _emit_stats("resistance build", {"epsilon": args.epsilon, "seed": seed,
                                         "tol": args.tol}, ledger,
                    {"q": oracle.q, "n": oracle.n}, t0)
        return 0

    if args.command == "resistance" and args.kind == "query":
        oracle = load_oracle(args.oracle)
        value = query_resistance(oracle, args.s, args.t, ledger=ledger)
        _emit_stats("resistance query", {"s": args.s, "t": args.t}, ledger,
                    {"resistance": value}, t0)
        return 0

    if args.command == "solve" and args.kind == "laplacian":
        G = _load_graph(args.input)
        b = graphio.read_vector(args.b)
        res = solve_laplacian(G, b, tol=args.tol)
        if args.out:
            graphio.write_vector(res.x, args.out)
        _emit_stats("solve laplacian", {"tol": args.tol}, ledger,
                    {"iterations": res.iterations, "residual": res.residual,
                     "converged": res.converged, "projected": res.projected,
                     "x": None if args.out else res.x}, t0)
        return 0

    if args.command == "solve" and args.kind == "sdd":
        import scipy.io

        A = scipy.io.mmread(args.input).tocsr()
        b = graphio.read_vector(args.b)
        res = sdd_solve(SddSystem(A, b), args.epsilon, seed=seed, ledger=ledger)
        if args.out:
            graphio.write_vector(res.x, args.out)
        _emit_stats("solve sdd", {"epsilon": args.epsilon, "seed": seed}, ledger,
                    {"iterations": res.iterations, "residual": res.residual,
                     "x": None if args.out else res.x}, t0)
        return 0

    if args.command == "mincut":
        G = _load_graph(args.input)
        members, value = min_cut_approx(G, args.epsilon, seed=seed,
                                        C=big_c, c_pack=c_pack, ledger=ledger)
        _emit_stats("mincut", {"epsilon": args.epsilon, "seed": seed}, ledger,
                    {"value": value, "members": sorted(members)}, t0)
        return 0

    if args.command == "eigs":
        G = _load_graph(args.input)
        vals, vecs = bottom_eigs(G, args.k, args.epsilon, seed=seed,
                                 C=big_c, c_pack=c_pack, ledger=ledger)
        if args.out:
            np.savetxt(args.out, vecs)
        _emit_stats("eigs", {"k": args.k, "epsilon": args.epsilon, "seed": seed},
                    ledger, {"eigenvalues": vals}, t0)
        return 0

    if args.command == "bench" and args.kind == "sweep":
        js = [int(tok) for tok in args.js.split(",") if tok]
        points = []
        for j in js:
            m = args.n << j
            G = random_m_edge_graph(args.n, m, seed=seed + j)
            run_ledger = CostLedger()
            refined_sparsify(G, args.epsilon, seed=seed, rough_eps=args.epsilon,
                             C=args.C, c_pack=args.c_pack, ledger=run_ledger)
            target = math.sqrt(m * args.n) / args.epsilon
            points.append({"j": j, "m": m,
                           "classical_queries": run_ledger.classical_queries,
                           "modeled_quantum_queries": run_ledger.modeled_quantum_queries,
                           "target_sqrt_mn_over_eps": target,
                           "ratio": run_ledger.modeled_quantum_queries / target})
            ledger.merge(run_ledger)
        ratios = [pt["ratio"] for pt in points]
        _emit_stats("bench sweep", {"n": args.n, "js": js, "epsilon": args.epsilon,
                                    "seed": seed, "c_pack": args.c_pack,
                                    "C": args.C},
                    ledger, {"points": points,
                             "ratio_spread": max(ratios) / min(ratios)}, t0)
        return 0

    if args.command == "bench" and args.kind == "hard":
        x = gen_valid_input(args.n, args.m, args.epsilon, seed)
        hg = build_hidden_graph(x, ledger)
        G = hg.to_graph()
        spr = refined_sparsify(G, args.epsilon, seed=seed, ledger=ledger)
        frac = audit_sparsifier_recovery(x, spr)
        _emit_stats("bench hard", {"n": args.n, "m": args.m,
                                   "epsilon": args.epsilon, "seed": seed},
                    ledger, {"edges": hg.n_edges,
                             "recovered_fraction": frac,
                             "sparsifier_edges": spr.size}, t0)
        return 0

    raise SparsekitError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
