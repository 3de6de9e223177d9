"""Command-line front end: generators, solvers, verification, campaigns.

Exit codes: 0 success, 1 invalid configuration, 2 file I/O failure,
3 verification failure.

Reports are canonical JSON (sorted keys, two-space indent) and embed the
full run configuration, so identical configurations yield byte-identical
files; wall-clock timings are included only on request (--timing) and never
in campaign reports. The MAXWIT_THREADS environment variable caps campaign
parallelism; results are merged by trial index, so the thread count never
changes a report.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import io
from .boolmat import (
    BoolMatrix,
    WitnessMatrix,
    max_witness_oracle,
    random_matrix,
    witness_violations,
)
from .graphs import (
    LCA_SOLVERS,
    Dag,
    VertexWeightedGraph,
    all_pairs_lca,
    brute_force_heaviest_triangles,
    brute_force_two_edge_paths,
    heaviest_triangle_per_edge,
    max_weight_two_edge_paths,
    random_dag,
    random_weighted_graph,
)
from .qsim import (
    TABLE_SHAPES,
    VirtualMinTable,
    algorithm1,
    algorithm2,
    algorithm3,
    algorithm4,
    durr_hoyer_min,
    table_values,
)
from .rng import np_stream, py_stream, spawn_seed
from .witness import (
    ApproxParams,
    approx_multiwitness,
    approx_multiwitness_boosted,
    approx_rank_bounded,
    exact_max_witness_strips,
    k_witness,
    witness_rank_matrix,
)

__all__ = ["main", "build_parser", "RunConfig", "ConfigError", "VerificationFailure"]

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_VERIFY = 3


class ConfigError(ValueError):
    """Invalid flags or flag combinations; maps to exit code 1."""


class VerificationFailure(Exception):
    """Result failed its oracle check; maps to exit code 3."""


@dataclass(frozen=True)
class RunConfig:
    """Complete record of one invocation, embedded in every report.

    Handlers validate the options against the target operation's
    preconditions before dispatching; the stored dict is sufficient to
    replay the run.
    """

    command: str
    options: dict

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        opts = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
        return cls(args.command, dict(sorted(opts.items())))

    def to_json_dict(self) -> dict:
        return {"command": self.command, **self.options}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); keep 2 for I/O errors
        raise ConfigError(message)


# ---------------------------------------------------------------------------
# Shared plumbing
# ---------------------------------------------------------------------------


def _thread_count() -> int:
    raw = os.environ.get("MAXWIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"MAXWIT_THREADS must be an integer, got {raw!r}") from None


def _map_indexed(fn, items: list) -> list:
    """Apply fn to items, possibly in parallel; results keep item order."""
    if _thread_count() == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        futures = [pool.submit(fn, x) for x in items]
        return [f.result() for f in futures]


def _load_pair(args) -> tuple[BoolMatrix, BoolMatrix]:
    if args.a or args.b:
        if not (args.a and args.b):
            raise ConfigError("--a and --b must be given together")
        return io.load_matrix(args.a), io.load_matrix(args.b)
    if args.n is None:
        raise ConfigError("either --a/--b files or --n is required")
    a = random_matrix(args.n, args.density, spawn_seed(args.seed, 0))
    b = random_matrix(args.n, args.density, spawn_seed(args.seed, 1))
    return a, b


def _report_text(args, payload: dict) -> str:
    doc = {
        "schema": SCHEMA_VERSION,
        "version": _version(),
        "config": RunConfig.from_args(args).to_json_dict(),
    }
    doc.update(payload)
    return io.canonical_json(doc)


def _version() -> str:
    from . import __version__

    return __version__


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _binomial_tolerance(p: float, trials: int) -> float:
    return p + 3.0 * math.sqrt(p * (1.0 - p) / max(trials, 1))


def _witness_csv(wm: WitnessMatrix, one_based: bool) -> str:
    lines = ["i,j,witness"]
    lines += [f"{i},{j},{w}" for i, j, w in wm.to_csv_rows(one_based)]
    return "\n".join(lines) + "\n"


def _maybe_timing(args, marks: dict[str, float]) -> dict:
    if getattr(args, "timing", False):
        return {"timing": {k: round(v, 6) for k, v in marks.items()}}
    return {}


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args) -> int:
    if args.n is None:
        raise ConfigError("gen requires --n")
    if not args.out:
        raise ConfigError("gen requires --out")
    if args.kind == "matrix":
        m = random_matrix(args.n, args.density, args.seed)
        if args.format == "binary":
            io.save_matrix_binary(args.out, m)
        else:
            io.save_matrix_text(args.out, m)
        info = {"kind": "matrix", "rows": m.rows, "cols": m.cols, "ones": sum(r.bit_count() for r in m.row_bits)}
    elif args.kind == "dag":
        d = random_dag(args.n, args.density, args.seed)
        io.save_dag(args.out, d)
        info = {"kind": "dag", "n": d.n, "edges": len(d.edges)}
    else:
        g = random_weighted_graph(args.n, args.density, args.seed, args.directed)
        io.save_graph(args.out, g)
        info = {"kind": "graph", "n": g.n, "edges": len(g.edges), "directed": g.directed}
    sys.stdout.write(io.canonical_json({"written": args.out, **info}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# maxwit
# ---------------------------------------------------------------------------

EXACT_ALGOS = ("oracle", "strips")
QSIM_ALGOS = ("alg1", "alg2", "alg3", "alg4")


def _cmd_maxwit(args) -> int:
    t0 = time.perf_counter()
    a, b = _load_pair(args)
    t1 = time.perf_counter()
    stats = None
    if args.algo == "oracle":
        wm = max_witness_oracle(a, b)
    elif args.algo == "strips":
        wm = exact_max_witness_strips(a, b, args.ell)
    elif args.algo == "alg1":
        wm, stats = algorithm1(a, b, args.beta, args.seed)
    elif args.algo == "alg2":
        wm, stats = algorithm2(a, b, args.beta, args.seed)
    elif args.algo == "alg3":
        wm, stats = algorithm3(a, b, args.beta, args.seed)
    else:
        wm, stats = algorithm4(a, b, args.ell, args.beta, args.seed)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        ref = max_witness_oracle(a, b)
        disagree = int((wm.array != ref.array).sum())
        rate = disagree / (wm.n * wm.n)
        if args.algo in EXACT_ALGOS:
            tolerance = 0.0
        else:
            tolerance = _binomial_tolerance(wm.n ** (-args.beta), wm.n * wm.n)
        viol = witness_violations(a, b, wm)
        bad = len(viol["invalid"]) + len(viol["spurious"])
        if args.algo in EXACT_ALGOS:
            bad += len(viol["missing"])  # exact solvers may not drop entries
        failed = rate > tolerance or bad > 0
        verification = {
            "disagreements": disagree,
            "disagreement_rate": rate,
            "tolerance": tolerance,
            "invalid": len(viol["invalid"]),
            "missing": len(viol["missing"]),
            "spurious": len(viol["spurious"]),
            "passed": not failed,
        }
        if stats is not None:
            stats = replace(stats, error_rate_vs_oracle=rate)
    t3 = time.perf_counter()

    if args.format == "csv":
        _emit(args, _witness_csv(wm, args.one_based))
    else:
        payload = {"result": wm.to_json_dict(args.one_based)}
        if stats is not None:
            payload["stats"] = stats.to_json_dict()
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# approx
# ---------------------------------------------------------------------------


def _cmd_approx(args) -> int:
    t0 = time.perf_counter()
    a, b = _load_pair(args)
    t1 = time.perf_counter()
    if args.method == "rank-bounded":
        ell = args.ell if args.ell is not None else _default_ell(a.cols)
        wm = approx_rank_bounded(a, b, ell, args.seed)
    else:
        params = ApproxParams(args.k, args.reps, args.seed)
        if args.reps == 1:
            wm = approx_multiwitness(a, b, params)
        else:
            wm = approx_multiwitness_boosted(a, b, params)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        viol = witness_violations(a, b, wm)
        bad = len(viol["invalid"]) + len(viol["missing"]) + len(viol["spurious"])
        verification = {
            "invalid": len(viol["invalid"]),
            "missing": len(viol["missing"]),
            "spurious": len(viol["spurious"]),
        }
        if args.method == "rank-bounded":
            ranks = witness_rank_matrix(a, b, wm)
            rank_viol = int(((ranks > ell) | (ranks == -2)).sum())
            verification["rank_violations"] = rank_viol
            verification["max_rank_allowed"] = ell
            bad += rank_viol
        failed = bad > 0
        verification["passed"] = not failed
    t3 = time.perf_counter()

    if args.format == "csv":
        _emit(args, _witness_csv(wm, args.one_based))
    else:
        payload = {"result": wm.to_json_dict(args.one_based)}
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


def _default_ell(n: int) -> int:
    from .witness import default_strip_width

    return default_strip_width(n)


# ---------------------------------------------------------------------------
# kwitness
# ---------------------------------------------------------------------------


def _cmd_kwitness(args) -> int:
    t0 = time.perf_counter()
    a, b = _load_pair(args)
    t1 = time.perf_counter()
    if args.k is None:
        raise ConfigError("kwitness requires --k")
    wl = k_witness(a, b, args.k, args.seed)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        ad = a.to_dense()
        bd = b.to_dense()
        wcount = (ad.astype(np.int64) @ bd.astype(np.int64))
        want = np.minimum(wcount, args.k)
        got = wl.lengths()
        length_bad = int((got != want).sum())
        wl.validate()
        invalid = 0
        for i in range(wl.n):
            for j in range(wl.n):
                for w in wl.get(i, j):
                    if not (ad[i, w] and bd[w, j]):
                        invalid += 1
        failed = length_bad > 0 or invalid > 0
        verification = {
            "length_mismatches": length_bad,
            "invalid": invalid,
            "passed": not failed,
        }
    t3 = time.perf_counter()

    if args.format == "csv":
        lines = ["i,j,witness"]
        off = 1 if args.one_based else 0
        for i in range(wl.n):
            for j in range(wl.n):
                for w in wl.get(i, j):
                    lines.append(f"{i + off},{j + off},{w + off}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        payload = {"result": wl.to_json_dict(args.one_based)}
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# graph commands
# ---------------------------------------------------------------------------


def _load_dag(args) -> Dag:
    if args.graph:
        return io.load_dag(args.graph)
    if args.n is None:
        raise ConfigError("either --graph or --n is required")
    return random_dag(args.n, args.density, args.seed)


def _load_weighted(args, directed: bool) -> VertexWeightedGraph:
    if args.graph:
        return io.load_graph(args.graph)
    if args.n is None:
        raise ConfigError("either --graph or --n is required")
    return random_weighted_graph(args.n, args.density, args.seed, directed)


def _cmd_lca(args) -> int:
    t0 = time.perf_counter()
    dag = _load_dag(args)
    t1 = time.perf_counter()
    lca = all_pairs_lca(dag, args.solver, args.ell, args.beta, args.seed)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        anc = dag.ancestor_bitsets()
        desc = dag.descendant_bitsets()
        wrong = 0
        for u in range(dag.n):
            for v in range(dag.n):
                common = anc[u] & anc[v]
                w = int(lca[u, v])
                if w < 0:
                    ok = common == 0
                else:
                    ok = bool((common >> w) & 1) and (desc[w] & common) == (1 << w)
                wrong += not ok
        tolerance = (
            0.0
            if args.solver in ("oracle", "strips")
            else _binomial_tolerance(dag.n ** (-args.beta), dag.n * dag.n)
        )
        rate = wrong / (dag.n * dag.n)
        failed = rate > tolerance
        verification = {
            "wrong_pairs": wrong,
            "rate": rate,
            "tolerance": tolerance,
            "passed": not failed,
        }
    t3 = time.perf_counter()

    off = 1 if args.one_based else 0
    if args.format == "csv":
        lines = ["u,v,lca"]
        for u in range(dag.n):
            for v in range(dag.n):
                if lca[u, v] >= 0:
                    lines.append(f"{u + off},{v + off},{int(lca[u, v]) + off}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        entries = [
            {"u": int(u) + off, "v": int(v) + off, "lca": int(lca[u, v]) + off}
            for u, v in zip(*np.nonzero(lca >= 0))
        ]
        payload = {"result": {"n": dag.n, "entries": entries}}
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


def _cmd_triangle(args) -> int:
    t0 = time.perf_counter()
    g = _load_weighted(args, directed=False)
    t1 = time.perf_counter()
    apex = heaviest_triangle_per_edge(g, args.lightest)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        ref = brute_force_heaviest_triangles(g, args.lightest)
        wrong = sum(1 for e in apex if apex[e] != ref[e])
        failed = wrong > 0
        verification = {"wrong_edges": wrong, "passed": not failed}
    t3 = time.perf_counter()

    off = 1 if args.one_based else 0
    if args.format == "csv":
        lines = ["u,v,apex"]
        for (u, v), w in sorted(apex.items()):
            if w is not None:
                lines.append(f"{u + off},{v + off},{w + off}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        edges = [
            {"u": u + off, "v": v + off, "apex": w + off}
            for (u, v), w in sorted(apex.items())
            if w is not None
        ]
        payload = {"result": {"n": g.n, "edges": edges}}
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


def _cmd_two_edge(args) -> int:
    t0 = time.perf_counter()
    g = _load_weighted(args, directed=True)
    t1 = time.perf_counter()
    mid, weight = max_weight_two_edge_paths(g)
    t2 = time.perf_counter()

    verification = None
    failed = False
    if args.verify:
        rmid, rweight = brute_force_two_edge_paths(g)
        wrong = int((mid != rmid).sum())
        both = (mid >= 0) & (rmid >= 0)
        wrong += int((weight[both] != rweight[both]).sum())
        failed = wrong > 0
        verification = {"wrong_pairs": wrong, "passed": not failed}
    t3 = time.perf_counter()

    off = 1 if args.one_based else 0
    if args.format == "csv":
        lines = ["i,j,mid,weight"]
        for i, j in zip(*np.nonzero(mid >= 0)):
            lines.append(f"{int(i) + off},{int(j) + off},{int(mid[i, j]) + off},{float(weight[i, j])!r}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        entries = [
            {
                "i": int(i) + off,
                "j": int(j) + off,
                "mid": int(mid[i, j]) + off,
                "weight": float(weight[i, j]),
            }
            for i, j in zip(*np.nonzero(mid >= 0))
        ]
        payload = {"result": {"n": g.n, "entries": entries}}
        if verification is not None:
            payload["verification"] = verification
        payload.update(
            _maybe_timing(args, {"load_s": t1 - t0, "solve_s": t2 - t1, "verify_s": t3 - t2})
        )
        _emit(args, _report_text(args, payload))
    return EXIT_VERIFY if failed else EXIT_OK


# ---------------------------------------------------------------------------
# campaign
# ---------------------------------------------------------------------------


def _parse_q_grid(text: str) -> list[int]:
    try:
        qs = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--q-grid must be comma-separated integers, got {text!r}") from None
    if not qs or any(q < 1 for q in qs):
        raise ConfigError("--q-grid entries must be positive")
    return qs


def _campaign_durr_hoyer(args) -> dict:
    qs = _parse_q_grid(args.q_grid)

    def run_cell(cell):
        qi, q, si, shape = cell
        hits = 0
        queries = []
        for t in range(args.trials):
            vals = table_values(shape, q, np_stream(args.seed, 31, qi, si, t))
            table = VirtualMinTable.from_values(vals.tolist())
            _, log = durr_hoyer_min(table, py_stream(args.seed, 30, qi, si, t))
            hits += log.succeeded
            queries.append(log.oracle_queries)
        arr = np.asarray(queries, np.float64)
        return {
            "q": q,
            "shape": shape,
            "trials": args.trials,
            "success_rate": hits / args.trials,
            "mean_queries": float(arr.mean()),
            "std_queries": float(arr.std()),
        }

    cells = [
        (qi, q, si, shape)
        for qi, q in enumerate(qs)
        for si, shape in enumerate(TABLE_SHAPES)
    ]
    results = _map_indexed(run_cell, cells)
    pooled = []
    for q in qs:
        means = [c["mean_queries"] for c in results if c["q"] == q]
        pooled.append(float(np.mean(means)))
    slope = None
    if len(qs) >= 2:
        slope = float(np.polyfit(np.log(np.asarray(qs, np.float64)), np.log(pooled), 1)[0])
    return {
        "target": "durr-hoyer",
        "cells": results,
        "pooled_mean_queries": dict(zip(map(str, qs), pooled)),
        "slope": slope,
        "min_success_rate": min(c["success_rate"] for c in results),
    }


def _campaign_multiwitness(args) -> dict:
    n, k = args.n or 64, args.k
    a = BoolMatrix.ones(n)
    b = BoolMatrix.ones(n)
    ad = a.to_dense().astype(np.int64)
    bd = b.to_dense().astype(np.int64)
    wcount = ad @ bd
    bound = 4 * np.ceil(wcount / k).astype(np.int64)

    def run_trial(t):
        wm = approx_multiwitness(a, b, ApproxParams(k, 1, spawn_seed(args.seed, 32, t)))
        ranks = witness_rank_matrix(a, b, wm)
        ok = (ranks >= 1) & (ranks <= bound)
        validity = int((ranks == -2).sum() + ((ranks == -1) & (wcount > 0)).sum())
        return {
            "trial": t,
            "success_rate": float(ok.mean()),
            "validity_violations": validity,
        }

    trials = _map_indexed(run_trial, list(range(args.trials)))
    return {
        "target": "multiwitness",
        "n": n,
        "k": k,
        "trials": trials,
        "pooled_success_rate": float(np.mean([t["success_rate"] for t in trials])),
        "total_validity_violations": int(sum(t["validity_violations"] for t in trials)),
        "bound_form": "rank <= 4*ceil(W/k)",
    }


def _campaign_maxwit_accuracy(args) -> dict:
    n = args.n or 64

    def run_trial(t):
        a = random_matrix(n, args.density, spawn_seed(args.seed, 33, t, 0))
        b = random_matrix(n, args.density, spawn_seed(args.seed, 33, t, 1))
        wm, stats = algorithm1(a, b, args.beta, spawn_seed(args.seed, 34, t))
        ref = max_witness_oracle(a, b)
        return {
            "trial": t,
            "wrong_entries": int((wm.array != ref.array).sum()),
            "entries": n * n,
            "mean_queries_per_entry": stats.mean_queries_per_entry,
        }

    trials = _map_indexed(run_trial, list(range(args.trials)))
    wrong = sum(t["wrong_entries"] for t in trials)
    total = sum(t["entries"] for t in trials)
    p = n ** (-args.beta)
    return {
        "target": "maxwit-accuracy",
        "n": n,
        "beta": args.beta,
        "trials": trials,
        "entry_trials": total,
        "error_rate": wrong / total,
        "error_bound": _binomial_tolerance(p, total),
    }


def _cmd_campaign(args) -> int:
    if args.trials < 1:
        raise ConfigError("--trials must be at least 1")
    if args.target == "durr-hoyer":
        payload = _campaign_durr_hoyer(args)
    elif args.target == "multiwitness":
        payload = _campaign_multiwitness(args)
    else:
        payload = _campaign_maxwit_accuracy(args)
    _emit(args, _report_text(args, {"results": payload}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    a = io.load_matrix(args.a)
    b = io.load_matrix(args.b)
    doc = json.loads(Path(args.result).read_text())
    if "result" in doc:  # full report; unwrap to the witness payload
        doc = doc["result"]
    wm = WitnessMatrix.from_json_dict(doc)
    ref = max_witness_oracle(a, b)
    viol = witness_violations(a, b, wm)
    disagree = int((wm.array != ref.array).sum())
    payload = {
        "diff": {
            "entries": wm.n * wm.n,
            "max_witness_disagreements": disagree,
            "invalid": len(viol["invalid"]),
            "missing": len(viol["missing"]),
            "spurious": len(viol["spurious"]),
            "invalid_sample": [list(x) for x in viol["invalid"][:10]],
        }
    }
    bad = len(viol["invalid"]) + len(viol["missing"]) + len(viol["spurious"])
    if args.max_rank is not None:
        ranks = witness_rank_matrix(a, b, wm)
        rank_viol = int(((ranks > args.max_rank) | (ranks == -2)).sum())
        payload["diff"]["rank_violations"] = rank_viol
        payload["diff"]["max_rank_allowed"] = args.max_rank
        bad += rank_viol
    payload["diff"]["passed"] = bad == 0
    _emit(args, _report_text(args, payload))
    return EXIT_OK if bad == 0 else EXIT_VERIFY


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(p, matrices: bool = True, graph: bool = False) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--one-based", dest="one_based", action="store_true")
    p.add_argument("--verify", action="store_true", help="check against the oracle; exit 3 on failure")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings in the report")
    if matrices:
        p.add_argument("--a", type=str, default=None, help="left matrix file")
        p.add_argument("--b", type=str, default=None, help="right matrix file")
    if graph:
        p.add_argument("--graph", type=str, default=None, help="graph file")
    p.add_argument("--n", type=int, default=None, help="size for generated instances")
    p.add_argument("--density", type=float, default=0.5)


def build_parser() -> _Parser:
    parser = _Parser(prog="maxwit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a random matrix, dag, or weighted graph file")
    p.add_argument("--kind", choices=("matrix", "dag", "graph"), default="matrix")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("text", "binary"), default="text")
    p.add_argument("--directed", action="store_true")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("maxwit", help="maximum witness of a Boolean product")
    _add_common(p)
    p.add_argument("--algo", choices=EXACT_ALGOS + QSIM_ALGOS, default="oracle")
    p.add_argument("--ell", type=int, default=None, help="strip width (strips, alg4)")
    p.add_argument("--beta", type=float, default=2.0)
    p.set_defaults(func=_cmd_maxwit)

    p = sub.add_parser("approx", help="approximate maximum witnesses")
    _add_common(p)
    p.add_argument("--method", choices=("rank-bounded", "multiwitness"), required=True)
    p.add_argument("--ell", type=int, default=None, help="rank bound (rank-bounded)")
    p.add_argument("--k", type=int, default=4, help="witnesses per round (multiwitness)")
    p.add_argument("--reps", type=int, default=1)
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("kwitness", help="min(k, W) distinct witnesses per entry")
    _add_common(p)
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=_cmd_kwitness)

    p = sub.add_parser("lca", help="all-pairs lowest common ancestors of a dag")
    _add_common(p, matrices=False, graph=True)
    p.add_argument("--solver", choices=LCA_SOLVERS, default="oracle")
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--beta", type=float, default=2.0)
    p.set_defaults(func=_cmd_lca)

    p = sub.add_parser("triangle", help="extreme-weight triangle through every edge")
    _add_common(p, matrices=False, graph=True)
    p.add_argument("--lightest", action="store_true")
    p.set_defaults(func=_cmd_triangle)

    p = sub.add_parser("two-edge", help="max middle-weight two-edge paths, all pairs")
    _add_common(p, matrices=False, graph=True)
    p.set_defaults(func=_cmd_two_edge)

    p = sub.add_parser("campaign", help="Monte-Carlo statistics campaigns")
    p.add_argument("--target", choices=("durr-hoyer", "multiwitness", "maxwit-accuracy"), required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--q-grid", dest="q_grid", type=str, default="64,256,1024,4096")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--beta", type=float, default=2.0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_campaign)

    p = sub.add_parser("verify", help="diff a witness result file against the oracle")
    p.add_argument("--a", type=str, required=True)
    p.add_argument("--b", type=str, required=True)
    p.add_argument("--result", type=str, required=True)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
