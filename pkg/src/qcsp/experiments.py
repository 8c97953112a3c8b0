"""Batch experiments: generate random instances, run the classical searches, write CSV rows.

Instance i at size n uses the random stream (seed + i, n), so any single row
can be regenerated from its ``seed`` and ``n`` columns alone.
"""

from __future__ import annotations

import configparser
import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable

import numpy as np

from .classical import dsatur, dsatur_simplified, sat_backtrack
from .instances import clause_count, gen_gnp, gen_ksat

CSV_FIELDS = ("kind", "n", "k_or_p", "m", "seed", "nodes", "found", "wall_ms")
COLOURING_RUNS = ("chromatic", "kcap", "k", "simplified")


@dataclass
class ExperimentConfig:
    """Batch description, readable from a flat key=value file.

    Attributes:
        problem: "colouring" or "sat".
        n_min, n_max, n_step: Instance sizes.
        samples: Instances per size.
        seed: Base seed.
        p: Edge probability for colouring.
        k: Clause width for SAT.
        runs: Colouring searches per graph, any of "chromatic", "kcap"
            (branch and bound capped at the chromatic number, which finds a
            chi-colouring and refutes chi-1), "k" (decision at chi, halting
            on the first colouring) and "simplified" (unpruned refutation of
            chi-1).
        node_limit: Per-search node cap, 0 for none.
        workers: Parallel worker processes.
    """

    problem: str = "colouring"
    n_min: int = 10
    n_max: int = 20
    n_step: int = 1
    samples: int = 10
    seed: int = 0
    p: float = 0.5
    k: int = 3
    runs: tuple[str, ...] = COLOURING_RUNS
    node_limit: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.problem not in ("colouring", "sat"):
            raise ValueError("problem must be 'colouring' or 'sat'")
        if self.n_min < 1 or self.n_max < self.n_min or self.n_step < 1:
            raise ValueError("bad n range")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if isinstance(self.runs, str):
            self.runs = tuple(r.strip() for r in self.runs.split(",") if r.strip())
        bad = set(self.runs) - set(COLOURING_RUNS)
        if bad:
            raise ValueError(f"unknown colouring runs {sorted(bad)}")

    @property
    def sizes(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        parser.read_string("[experiment]\n" + text)
        raw = dict(parser["experiment"])
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        values = {}
        for key, val in raw.items():
            if key in ("problem", "runs"):
                values[key] = val
            elif key == "p":
                values[key] = float(val)
            else:
                values[key] = int(val)
        return cls(**values)

    @classmethod
    def load(cls, path: str | Path) -> "ExperimentConfig":
        return cls.from_text(Path(path).read_text())

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            lines.append(f"{f.name} = {','.join(v) if isinstance(v, tuple) else v}")
        return "\n".join(lines) + "\n"


def _timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, (time.perf_counter() - t0) * 1000.0


def run_colouring_instance(n: int, p: float, seed: int, runs=COLOURING_RUNS, node_limit: int = 0) -> list[dict]:
    """Rows for one random graph. ``k_or_p`` holds the number of colours searched."""
    g = gen_gnp(n, p, seed, n)
    rows = []
    chi_res, ms = _timed(dsatur, g, "chromatic", node_limit=node_limit)
    chi = chi_res.chromatic
    if "chromatic" in runs:
        rows.append(_row("col_chromatic", n, chi if chi else 0, g.m, seed, chi_res.stats, ms))
    if chi is None:
        return rows
    if "kcap" in runs:
        res, ms = _timed(dsatur, g, "chromatic", chi, node_limit=node_limit)
        rows.append(_row("col_kcap", n, chi, g.m, seed, res.stats, ms))
    if "k" in runs:
        res, ms = _timed(dsatur, g, "k", chi, node_limit=node_limit)
        rows.append(_row("col_k", n, chi, g.m, seed, res.stats, ms))
    if "simplified" in runs and chi > 1:
        res, ms = _timed(dsatur_simplified, g, chi - 1, node_limit=node_limit)
        rows.append(_row("col_simplified", n, chi - 1, g.m, seed, res.stats, ms))
    return rows


def run_sat_instance(n: int, k: int, seed: int, node_limit: int = 0) -> list[dict]:
    m = clause_count(n, k, "round")
    f = gen_ksat(n, k, m, seed, n)
    (_, stats), ms = _timed(sat_backtrack, f, node_limit=node_limit)
    return [_row("sat", n, k, m, seed, stats, ms)]


def _row(kind, n, k_or_p, m, seed, stats, ms) -> dict:
    return {
        "kind": kind,
        "n": n,
        "k_or_p": k_or_p,
        "m": m,
        "seed": seed,
        "nodes": stats.nodes,
        "found": int(stats.found),
        "wall_ms": round(ms, 3),
    }


def _task(args):
    cfg, n, seed = args
    if cfg.problem == "colouring":
        return run_colouring_instance(n, cfg.p, seed, cfg.runs, cfg.node_limit)
    return run_sat_instance(n, cfg.k, seed, cfg.node_limit)


def _sort_key(row: dict):
    return (int(row["n"]), int(row["seed"]), row["kind"])


def run_experiment(cfg: ExperimentConfig, out: str | Path | None = None) -> list[dict]:
    """Run every instance in ``cfg`` and return rows sorted by (n, seed, kind).

    When ``out`` is given, rows are appended to ``out`` + ".partial" as they
    finish, so an interrupted batch keeps its results. The sorted file
    replaces it at the end.
    """
    tasks = [(cfg, n, cfg.seed + i) for n in cfg.sizes for i in range(cfg.samples)]
    rows: list[dict] = []
    partial = Path(str(out) + ".partial") if out else None
    fh = open(partial, "w", newline="") if partial else None
    writer = None
    if fh:
        writer = csv.DictWriter(fh, CSV_FIELDS)
        writer.writeheader()

    def collect(new_rows):
        rows.extend(new_rows)
        if writer:
            writer.writerows(new_rows)
            fh.flush()

    try:
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as pool:
                for r in pool.map(_task, tasks, chunksize=1):
                    collect(r)
        else:
            for t in tasks:
                collect(_task(t))
    finally:
        if fh:
            fh.close()
    rows.sort(key=_sort_key)
    if out:
        write_rows(rows, out)
        os.remove(partial)
    return rows


def write_rows(rows: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, CSV_FIELDS)
        w.writeheader()
        for r in sorted(rows, key=_sort_key):
            w.writerow({k: r[k] for k in CSV_FIELDS})


def read_rows(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(CSV_FIELDS) - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        out = []
        for row in reader:
            out.append(
                {
                    "kind": row["kind"],
                    "n": int(row["n"]),
                    "k_or_p": float(row["k_or_p"]) if "." in row["k_or_p"] else int(row["k_or_p"]),
                    "m": int(row["m"]),
                    "seed": int(row["seed"]),
                    "nodes": int(row["nodes"]),
                    "found": int(row["found"]),
                    "wall_ms": float(row["wall_ms"]),
                }
            )
    return out


def rows_of_kind(rows: Iterable[dict], kind: str) -> list[dict]:
    return [r for r in rows if r["kind"] == kind]


@dataclass
class BatchSummary:
    kind: str
    n: int
    count: int
    median: float
    p90: float
    extra: dict = field(default_factory=dict)


def summarize(rows: Iterable[dict], kind: str) -> list[BatchSummary]:
    """Per-n median and 90th percentile of node counts for rows of ``kind``."""
    groups: dict[int, list[int]] = {}
    for r in rows:
        if r["kind"] == kind:
            groups.setdefault(int(r["n"]), []).append(int(r["nodes"]))
    return [
        BatchSummary(kind, n, len(v), float(np.median(v)), float(np.percentile(v, 90)))
        for n, v in sorted(groups.items())
    ]
