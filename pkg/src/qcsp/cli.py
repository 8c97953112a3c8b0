"""Command-line interface: ``qcsp <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, is_dataclass
from pathlib import Path

from . import __version__
from .classical import dsatur, dsatur_simplified, sat_backtrack
from .experiments import ExperimentConfig, read_rows, rows_of_kind, run_experiment, summarize
from .factory import HALVED, LAYOUTS, t_factory, toffoli_factory
from .fitting import FitEntry, FitRegistry, default_registry, fit_scaling, median_by_n, percentile_by_n
from .grover import GroverParams, grover_total
from .instances import clause_count, colour_count, gen_gnp, gen_ksat
from .io import FormatError, format_dimacs_cnf, format_graph, read_dimacs_cnf, read_graph
from .pipeline import (
    DAY_SECONDS,
    PROCESSOR_SPEED,
    REGIME_PROCESSOR,
    REGIMES,
    decode_cost,
    decode_table,
    estimate_report,
    factory_table,
    idealized_speedup,
    load_regimes,
    regime,
)
from .ra_cost import ra_cost_colouring, ra_cost_sat
from .walk import backtracking_total, quantum_tree_size


def _jsonable(obj):
    if is_dataclass(obj):
        return asdict(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _emit(args, data, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(data, default=_jsonable, indent=2, sort_keys=True))
    else:
        print(text)


def _table(header: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in header]] + [[_fmt(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.3g}" if 1e-3 <= abs(x) < 1e4 else f"{x:.3e}"
    if isinstance(x, int) and abs(x) >= 10**6:
        return f"{x:.3e}"
    return str(x)


def _registry(args) -> FitRegistry:
    reg = default_registry()
    if getattr(args, "fit_file", None):
        reg = reg.merged(FitRegistry.load(args.fit_file))
    return reg


def _regimes(args) -> dict:
    custom = load_regimes(args.regimes_file) if getattr(args, "regimes_file", None) else {}
    return {**REGIMES, **custom}


# ---- classical -------------------------------------------------------------


def cmd_gen(args) -> int:
    if args.what == "cnf":
        m = args.m if args.m is not None else clause_count(args.n, args.k, args.rounding)
        f = gen_ksat(args.n, args.k, m, args.seed, args.index)
        text = format_dimacs_cnf(f, comment=f"random {args.k}-SAT n={args.n} m={m} seed={args.seed} index={args.index}")
    else:
        g = gen_gnp(args.n, args.p, args.seed, args.index)
        text = format_graph(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _looks_like_cnf(path: str) -> bool:
    with open(path) as fh:
        for line in fh:
            if line.startswith("p "):
                return line.split()[1] == "cnf"
    return False


def cmd_solve(args) -> int:
    try:
        if _looks_like_cnf(args.file):
            f = read_dimacs_cnf(args.file)
            sat, stats = sat_backtrack(f, node_limit=args.node_limit)
            data = {"kind": "sat", "n": f.n, "m": f.m, "satisfiable": sat, "nodes": stats.nodes, "aborted": stats.aborted}
            if sat:
                data["assignment"] = [int(v) for v in stats.witness]
            text = f"{'SATISFIABLE' if sat else 'UNSATISFIABLE'} nodes={stats.nodes}"
        else:
            g = read_graph(args.file)
            if args.mode == "chromatic":
                res = dsatur(g, "chromatic", args.k, node_limit=args.node_limit)
                data = {"kind": "colouring", "mode": args.mode, "n": g.n, "m": g.m, "chromatic": res.chromatic}
                text = f"chromatic={res.chromatic} nodes={res.stats.nodes}"
            else:
                if args.k is None:
                    raise SystemExit("--k is required for this mode")
                fn = dsatur_simplified if args.mode == "simplified" else (lambda g, k, **kw: dsatur(g, "k", k, **kw))
                res = fn(g, args.k, node_limit=args.node_limit)
                data = {"kind": "colouring", "mode": args.mode, "n": g.n, "m": g.m, "k": args.k, "colourable": res.colourable}
                text = f"{args.k}-colourable={res.colourable} nodes={res.stats.nodes}"
            data.update(nodes=res.stats.nodes, aborted=res.stats.aborted, clique=list(res.clique))
            if res.stats.found:
                data["colouring"] = list(res.stats.witness)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(args, data, text)
    return 0


def cmd_bench(args) -> int:
    if args.config:
        cfg = ExperimentConfig.load(args.config)
    else:
        cfg = ExperimentConfig(
            problem=args.problem,
            n_min=args.n_min,
            n_max=args.n_max,
            n_step=args.n_step,
            samples=args.samples,
            seed=args.seed,
            p=args.p,
            k=args.k,
            runs=args.runs,
            node_limit=args.node_limit,
            workers=args.workers,
        )
    rows = run_experiment(cfg, args.out)
    kinds = sorted({r["kind"] for r in rows})
    lines = []
    for kind in kinds:
        for s in summarize(rows, kind):
            lines.append([kind, s.n, s.count, s.median, s.p90])
    print(_table(["kind", "n", "count", "median", "p90"], lines), file=sys.stderr)
    return 0


def _registry_key(args, rows: list[dict]) -> tuple[str, int]:
    """Registry (problem, k) for a fit, defaulting to the names the pipeline reads."""
    if args.kind == "sat":
        problem, k = "sat_tree", int(rows[0]["k_or_p"])
    else:
        problem, k = "colouring_tree", 0
    return args.problem or problem, k if args.k is None else args.k


def cmd_fit(args) -> int:
    rows = rows_of_kind(read_rows(args.csv), args.kind)
    if args.n_min is not None:
        rows = [r for r in rows if r["n"] >= args.n_min]
    if args.n_max is not None:
        rows = [r for r in rows if r["n"] <= args.n_max]
    points = median_by_n(rows) if args.percentile is None else percentile_by_n(rows, args.percentile)
    if not points:
        print(f"error: no rows of kind {args.kind!r}", file=sys.stderr)
        return 2
    per_point = min(sum(1 for r in rows if r["n"] == n) for n, _ in points)
    fit = fit_scaling(points, per_point)
    if args.registry:
        reg = FitRegistry.load(args.registry) if Path(args.registry).exists() else FitRegistry()
        problem, k = _registry_key(args, rows)
        reg.add(FitEntry(problem, k, fit.slope, fit.intercept, args.units, args.source or f"fit of {args.csv}"))
        reg.save(args.registry)
    text = (
        f"log2(metric) = {fit.slope:.4f} n {fit.intercept:+.4f}  "
        f"range {fit.fit_range[0]}..{fit.fit_range[1]}, {fit.n_points} points, rms residual {fit.residual_rms:.3f}"
    )
    _emit(args, fit.to_dict(), text)
    return 0


# ---- estimates -------------------------------------------------------------


def cmd_regimes(args) -> int:
    regs = _regimes(args)
    rows = [[r.name, r.measurement_time, r.two_qubit_gate_time, r.cycle_time, r.gate_error] for r in regs.values()]
    _emit(args, list(regs.values()), _table(["regime", "measurement_s", "gate_s", "cycle_s", "gate_error"], rows))
    return 0


def cmd_idealized(args) -> int:
    regs = _regimes(args)
    out = [idealized_speedup(d, r, args.day) for d in args.oracle_depth for r in regs.values()]
    rows = [[o.oracle_depth, o.regime, o.max_depth, o.n, o.classical_runtime_s, o.speedup] for o in out]
    _emit(args, out, _table(["oracle_depth", "regime", "max_depth", "max_n", "classical_s", "speedup"], rows))
    return 0


def _report_text(rep) -> str:
    return _table(
        ["field", "value"],
        [
            ["algorithm", f"{rep.algorithm}/{rep.problem}"],
            ["regime", rep.regime],
            ["k", rep.k],
            ["max n", rep.max_n],
            ["T-depth", rep.t_depth],
            ["T/Toffoli count", rep.t_or_toffoli_count],
            ["factory qubits", rep.factory_qubits],
            ["quantum runtime s", rep.quantum_runtime_s],
            ["classical runtime s", rep.classical_runtime_s],
            ["speedup", rep.speedup],
        ],
    )


def cmd_estimate(args) -> int:
    fits = _registry(args)
    if args.n is None:
        if not args.regime:
            raise SystemExit("give --n for a fixed size or --regime for the largest size per day")
        problem = "sat" if args.algorithm == "grover" else args.problem
        rep = estimate_report(args.algorithm, problem, args.k or 0, regime(args.regime, _regimes(args)), fits, args.day)
        _emit(args, rep, _report_text(rep))
        return 0
    if args.algorithm == "grover":
        m = args.m if args.m is not None else clause_count(args.n, args.k, "ceil")
        est = grover_total(GroverParams(args.n, args.k, m, args.delta), text_formula=args.text_formula)
        t = est.total
        text = "\n".join(
            [
                est.oracle.format_table(),
                f"iterations {est.iterations}, per-iteration T-depth {est.per_iteration.t_depth}",
                f"total T-depth {t.t_depth:.3e}, Toffoli count {t.toffoli_count:.3e}",
            ]
        )
        _emit(args, est, text)
        return 0
    if args.problem == "sat":
        if args.k is None:
            raise SystemExit("--k is required for SAT")
        m = args.m if args.m is not None else clause_count(args.n, args.k, "ceil")
        est = backtracking_total("sat", args.n, args.k, fits.get("sat_tree", args.k), m=m)
    else:
        k = args.k if args.k is not None else colour_count(args.n)
        est = backtracking_total("colouring", args.n, k, fits.get("colouring_tree", 0))
    t = est.total
    text = "\n".join(
        [
            est.ra.format_table(),
            est.rb.format_table(),
            f"tree size {est.tree_size:.3e}, sequential steps {est.budget.sequential_steps:.3e}, total steps {est.budget.total_steps:.3e}",
            f"total T-depth {t.t_depth:.3e}, T/Toffoli count {t.non_clifford_count:.3e}",
        ]
    )
    _emit(args, est, text)
    return 0


def cmd_factory(args) -> int:
    fn = toffoli_factory if args.kind == "toffoli" else t_factory
    rep = fn(args.pg, args.n_states, args.t_algo_cycles, args.layout)
    rows = [[i + 1, r.kind, r.distance, r.qubits, r.cycles] for i, r in enumerate(rep.rounds)]
    text = _table(["round", "kind", "distance", "qubits", "cycles"], rows)
    text += f"\nS = {rep.S:.3e} qubit-cycles per state, factory qubits = {rep.Q_total:.3e}"
    _emit(args, rep, text)
    return 0


def cmd_decode_cost(args) -> int:
    if args.table:
        tab = decode_table(layout=args.layout)
        rows = [[f"{n:.0e}", name, REGIME_PROCESSOR[name], days] for (n, name), days in sorted(tab.items())]
        data = [{"n_states": n, "regime": name, "processor": REGIME_PROCESSOR[name], "processor_days": d} for (n, name), d in sorted(tab.items())]
        _emit(args, data, _table(["N", "regime", "processor", "processor_days"], rows))
        return 0
    if args.n_states is None:
        raise SystemExit("--n-states is required unless --table is given")
    S = args.S if args.S is not None else toffoli_factory(args.pg, int(args.n_states), layout=args.layout).S
    dc = decode_cost(args.n_states, S, args.processor)
    _emit(args, {**asdict(dc), "S": S, "n_states": args.n_states}, f"{dc.processor_days:.3e} {dc.processor}-days (S = {S:.3e})")
    return 0


def _report_job(job):
    algorithm, problem, k, reg, fits, day = job
    return estimate_report(algorithm, problem, k, reg, fits, day)


def cmd_report(args) -> int:
    fits = _registry(args)
    regs = _regimes(args)
    jobs = [
        (alg, prob, k, reg, fits, args.day)
        for alg, prob, k in (("grover", "sat", 14), ("backtracking", "sat", 12), ("backtracking", "colouring", 0))
        for reg in regs.values()
    ]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            reports = list(pool.map(_report_job, jobs))
    else:
        reports = [_report_job(j) for j in jobs]
    ideal = [idealized_speedup(d, r, args.day) for d in (1000, 500000) for r in regs.values()]
    fac = factory_table()
    dec = decode_table()
    ra_col = ra_cost_colouring(136, 19, quantum_tree_size("colouring", fits.get("colouring_tree", 0), 136))
    ra_sat = ra_cost_sat(71, 12, 201518, quantum_tree_size("sat", fits.get("sat_tree", 12), 71))
    from .grover import oracle_cost

    oracle = oracle_cost(14, 885743)
    data = {
        "regimes": list(regs.values()),
        "idealized": ideal,
        "factory_spacetime": [{"n_states": n, "p_g": p, "S": s} for (n, p), s in sorted(fac.items())],
        "decode_cost": [{"n_states": n, "regime": r, "processor_days": d} for (n, r), d in sorted(dec.items())],
        "grover_oracle": oracle,
        "ra_colouring": ra_col,
        "ra_sat": ra_sat,
        "speedups": reports,
    }
    parts = [
        "Hardware regimes",
        _table(["regime", "measurement_s", "gate_s", "cycle_s", "gate_error"], [[r.name, r.measurement_time, r.two_qubit_gate_time, r.cycle_time, r.gate_error] for r in regs.values()]),
        "",
        "Idealized speedups",
        _table(["oracle_depth", "regime", "max_depth", "max_n", "classical_s", "speedup"], [[o.oracle_depth, o.regime, o.max_depth, o.n, o.classical_runtime_s, o.speedup] for o in ideal]),
        "",
        "Toffoli factory spacetime per state",
        _table(["N", "p_g", "S"], [[f"{n:.0e}", p, s] for (n, p), s in sorted(fac.items())]),
        "",
        "Decoding cost (processor-days)",
        _table(["N", "regime", "days"], [[f"{n:.0e}", r, d] for (n, r), d in sorted(dec.items())]),
        "",
        oracle.format_table(),
        "",
        ra_col.format_table(),
        "",
        ra_sat.format_table(),
        "",
        "Speedup estimates",
        _table(
            ["algorithm", "regime", "max_n", "T-depth", "count", "factory_qubits", "speedup"],
            [[f"{r.algorithm}/{r.problem}", r.regime, r.max_n, r.t_depth, r.t_or_toffoli_count, r.factory_qubits, r.speedup] for r in reports],
        ),
    ]
    _emit(args, data, "\n".join(parts))
    return 0


# ---- parser ----------------------------------------------------------------


def _count(text: str) -> int:
    """Parse a positive count given as an integer or in e-notation."""
    value = float(text)
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"not a positive integer: {text}")
    return int(text) if text.isdigit() else int(value)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcsp", description="Fault-tolerant cost estimates for Grover and backtracking search.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    def with_files(sp):
        sp.add_argument("--fit-file", help="extra fit registry CSV overriding the shipped fits")
        sp.add_argument("--regimes-file", help="CSV of custom hardware regimes")
        sp.add_argument("--day", type=float, default=DAY_SECONDS, help="time budget in seconds")
        return sp

    g = sub.add_parser("gen", help="generate a random instance")
    gsub = g.add_subparsers(dest="what", required=True)
    gc = gsub.add_parser("cnf", help="random k-SAT in DIMACS format")
    gc.add_argument("--n", type=int, required=True)
    gc.add_argument("--k", type=int, required=True)
    gc.add_argument("--m", type=int, help="clause count (default: threshold ratio times n)")
    gc.add_argument("--rounding", choices=("round", "ceil"), default="round")
    gg = gsub.add_parser("graph", help="random G(n, p) graph")
    gg.add_argument("--n", type=int, required=True)
    gg.add_argument("--p", type=float, default=0.5)
    gg.add_argument("--format", choices=("dimacs", "edgelist"), default="dimacs")
    for sp in (gc, gg):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--index", type=int, default=0, help="stream index within the seed")
        sp.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    s = with_json(sub.add_parser("solve", help="run the classical backtracking solvers on a file"))
    s.add_argument("file")
    s.add_argument("--mode", choices=("chromatic", "k", "simplified"), default="chromatic")
    s.add_argument("--k", type=int, help="colours for k/simplified mode, optional cap in chromatic mode")
    s.add_argument("--node-limit", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run a batch of classical experiments to CSV")
    b.add_argument("--config", help="key = value experiment file")
    b.add_argument("--problem", choices=("colouring", "sat"), default="colouring")
    b.add_argument("--n-min", type=int, default=10)
    b.add_argument("--n-max", type=int, default=20)
    b.add_argument("--n-step", type=int, default=1)
    b.add_argument("--samples", type=int, default=10)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--p", type=float, default=0.5)
    b.add_argument("--k", type=int, default=3)
    b.add_argument("--runs", default="chromatic,kcap,k,simplified")
    b.add_argument("--node-limit", type=int, default=0)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", required=True, help="CSV output path")
    b.set_defaults(func=cmd_bench)

    f = with_json(sub.add_parser("fit", help="fit log2 tree size against n from a bench CSV"))
    f.add_argument("csv")
    f.add_argument("--kind", required=True, help="row kind, e.g. col_kcap or sat")
    f.add_argument("--n-min", type=int)
    f.add_argument("--n-max", type=int)
    f.add_argument("--percentile", type=float, help="fit this percentile instead of the median")
    f.add_argument("--registry", help="append the fit to this registry CSV")
    f.add_argument("--problem", help="registry problem name (default: sat_tree or colouring_tree)")
    f.add_argument("--k", type=int, help="registry k (default: from the rows for sat, else 0)")
    f.add_argument("--units", default="nodes")
    f.add_argument("--source", default="")
    f.set_defaults(func=cmd_fit)

    r = with_files(with_json(sub.add_parser("regimes", help="list hardware regimes")))
    r.set_defaults(func=cmd_regimes)

    i = with_files(with_json(sub.add_parser("idealized", help="speedups with no fault-tolerance overhead")))
    i.add_argument("--oracle-depth", type=int, nargs="+", default=[1000, 500000])
    i.set_defaults(func=cmd_idealized)

    e = sub.add_parser("estimate", help="quantum resource estimates")
    esub = e.add_subparsers(dest="algorithm", required=True)
    eg = with_files(with_json(esub.add_parser("grover", help="Grover search for k-SAT")))
    eg.add_argument("--k", type=int, required=True)
    eg.add_argument("--n", type=int)
    eg.add_argument("--m", type=int)
    eg.add_argument("--delta", type=float, default=0.1)
    eg.add_argument("--text-formula", action="store_true", help="use the closed-form oracle Toffoli count")
    eg.add_argument("--regime", help="without --n: report the largest n solvable per day")
    eb = with_files(with_json(esub.add_parser("backtracking", help="quantum backtracking")))
    eb.add_argument("--problem", choices=("colouring", "sat"), required=True)
    eb.add_argument("--n", type=int)
    eb.add_argument("--k", type=int)
    eb.add_argument("--m", type=int)
    eb.add_argument("--regime", help="without --n: report the largest n solvable per day")
    for sp in (eg, eb):
        sp.set_defaults(func=cmd_estimate)

    fa = with_json(sub.add_parser("factory", help="magic-state factory sizing"))
    fa.add_argument("--pg", type=float, required=True, help="physical gate error")
    fa.add_argument("--n-states", type=_count, required=True)
    fa.add_argument("--t-algo-cycles", type=float, default=1.0)
    fa.add_argument("--layout", choices=LAYOUTS, default=HALVED)
    fa.add_argument("--kind", choices=("toffoli", "t"), default="toffoli")
    fa.set_defaults(func=cmd_factory)

    d = with_json(sub.add_parser("decode-cost", help="classical decoding cost in processor-days"))
    d.add_argument("--n-states", type=float)
    d.add_argument("--pg", type=float, default=1e-3, help="gate error used to size S when --S is absent")
    d.add_argument("--S", type=float, help="spacetime per state")
    d.add_argument("--processor", choices=sorted(PROCESSOR_SPEED), default="CPU")
    d.add_argument("--layout", choices=LAYOUTS, default=HALVED)
    d.add_argument("--table", action="store_true", help="print the standard N x regime table")
    d.set_defaults(func=cmd_decode_cost)

    rp = sub.add_parser("report", help="assembled reports")
    rsub = rp.add_subparsers(dest="which", required=True)
    ra = with_files(with_json(rsub.add_parser("all", help="every table")))
    ra.add_argument("--workers", type=int, default=1)
    ra.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
