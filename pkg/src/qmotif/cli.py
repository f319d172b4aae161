"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 data error (bad files, infeasible
parameters). Internal failures propagate as tracebacks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from . import io as qio
from .graph import (
    MotifPattern,
    RegulatoryNetwork,
    builtin_motifs,
    load_motif,
    load_network,
    serialize_motif,
    serialize_network,
)
from .pipeline import RunConfig, run_identification
from .stats import NULL_MODELS, zscore
from .synthgen import SynthSpec, generate, parse_manifest

SOLVER_CHOICES = ("qaoa", "baseline", "exact")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; we reserve 2 for data errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("QMOTIF_SEED", "")
    try:
        return int(raw)
    except ValueError:
        return 0


def _add_solver_flags(p: argparse.ArgumentParser, default_solver: str = "qaoa") -> None:
    g = p.add_argument_group("solver")
    g.add_argument("--solver", choices=SOLVER_CHOICES, default=default_solver)
    g.add_argument("--p", type=int, default=2, help="QAOA layer count")
    g.add_argument("--shots", type=int, default=1024)
    g.add_argument("--restarts", type=int, default=5)
    g.add_argument("--max-evals", type=int, default=400)
    g.add_argument("--penalty", type=float, default=None,
                   help="uniform penalty weight; default |E|+1 per subproblem")
    g.add_argument("--qubit-cap", type=int, default=20)
    g.add_argument("--term-cap", type=int, default=200_000)
    g.add_argument("--mis-cap", type=int, default=64)
    g.add_argument("--budget-ms", type=float, default=None,
                   help="time budget for the exact solver per subproblem")
    g.add_argument("--h-mode", choices=("orbit", "anchored"), default="orbit")
    g.add_argument("--wildcard", choices=("auto", "on", "off"), default="auto",
                   help="match Unknown network edges against any motif relation")
    g.add_argument("--static-loss", action="store_true",
                   help="greedy baseline scores conflicts once instead of rescoring")
    g.add_argument("--seed", type=int, default=_default_seed())
    g.add_argument("--threads", type=int, default=1)


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--net", help="network file (src<TAB>dst<TAB>A|R|U)")
    src.add_argument("--trrust", help="4-column TF/target/relation/pmids file")
    g.add_argument("--motif", required=True,
                   help="builtin motif name or a motif file path")
    g.add_argument("--genes", help="gene list file; keeps only listed genes")
    g.add_argument("--min-score", type=float, default=0.0)


def _load_net(args: argparse.Namespace) -> RegulatoryNetwork:
    if args.trrust:
        net = qio.load_trrust(args.trrust)
    else:
        net = load_network(args.net)
    if args.genes:
        net = qio.filter_by_gene_list(net, qio.load_gene_list(args.genes, args.min_score))
    return net


def _load_motif(arg: str) -> MotifPattern:
    builtin = builtin_motifs()
    if arg in builtin:
        return builtin[arg]
    if Path(arg).exists():
        return load_motif(arg)
    raise ValueError(
        f"unknown motif {arg!r}; builtins: {', '.join(sorted(builtin))}"
    )


def _resolve_wildcard(mode: str, net: RegulatoryNetwork) -> bool:
    if mode == "on":
        return True
    if mode == "off":
        return False
    return net.has_unknown_edges()


def _config_from_args(args: argparse.Namespace, net: RegulatoryNetwork) -> RunConfig:
    return RunConfig(
        solver=args.solver,
        h_mode=args.h_mode,
        wildcard=_resolve_wildcard(args.wildcard, net),
        p=args.p,
        shots=args.shots,
        restarts=args.restarts,
        max_evals=args.max_evals,
        penalty=args.penalty,
        qubit_cap=args.qubit_cap,
        term_cap=args.term_cap,
        mis_cap=args.mis_cap,
        budget_ms=args.budget_ms,
        dynamic_loss=not args.static_loss,
        threads=args.threads,
        seed=args.seed,
    )


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _cmd_find(args: argparse.Namespace) -> int:
    net = _load_net(args)
    motif = _load_motif(args.motif)
    if args.rerun:
        embedded = json.loads(Path(args.rerun).read_text(encoding="utf-8"))
        if "config" not in embedded:
            raise ValueError(f"{args.rerun}: no embedded config")
        config = RunConfig.from_dict(embedded["config"])
    else:
        config = _config_from_args(args, net)
    t0 = time.perf_counter()
    report = run_identification(net, motif, config)
    elapsed_ms = (time.perf_counter() - t0) * 1e3
    _write(args.report, qio.report_json(report, include_timings=args.timings))
    if args.csv:
        row = qio.find_row(report, instance=net.name, elapsed_ms=elapsed_ms)
        _write(args.csv, qio.find_csv([row]))
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.manifest:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            specs = parse_manifest(fh)
        if args.seed_override is not None:
            specs = [replace(s, seed=args.seed_override) for s in specs]
    else:
        missing = [f for f in ("nodes", "degree", "ratio") if getattr(args, f) is None]
        if missing:
            raise ValueError(
                "--manifest or all of --nodes/--degree/--ratio required; missing "
                + ", ".join("--" + m for m in missing)
            )
        specs = [SynthSpec(
            nodes=args.nodes,
            degree=args.degree,
            activation_ratio=args.ratio,
            motif=args.motif,
            plant_count=args.plants,
            seed=args.seed,
            name=args.name or "",
            degree_as_edges=args.degree_as_edges,
        )]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        net = generate(spec)
        path = out / f"{spec.instance_name()}.tsv"
        path.write_text(serialize_network(net), encoding="utf-8")
        print(path)
    return 0


def _cmd_zscore(args: argparse.Namespace) -> int:
    net = _load_net(args)
    motif = _load_motif(args.motif)
    config = _config_from_args(args, net)
    report = zscore(net, motif, config, replicates=args.replicates,
                    null_model=args.null)
    _write(args.report, qio.report_json(report))
    if args.csv:
        _write(args.csv, qio.zscore_csv([qio.zscore_row(report)]))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    with open(args.manifest, "r", encoding="utf-8") as fh:
        specs = parse_manifest(fh)
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    for s in solvers:
        if s not in SOLVER_CHOICES:
            raise ValueError(f"unknown solver {s!r}")
    if not solvers:
        raise ValueError("no solvers selected")

    nets = [generate(spec) for spec in specs]
    motifs = [_load_motif(spec.motif) for spec in specs]

    def one(i: int, solver: str) -> dict[str, object]:
        spec, net = specs[i], nets[i]
        config = replace(_config_from_args(args, net), solver=solver)
        t0 = time.perf_counter()
        report = run_identification(net, motifs[i], config)
        elapsed_ms = (time.perf_counter() - t0) * 1e3
        return qio.compare_row(
            report, instance=spec.instance_name(), elapsed_ms=elapsed_ms,
            n=spec.nodes, d=spec.degree, r_act=spec.activation_ratio,
        )

    tasks = [(i, solver) for i in range(len(specs)) for solver in solvers]
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            futures = {t: pool.submit(one, *t) for t in tasks}
            rows = [futures[t].result() for t in tasks]
    else:
        rows = [one(*t) for t in tasks]
    _write(args.out, qio.compare_csv(rows))
    return 0


def _cmd_motifs(args: argparse.Namespace) -> int:
    builtin = builtin_motifs()
    if args.dump:
        if args.dump not in builtin:
            raise ValueError(f"unknown motif {args.dump!r}")
        _write(args.out, serialize_motif(builtin[args.dump]))
        return 0
    for name in sorted(builtin):
        m = builtin[name]
        edges = "; ".join(f"{a}->{b}:{r.code}" for a, b, r in m.edges)
        print(f"{name}\tsize={m.size}\t{edges}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qmotif", description="Network motif identification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_find = sub.add_parser("find", help="identify motifs in a network")
    _add_input_flags(p_find)
    _add_solver_flags(p_find)
    p_find.add_argument("--report", default="-", help="report JSON path (- for stdout)")
    p_find.add_argument("--csv", default=None, help="one-row summary CSV path")
    p_find.add_argument("--timings", action="store_true",
                        help="include wall-clock timings in the report")
    p_find.add_argument("--rerun", default=None,
                        help="re-run with the config embedded in an earlier report")
    p_find.set_defaults(fn=_cmd_find)

    p_gen = sub.add_parser("generate", help="synthesize benchmark networks")
    p_gen.add_argument("--manifest", default=None,
                       help="file of: nodes degree ratio motif plants seed [name]")
    p_gen.add_argument("--nodes", type=int, default=None)
    p_gen.add_argument("--degree", type=float, default=None)
    p_gen.add_argument("--ratio", type=float, default=None)
    p_gen.add_argument("--motif", default="ffl")
    p_gen.add_argument("--plants", type=int, default=5)
    p_gen.add_argument("--seed", type=int, default=_default_seed())
    p_gen.add_argument("--seed-override", type=int, default=None,
                       help="replace the seed on every manifest row")
    p_gen.add_argument("--name", default=None)
    p_gen.add_argument("--degree-as-edges", action="store_true",
                       help="interpret degree so edge count = nodes*degree")
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.set_defaults(fn=_cmd_generate)

    p_z = sub.add_parser("zscore", help="motif significance against a null model")
    _add_input_flags(p_z)
    _add_solver_flags(p_z, default_solver="exact")
    p_z.add_argument("--replicates", type=int, default=50)
    p_z.add_argument("--null", choices=NULL_MODELS, default="degree")
    p_z.add_argument("--report", default="-")
    p_z.add_argument("--csv", default=None)
    p_z.set_defaults(fn=_cmd_zscore)

    p_cmp = sub.add_parser("compare", help="run solvers across a manifest, emit CSV")
    p_cmp.add_argument("--manifest", required=True)
    p_cmp.add_argument("--solvers", default="qaoa,baseline,exact",
                       help="comma-separated subset of qaoa,baseline,exact")
    _add_solver_flags(p_cmp)
    p_cmp.add_argument("--out", default="-", help="CSV path (- for stdout)")
    p_cmp.set_defaults(fn=_cmd_compare)

    p_m = sub.add_parser("motifs", help="list or dump builtin motif patterns")
    p_m.add_argument("--dump", default=None, help="motif name to dump")
    p_m.add_argument("--out", default="-")
    p_m.set_defaults(fn=_cmd_motifs)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"qmotif: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
