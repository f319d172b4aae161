"""Real-dataset ingestion and result serialization.

The interaction table format is four tab-separated columns per line:
regulator, target, relation (Activation/Repression/Unknown), supporting ids.
Duplicate (regulator, target) rows collapse to one edge; conflicting
relations collapse to Unknown with a warning.
"""

from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import Iterable, Sequence

from .graph import EmptyNetwork, ParseError, RegulatoryNetwork, Relation
from .pipeline import SolutionReport
from .stats import ZScoreReport

_RELATION_WORDS = {
    "activation": Relation.ACTIVATION,
    "repression": Relation.REPRESSION,
    "unknown": Relation.UNKNOWN,
}


def parse_trrust(lines: Iterable[str], name: str = "trrust") -> RegulatoryNetwork:
    resolved: dict[tuple[str, str], Relation] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise ParseError(f"expected 4 tab-separated columns, got {len(fields)}", lineno)
        tf, target, word = fields[0].strip(), fields[1].strip(), fields[2].strip().lower()
        if not tf or not target:
            raise ParseError("empty gene symbol", lineno)
        rel = _RELATION_WORDS.get(word)
        if rel is None:
            raise ParseError(f"unknown relation {fields[2].strip()!r}", lineno)
        if tf == target:
            warnings.warn(f"line {lineno}: dropping self-regulation of {tf}", stacklevel=2)
            continue
        prior = resolved.get((tf, target))
        if prior is None:
            resolved[(tf, target)] = rel
        elif prior is not rel:
            if prior is not Relation.UNKNOWN:
                warnings.warn(
                    f"line {lineno}: {tf}->{target} has conflicting relations; using Unknown",
                    stacklevel=2,
                )
            resolved[(tf, target)] = Relation.UNKNOWN
    if not resolved:
        raise EmptyNetwork(f"{name}: no interactions")
    triples = [(s, d, r) for (s, d), r in resolved.items()]
    return RegulatoryNetwork.from_edges(name, triples)


def load_trrust(path: str | Path) -> RegulatoryNetwork:
    p = Path(path)
    with p.open("r", encoding="utf-8") as fh:
        return parse_trrust(fh, name=p.stem)


def parse_gene_list(lines: Iterable[str], min_score: float = 0.0) -> tuple[str, ...]:
    """Gene symbols, one per line, optionally `symbol<TAB>score`; rows whose
    score falls below min_score are skipped. Deduplicated, sorted."""
    keep: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        symbol = fields[0].strip()
        if not symbol:
            raise ParseError("empty gene symbol", lineno)
        if len(fields) == 1:
            keep.add(symbol)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected symbol or symbol<TAB>score, got {len(fields)} fields", lineno)
        try:
            score = float(fields[1])
        except ValueError:
            raise ParseError(f"bad score {fields[1]!r}", lineno) from None
        if score >= min_score:
            keep.add(symbol)
    return tuple(sorted(keep))


def load_gene_list(path: str | Path, min_score: float = 0.0) -> tuple[str, ...]:
    with Path(path).open("r", encoding="utf-8") as fh:
        return parse_gene_list(fh, min_score=min_score)


def filter_by_gene_list(net: RegulatoryNetwork, genes: Iterable[str]) -> RegulatoryNetwork:
    """Subnetwork induced on the listed genes. May be empty; callers that
    need edges should check."""
    return net.induced(set(genes) & set(net.nodes), name=f"{net.name}|filtered")


def report_json(report: SolutionReport | ZScoreReport, include_timings: bool = False) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline.
    Identical inputs serialize to identical bytes."""
    if isinstance(report, SolutionReport):
        doc = report.as_dict(include_timings=include_timings)
    else:
        doc = report.as_dict()
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


FIND_COLUMNS = (
    "instance", "motif", "solver",
    "motif_count", "AC", "RC", "UC", "elapsed_ms", "seed",
)

# Sweep table adds the generator parameters so results can be grouped by
# network size, density, or activation ratio downstream.
COMPARE_COLUMNS = (
    "instance", "motif", "solver", "n", "d", "r_act",
    "motif_count", "AC", "RC", "UC", "elapsed_ms", "seed",
)

ZSCORE_COLUMNS = (
    "network", "motif", "observed", "null_mean", "null_std",
    "z", "N", "null_model", "classification", "seed",
)


def find_csv(rows: Sequence[dict[str, object]]) -> str:
    return _csv(FIND_COLUMNS, rows)


def compare_csv(rows: Sequence[dict[str, object]]) -> str:
    return _csv(COMPARE_COLUMNS, rows)


def zscore_csv(rows: Sequence[dict[str, object]]) -> str:
    return _csv(ZSCORE_COLUMNS, rows)


def find_row(report: SolutionReport, instance: str, elapsed_ms: float) -> dict[str, object]:
    return {
        "instance": instance,
        "motif": report.motif,
        "solver": report.config.solver,
        "motif_count": report.motif_count,
        "AC": report.activation_count,
        "RC": report.repression_count,
        "UC": report.unknown_count,
        "elapsed_ms": f"{elapsed_ms:.1f}",
        "seed": report.config.seed,
    }


def compare_row(
    report: SolutionReport,
    instance: str,
    elapsed_ms: float,
    n: int,
    d: float,
    r_act: float,
) -> dict[str, object]:
    row = find_row(report, instance, elapsed_ms)
    row.update({"n": n, "d": f"{d:g}", "r_act": f"{r_act:g}"})
    return row


def zscore_row(report: ZScoreReport) -> dict[str, object]:
    return {
        "network": report.network,
        "motif": report.motif,
        "observed": report.observed,
        "null_mean": f"{report.null_mean:.4f}",
        "null_std": f"{report.null_std:.4f}",
        "z": f"{report.z:.4f}",
        "N": report.replicates,
        "null_model": report.null_model,
        "classification": report.classification,
        "seed": report.config.seed,
    }


def _csv(columns: tuple[str, ...], rows: Sequence[dict[str, object]]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        missing = [c for c in columns if c not in row]
        if missing:
            raise ValueError(f"row is missing columns {missing}")
        lines.append(",".join(str(row[c]) for c in columns))
    return "\n".join(lines) + "\n"
