"""End-to-end identification: partition, solve per part, aggregate.

Large networks are cut into node-disjoint parts small enough for the
statevector bound; each part is solved independently (the quantum loop, the
greedy baseline, or exact search) and the union of the per-part selections is
re-checked by the decomposition verifier before reporting.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from ._version import __version__ as _tool_version
from .embedding import Embedding, EmbeddingSet, enumerate_embeddings, verify_edge_decomposition
from .graph import MotifPattern, RegulatoryNetwork, Relation, canonicalize_motif, serialize_motif
from .pbo import (
    DEFAULT_QUBIT_CAP,
    DEFAULT_TERM_CAP,
    PolynomialBlowup,
    QubitCapExceeded,
    assemble_objective_parts,
    objective_table,
)
from .qaoa import OptimizerConfig, optimize_restarts, run_circuit, sample_and_decode
from .solvers import EmbeddingCapExceeded, SolverResult, baseline_greedy, exact_mis

SCHEMA_VERSION = 1

SOLVERS = ("qaoa", "baseline", "exact")


class MotifLargerThanCap(ValueError):
    """The per-part variable budget cannot even hold one occurrence."""


@dataclass(frozen=True)
class RunConfig:
    """Everything that influences the outcome of a run; echoed into reports."""

    solver: str = "qaoa"
    h_mode: str = "orbit"
    wildcard: bool = False
    p: int = 2
    shots: int = 1024
    restarts: int = 5
    max_evals: int = 400
    xtol: float = 1e-4
    ftol: float = 1e-6
    penalty: float | None = None  # None: |E|+1 per part
    qubit_cap: int = DEFAULT_QUBIT_CAP
    term_cap: int = DEFAULT_TERM_CAP
    mis_cap: int = 64
    budget_ms: float | None = None
    dynamic_loss: bool = True
    threads: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.solver not in SOLVERS:
            raise ValueError(f"solver must be one of {SOLVERS}, got {self.solver!r}")

    def as_dict(self) -> dict[str, Any]:
        return {
            "solver": self.solver,
            "h_mode": self.h_mode,
            "wildcard": self.wildcard,
            "p": self.p,
            "shots": self.shots,
            "restarts": self.restarts,
            "max_evals": self.max_evals,
            "xtol": self.xtol,
            "ftol": self.ftol,
            "penalty": self.penalty,
            "qubit_cap": self.qubit_cap,
            "term_cap": self.term_cap,
            "mis_cap": self.mis_cap,
            "budget_ms": self.budget_ms,
            "dynamic_loss": self.dynamic_loss,
            "threads": self.threads,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{k: v for k, v in data.items() if k in known})


@dataclass(frozen=True)
class Partition:
    parts: tuple[tuple[str, ...], ...]
    dropped_edges: tuple[int, ...]


def partition_network(net: RegulatoryNetwork, qubit_cap: int = DEFAULT_QUBIT_CAP) -> Partition:
    """Greedy BFS clustering under the per-part edge budget.

    Grow a cluster from the least unassigned node through undirected
    adjacency until admitting the next frontier node would push the part's
    induced edge count past qubit_cap, then emit and restart. Weakly
    connected components never mix, so they are partitioned independently.
    """
    unassigned = set(net.nodes)
    parts: list[tuple[str, ...]] = []
    while unassigned:
        seed = min(unassigned)
        cluster = {seed}
        unassigned.remove(seed)
        edge_count = 0
        queue: deque[str] = deque(sorted(set(net.undirected_adj[seed]) & unassigned))
        enqueued = set(queue)
        while queue:
            v = queue.popleft()
            if v not in unassigned:
                continue
            gained = sum(1 for w in net.out_adj[v] if w in cluster)
            gained += sum(1 for w in net.in_adj[v] if w in cluster)
            if edge_count + gained > qubit_cap:
                break
            cluster.add(v)
            unassigned.remove(v)
            edge_count += gained
            for w in net.undirected_adj[v]:
                if w in unassigned and w not in enqueued:
                    queue.append(w)
                    enqueued.add(w)
        parts.append(tuple(sorted(cluster)))
    assignment = {n: i for i, part in enumerate(parts) for n in part}
    dropped = tuple(
        i for i, (s, d, _) in enumerate(net.edges) if assignment[s] != assignment[d]
    )
    return Partition(parts=tuple(parts), dropped_edges=dropped)


@dataclass(frozen=True)
class PartReport:
    index: int
    node_count: int
    edge_count: int
    candidate_count: int
    method: str
    motif_count: int
    degraded: bool = False
    degraded_reason: str | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "candidate_count": self.candidate_count,
            "method": self.method,
            "motif_count": self.motif_count,
            "degraded": self.degraded,
            "degraded_reason": self.degraded_reason,
        }


@dataclass(frozen=True)
class SolutionReport:
    network: str
    motif: str
    motif_edges: str
    motif_count: int
    activation_count: int
    repression_count: int
    unknown_count: int
    embeddings: EmbeddingSet
    edge_pairs: tuple[tuple[str, str], ...]  # global edge id -> (src, dst)
    parts: tuple[PartReport, ...]
    dropped_edge_count: int
    config: RunConfig
    timings_ms: dict[str, float] = field(default_factory=dict, compare=False)

    def as_dict(self, include_timings: bool = False) -> dict[str, Any]:
        """JSON-ready form. Timings are opt-in: they are wall-clock and so
        excluded from the byte-reproducibility guarantee."""
        doc: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "tool": "qmotif",
            "tool_version": _tool_version,
            "network": self.network,
            "motif": self.motif,
            "motif_edges": self.motif_edges,
            "motif_count": self.motif_count,
            "activation_count": self.activation_count,
            "repression_count": self.repression_count,
            "unknown_count": self.unknown_count,
            "embeddings": [
                {
                    "edges": [list(self.edge_pairs[e]) for e in emb.edge_ids],
                    "nodes": sorted(emb.node_ids),
                }
                for emb in self.embeddings.embeddings
            ],
            "parts": [p.as_dict() for p in self.parts],
            "dropped_edge_count": self.dropped_edge_count,
            "config": self.config.as_dict(),
            "seed": self.config.seed,
        }
        if include_timings:
            doc["timings_ms"] = {k: round(v, 3) for k, v in sorted(self.timings_ms.items())}
        return doc


# Penalty weight of the sampling-only objective variant. The exact table
# needs penalties above |E| so its minimum is the true optimum, but that
# scale buries the reward signal for the variational search: most of its
# local optima then concentrate on the empty assignment. A small uniform
# weight keeps dense, nearly-feasible states probable; the decoder's
# verify/repair step restores exactness regardless of the sampling table.
SAMPLING_PENALTY = 3.0


def _allocate_shots(states: list[np.ndarray], shots: int) -> list[int]:
    """Split the shot budget across restart states in proportion to the mass
    each puts outside the empty assignment; a state stuck on the empty
    selection decodes to nothing, so spending shots there is waste.
    Deterministic; allocations sum to `shots` exactly."""
    weights = np.array([1.0 - float(np.abs(st[0]) ** 2) for st in states])
    if weights.sum() < 1e-12:
        weights = np.ones(len(states))
    weights = weights / weights.sum()
    raw = weights * shots
    alloc = np.floor(raw).astype(int)
    remainder = shots - int(alloc.sum())
    order = sorted(range(len(states)), key=lambda k: (-(raw[k] - alloc[k]), k))
    for k in order[:remainder]:
        alloc[k] += 1
    return [int(a) for a in alloc]


def _solve_part_qaoa(
    sub: RegulatoryNetwork,
    motif: MotifPattern,
    config: RunConfig,
    part_index: int,
) -> tuple[EmbeddingSet, str]:
    m = len(sub.edges)
    penalties = None
    if config.penalty is not None:
        penalties = (config.penalty,) * 3
    parts = assemble_objective_parts(
        sub, motif,
        penalties=penalties,
        h_mode=config.h_mode,
        wildcard=config.wildcard,
        term_cap=config.term_cap,
    )
    diag = objective_table(parts.total, m, qubit_cap=config.qubit_cap)
    a1, a2, _ = parts.penalties
    soft = parts.selection_reward.scaled(-1.0)
    soft += parts.uniqueness_penalty.scaled(min(SAMPLING_PENALTY, a1) / a1)
    soft += parts.overlap_penalty.scaled(min(SAMPLING_PENALTY, a2) / a2)
    sampling_diag = objective_table(soft, m, qubit_cap=config.qubit_cap)

    opt = OptimizerConfig(
        restarts=config.restarts,
        max_evals=config.max_evals,
        xtol=config.xtol,
        ftol=config.ftol,
        seed=(config.seed << 16) | (part_index & 0xFFFF),
    )
    restarts = optimize_restarts(sampling_diag, config.p, opt, qubit_cap=config.qubit_cap)
    states = [run_circuit(sampling_diag, params, qubit_cap=config.qubit_cap)
              for params, _ in restarts]
    best: EmbeddingSet | None = None
    best_key: tuple[int, tuple[int, ...]] | None = None
    for k, (state, sh) in enumerate(zip(states, _allocate_shots(states, config.shots))):
        if sh == 0:
            continue
        decoded = sample_and_decode(
            state, diag, sub, motif,
            shots=sh,
            seed=config.seed,
            wildcard=config.wildcard,
            seed_index=part_index * max(config.restarts, 1) + k,
        )
        key = (-decoded.motif_count, decoded.edge_ids)
        if best_key is None or key < best_key:
            best_key = key
            best = decoded.embeddings
    assert best is not None
    return best, "qaoa"


def _remap_embedding(emb: Embedding, local_to_global: list[int]) -> Embedding:
    return Embedding(
        edge_ids=tuple(sorted(local_to_global[e] for e in emb.edge_ids)),
        node_ids=emb.node_ids,
        mapping=emb.mapping,
    )


def run_identification(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    config: RunConfig | None = None,
) -> SolutionReport:
    config = config or RunConfig()
    motif = canonicalize_motif(motif)
    if config.qubit_cap < len(motif.edges):
        raise MotifLargerThanCap(
            f"qubit cap {config.qubit_cap} cannot hold a {len(motif.edges)}-edge occurrence"
        )
    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    partition = partition_network(net, config.qubit_cap)
    timings["partition"] = (time.perf_counter() - t0) * 1e3

    selected: list[Embedding] = []
    part_reports: list[PartReport] = []
    for idx, part_nodes in enumerate(partition.parts):
        sub = net.induced(part_nodes, name=f"{net.name}/part{idx}")
        local_to_global = [net.edge_index[(s, d)] for s, d, _ in sub.edges]
        t1 = time.perf_counter()
        embs = enumerate_embeddings(sub, motif, wildcard=config.wildcard)
        timings["enumerate"] = timings.get("enumerate", 0.0) + (time.perf_counter() - t1) * 1e3
        degraded = False
        reason: str | None = None
        method = config.solver
        t2 = time.perf_counter()
        if not embs.embeddings:
            chosen = EmbeddingSet(network=sub.name, embeddings=(), non_overlapping=True)
            method = "empty"
        elif config.solver == "qaoa":
            try:
                chosen, method = _solve_part_qaoa(sub, motif, config, idx)
            except (PolynomialBlowup, QubitCapExceeded) as exc:
                degraded = True
                reason = f"{type(exc).__name__}: {exc}"
                res = baseline_greedy(embs, dynamic=config.dynamic_loss)
                chosen, method = res.selected, res.method
        elif config.solver == "exact":
            try:
                res = exact_mis(embs, cap=config.mis_cap, budget_ms=config.budget_ms)
                chosen, method = res.selected, res.method
                if not res.optimal:
                    degraded = True
                    reason = "budget exhausted; best-so-far kept"
            except EmbeddingCapExceeded as exc:
                degraded = True
                reason = f"{type(exc).__name__}: {exc}"
                res = baseline_greedy(embs, dynamic=config.dynamic_loss)
                chosen, method = res.selected, res.method
        else:
            res = baseline_greedy(embs, dynamic=config.dynamic_loss)
            chosen, method = res.selected, res.method
        timings["solve"] = timings.get("solve", 0.0) + (time.perf_counter() - t2) * 1e3

        for emb in chosen.embeddings:
            selected.append(_remap_embedding(emb, local_to_global))
        part_reports.append(PartReport(
            index=idx,
            node_count=len(part_nodes),
            edge_count=len(sub.edges),
            candidate_count=len(embs.embeddings),
            method=method,
            motif_count=len(chosen.embeddings),
            degraded=degraded,
            degraded_reason=reason,
        ))

    selected.sort(key=lambda e: e.edge_ids)
    union = EmbeddingSet(network=net.name, embeddings=tuple(selected), non_overlapping=True)
    t3 = time.perf_counter()
    check = verify_edge_decomposition(net, motif, union.edge_union(), config.wildcard)
    timings["verify"] = (time.perf_counter() - t3) * 1e3
    if not check.feasible:
        raise RuntimeError(f"aggregated selection failed verification: {check.violation}")

    tallies = {Relation.ACTIVATION: 0, Relation.REPRESSION: 0, Relation.UNKNOWN: 0}
    for emb in union.embeddings:
        for e in emb.edge_ids:
            tallies[net.edges[e][2]] += 1

    return SolutionReport(
        network=net.name,
        motif=motif.name or "custom",
        motif_edges=serialize_motif(motif).replace("\n", ";").rstrip(";"),
        motif_count=len(union.embeddings),
        activation_count=tallies[Relation.ACTIVATION],
        repression_count=tallies[Relation.REPRESSION],
        unknown_count=tallies[Relation.UNKNOWN],
        embeddings=union,
        edge_pairs=tuple((s, d) for s, d, _ in net.edges),
        parts=tuple(part_reports),
        dropped_edge_count=len(partition.dropped_edges),
        config=config,
        timings_ms=timings,
    )
