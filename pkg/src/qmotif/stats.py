"""Motif significance against shuffled null models.

The default null preserves every node's in and out degree via double edge
swaps (relations travel with their source half); the uniform null only
preserves node set, edge count and the relation multiset. A pattern is
over-represented when its count sits more than two sample standard deviations
above the null mean.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .graph import MotifPattern, RegulatoryNetwork, Relation
from .pipeline import RunConfig, run_identification
from .rng import STREAM_SHUFFLE, stream

NULL_MODELS = ("degree", "uniform")
Z_THRESHOLD = 2.0


def shuffle_edges(
    net: RegulatoryNetwork,
    seed: int,
    null_model: str = "degree",
    index: int = 0,
) -> RegulatoryNetwork:
    """Shuffled copy of the network under the chosen null model.

    degree: 10*|E| accepted double edge swaps, each replacing (a,b),(c,d)
    with (a,d),(c,b); rejects self-loops, existing edges and no-op picks, so
    in/out degrees and the relation multiset are preserved exactly.
    uniform: a fresh uniform simple edge set of the same size carrying the
    original relation multiset.
    """
    if null_model not in NULL_MODELS:
        raise ValueError(f"null model must be one of {NULL_MODELS}, got {null_model!r}")
    rng = stream(seed, STREAM_SHUFFLE, index)
    m = len(net.edges)
    if m < 2:
        return RegulatoryNetwork(name=net.name, nodes=net.nodes, edges=net.edges)

    if null_model == "uniform":
        nodes = list(net.nodes)
        n = len(nodes)
        relations = [r for _, _, r in net.edges]
        chosen: dict[tuple[str, str], Relation] = {}
        attempts, cap = 0, 100 * m
        while len(chosen) < m:
            if attempts >= cap:
                raise ValueError(f"uniform rewiring stalled after {cap} attempts")
            attempts += 1
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            if u == v or (nodes[u], nodes[v]) in chosen:
                continue
            chosen[(nodes[u], nodes[v])] = relations[len(chosen)]
        edges = tuple(sorted((s, d, r) for (s, d), r in chosen.items()))
        return RegulatoryNetwork(name=net.name, nodes=net.nodes, edges=edges)

    edge_list: list[tuple[str, str, Relation]] = list(net.edges)
    present: set[tuple[str, str]] = {(s, d) for s, d, _ in edge_list}
    accepted = 0
    target = 10 * m
    attempts, cap = 0, 100 * target
    while accepted < target and attempts < cap:
        attempts += 1
        i, j = (int(x) for x in rng.integers(0, m, size=2))
        if i == j:
            continue
        a, b, r1 = edge_list[i]
        c, d, r2 = edge_list[j]
        if a == c or b == d:            # no-op swap
            continue
        if a == d or c == b:            # would create a self-loop
            continue
        if (a, d) in present or (c, b) in present:
            continue
        present.discard((a, b))
        present.discard((c, d))
        present.add((a, d))
        present.add((c, b))
        edge_list[i] = (a, d, r1)
        edge_list[j] = (c, b, r2)
        accepted += 1
    edges = tuple(sorted(edge_list))
    return RegulatoryNetwork(name=net.name, nodes=net.nodes, edges=edges)


@dataclass(frozen=True)
class ZScoreReport:
    network: str
    motif: str
    observed: int
    null_mean: float
    null_std: float
    z: float
    replicates: int
    null_model: str
    classification: str        # over | under | neutral
    degenerate: bool           # null counts had zero spread
    config: RunConfig

    def as_dict(self) -> dict[str, Any]:
        return {
            "network": self.network,
            "motif": self.motif,
            "observed": self.observed,
            "null_mean": self.null_mean,
            "null_std": self.null_std,
            "z": self.z,
            "replicates": self.replicates,
            "null_model": self.null_model,
            "classification": self.classification,
            "degenerate": self.degenerate,
            "config": self.config.as_dict(),
            "seed": self.config.seed,
        }


def zscore(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    config: RunConfig | None = None,
    replicates: int = 50,
    null_model: str = "degree",
) -> ZScoreReport:
    """Observed count versus `replicates` shuffled copies.

    Replicate i shuffles with substream i+1 of the config seed. The spread
    uses the sample standard deviation (N-1); zero spread is reported as
    degenerate with z = 0 and a neutral classification.
    """
    if replicates < 2:
        raise ValueError("need at least two replicates for a sample deviation")
    config = config or RunConfig(solver="exact")
    observed = run_identification(net, motif, config).motif_count
    counts = np.empty(replicates, dtype=np.float64)
    for i in range(replicates):
        shuffled = shuffle_edges(net, config.seed, null_model=null_model, index=i + 1)
        counts[i] = run_identification(shuffled, motif, config).motif_count
    mean = float(counts.mean())
    std = float(counts.std(ddof=1))
    degenerate = std == 0.0
    z = 0.0 if degenerate else (observed - mean) / std
    if degenerate or abs(z) <= Z_THRESHOLD:
        classification = "neutral"
    else:
        classification = "over" if z > Z_THRESHOLD else "under"
    return ZScoreReport(
        network=net.name,
        motif=motif.name or "custom",
        observed=observed,
        null_mean=mean,
        null_std=std,
        z=float(z),
        replicates=replicates,
        null_model=null_model,
        classification=classification,
        degenerate=degenerate,
        config=config,
    )
