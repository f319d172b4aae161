"""Motif occurrence search and edge-decomposition checking.

An embedding is an edge subset of the network whose edge-induced subgraph is
label-isomorphic to the motif.  A feasible solution is a union of embeddings
that are pairwise node-disjoint; verify_edge_decomposition decides membership
by peeling witnesses off the lowest-index unconsumed edge, which is a complete
decision procedure because a feasible set admits exactly one witness per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import MotifPattern, RegulatoryNetwork, Relation, relation_match


@dataclass(frozen=True)
class Embedding:
    """One motif occurrence.

    mapping[i] is the network node playing motif node i+1; edge_ids are the
    network edge indices it occupies (sorted), node_ids their endpoints.
    Occurrences are identified by edge set: two mappings with the same edge
    set are the same embedding and only one representative mapping is kept.
    """

    edge_ids: tuple[int, ...]
    node_ids: frozenset[str]
    mapping: tuple[str, ...]


@dataclass(frozen=True)
class EmbeddingSet:
    network: str
    embeddings: tuple[Embedding, ...]
    non_overlapping: bool = False

    def __post_init__(self):
        if self.non_overlapping:
            seen: set[str] = set()
            for emb in self.embeddings:
                if seen & emb.node_ids:
                    raise ValueError("embeddings flagged non-overlapping share a node")
                seen |= emb.node_ids

    def __len__(self) -> int:
        return len(self.embeddings)

    def edge_union(self) -> tuple[int, ...]:
        out: set[int] = set()
        for emb in self.embeddings:
            out.update(emb.edge_ids)
        return tuple(sorted(out))


@dataclass(frozen=True)
class VerifyResult:
    feasible: bool
    witness: EmbeddingSet | None = None
    violation: str | None = None


def _search_order(motif: MotifPattern, preset: tuple[int, ...]) -> list[int]:
    """Preset motif nodes first, then grow along motif adjacency (smallest
    label first). Connectivity guarantees full coverage."""
    placed = list(preset)
    if not placed:
        placed.append(1)
    adj: dict[int, set[int]] = {v: set() for v in range(1, motif.size + 1)}
    for a, b, _ in motif.edges:
        adj[a].add(b)
        adj[b].add(a)
    while len(placed) < motif.size:
        frontier = sorted(
            v for v in range(1, motif.size + 1)
            if v not in placed and any(u in placed for u in adj[v])
        )
        placed.append(frontier[0])
    return placed


def iter_mappings(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    preset: dict[int, str] | None = None,
    allowed_edges: frozenset[int] | None = None,
    excluded_nodes: frozenset[str] = frozenset(),
    wildcard: bool = False,
) -> Iterator[tuple[str, ...]]:
    """Yield every injective, label-consistent motif-node -> network-node
    mapping extending `preset`.

    allowed_edges restricts which network edges may host motif edges;
    excluded_nodes bars network nodes from the free (non-preset) positions
    only, so preset anchors are exempt.
    """
    preset = preset or {}

    def edge_ok(src: str, dst: str, rel: Relation) -> bool:
        idx = net.edge_index.get((src, dst))
        if idx is None:
            return False
        if allowed_edges is not None and idx not in allowed_edges:
            return False
        return relation_match(net.edges[idx][2], rel, wildcard) == 1

    # preset anchors must be mutually consistent before the search starts
    for a, b, rel in motif.edges:
        if a in preset and b in preset and not edge_ok(preset[a], preset[b], rel):
            return
    if len(set(preset.values())) != len(preset):
        return

    order = _search_order(motif, tuple(sorted(preset)))
    # per step: motif edges between the new node and already placed nodes
    constraints: list[list[tuple[int, bool, Relation]]] = []
    for step, v in enumerate(order):
        prior = order[:step]
        cons: list[tuple[int, bool, Relation]] = []
        for u, rel in motif.out_adj[v].items():
            if u in prior:
                cons.append((prior.index(u), True, rel))   # v -> image(u)
        for u, rel in motif.in_adj[v].items():
            if u in prior:
                cons.append((prior.index(u), False, rel))  # image(u) -> v
        constraints.append(cons)

    images: list[str] = []
    used: set[str] = set()

    def candidates(step: int) -> Iterable[str]:
        v = order[step]
        if v in preset:
            return (preset[v],)
        cons = constraints[step]
        if not cons:
            return (n for n in net.nodes if n not in excluded_nodes)
        pos, outgoing, _ = cons[0]
        anchor = images[pos]
        pool = net.in_adj[anchor] if outgoing else net.out_adj[anchor]
        return (n for n in sorted(pool) if n not in excluded_nodes)

    def ok(step: int, cand: str) -> bool:
        if cand in used:
            return False
        for pos, outgoing, rel in constraints[step]:
            src, dst = (cand, images[pos]) if outgoing else (images[pos], cand)
            if not edge_ok(src, dst, rel):
                return False
        return True

    def extend(step: int) -> Iterator[tuple[str, ...]]:
        if step == motif.size:
            by_label = dict(zip(order, images))
            yield tuple(by_label[v] for v in range(1, motif.size + 1))
            return
        for cand in candidates(step):
            if ok(step, cand):
                images.append(cand)
                used.add(cand)
                yield from extend(step + 1)
                used.remove(cand)
                images.pop()

    yield from extend(0)


def _embedding_from_mapping(net: RegulatoryNetwork, motif: MotifPattern,
                            mapping: tuple[str, ...]) -> Embedding:
    ids = sorted(net.edge_index[(mapping[a - 1], mapping[b - 1])] for a, b, _ in motif.edges)
    return Embedding(
        edge_ids=tuple(ids),
        node_ids=frozenset(mapping),
        mapping=mapping,
    )


def _distinct_embeddings(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    mappings: Iterable[tuple[str, ...]],
) -> list[Embedding]:
    by_edges: dict[tuple[int, ...], Embedding] = {}
    for mapping in mappings:
        emb = _embedding_from_mapping(net, motif, mapping)
        if emb.edge_ids not in by_edges:
            by_edges[emb.edge_ids] = emb
    return [by_edges[k] for k in sorted(by_edges)]


def enumerate_embeddings(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    wildcard: bool = False,
    within: Iterable[int] | None = None,
) -> EmbeddingSet:
    """All distinct embeddings, sorted by edge-id tuple.

    `within` restricts the search to the given network edge indices.
    """
    allowed = frozenset(within) if within is not None else None
    found = _distinct_embeddings(
        net, motif, iter_mappings(net, motif, allowed_edges=allowed, wildcard=wildcard)
    )
    return EmbeddingSet(network=net.name, embeddings=tuple(found))


def _witnesses_through(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    edge_id: int,
    allowed: frozenset[int],
    wildcard: bool,
) -> list[Embedding]:
    """Distinct embeddings within `allowed` whose edge set contains edge_id,
    found by anchoring each motif edge onto it in turn."""
    src, dst, _ = net.edges[edge_id]
    mappings: list[tuple[str, ...]] = []
    for a, b, _rel in motif.edges:
        mappings.extend(
            iter_mappings(net, motif, preset={a: src, b: dst},
                          allowed_edges=allowed, wildcard=wildcard)
        )
    return _distinct_embeddings(net, motif, mappings)


def verify_edge_decomposition(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    edge_ids: Iterable[int],
    wildcard: bool = False,
) -> VerifyResult:
    """Decide whether the edge subset is exactly a union of node-disjoint
    embeddings, and produce that witness family if so.

    Greedy peeling: repeatedly take the embedding containing the
    lowest-index unconsumed edge (lexicographically least witness if several
    contain it; on feasible inputs the choice is forced). Feasible iff
    peeling consumes every edge and the peeled groups are node-disjoint.
    """
    remaining = set(edge_ids)
    groups: list[Embedding] = []
    while remaining:
        e = min(remaining)
        witnesses = _witnesses_through(net, motif, e, frozenset(remaining), wildcard)
        if not witnesses:
            return VerifyResult(False, violation=f"edge {e} is not part of any embedding")
        groups.append(witnesses[0])
        remaining -= set(witnesses[0].edge_ids)
    seen: set[str] = set()
    for g in groups:
        if seen & g.node_ids:
            return VerifyResult(False, violation="peeled embeddings share a node")
        seen |= g.node_ids
    return VerifyResult(
        True,
        witness=EmbeddingSet(network=net.name, embeddings=tuple(groups), non_overlapping=True),
    )


def repair_to_feasible(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    edge_ids: Iterable[int],
    wildcard: bool = False,
) -> tuple[int, ...]:
    """Largest-effort feasible shrink of an edge subset: keep a maximal
    node-disjoint family of the embeddings living inside it (greedy in
    edge-id lexicographic order) and return their edge union. Idempotent;
    the result always passes verify_edge_decomposition."""
    subset = frozenset(edge_ids)
    inside = enumerate_embeddings(net, motif, wildcard=wildcard, within=subset)
    kept: list[Embedding] = []
    used_nodes: set[str] = set()
    for emb in inside.embeddings:
        if not (used_nodes & emb.node_ids):
            kept.append(emb)
            used_nodes |= emb.node_ids
    out: set[int] = set()
    for emb in kept:
        out.update(emb.edge_ids)
    return tuple(sorted(out))
