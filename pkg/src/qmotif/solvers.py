"""Classical selection of node-disjoint embeddings.

Both solvers work on the conflict graph: one vertex per candidate embedding,
an edge between any two that share a network node. A feasible solution is an
independent set; the motif count is its size.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .embedding import EmbeddingSet


class EmbeddingCapExceeded(RuntimeError):
    """Exact search refuses instances past the configured candidate cap."""


@dataclass(frozen=True)
class ConflictGraph:
    """Adjacency as per-vertex bitmasks; vertex order is the embedding order
    (lexicographic by edge ids), so index ties double as lexicographic ties."""

    count: int
    masks: tuple[int, ...]

    def degree(self, v: int, within: int | None = None) -> int:
        mask = self.masks[v] if within is None else self.masks[v] & within
        return mask.bit_count()


def build_conflict_graph(embs: EmbeddingSet) -> ConflictGraph:
    k = len(embs.embeddings)
    masks = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if embs.embeddings[i].node_ids & embs.embeddings[j].node_ids:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return ConflictGraph(count=k, masks=tuple(masks))


@dataclass(frozen=True)
class SolverResult:
    selected: EmbeddingSet
    motif_count: int
    method: str
    optimal: bool
    elapsed_ms: float


def _result(embs: EmbeddingSet, chosen: list[int], method: str,
            optimal: bool, t0: float) -> SolverResult:
    picked = tuple(embs.embeddings[v] for v in sorted(chosen))
    selected = EmbeddingSet(network=embs.network, embeddings=picked, non_overlapping=True)
    return SolverResult(
        selected=selected,
        motif_count=len(picked),
        method=method,
        optimal=optimal,
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


def baseline_greedy(embs: EmbeddingSet, dynamic: bool = True) -> SolverResult:
    """Iteratively keep the embedding with the least loss, where loss is its
    conflict count; dynamic recomputes losses over the remaining candidates
    after every pick, static scores once upfront. Ties go to the smallest
    vertex index, i.e. the lexicographically least edge set."""
    t0 = time.perf_counter()
    graph = build_conflict_graph(embs)
    remaining = (1 << graph.count) - 1
    static_loss = [graph.degree(v) for v in range(graph.count)]
    chosen: list[int] = []
    while remaining:
        best_v = -1
        best_loss = None
        v = remaining
        while v:
            low = v & -v
            idx = low.bit_length() - 1
            loss = graph.degree(idx, remaining) if dynamic else static_loss[idx]
            if best_loss is None or loss < best_loss:
                best_loss = loss
                best_v = idx
            v ^= low
        chosen.append(best_v)
        remaining &= ~((1 << best_v) | graph.masks[best_v])
    method = "greedy" if dynamic else "greedy-static"
    return _result(embs, chosen, method, optimal=False, t0=t0)


def _clique_cover_bound(graph: ConflictGraph, remaining: int) -> int:
    """Greedy clique cover of the remaining conflict subgraph; the number of
    cliques bounds the independent set size from above."""
    cliques: list[int] = []
    v = remaining
    while v:
        low = v & -v
        idx = low.bit_length() - 1
        placed = False
        for c, members in enumerate(cliques):
            # idx joins a clique only if it conflicts with every member
            if members & ~graph.masks[idx] == 0:
                cliques[c] |= low
                placed = True
                break
        if not placed:
            cliques.append(low)
        v ^= low
    return len(cliques)


def exact_mis(
    embs: EmbeddingSet,
    cap: int = 64,
    budget_ms: float | None = None,
) -> SolverResult:
    """Branch and bound for the maximum independent set of embeddings.

    Branches on the max-degree remaining vertex (smallest index on ties),
    include before exclude, pruning with the greedy clique-cover bound. If
    the time budget runs out the best solution so far is returned with
    optimal=False.
    """
    t0 = time.perf_counter()
    graph = build_conflict_graph(embs)
    if graph.count > cap:
        raise EmbeddingCapExceeded(f"{graph.count} candidate embeddings exceed the cap of {cap}")

    best: list[int] = []
    exhausted = False

    def out_of_budget() -> bool:
        return budget_ms is not None and (time.perf_counter() - t0) * 1e3 > budget_ms

    def search(remaining: int, current: list[int]) -> None:
        nonlocal best, exhausted
        if exhausted or out_of_budget():
            exhausted = True
            return
        if len(current) > len(best):
            best = list(current)
        if not remaining:
            return
        if len(current) + _clique_cover_bound(graph, remaining) <= len(best):
            return
        branch = -1
        branch_deg = -1
        v = remaining
        while v:
            low = v & -v
            idx = low.bit_length() - 1
            deg = graph.degree(idx, remaining)
            if deg > branch_deg:
                branch_deg = deg
                branch = idx
            v ^= low
        bit = 1 << branch
        current.append(branch)
        search(remaining & ~(bit | graph.masks[branch]), current)
        current.pop()
        search(remaining & ~bit, current)

    search((1 << graph.count) - 1, [])
    return _result(embs, best, "exact", optimal=not exhausted, t0=t0)
