from __future__ import annotations

import numpy as np
import pytest

from qmotif.embedding import EmbeddingSet, enumerate_embeddings
from qmotif.graph import RegulatoryNetwork, Relation, builtin_motifs
from qmotif.solvers import (
    EmbeddingCapExceeded,
    baseline_greedy,
    build_conflict_graph,
    exact_mis,
)

from oracles import exhaustive_mis

A = Relation.ACTIVATION


def _fabricated(node_sets) -> EmbeddingSet:
    """Build an EmbeddingSet carrying the given node-id sets directly; the
    solvers only look at node overlap, so edge structure is irrelevant."""
    from qmotif.embedding import Embedding

    embs = []
    for i, nodes in enumerate(node_sets):
        names = tuple(f"n{u}" for u in sorted(nodes))
        embs.append(Embedding(edge_ids=(i,), node_ids=frozenset(names),
                              mapping=names))
    return EmbeddingSet(network="fab", embeddings=tuple(embs))


def test_conflict_graph_masks():
    embs = _fabricated([{1, 2}, {2, 3}, {4, 5}])
    g = build_conflict_graph(embs)
    assert g.count == 3
    assert g.masks == (0b010, 0b001, 0b000)
    assert g.degree(0) == 1 and g.degree(2) == 0
    assert g.degree(0, within=0b100) == 0


def test_star_conflicts_pick_the_leaves():
    # center overlaps all leaves; leaves are pairwise disjoint
    embs = _fabricated([{0, 1, 2, 3}, {0, 10}, {1, 11}, {2, 12}, {3, 13}])
    for solve in (baseline_greedy, exact_mis):
        res = solve(embs)
        assert res.motif_count == 4


def test_odd_cycle_of_conflicts():
    # 5-cycle: consecutive sets share one node; MIS size is 2
    embs = _fabricated([{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}])
    assert exact_mis(embs).motif_count == 2
    assert baseline_greedy(embs).motif_count == 2


def test_exact_flags_and_determinism():
    embs = _fabricated([{1, 2}, {2, 3}, {3, 4}])
    a = exact_mis(embs)
    b = exact_mis(embs)
    assert a.optimal is True and a.method == "exact"
    assert a.motif_count == 2
    assert [e.node_ids for e in a.selected.embeddings] == \
           [e.node_ids for e in b.selected.embeddings]


def test_greedy_never_exceeds_exact_and_matches_on_disjoint():
    rng = np.random.default_rng(17)
    for trial in range(200):
        k = int(rng.integers(1, 13))
        universe = int(rng.integers(6, 16))
        node_sets = []
        for _ in range(k):
            size = int(rng.integers(2, 5))
            node_sets.append(set(int(u) for u in
                                 rng.choice(universe, size=size, replace=False)))
        embs = _fabricated(node_sets)
        graph = build_conflict_graph(embs)
        want = exhaustive_mis(graph.masks)
        res_exact = exact_mis(embs)
        assert res_exact.motif_count == want, f"trial {trial}"
        for dynamic in (True, False):
            res_greedy = baseline_greedy(embs, dynamic=dynamic)
            assert res_greedy.motif_count <= want
            assert res_greedy.optimal is False
        if all(m == 0 for m in graph.masks):
            assert baseline_greedy(embs).motif_count == want == k


def test_selected_sets_are_verified_disjoint():
    embs = _fabricated([{1, 2}, {2, 3}, {3, 4}, {5, 6}])
    for solve in (baseline_greedy, exact_mis):
        res = solve(embs)
        seen: set[int] = set()
        for e in res.selected.embeddings:
            assert not (seen & e.node_ids)
            seen |= e.node_ids
        assert res.selected.non_overlapping


def test_embedding_cap():
    embs = _fabricated([{i, i + 100} for i in range(5)])
    with pytest.raises(EmbeddingCapExceeded):
        exact_mis(embs, cap=4)


def test_budget_exhaustion_returns_partial():
    # dense instance with an unreachable budget; result must be flagged
    rng = np.random.default_rng(2)
    node_sets = [set(int(u) for u in rng.choice(30, size=3, replace=False))
                 for _ in range(40)]
    embs = _fabricated(node_sets)
    res = exact_mis(embs, budget_ms=0.0)
    assert res.optimal is False
    assert res.motif_count >= 0


def test_solvers_on_real_enumeration():
    net = RegulatoryNetwork.from_edges("t", [
        ("a", "b", A), ("a", "c", A), ("b", "c", A),
        ("c", "d", A), ("c", "e", A), ("d", "e", A),
    ])
    embs = enumerate_embeddings(net, builtin_motifs()["ffl"])
    assert len(embs.embeddings) == 2  # both FFLs share node c
    assert exact_mis(embs).motif_count == 1
    assert baseline_greedy(embs).motif_count == 1


def test_empty_embedding_set():
    embs = _fabricated([])
    assert exact_mis(embs).motif_count == 0
    assert baseline_greedy(embs).motif_count == 0
