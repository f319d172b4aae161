"""Directed labeled graphs: regulatory networks and motif patterns."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterable


class ParseError(ValueError):
    """Malformed input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyNetwork(ValueError):
    pass


class MotifTooSmall(ValueError):
    pass


class DisconnectedMotif(ValueError):
    pass


class Relation(Enum):
    """Regulation type of a directed edge.

    Motif edges must be ACTIVATION or REPRESSION; UNKNOWN only appears on
    network edges and acts as a wildcard when enabled.
    """

    ACTIVATION = "A"
    REPRESSION = "R"
    UNKNOWN = "U"

    @property
    def code(self) -> str:
        return self.value

    @classmethod
    def from_code(cls, code: str) -> "Relation":
        try:
            return cls(code)
        except ValueError:
            raise ValueError(f"unknown relation code {code!r} (expected A, R or U)") from None


def relation_match(net_rel: Relation, motif_rel: Relation, wildcard: bool) -> int:
    """1 if a network edge labeled net_rel can host a motif edge labeled motif_rel.

    UNKNOWN network edges match anything iff wildcard is on. Motif edges are
    never UNKNOWN.
    """
    if motif_rel is Relation.UNKNOWN:
        raise ValueError("motif edges must be ACTIVATION or REPRESSION")
    if net_rel is Relation.UNKNOWN:
        return 1 if wildcard else 0
    return 1 if net_rel is motif_rel else 0


Edge = tuple[str, str, Relation]


@dataclass(frozen=True)
class RegulatoryNetwork:
    """Directed graph with relation-labeled edges and opaque string node ids.

    Edges are stored sorted by (src, dst) so that edge index k is stable
    across runs; index k doubles as binary variable k downstream. No
    self-loops, no duplicate (src, dst) pairs.
    """

    name: str
    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(
        cls,
        name: str,
        edges: Iterable[Edge],
        extra_nodes: Iterable[str] = (),
    ) -> "RegulatoryNetwork":
        """Build a network, dropping self-loops with a warning.

        Duplicate (src, dst) pairs are an error; resolve them upstream
        (the TRRUST reader does its own conflict handling).
        """
        kept: dict[tuple[str, str], Relation] = {}
        for src, dst, rel in edges:
            if src == dst:
                warnings.warn(f"dropping self-loop {src}->{dst}", stacklevel=2)
                continue
            if (src, dst) in kept:
                raise ValueError(f"duplicate edge {src}->{dst}")
            kept[(src, dst)] = rel
        node_set = {n for pair in kept for n in pair}
        node_set.update(extra_nodes)
        ordered = tuple(sorted((s, d, r) for (s, d), r in kept.items()))
        return cls(name=name, nodes=tuple(sorted(node_set)), edges=ordered)

    @cached_property
    def edge_index(self) -> dict[tuple[str, str], int]:
        return {(s, d): i for i, (s, d, _) in enumerate(self.edges)}

    @cached_property
    def out_adj(self) -> dict[str, dict[str, Relation]]:
        adj: dict[str, dict[str, Relation]] = {n: {} for n in self.nodes}
        for s, d, r in self.edges:
            adj[s][d] = r
        return adj

    @cached_property
    def in_adj(self) -> dict[str, dict[str, Relation]]:
        adj: dict[str, dict[str, Relation]] = {n: {} for n in self.nodes}
        for s, d, r in self.edges:
            adj[d][s] = r
        return adj

    @cached_property
    def undirected_adj(self) -> dict[str, tuple[str, ...]]:
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for s, d, _ in self.edges:
            adj[s].add(d)
            adj[d].add(s)
        return {n: tuple(sorted(v)) for n, v in adj.items()}

    def relation(self, src: str, dst: str) -> Relation:
        return self.edges[self.edge_index[(src, dst)]][2]

    def has_unknown_edges(self) -> bool:
        return any(r is Relation.UNKNOWN for _, _, r in self.edges)

    def induced(self, nodes: Iterable[str], name: str | None = None) -> "RegulatoryNetwork":
        """Subnetwork on the given nodes (edges with both endpoints inside)."""
        keep = set(nodes)
        sub = tuple(e for e in self.edges if e[0] in keep and e[1] in keep)
        return RegulatoryNetwork(
            name=name if name is not None else self.name,
            nodes=tuple(sorted(keep & set(self.nodes))),
            edges=sub,
        )


MotifEdge = tuple[int, int, Relation]


@dataclass(frozen=True)
class MotifPattern:
    """Connected directed pattern on nodes 1..size with A/R edge labels.

    Canonical form (see canonicalize_motif) always contains the directed
    edge (1, 2); builders below return canonical patterns.
    """

    size: int
    edges: tuple[MotifEdge, ...]
    name: str = ""

    def __post_init__(self):
        if self.size < 3:
            raise MotifTooSmall(f"motif needs at least 3 nodes, got {self.size}")
        seen: set[tuple[int, int]] = set()
        touched: set[int] = set()
        for a, b, rel in self.edges:
            if not (1 <= a <= self.size and 1 <= b <= self.size):
                raise ValueError(f"motif edge ({a},{b}) out of range 1..{self.size}")
            if a == b:
                raise ValueError(f"motif self-loop ({a},{b})")
            if (a, b) in seen:
                raise ValueError(f"duplicate motif edge ({a},{b})")
            if rel is Relation.UNKNOWN:
                raise ValueError("motif edges must be ACTIVATION or REPRESSION")
            seen.add((a, b))
            touched.update((a, b))
        if touched != set(range(1, self.size + 1)):
            raise DisconnectedMotif("every motif node needs at least one edge")
        if not self._weakly_connected():
            raise DisconnectedMotif("motif must be weakly connected")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def _weakly_connected(self) -> bool:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.size + 1)}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.size

    @cached_property
    def out_adj(self) -> dict[int, dict[int, Relation]]:
        adj: dict[int, dict[int, Relation]] = {v: {} for v in range(1, self.size + 1)}
        for a, b, r in self.edges:
            adj[a][b] = r
        return adj

    @cached_property
    def in_adj(self) -> dict[int, dict[int, Relation]]:
        adj: dict[int, dict[int, Relation]] = {v: {} for v in range(1, self.size + 1)}
        for a, b, r in self.edges:
            adj[b][a] = r
        return adj


def canonicalize_motif(motif: MotifPattern) -> MotifPattern:
    """Deterministic relabeling: the lexicographically least edge encoding
    over all node permutations.

    The least encoding always starts with edge (1, 2): any directed edge can
    be relabeled onto (1, 2), and no encoding can start lower. Idempotent.
    """
    best: tuple[tuple[int, int, str], ...] | None = None
    nodes = range(1, motif.size + 1)
    for perm in itertools.permutations(nodes):
        relabel = {old: new for old, new in zip(nodes, perm)}
        enc = tuple(sorted((relabel[a], relabel[b], r.code) for a, b, r in motif.edges))
        if best is None or enc < best:
            best = enc
    assert best is not None
    edges = tuple((a, b, Relation.from_code(c)) for a, b, c in best)
    return MotifPattern(size=motif.size, edges=edges, name=motif.name)


def _motif(name: str, size: int, pairs: list[tuple[int, int]]) -> MotifPattern:
    edges = tuple((a, b, Relation.ACTIVATION) for a, b in pairs)
    return canonicalize_motif(MotifPattern(size=size, edges=edges, name=name))


def builtin_motifs() -> dict[str, MotifPattern]:
    """The four stock patterns, in canonical form, all edges ACTIVATION.

    cascade     three-node directed cycle
    ffl         feed-forward loop: 1 drives 2 and 3, 2 drives 3
    bifan       two regulators each driving the same two targets
    biparallel  diamond: 1 drives 2 and 3, both drive 4
    """
    return {
        "cascade": _motif("cascade", 3, [(1, 2), (2, 3), (3, 1)]),
        "ffl": _motif("ffl", 3, [(1, 2), (1, 3), (2, 3)]),
        "bifan": _motif("bifan", 4, [(1, 2), (1, 3), (4, 2), (4, 3)]),
        "biparallel": _motif("biparallel", 4, [(1, 2), (1, 3), (2, 4), (3, 4)]),
    }


# --- text formats -----------------------------------------------------------
#
# Networks:  src<TAB>dst<TAB>relation   one edge per line, relation in {A,R,U}
# Motifs:    a<TAB>b<TAB>relation       node labels 1..size, relation in {A,R}
# Lines starting with # and blank lines are skipped.


def _iter_rows(lines: Iterable[str]) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line.split("\t")


def parse_network(lines: Iterable[str], name: str = "network") -> RegulatoryNetwork:
    edges: dict[tuple[str, str], Relation] = {}
    order: list[Edge] = []
    for lineno, fields in _iter_rows(lines):
        if len(fields) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", lineno)
        src, dst, code = (f.strip() for f in fields)
        if not src or not dst:
            raise ParseError("empty node id", lineno)
        try:
            rel = Relation.from_code(code)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if src == dst:
            warnings.warn(f"line {lineno}: dropping self-loop {src}->{dst}", stacklevel=2)
            continue
        if (src, dst) in edges:
            raise ParseError(f"duplicate edge {src}->{dst}", lineno)
        edges[(src, dst)] = rel
        order.append((src, dst, rel))
    if not order:
        raise EmptyNetwork(f"{name}: no edges")
    return RegulatoryNetwork.from_edges(name, order)


def load_network(path: str | Path) -> RegulatoryNetwork:
    p = Path(path)
    with p.open("r", encoding="utf-8") as fh:
        return parse_network(fh, name=p.stem)


def serialize_network(net: RegulatoryNetwork) -> str:
    return "".join(f"{s}\t{d}\t{r.code}\n" for s, d, r in net.edges)


def parse_motif(lines: Iterable[str], name: str = "motif") -> MotifPattern:
    edges: list[MotifEdge] = []
    hi = 0
    for lineno, fields in _iter_rows(lines):
        if len(fields) != 3:
            raise ParseError(f"expected 3 tab-separated fields, got {len(fields)}", lineno)
        sa, sb, code = (f.strip() for f in fields)
        try:
            a, b = int(sa), int(sb)
        except ValueError:
            raise ParseError(f"motif node labels must be integers, got {sa!r}, {sb!r}", lineno) from None
        try:
            rel = Relation.from_code(code)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if rel is Relation.UNKNOWN:
            raise ParseError("motif edges cannot be U", lineno)
        edges.append((a, b, rel))
        hi = max(hi, a, b)
    if not edges:
        raise ParseError(f"{name}: no motif edges")
    try:
        return MotifPattern(size=hi, edges=tuple(edges), name=name)
    except (ValueError, MotifTooSmall, DisconnectedMotif) as exc:
        raise ParseError(f"{name}: {exc}") from exc


def load_motif(path: str | Path) -> MotifPattern:
    p = Path(path)
    with p.open("r", encoding="utf-8") as fh:
        return parse_motif(fh, name=p.stem)


def serialize_motif(motif: MotifPattern) -> str:
    return "".join(f"{a}\t{b}\t{r.code}\n" for a, b, r in motif.edges)
