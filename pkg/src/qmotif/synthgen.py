"""Seeded synthetic benchmark networks with planted occurrences.

Plants are node-disjoint copies of the motif (exact labels), laid down on the
first plant_count*size nodes; the rest of the edge budget is random filler
labeled ACTIVATION with probability activation_ratio. Same spec, same seed:
bitwise identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .graph import Edge, MotifPattern, RegulatoryNetwork, Relation, builtin_motifs
from .rng import STREAM_SYNTH, stream


class InfeasibleSpec(ValueError):
    """The requested network cannot be realized."""


@dataclass(frozen=True)
class SynthSpec:
    nodes: int
    degree: float              # average total degree; edge target round(n*d/2)
    activation_ratio: float
    motif: str
    plant_count: int = 5
    seed: int = 0
    name: str = ""
    degree_as_edges: bool = False  # edge target round(n*d) instead

    def instance_name(self) -> str:
        if self.name:
            return self.name
        d = f"{self.degree:g}"
        r = f"{self.activation_ratio:g}"
        return f"n{self.nodes}_d{d}_r{r}_{self.motif}_p{self.plant_count}_s{self.seed}"

    def edge_target(self) -> int:
        scale = self.nodes * self.degree
        return round(scale if self.degree_as_edges else scale / 2.0)


def _node_id(i: int, width: int) -> str:
    return f"g{i:0{width}d}"


def generate(spec: SynthSpec, motif: MotifPattern | None = None) -> RegulatoryNetwork:
    """Build the network for a spec; `motif` overrides the builtin lookup."""
    if motif is None:
        try:
            motif = builtin_motifs()[spec.motif]
        except KeyError:
            raise InfeasibleSpec(f"unknown motif {spec.motif!r}") from None
    if not 0.0 <= spec.activation_ratio <= 1.0:
        raise InfeasibleSpec(f"activation ratio {spec.activation_ratio} outside [0, 1]")
    if spec.plant_count < 0:
        raise InfeasibleSpec("plant count cannot be negative")

    n = spec.nodes
    planted_nodes = spec.plant_count * motif.size
    if planted_nodes > n:
        raise InfeasibleSpec(
            f"{spec.plant_count} plants need {planted_nodes} nodes, spec has {n}"
        )
    target = spec.edge_target()
    planted_edges = spec.plant_count * len(motif.edges)
    if target < planted_edges:
        raise InfeasibleSpec(
            f"edge target {target} below the {planted_edges} planted edges"
        )
    if target > n * (n - 1):
        raise InfeasibleSpec(f"edge target {target} exceeds the simple-digraph maximum")

    width = max(4, len(str(n - 1)))
    names = [_node_id(i, width) for i in range(n)]
    edges: dict[tuple[str, str], Relation] = {}
    for copy in range(spec.plant_count):
        base = copy * motif.size
        for a, b, rel in motif.edges:
            edges[(names[base + a - 1], names[base + b - 1])] = rel

    rng = stream(spec.seed, STREAM_SYNTH)
    attempts = 0
    cap = 100 * max(target, 1)
    while len(edges) < target:
        if attempts >= cap:
            raise InfeasibleSpec(
                f"could not place {target} distinct edges after {cap} attempts"
            )
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or (names[u], names[v]) in edges:
            continue
        rel = Relation.ACTIVATION if rng.random() < spec.activation_ratio else Relation.REPRESSION
        edges[(names[u], names[v])] = rel

    triples: list[Edge] = [(s, d, r) for (s, d), r in edges.items()]
    return RegulatoryNetwork.from_edges(spec.instance_name(), triples, extra_nodes=names)


# Batch manifest: one spec per line, whitespace separated:
#   nodes degree activation_ratio motif plant_count seed [name]
# with # comments and blank lines skipped.


def parse_manifest(lines: Iterable[str]) -> list[SynthSpec]:
    specs: list[SynthSpec] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) not in (6, 7):
            raise InfeasibleSpec(
                f"manifest line {lineno}: expected 6 or 7 fields, got {len(fields)}"
            )
        try:
            spec = SynthSpec(
                nodes=int(fields[0]),
                degree=float(fields[1]),
                activation_ratio=float(fields[2]),
                motif=fields[3],
                plant_count=int(fields[4]),
                seed=int(fields[5]),
            )
        except ValueError as exc:
            raise InfeasibleSpec(f"manifest line {lineno}: {exc}") from None
        if len(fields) == 7:
            spec = replace(spec, name=fields[6])
        specs.append(spec)
    if not specs:
        raise InfeasibleSpec("manifest holds no specs")
    return specs


def serialize_manifest(specs: Iterable[SynthSpec]) -> str:
    rows = []
    for s in specs:
        row = f"{s.nodes} {s.degree:g} {s.activation_ratio:g} {s.motif} {s.plant_count} {s.seed}"
        if s.name:
            row += f" {s.name}"
        rows.append(row + "\n")
    return "".join(rows)
