"""Pseudo-Boolean objective whose minima are exactly the feasible selections.

One binary variable per network edge (variable k is edge k of the sorted edge
list). The objective rewards every selected edge and charges a penalty A per
violated constraint, so with A larger than the edge count the global minima
are exactly the unions of node-disjoint embeddings and the minimum value is
minus the largest attainable edge count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .embedding import iter_mappings
from .graph import MotifPattern, RegulatoryNetwork


class PolynomialBlowup(RuntimeError):
    """Raised when an expansion exceeds the configured term cap."""


class QubitCapExceeded(RuntimeError):
    """Raised when a statevector would need more variables than allowed."""


DEFAULT_TERM_CAP = 200_000
DEFAULT_QUBIT_CAP = 20

H_MODES = ("orbit", "anchored")


@dataclass(frozen=True)
class VariableMap:
    """Bijection between binary variables and network edges.

    Variable k is edge k of the network's sorted edge list; kept explicit so
    dumps and reports can name variables by the edge they stand for.
    """

    edges: tuple[tuple[str, str], ...]

    @classmethod
    def from_network(cls, net: RegulatoryNetwork) -> "VariableMap":
        return cls(edges=tuple((s, d) for s, d, _ in net.edges))

    @property
    def count(self) -> int:
        return len(self.edges)

    def variable(self, src: str, dst: str) -> int:
        return self.edges.index((src, dst))

    def edge(self, var: int) -> tuple[str, str]:
        return self.edges[var]


class PseudoBooleanPolynomial:
    """Multilinear polynomial over binary variables.

    Terms map frozensets of variable indices to float coefficients; x*x = x
    holds by construction because term keys are sets. Zero coefficients are
    never stored.
    """

    __slots__ = ("terms", "constant")

    def __init__(self, terms: dict[frozenset[int], float] | None = None, constant: float = 0.0):
        self.terms: dict[frozenset[int], float] = {}
        self.constant = float(constant)
        if terms:
            for k, v in terms.items():
                self.add_term(k, v)

    def add_term(self, variables: Iterable[int], coeff: float) -> None:
        key = frozenset(variables)
        if not key:
            self.constant += coeff
            return
        new = self.terms.get(key, 0.0) + coeff
        if new == 0.0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    @property
    def term_count(self) -> int:
        return len(self.terms)

    @property
    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def variables(self) -> frozenset[int]:
        out: set[int] = set()
        for k in self.terms:
            out |= k
        return frozenset(out)

    def copy(self) -> "PseudoBooleanPolynomial":
        out = PseudoBooleanPolynomial()
        out.terms = dict(self.terms)
        out.constant = self.constant
        return out

    def __iadd__(self, other: "PseudoBooleanPolynomial | float") -> "PseudoBooleanPolynomial":
        if isinstance(other, PseudoBooleanPolynomial):
            self.constant += other.constant
            for k, v in other.terms.items():
                self.add_term(k, v)
        else:
            self.constant += float(other)
        return self

    def __add__(self, other: "PseudoBooleanPolynomial | float") -> "PseudoBooleanPolynomial":
        out = self.copy()
        out += other
        return out

    def __sub__(self, other: "PseudoBooleanPolynomial | float") -> "PseudoBooleanPolynomial":
        if isinstance(other, PseudoBooleanPolynomial):
            return self + other.scaled(-1.0)
        return self + (-float(other))

    def scaled(self, factor: float) -> "PseudoBooleanPolynomial":
        out = PseudoBooleanPolynomial(constant=self.constant * factor)
        if factor != 0.0:
            out.terms = {k: v * factor for k, v in self.terms.items()}
        return out

    def multiply(self, other: "PseudoBooleanPolynomial",
                 term_cap: int | None = None) -> "PseudoBooleanPolynomial":
        """Product under x*x = x; raises PolynomialBlowup past term_cap."""
        out = PseudoBooleanPolynomial(constant=self.constant * other.constant)
        if self.constant != 0.0:
            for k, v in other.terms.items():
                out.add_term(k, self.constant * v)
        if other.constant != 0.0:
            for k, v in self.terms.items():
                out.add_term(k, other.constant * v)
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out.add_term(k1 | k2, v1 * v2)
            if term_cap is not None and out.term_count > term_cap:
                raise PolynomialBlowup(
                    f"product exceeded {term_cap} terms; raise the cap or shrink the part"
                )
        return out

    def __mul__(self, other: "PseudoBooleanPolynomial") -> "PseudoBooleanPolynomial":
        return self.multiply(other)

    def with_variables(self, variables: Iterable[int]) -> "PseudoBooleanPolynomial":
        """Multiply by the monomial over `variables` (absorbing repeats)."""
        extra = frozenset(variables)
        out = PseudoBooleanPolynomial()
        out.add_term(extra, self.constant)
        for k, v in self.terms.items():
            out.add_term(k | extra, v)
        return out

    def evaluate(self, assignment: int) -> float:
        """Value at the little-endian assignment: bit k of `assignment` is
        variable k."""
        total = self.constant
        for k, v in self.terms.items():
            if all((assignment >> var) & 1 for var in k):
                total += v
        return total

    # dump format: constant line "C<TAB>value" first, then one term per line
    # "coefficient<TAB>comma-separated variable indices", sorted by variables.
    def dump(self) -> str:
        lines = [f"C\t{self.constant!r}"]
        for key in sorted(self.terms, key=lambda k: (len(k), sorted(k))):
            vars_txt = ",".join(str(v) for v in sorted(key))
            lines.append(f"{self.terms[key]!r}\t{vars_txt}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "PseudoBooleanPolynomial":
        out = cls()
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            left, _, right = line.partition("\t")
            if left == "C":
                out.constant = float(right)
            else:
                out.add_term((int(v) for v in right.split(",")), float(left))
        return out

    def __repr__(self) -> str:
        return f"PseudoBooleanPolynomial(terms={self.term_count}, degree={self.degree})"


def build_h_polynomial(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    anchor_edge: int,
    excluded_nodes: frozenset[str] = frozenset(),
    mode: str = "orbit",
    wildcard: bool = False,
) -> PseudoBooleanPolynomial:
    """Selected-occurrence counter for the anchor edge, as a polynomial.

    Each monomial is the product of the edge variables of one embedding
    through the anchor edge whose free (non-anchor) nodes avoid
    excluded_nodes; it evaluates to 1 exactly when that occurrence is fully
    selected. "anchored" mode only maps motif edge (1,2) onto the anchor
    (one term per mapping), which undercounts occurrences for motifs whose
    symmetry cannot move (1,2) onto every edge; "orbit" mode anchors every
    motif edge in turn and counts each distinct edge set once.
    """
    if mode not in H_MODES:
        raise ValueError(f"mode must be one of {H_MODES}, got {mode!r}")
    src, dst, _ = net.edges[anchor_edge]
    poly = PseudoBooleanPolynomial()
    if mode == "anchored":
        for mapping in iter_mappings(net, motif, preset={1: src, 2: dst},
                                     excluded_nodes=excluded_nodes, wildcard=wildcard):
            poly.add_term(_mapped_edge_ids(net, motif, mapping), 1.0)
        return poly
    seen: set[frozenset[int]] = set()
    for a, b, _rel in motif.edges:
        for mapping in iter_mappings(net, motif, preset={a: src, b: dst},
                                     excluded_nodes=excluded_nodes, wildcard=wildcard):
            key = frozenset(_mapped_edge_ids(net, motif, mapping))
            if key not in seen:
                seen.add(key)
                poly.add_term(key, 1.0)
    return poly


def _mapped_edge_ids(net: RegulatoryNetwork, motif: MotifPattern,
                     mapping: tuple[str, ...]) -> list[int]:
    return [net.edge_index[(mapping[a - 1], mapping[b - 1])] for a, b, _ in motif.edges]


@dataclass(frozen=True)
class ObjectiveParts:
    """The assembled objective and its named components.

    total = -selection_reward + uniqueness_penalty + overlap_penalty
            + absent_edge_penalty
    The absent-edge component is identically zero here because unselectable
    pairs simply have no variable, but it stays a named part for audits.
    """

    total: PseudoBooleanPolynomial
    selection_reward: PseudoBooleanPolynomial
    uniqueness_penalty: PseudoBooleanPolynomial
    overlap_penalty: PseudoBooleanPolynomial
    absent_edge_penalty: PseudoBooleanPolynomial
    penalties: tuple[float, float, float]


def _sharing_pairs(net: RegulatoryNetwork) -> Iterator[tuple[int, int]]:
    """Ordered pairs of distinct edges sharing at least one endpoint."""
    m = len(net.edges)
    for i in range(m):
        si, di, _ = net.edges[i]
        for j in range(m):
            if i == j:
                continue
            sj, dj, _ = net.edges[j]
            if {si, di} & {sj, dj}:
                yield i, j


def assemble_objective_parts(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    penalties: tuple[float, float, float] | None = None,
    h_mode: str = "orbit",
    wildcard: bool = False,
    term_cap: int = DEFAULT_TERM_CAP,
) -> ObjectiveParts:
    """Build the objective for one network (or part).

    penalties defaults to (|E|+1,)*3 and every entry must exceed |E| so that
    a single violation always outweighs selecting every edge.
    """
    m = len(net.edges)
    if penalties is None:
        penalties = (float(m + 1),) * 3
    a1, a2, a3 = (float(p) for p in penalties)
    for p in (a1, a2, a3):
        if p <= m:
            raise ValueError(f"penalty {p} must exceed the edge count {m}")

    reward = PseudoBooleanPolynomial()
    for e in range(m):
        reward.add_term((e,), 1.0)

    uniqueness = PseudoBooleanPolynomial()
    h_plain: list[PseudoBooleanPolynomial] = []
    for e in range(m):
        h = build_h_polynomial(net, motif, e, mode=h_mode, wildcard=wildcard)
        h_plain.append(h)
        # (x_e - h)^2 = x_e - 2*x_e*h + h^2, and x_e*h = h because every
        # occurrence through e contains variable e itself
        uniqueness.add_term((e,), 1.0)
        uniqueness += h.scaled(-2.0)
        uniqueness += h.multiply(h, term_cap=term_cap)
        if uniqueness.term_count > term_cap:
            raise PolynomialBlowup(f"uniqueness penalty exceeded {term_cap} terms")

    overlap = PseudoBooleanPolynomial()
    for e1, e2 in _sharing_pairs(net):
        n1 = frozenset(net.edges[e1][:2])
        n2 = frozenset(net.edges[e2][:2])
        g = build_h_polynomial(net, motif, e1, excluded_nodes=n2, mode=h_mode, wildcard=wildcard)
        g += build_h_polynomial(net, motif, e2, excluded_nodes=n1, mode=h_mode, wildcard=wildcard)
        sq = g.multiply(g, term_cap=term_cap)
        overlap += sq.with_variables((e1, e2))
        if overlap.term_count > term_cap:
            raise PolynomialBlowup(f"overlap penalty exceeded {term_cap} terms")

    absent = PseudoBooleanPolynomial()

    total = reward.scaled(-1.0)
    total += uniqueness.scaled(a1)
    total += overlap.scaled(a2)
    total += absent.scaled(a3)
    if total.term_count > term_cap:
        raise PolynomialBlowup(f"objective exceeded {term_cap} terms")
    return ObjectiveParts(
        total=total,
        selection_reward=reward,
        uniqueness_penalty=uniqueness.scaled(a1),
        overlap_penalty=overlap.scaled(a2),
        absent_edge_penalty=absent.scaled(a3),
        penalties=(a1, a2, a3),
    )


def assemble_objective(
    net: RegulatoryNetwork,
    motif: MotifPattern,
    penalties: tuple[float, float, float] | None = None,
    h_mode: str = "orbit",
    wildcard: bool = False,
    term_cap: int = DEFAULT_TERM_CAP,
) -> PseudoBooleanPolynomial:
    return assemble_objective_parts(net, motif, penalties, h_mode, wildcard, term_cap).total


def objective_table(
    poly: PseudoBooleanPolynomial,
    num_variables: int,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> np.ndarray:
    """Dense value table: entry b is poly evaluated at little-endian
    assignment b. Size 2**num_variables, so the cap guards memory."""
    if num_variables > qubit_cap:
        raise QubitCapExceeded(f"{num_variables} variables exceed the cap of {qubit_cap}")
    stray = [v for v in poly.variables() if v >= num_variables]
    if stray:
        raise ValueError(f"polynomial references variables {stray} outside 0..{num_variables - 1}")
    masks = np.zeros(poly.term_count, dtype=np.uint64)
    coeffs = np.zeros(poly.term_count, dtype=np.float64)
    for t, key in enumerate(sorted(poly.terms, key=lambda k: (len(k), sorted(k)))):
        mask = 0
        for v in key:
            mask |= 1 << v
        masks[t] = mask
        coeffs[t] = poly.terms[key]
    return _kernels.objective_table_kernel(masks, coeffs, float(poly.constant), num_variables)
