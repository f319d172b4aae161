"""Statevector simulation of the alternating-operator loop.

The problem Hamiltonian is diagonal in the computational basis, so it is
represented by its value table (the objective table): phase layers multiply
amplitude b by exp(-i*gamma*diag[b]). The mixer is a transverse-field sweep,
one Rx(2*beta) per qubit. Qubit k is bit k of the state index (little-endian)
and equals binary variable k of the objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import _kernels
from .embedding import EmbeddingSet, repair_to_feasible, verify_edge_decomposition
from .graph import MotifPattern, RegulatoryNetwork
from .pbo import DEFAULT_QUBIT_CAP, QubitCapExceeded
from .rng import STREAM_OPTIMIZER, STREAM_SAMPLER, stream


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class QaoaParams:
    """Per-layer angles; layer j applies phase(gammas[j]) then mixer(betas[j])."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise LengthMismatch("gammas and betas must have equal length")

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def from_vector(cls, x: np.ndarray) -> "QaoaParams":
        p = len(x) // 2
        return cls(gammas=tuple(float(v) for v in x[:p]), betas=tuple(float(v) for v in x[p:]))


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "nelder-mead"
    restarts: int = 5
    max_evals: int = 400
    xtol: float = 1e-4
    ftol: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.method != "nelder-mead":
            raise ValueError(f"unsupported optimizer {self.method!r}")
        if self.restarts < 1:
            raise ValueError("need at least one restart")


def initial_state(num_qubits: int, qubit_cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Uniform superposition: every amplitude 2**(-r/2)."""
    if num_qubits > qubit_cap:
        raise QubitCapExceeded(f"{num_qubits} qubits exceed the cap of {qubit_cap}")
    n = 1 << num_qubits
    return np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)


def _num_qubits(state: np.ndarray) -> int:
    r = int(state.shape[0]).bit_length() - 1
    if (1 << r) != state.shape[0]:
        raise ValueError(f"state length {state.shape[0]} is not a power of two")
    return r


def apply_phase(state: np.ndarray, diag: np.ndarray, gamma: float) -> np.ndarray:
    """Diagonal evolution exp(-i*gamma*H): amp[b] *= exp(-i*gamma*diag[b])."""
    if state.shape[0] != diag.shape[0]:
        raise LengthMismatch(f"state has {state.shape[0]} amplitudes, table has {diag.shape[0]}")
    return state * np.exp(-1j * gamma * diag)


def apply_mixer(state: np.ndarray, beta: float) -> np.ndarray:
    """Transverse-field sweep: Rx(2*beta) on each qubit.

    Per qubit, amplitudes paired across bit k transform as
    a0 -> cos(beta)*a0 - i*sin(beta)*a1 and symmetrically.
    """
    r = _num_qubits(state)
    out = np.array(state, dtype=np.complex128, copy=True)
    if r == 0:
        return out
    return _kernels.mixer_kernel(out, math.cos(beta), math.sin(beta), r)


def run_circuit(diag: np.ndarray, params: QaoaParams,
                qubit_cap: int = DEFAULT_QUBIT_CAP) -> np.ndarray:
    """Prepare the uniform state and apply p alternating layers."""
    r = int(diag.shape[0]).bit_length() - 1
    if (1 << r) != diag.shape[0]:
        raise ValueError(f"table length {diag.shape[0]} is not a power of two")
    state = initial_state(r, qubit_cap=qubit_cap)
    for gamma, beta in zip(params.gammas, params.betas):
        state = apply_phase(state, diag, gamma)
        state = apply_mixer(state, beta)
    return state


def expectation(state: np.ndarray, diag: np.ndarray) -> float:
    if state.shape[0] != diag.shape[0]:
        raise LengthMismatch(f"state has {state.shape[0]} amplitudes, table has {diag.shape[0]}")
    probs = np.abs(state) ** 2
    return float(np.real(probs @ diag))


def optimize_restarts(
    diag: np.ndarray,
    p: int,
    config: OptimizerConfig | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> list[tuple[QaoaParams, float]]:
    """Seeded multi-start Nelder-Mead over the 2p angles; one entry per
    restart, in restart order.

    Restart k draws its start from the optimizer stream's k-th substream, so
    each restart's outcome is independent of the total restart count and the
    best value is non-increasing as restarts are added.
    """
    if p < 1:
        raise ValueError("need at least one layer")
    config = config or OptimizerConfig()

    def objective(x: np.ndarray) -> float:
        return expectation(run_circuit(diag, QaoaParams.from_vector(x), qubit_cap), diag)

    out: list[tuple[QaoaParams, float]] = []
    for k in range(config.restarts):
        rng = stream(config.seed, STREAM_OPTIMIZER, index=k)
        x0 = np.concatenate([
            rng.uniform(0.0, 2.0 * math.pi, p),
            rng.uniform(0.0, math.pi, p),
        ])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": config.max_evals,
                "xatol": config.xtol,
                "fatol": config.ftol,
            },
        )
        out.append((QaoaParams.from_vector(res.x), float(res.fun)))
    return out


def optimize_params(
    diag: np.ndarray,
    p: int,
    config: OptimizerConfig | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[QaoaParams, float]:
    """Best restart of optimize_restarts by final expectation (ties go to
    the earliest restart)."""
    results = optimize_restarts(diag, p, config, qubit_cap)
    best = min(range(len(results)), key=lambda k: results[k][1])
    return results[best]


@dataclass(frozen=True)
class DecodeResult:
    """Best feasible selection recovered from measurement samples."""

    edge_ids: tuple[int, ...]
    embeddings: EmbeddingSet
    motif_count: int
    value: float             # objective at the decoded selection
    repaired: bool           # decoded selection came out of repair
    source_sample: int       # the measured assignment that produced it
    source_value: float      # objective at that raw sample
    shots: int
    seed: int


def sample_and_decode(
    state: np.ndarray,
    diag: np.ndarray,
    net: RegulatoryNetwork,
    motif: MotifPattern,
    shots: int = 1024,
    seed: int = 0,
    wildcard: bool = False,
    seed_index: int = 0,
) -> DecodeResult:
    """Measure `shots` times and decode the best feasible selection.

    Each distinct sample is checked with the decomposition verifier;
    infeasible samples are shrunk by repair, so every candidate is feasible.
    The winner has the maximum motif count, ties going to the
    lexicographically least edge set.
    """
    if state.shape[0] != diag.shape[0]:
        raise LengthMismatch(f"state has {state.shape[0]} amplitudes, table has {diag.shape[0]}")
    if shots < 1:
        raise ValueError("need at least one shot")
    r = _num_qubits(state)
    if len(net.edges) != r:
        raise LengthMismatch(f"network has {len(net.edges)} edges but state has {r} qubits")
    probs = np.abs(state) ** 2
    probs = probs / probs.sum()
    rng = stream(seed, STREAM_SAMPLER, seed_index)
    samples = rng.choice(state.shape[0], size=shots, p=probs)

    best: tuple[int, tuple[int, ...]] | None = None
    best_payload: tuple[EmbeddingSet, bool, int] | None = None
    for b in sorted(set(int(s) for s in samples)):
        subset = tuple(k for k in range(r) if (b >> k) & 1)
        check = verify_edge_decomposition(net, motif, subset, wildcard)
        if check.feasible:
            edges, repaired = subset, False
            witness = check.witness
        else:
            edges = repair_to_feasible(net, motif, subset, wildcard)
            repaired = True
            witness = verify_edge_decomposition(net, motif, edges, wildcard).witness
        assert witness is not None
        rank = (-len(witness.embeddings), edges)
        if best is None or rank < best:
            best = rank
            best_payload = (witness, repaired, b)
    assert best is not None and best_payload is not None
    witness, repaired, b = best_payload
    edges = best[1]
    mask = 0
    for e in edges:
        mask |= 1 << e
    return DecodeResult(
        edge_ids=edges,
        embeddings=witness,
        motif_count=len(witness.embeddings),
        value=float(diag[mask]),
        repaired=repaired,
        source_sample=b,
        source_value=float(diag[b]),
        shots=shots,
        seed=seed,
    )
