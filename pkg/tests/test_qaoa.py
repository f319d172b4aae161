from __future__ import annotations

import math

import numpy as np
import pytest

from qmotif.graph import RegulatoryNetwork, Relation, builtin_motifs
from qmotif.pbo import QubitCapExceeded, assemble_objective, objective_table
from qmotif.qaoa import (
    LengthMismatch,
    OptimizerConfig,
    QaoaParams,
    apply_mixer,
    apply_phase,
    expectation,
    initial_state,
    optimize_params,
    optimize_restarts,
    run_circuit,
    sample_and_decode,
)

A = Relation.ACTIVATION


def test_initial_state_is_uniform():
    st = initial_state(3)
    assert st.shape == (8,)
    np.testing.assert_allclose(st, np.full(8, 1 / math.sqrt(8)), atol=1e-15)
    with pytest.raises(QubitCapExceeded):
        initial_state(21, qubit_cap=20)


def test_params_validation():
    with pytest.raises(LengthMismatch):
        QaoaParams(gammas=(0.1,), betas=())
    p = QaoaParams.from_vector(np.array([1.0, 2.0, 3.0, 4.0]))
    assert p.gammas == (1.0, 2.0) and p.betas == (3.0, 4.0) and p.p == 2


def test_phase_layer_is_pure_phase():
    rng = np.random.default_rng(3)
    diag = rng.normal(size=16)
    st = initial_state(4)
    out = apply_phase(st, diag, 0.7)
    np.testing.assert_allclose(np.abs(out), np.abs(st), atol=1e-15)
    np.testing.assert_allclose(out, st * np.exp(-1j * 0.7 * diag), atol=1e-15)
    np.testing.assert_allclose(apply_phase(st, diag, 0.0), st, atol=1e-15)


def test_phase_single_qubit_frozen():
    # diag [0, pi] at gamma=1: amp1 picks up exp(-i*pi) = -1
    st = initial_state(1)
    out = apply_phase(st, np.array([0.0, math.pi]), 1.0)
    np.testing.assert_allclose(out, [0.70710678, -0.70710678], atol=1e-8)


def test_mixer_identity_and_quarter_turn():
    st = initial_state(2)
    np.testing.assert_allclose(apply_mixer(st, 0.0), st, atol=1e-15)
    # beta = pi/2 sends |0> to -i|1> per qubit
    basis0 = np.zeros(2, dtype=np.complex128)
    basis0[0] = 1.0
    out = apply_mixer(basis0, math.pi / 2)
    np.testing.assert_allclose(out, [0.0, -1.0j], atol=1e-15)


def test_mixer_uniform_fixed_point():
    st = initial_state(4)
    out = apply_mixer(st, 0.9)
    # uniform state is the +1 eigenvector of every X, so only a global phase
    np.testing.assert_allclose(np.abs(out), np.abs(st), atol=1e-14)
    phase = out[0] / st[0]
    np.testing.assert_allclose(out, st * phase, atol=1e-14)


def test_mixer_three_qubit_corner():
    # |000> at beta=pi/2 -> (-i)^3 |111> = i|111>
    st = np.zeros(8, dtype=np.complex128)
    st[0] = 1.0
    out = apply_mixer(st, math.pi / 2)
    want = np.zeros(8, dtype=np.complex128)
    want[7] = 1.0j
    np.testing.assert_allclose(out, want, atol=1e-14)


def test_mixer_does_not_mutate_input():
    st = initial_state(3)
    before = st.copy()
    apply_mixer(st, 1.1)
    np.testing.assert_array_equal(st, before)


def test_run_circuit_preserves_norm():
    rng = np.random.default_rng(7)
    for _ in range(10):
        r = int(rng.integers(1, 9))
        diag = rng.normal(size=1 << r) * 5
        p = int(rng.integers(1, 4))
        params = QaoaParams(
            gammas=tuple(rng.uniform(0, 2 * math.pi, p)),
            betas=tuple(rng.uniform(0, math.pi, p)),
        )
        st = run_circuit(diag, params)
        assert abs(np.linalg.norm(st) - 1.0) < 1e-12


def test_run_circuit_zero_layers_is_uniform():
    diag = np.arange(16, dtype=np.float64)
    st = run_circuit(diag, QaoaParams(gammas=(), betas=()))
    np.testing.assert_allclose(st, initial_state(4), atol=1e-15)


def test_expectation_uniform_is_mean_and_basis_is_value():
    rng = np.random.default_rng(9)
    diag = rng.normal(size=32)
    assert expectation(initial_state(5), diag) == pytest.approx(diag.mean(), abs=1e-12)
    basis = np.zeros(32, dtype=np.complex128)
    basis[13] = 1.0
    assert expectation(basis, diag) == pytest.approx(diag[13], abs=1e-15)
    with pytest.raises(LengthMismatch):
        expectation(initial_state(4), diag)


def test_optimize_single_qubit_reaches_ground():
    # one qubit, diag [0, -1]: a single layer can concentrate on |1>
    diag = np.array([0.0, -1.0])
    params, value = optimize_params(diag, p=1, config=OptimizerConfig(seed=4))
    assert value <= -0.99
    assert params.p == 1


def test_optimize_constant_diag_is_flat():
    diag = np.full(8, 2.5)
    _, value = optimize_params(diag, p=1, config=OptimizerConfig(restarts=2, max_evals=60))
    assert value == pytest.approx(2.5, abs=1e-9)


def test_optimize_deterministic_given_seed():
    rng = np.random.default_rng(21)
    diag = rng.normal(size=16)
    cfg = OptimizerConfig(restarts=3, max_evals=120, seed=5)
    a = optimize_params(diag, p=2, config=cfg)
    b = optimize_params(diag, p=2, config=cfg)
    assert a == b


def test_optimize_restarts_substreams_are_stable():
    """Restart k's outcome does not depend on how many restarts follow it,
    so adding restarts can only improve the selected value."""
    rng = np.random.default_rng(22)
    diag = rng.normal(size=16)
    few = optimize_restarts(diag, p=1, config=OptimizerConfig(restarts=2, max_evals=80, seed=9))
    many = optimize_restarts(diag, p=1, config=OptimizerConfig(restarts=5, max_evals=80, seed=9))
    assert len(few) == 2 and len(many) == 5
    assert many[:2] == few
    best_few = min(v for _, v in few)
    best_many = min(v for _, v in many)
    assert best_many <= best_few + 1e-15


def test_optimize_rejects_bad_config():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(method="bfgs")
    with pytest.raises(ValueError):
        optimize_params(np.zeros(4), p=0)


def _triangle():
    return RegulatoryNetwork.from_edges("tri", [
        ("a", "b", A), ("b", "c", A), ("c", "a", A),
    ])


def test_decode_feasible_basis_state():
    net = _triangle()
    motif = builtin_motifs()["cascade"]
    diag = objective_table(assemble_objective(net, motif), 3)
    basis = np.zeros(8, dtype=np.complex128)
    basis[0b111] = 1.0
    res = sample_and_decode(basis, diag, net, motif, shots=16, seed=1)
    assert res.edge_ids == (0, 1, 2)
    assert res.motif_count == 1
    assert res.repaired is False
    assert res.value == pytest.approx(-3.0)
    assert res.source_sample == 0b111 and res.source_value == res.value


def test_decode_repairs_infeasible_sample():
    # two FFLs sharing a node: selecting everything is infeasible (overlap),
    # repair keeps one full FFL
    net = RegulatoryNetwork.from_edges("t", [
        ("a", "b", A), ("a", "c", A), ("b", "c", A),
        ("c", "d", A), ("c", "e", A), ("d", "e", A),
    ])
    motif = builtin_motifs()["ffl"]
    diag = objective_table(assemble_objective(net, motif), 6)
    basis = np.zeros(64, dtype=np.complex128)
    basis[0b111111] = 1.0
    res = sample_and_decode(basis, diag, net, motif, shots=8, seed=0)
    assert res.repaired is True
    assert res.motif_count == 1
    assert len(res.edge_ids) == 3
    assert res.source_sample == 0b111111


def test_decode_empty_state_yields_empty_selection():
    net = _triangle()
    motif = builtin_motifs()["cascade"]
    diag = objective_table(assemble_objective(net, motif), 3)
    basis = np.zeros(8, dtype=np.complex128)
    basis[0] = 1.0
    res = sample_and_decode(basis, diag, net, motif, shots=4, seed=0)
    assert res.edge_ids == ()
    assert res.motif_count == 0
    assert res.value == 0.0


def test_decode_deterministic_given_seed():
    net = _triangle()
    motif = builtin_motifs()["cascade"]
    diag = objective_table(assemble_objective(net, motif), 3)
    params, _ = optimize_params(diag, p=2, config=OptimizerConfig(seed=3))
    state = run_circuit(diag, params)
    a = sample_and_decode(state, diag, net, motif, shots=256, seed=7)
    b = sample_and_decode(state, diag, net, motif, shots=256, seed=7)
    assert a == b
    assert a.motif_count == 1  # planted triangle is recoverable here


def test_decode_validates_shapes():
    net = _triangle()
    motif = builtin_motifs()["cascade"]
    diag = objective_table(assemble_objective(net, motif), 3)
    with pytest.raises(LengthMismatch):
        sample_and_decode(initial_state(2), diag[:4], net, motif)
    with pytest.raises(ValueError):
        sample_and_decode(initial_state(3), diag, net, motif, shots=0)
