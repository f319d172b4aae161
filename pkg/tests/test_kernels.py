from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from qmotif._kernels import BACKEND, IMPLEMENTATIONS


def _random_terms(rng, r, nterms):
    masks = rng.integers(1, 1 << r, size=nterms).astype(np.uint64)
    coeffs = rng.normal(size=nterms)
    return masks, coeffs


def test_backend_is_numba_here():
    # the suite runs with numba installed and the flag unset
    assert BACKEND == "numba"
    assert IMPLEMENTATIONS["numba"]["table"] is not None


def test_table_backends_agree():
    rng = np.random.default_rng(11)
    for _ in range(20):
        r = int(rng.integers(1, 10))
        masks, coeffs = _random_terms(rng, r, int(rng.integers(1, 30)))
        constant = float(rng.normal())
        ref = IMPLEMENTATIONS["numpy"]["table"](masks, coeffs, constant, r)
        got = IMPLEMENTATIONS["numba"]["table"](masks, coeffs, constant, r)
        np.testing.assert_allclose(got, ref, rtol=0, atol=1e-12)


def test_mixer_backends_agree():
    rng = np.random.default_rng(12)
    for _ in range(20):
        r = int(rng.integers(1, 11))
        amps = rng.normal(size=1 << r) + 1j * rng.normal(size=1 << r)
        amps /= np.linalg.norm(amps)
        beta = float(rng.uniform(0, np.pi))
        ref = IMPLEMENTATIONS["numpy"]["mixer"](
            amps.copy(), np.cos(beta), np.sin(beta), r)
        got = IMPLEMENTATIONS["numba"]["mixer"](
            amps.copy(), np.cos(beta), np.sin(beta), r)
        np.testing.assert_allclose(got, ref, rtol=0, atol=1e-12)


def test_mixer_kernels_mutate_in_place():
    for name in ("numpy", "numba"):
        amps = np.full(4, 0.5, dtype=np.complex128)
        out = IMPLEMENTATIONS[name]["mixer"](amps, 1.0, 0.0, 2)
        np.testing.assert_allclose(amps, out)


@pytest.mark.parametrize("flag,expect", [("0", "numpy"), ("off", "numpy"), ("1", "numba")])
def test_env_flag_selects_backend(flag, expect):
    env = dict(os.environ, QMOTIF_NUMBA=flag)
    code = "from qmotif._kernels import BACKEND; print(BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expect
