"""Hot numeric kernels with numba acceleration and pure-numpy fallbacks.

Backend selection happens once at import: numba is used when importable and
the env flag QMOTIF_NUMBA is not "0"/"false"/"off". Both implementations are
kept importable so tests and benchmarks can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np


def _table_numpy(masks: np.ndarray, coeffs: np.ndarray, constant: float, r: int) -> np.ndarray:
    idx = np.arange(1 << r, dtype=np.uint64)
    out = np.full(1 << r, constant, dtype=np.float64)
    for m, c in zip(masks, coeffs):
        out[(idx & m) == m] += c
    return out


def _table_py(masks: np.ndarray, coeffs: np.ndarray, constant: float, r: int) -> np.ndarray:
    n = 1 << r
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        acc = constant
        for t in range(masks.shape[0]):
            if (np.uint64(i) & masks[t]) == masks[t]:
                acc += coeffs[t]
        out[i] = acc
    return out


def _mixer_numpy(amps: np.ndarray, cos_b: float, sin_b: float, r: int) -> np.ndarray:
    # qubit k lives on stride 2**k (bit k of the state index)
    js = -1j * sin_b
    for k in range(r):
        v = amps.reshape(-1, 2, 1 << k)
        a0 = v[:, 0, :].copy()
        a1 = v[:, 1, :]
        v[:, 0, :] = cos_b * a0 + js * a1
        v[:, 1, :] = cos_b * a1 + js * a0
    return amps


def _mixer_py(amps: np.ndarray, cos_b: float, sin_b: float, r: int) -> np.ndarray:
    n = amps.shape[0]
    for k in range(r):
        step = 1 << k
        base = 0
        while base < n:
            for j in range(base, base + step):
                a0 = amps[j]
                a1 = amps[j + step]
                amps[j] = cos_b * a0 - 1j * sin_b * a1
                amps[j + step] = cos_b * a1 - 1j * sin_b * a0
            base += step << 1
    return amps


def _want_numba() -> bool:
    flag = os.environ.get("QMOTIF_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off")


_table_numba = None
_mixer_numba = None
if _want_numba():
    try:
        import numba

        _table_numba = numba.njit(
            numba.float64[:](numba.uint64[:], numba.float64[:], numba.float64, numba.int64),
            cache=True,
        )(_table_py)
        _mixer_numba = numba.njit(
            numba.complex128[:](numba.complex128[:], numba.float64, numba.float64, numba.int64),
            cache=True,
        )(_mixer_py)
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass

if _table_numba is not None:
    BACKEND = "numba"
    objective_table_kernel = _table_numba
    mixer_kernel = _mixer_numba
else:
    BACKEND = "numpy"
    objective_table_kernel = _table_numpy
    mixer_kernel = _mixer_numpy

IMPLEMENTATIONS = {
    "numpy": {"table": _table_numpy, "mixer": _mixer_numpy},
    "numba": {"table": _table_numba, "mixer": _mixer_numba},
}
