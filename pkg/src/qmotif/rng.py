"""Counter-based random streams.

Every stochastic stage draws from its own keyed Philox stream so that, for a
fixed top-level seed, changing one stage (say, shot count) never perturbs the
draws of another. Keys are (seed, stage<<32 | index), with index used for
per-part or per-replicate substreams.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

STREAM_OPTIMIZER = 1
STREAM_SAMPLER = 2
STREAM_SYNTH = 3
STREAM_SHUFFLE = 4


def stream(seed: int, stream_id: int, index: int = 0) -> np.random.Generator:
    if not 0 <= index < (1 << 32):
        raise ValueError(f"stream index {index} out of range")
    key = np.array(
        [seed & MASK64, ((stream_id & 0xFFFFFFFF) << 32) | (index & 0xFFFFFFFF)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))
