"""Deterministic random stream derivation.

Every stochastic routine draws from a numpy Generator derived from the run
seed plus an integer key path, e.g. stream(seed, gen) for generation `gen`.
Streams with different key paths are statistically independent, and any part
of a run can be re-derived without replaying the draws that preceded it.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return the PCG64 generator addressed by (seed, *key)."""
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64,
                                spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(ss)
