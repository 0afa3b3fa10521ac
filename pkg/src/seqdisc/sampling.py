"""Reproducible per-trial uniform draws.

All Monte Carlo code in this package draws from a counter-based Philox
stream keyed by the user seed.  Each trial owns a fixed window of the
stream: trial i uses counter blocks [i*B, (i+1)*B) where B is the number of
128-bit blocks needed for its draws (Philox emits 4 doubles per block).
Because the window depends only on the trial index, any chunking of a run
produces bit-identical draws, and results are reproducible across runs and
machines for a given seed.
"""

from __future__ import annotations

import numpy as np

# doubles produced per 128-bit Philox counter increment
_BLOCK = 4


def blocks_per_trial(draws_per_trial: int) -> int:
    return -(-draws_per_trial // _BLOCK)


def trial_uniforms(seed: int, n_trials: int, draws_per_trial: int, start_trial: int = 0) -> np.ndarray:
    """Uniform draws for trials [start_trial, start_trial + n_trials).

    Returns an (n_trials, draws_per_trial) array in [0, 1).  Column j is
    draw j of each trial; the values do not depend on how a run is split
    into chunks.
    """
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    if n_trials < 0 or start_trial < 0:
        raise ValueError("trial counts must be nonnegative")
    if draws_per_trial < 1:
        raise ValueError(f"draws_per_trial must be positive, got {draws_per_trial}")
    blocks = blocks_per_trial(draws_per_trial)
    bitgen = np.random.Philox(key=seed)
    bitgen.advance(start_trial * blocks)
    raw = np.random.Generator(bitgen).random((n_trials, blocks * _BLOCK))
    return np.ascontiguousarray(raw[:, :draws_per_trial])


def chunk_ranges(n_trials: int, chunk_size: int = 1 << 18):
    """Yield (start, count) pairs covering range(n_trials) in chunks."""
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    start = 0
    while start < n_trials:
        count = min(chunk_size, n_trials - start)
        yield start, count
        start += count
