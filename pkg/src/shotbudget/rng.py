"""Deterministic splitmix64 streams for the Monte Carlo validators.

The generator is splitmix64 (Steele et al.'s SplittableRandom finalizer,
as published by Vigna): output n of the stream over `seed` is

    mix64(seed + (n + 1) * 0x9E3779B97F4A7C15)  mod 2^64

with mix64 the xor-shift-multiply avalanche below.  Reference outputs for
seed 0 are e220a8397b1dcdaf, 6e789e6aa1b965f4, 06c45d188009454f,
f88bb8a8724c81ec; tests pin them.

Trial substreams: trial i draws from the splitmix64 stream whose seed is
output i of the master stream over the configured seed.  Draw j of trial
i is therefore a pure function of (seed, i, j), so results never depend
on evaluation order or chunking.  Uniform doubles take the top 53 bits:
(x >> 11) * 2^-53, giving values in [0, 1).

Everything here is exact 64-bit integer arithmetic; the numpy paths wrap
on uint64 overflow exactly like the scalar definition (tests compare
them bit for bit).
"""

from __future__ import annotations

import numpy as np

__all__ = ["GAMMA", "MASK64", "mix64", "stream_output", "sub_seed", "TrialStream"]

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1
_U53 = 2.0**-53


def mix64(z: int) -> int:
    """Scalar splitmix64 finalizer on a 64-bit integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_output(seed: int, index: int) -> int:
    """Output `index` (0-based) of the splitmix64 stream over `seed`."""
    return mix64((seed + (index + 1) * GAMMA) & MASK64)


def sub_seed(seed: int, trial: int) -> int:
    """Seed of the substream assigned to one trial."""
    return stream_output(seed, trial)


def _mix64_vec(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


def sub_seeds(seed: int, start: int, count: int) -> np.ndarray:
    """Substream seeds for trials start .. start+count-1 as uint64."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        states = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
    return _mix64_vec(states)


def uniform_block(trial_seeds: np.ndarray, start: int, count: int) -> np.ndarray:
    """Uniforms start .. start+count-1 for each trial seed, shape (trials, count)."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        states = trial_seeds[:, None] + idx[None, :] * np.uint64(GAMMA)
    return (_mix64_vec(states) >> np.uint64(11)).astype(np.float64) * _U53


class TrialStream:
    """Sequential view of one trial's substream.

    Hands out uniforms in stream order while tracking the position, so a
    consumer that draws variable-sized batches (the multinomial sampler)
    stays bit-compatible with any vectorized consumer of the same trial.
    """

    def __init__(self, seed: int, trial: int):
        self._seed = np.array([sub_seed(seed, trial)], dtype=np.uint64)
        self._position = 0

    def uniforms(self, count: int) -> np.ndarray:
        block = uniform_block(self._seed, self._position, count)[0]
        self._position += count
        return block
