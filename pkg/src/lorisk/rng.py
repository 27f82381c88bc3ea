"""Reproducible random streams.

Every random object in the project is a pure function of an (seed,
stream_id) pair. Streams are derived through numpy's SeedSequence, whose
output is stable across platforms, so reruns and worker pools of any size
produce identical bits. Stream ids are packed from (seed index, role) so
that concurrent sweep cells never share a stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Roles for independent random streams inside one logical seed.
ROLE_PRETRAINED = 0  # entries of the initial model
ROLE_SHIFT = 1       # ground-truth update factors
ROLE_FEATURES = 2    # training inputs
ROLE_NOISE = 3       # training label noise
ROLE_SOLVER = 4      # randomized solvers (ALS restarts)
ROLE_MC = 5          # Monte Carlo evaluation draws

_ROLE_BITS = 8
_SEED_BITS = 24


@dataclass(frozen=True)
class RngHandle:
    """Named, reproducible random stream.

    Identical (seed, stream_id) pairs reproduce the identical value
    sequence on every platform and in every process.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        return np.random.default_rng(ss)

    def child(self, index: int) -> "RngHandle":
        """Derived substream, independent of this one and of other children."""
        return RngHandle(seed=self.seed, stream_id=_mix(self.stream_id, index))


def _mix(stream_id: int, index: int) -> int:
    """Deterministic 64-bit mix of a stream id and a child index."""
    x = (stream_id * 0x9E3779B97F4A7C15 + index + 1) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 29
    return x


def stream_for(seed: int, seed_index: int, role: int) -> RngHandle:
    """Stream for one (logical seed, role) pair of a sweep.

    Grid position is deliberately absent from the key: the swept parameter
    (sample count, noise level, spectrum) is applied deterministically on
    top of the shared draws, so growing n extends a dataset instead of
    resampling it and sweep curves stay smooth.
    """
    if not 0 <= role < (1 << _ROLE_BITS):
        raise ValueError(f"role {role} out of range")
    if not 0 <= seed_index < (1 << _SEED_BITS):
        raise ValueError(f"seed index {seed_index} out of range")
    return RngHandle(seed=seed, stream_id=(seed_index << _ROLE_BITS) | role)
