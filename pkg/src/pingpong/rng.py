"""SplitMix64 counter-based streams.

Word ``i`` (0-based) of the stream keyed by ``seed`` is the ``i+1``-th output
of SplitMix64 started from state ``seed``:

    mix64(seed + (i + 1) * 0x9E3779B97F4A7C15  mod 2**64)

Sub-keys are derived as ``derive(seed, k) = mix64(seed ^ mix64(k + GOLDEN))``.
Everything is integer arithmetic modulo 2**64, so streams are bit-identical
on every platform.
"""

from __future__ import annotations

import numpy as np

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def derive(seed: int, *keys: int) -> int:
    for k in keys:
        seed = mix64((seed & MASK) ^ mix64(k + GOLDEN))
    return seed & MASK


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(_M1)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def words(seed: int, n: int) -> np.ndarray:
    """The first ``n`` words of the stream keyed by ``seed`` as uint64."""
    idx = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK) + idx * np.uint64(GOLDEN)
        return _mix64_array(z)


def bits(seed: int, n: int) -> np.ndarray:
    """Fair bits: the top bit of each stream word."""
    return (words(seed, n) >> np.uint64(63)).astype(np.uint8)


def permutation(seed: int, n: int) -> np.ndarray:
    """A permutation of ``range(n)`` from a stable argsort of stream words."""
    return np.argsort(words(seed, n), kind="stable")
