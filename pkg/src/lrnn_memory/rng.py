"""Seeded, cross-platform reproducible random streams.

The experiment harness derives one independent stream per component from a
single master seed: ``stream(master_seed, label)`` hashes the label with
64-bit FNV-1a, mixes it into the seed, and expands the result into a
xoshiro256++ state through splitmix64.  All downstream sampling (uniforms,
normals, shuffles) is defined purely in terms of the raw 64-bit output
sequence, so a given (seed, label) pair yields bit-identical draws on every
platform and under both kernel backends.
"""

import math

import numpy as np

from . import kernels

_MASK64 = 0xFFFFFFFFFFFFFFFF

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash of a byte string."""
    h = FNV_OFFSET
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & _MASK64
    return h


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns (output, next_state)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31), state


class Xoshiro256pp:
    """xoshiro256++ stream seeded through splitmix64."""

    def __init__(self, seed: int):
        seed &= _MASK64
        state = []
        sm = seed
        for _ in range(4):
            out, sm = splitmix64(sm)
            state.append(out)
        if not any(state):  # all-zero state is a fixed point; unreachable in practice
            out, sm = splitmix64(sm)
            state[0] = out | 1
        self._state = np.array(state, dtype=np.uint64)

    def next_uint64(self) -> int:
        out = np.empty(1, dtype=np.uint64)
        kernels.xoshiro_fill(self._state, out)
        return int(out[0])

    def raw(self, n: int) -> np.ndarray:
        """Next ``n`` raw 64-bit outputs."""
        out = np.empty(n, dtype=np.uint64)
        kernels.xoshiro_fill(self._state, out)
        return out

    def uniforms(self, n: int) -> np.ndarray:
        """``n`` doubles uniform on [0, 1), 53-bit resolution."""
        return (self.raw(n) >> np.uint64(11)) * (2.0 ** -53)

    def uniform(self) -> float:
        return float(self.uniforms(1)[0])

    def normals(self, n: int) -> np.ndarray:
        """``n`` standard normals via Box-Muller on consecutive uniform pairs."""
        pairs = (n + 1) // 2
        raw = self.raw(2 * pairs)
        # (raw >> 11) + 1 over 2^53 lies in (0, 1]; log never sees zero
        u1 = ((raw[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * (2.0 ** -53)
        u2 = (raw[1::2] >> np.uint64(11)) * (2.0 ** -53)
        r = np.sqrt(-2.0 * np.log(u1))
        theta = (2.0 * math.pi) * u2
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(theta)
        out[1::2] = r * np.sin(theta)
        return out[:n]

    def permutation(self, n: int) -> np.ndarray:
        """Deterministic permutation of range(n) (argsort of uniform keys)."""
        return np.argsort(self.uniforms(n), kind="stable")


def stream(master_seed: int, label: str) -> Xoshiro256pp:
    """Independent stream for one component of one run."""
    return Xoshiro256pp((master_seed & _MASK64) ^ fnv1a64(label.encode("utf-8")))
