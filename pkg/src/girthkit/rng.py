"""Deterministic random-stream derivation.

One master seed feeds every randomized component. Each consumer asks for a
stream by a stable key (a purpose tag plus whatever integer indices identify
it, e.g. ``("pool", j, k)`` or ``("pick", u, j, k)``), and gets a generator
whose output depends only on the master seed and that key. Two consequences
we rely on:

* reordering or parallelizing consumers cannot change any stream;
* re-running with the same seed reproduces every sample exactly.

Keys map to ``SeedSequence`` spawn keys; strings are folded to uint32 via
CRC-32 so the mapping is stable across platforms and runs.
"""

from __future__ import annotations

import zlib

import numpy as np


def _key_words(key: tuple) -> tuple[int, ...]:
    words: list[int] = []
    for part in key:
        if isinstance(part, str):
            words.append(zlib.crc32(part.encode("utf-8")))
        elif isinstance(part, (int, np.integer)):
            v = int(part)
            if v < 0:
                raise ValueError(f"stream key ints must be >= 0, got {v}")
            # split into uint32 words, low first
            while True:
                words.append(v & 0xFFFFFFFF)
                v >>= 32
                if v == 0:
                    break
        else:
            raise TypeError(f"unsupported stream key part: {part!r}")
    return tuple(words)


def stream(master_seed: int, *key) -> np.random.Generator:
    """Return the generator for ``key`` under ``master_seed``."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=_key_words(key))
    return np.random.Generator(np.random.PCG64(ss))


def fresh_seed() -> int:
    """Draw a master seed from OS entropy (for CLI runs without --seed)."""
    return int(np.random.SeedSequence().entropy % (2**63))
