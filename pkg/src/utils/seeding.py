from __future__ import annotations

import zlib

import numpy as np


def stream_id(name: str) -> int:
    """Stable integer id for a named stream (Python's hash() is salted per process)."""
    return zlib.crc32(name.encode("utf-8"))


def substream(seed: int, stream: str, index: int) -> np.random.Generator:
    """Independent generator for task `index` of `stream`; identical under any schedule."""
    return np.random.default_rng([int(seed), stream_id(stream), int(index)])
