# src/synthgen/rng.py

"""
Единый источник случайности.

Алгоритм фиксирован: PCG64 (64-битный), поток выделяется через
SeedSequence(seed, spawn_key=(stream_id,)). Один seed запуска даёт
независимые потоки для генераторов, инициализации и минибатчей.
"""

from __future__ import annotations

import zlib
from typing import Union

import numpy as np

from ..errors import ConfigError

StreamId = Union[int, str]


def stream_key(stream: StreamId) -> int:
    if isinstance(stream, int):
        if stream < 0:
            raise ConfigError("stream id must be non-negative", {"stream": stream})
        return stream
    # crc32 стабилен между платформами и запусками (в отличие от hash())
    return zlib.crc32(stream.encode("utf-8"))


def make_rng(seed: int, stream: StreamId = 0) -> np.random.Generator:
    if seed < 0:
        raise ConfigError("seed must be a non-negative integer", {"seed": seed})
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(stream_key(stream),))
    return np.random.Generator(np.random.PCG64(sequence))
