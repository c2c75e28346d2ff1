"""Named deterministic random streams.

Every randomized routine draws from ``stream(seed, name)`` so results
depend only on the seed and the stream name, never on call order across
modules or on worker count.
"""
from __future__ import annotations

import hashlib
import random


def stream(seed: int, name: str) -> random.Random:
    digest = hashlib.sha256(f"{int(seed)}:{name}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
