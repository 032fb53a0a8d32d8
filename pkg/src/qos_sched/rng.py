"""Seedable, portable random streams.

Everything random in this package flows through ``random.Random`` (Mersenne
Twister), whose sequences are identical for a given seed on every platform.
Independent streams are derived from a master seed plus a short label by
hashing, so consuming draws from one stream never perturbs another. The rule:
stream(seed, label) is seeded with the first 8 bytes of
sha256("<seed>:<label>").
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(seed: int, label: str) -> random.Random:
    """A fresh generator for the (seed, label) pair."""
    return random.Random(derive_seed(seed, label))
