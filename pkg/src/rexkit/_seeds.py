"""Deterministic seed derivation and bit-string sampling helpers."""

from __future__ import annotations

import hashlib
import random


def derive_seed(master: int, *parts: object) -> int:
    """Derive a child seed from a master seed and a label path.

    Stable across processes and platforms (no dependence on PYTHONHASHSEED),
    so seeded experiments reproduce bit-identically.
    """
    text = repr((int(master),) + tuple(str(p) for p in parts))
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def random_bits(rng: random.Random, length: int) -> str:
    """Uniform 0/1 string of the given length drawn from ``rng``."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    if length == 0:
        return ""
    return format(rng.getrandbits(length), f"0{length}b")
