"""Deterministic seed derivation.

All randomness in the package flows from a single master seed through
named streams, so adding or reordering one randomized subsystem never
perturbs another.
"""

from __future__ import annotations

import hashlib


def subsystem_seed(master: int, name: str) -> int:
    """A 64-bit seed for the named stream, stable across platforms."""
    digest = hashlib.sha256(f"{name}\x1f{master}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
