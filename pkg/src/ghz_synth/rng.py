"""Seeding policy shared by the whole package.

All randomness flows through numpy's PCG64 bit generator. Derived seeds are
computed by hashing a label tuple with BLAKE2b, so adding new consumers never
perturbs the streams of existing ones.
"""

from __future__ import annotations

import hashlib

import numpy as np

MAX_SEED = 2**64 - 1


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit unsigned seed."""
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(master: int, *labels: object) -> int:
    """Derive an independent 64-bit seed from a master seed and a label tuple.

    The labels are serialized into a canonical string, so the derivation is
    stable across runs, processes, and platforms.
    """
    text = ":".join([str(int(master))] + [str(lab) for lab in labels])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")
