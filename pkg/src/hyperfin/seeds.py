"""Deterministic seed derivation.

Every random stream in the package is obtained from one root seed by hashing
the root together with a path of names, e.g. ``derive(root, "peel", "G")``.
The split is order-sensitive and platform-independent (blake2b).
"""

from __future__ import annotations

import hashlib
import random

MASK64 = (1 << 64) - 1


def derive(root: int, *path) -> int:
    h = hashlib.blake2b(digest_size=8)
    h.update(str(int(root) & MASK64).encode())
    for p in path:
        h.update(b"/")
        h.update(str(p).encode())
    return int.from_bytes(h.digest(), "big")


def rng(root: int, *path) -> random.Random:
    return random.Random(derive(root, *path))


def bits(root: int, key, nbits: int) -> str:
    """``nbits`` pseudo-random bits for ``key`` as a '0'/'1' string.

    Prefix-coupled: ``bits(r, k, s)`` is a prefix of ``bits(r, k, t)`` for s <= t.
    """
    out = []
    block = 0
    while len(out) * 512 < nbits:
        h = hashlib.blake2b(f"{int(root) & MASK64}/{key}/{block}".encode(), digest_size=64)
        out.append(format(int.from_bytes(h.digest(), "big"), "0512b"))
        block += 1
    return "".join(out)[:nbits]
