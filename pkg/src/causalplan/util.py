"""Small shared helpers."""
from __future__ import annotations

import hashlib
import random


def derive_seed(*parts) -> int:
    """Stable child seed from arbitrary labeled parts (platform-independent)."""
    text = "|".join(repr(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def derive_rng(*parts) -> random.Random:
    return random.Random(derive_seed(*parts))
