"""Deterministic RNG derivation.

Every randomized routine takes a master seed and derives one independent
stream per (label, index) so results never depend on call order or on how
many draws an earlier trial consumed.
"""

import hashlib
import os
import random

from .errors import ValidationError

DEFAULT_SEED = 1729
SEED_ENV_VAR = "HYPERWALK_SEED"


def resolve_seed(explicit=None) -> int:
    """Explicit seed if given, else the environment override, else the default."""
    if explicit is not None:
        return int(explicit)
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def derive_rng(seed: int, *stream) -> random.Random:
    """Independent generator for the given seed and stream labels."""
    digest = hashlib.sha256(repr((int(seed),) + stream).encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))
