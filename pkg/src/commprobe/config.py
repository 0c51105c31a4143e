"""Work caps and environment-variable overrides."""
from __future__ import annotations

import os

# Hard defaults, chosen for desk-scale groups (|G| up to a few thousand).
DEFAULT_MAX_GROUP_ORDER = 20000
DEFAULT_NORMAL_SUBGROUP_ORDER_CAP = 2000
DEFAULT_WORD_TUPLE_CAP = 10**8
FULL_ASSOCIATIVITY_LIMIT = 512
SAMPLED_ASSOCIATIVITY_FACTOR = 10


def max_group_order() -> int:
    """Element cap for group materialization (env ``COMMPROBE_MAX_ORDER``)."""
    raw = os.environ.get("COMMPROBE_MAX_ORDER", "")
    if raw.strip():
        value = int(raw)
        if value < 1:
            raise ValueError(f"COMMPROBE_MAX_ORDER must be positive, got {value}")
        return value
    return DEFAULT_MAX_GROUP_ORDER


def normal_subgroup_order_cap() -> int:
    """Largest |G| accepted by the normal-subgroup lattice walk."""
    raw = os.environ.get("COMMPROBE_NORMAL_CAP", "")
    if raw.strip():
        value = int(raw)
        if value < 1:
            raise ValueError(f"COMMPROBE_NORMAL_CAP must be positive, got {value}")
        return value
    return DEFAULT_NORMAL_SUBGROUP_ORDER_CAP


def word_tuple_cap() -> int:
    """Largest |G|**arity accepted for exhaustive word evaluation."""
    raw = os.environ.get("COMMPROBE_WORD_CAP", "")
    if raw.strip():
        value = int(raw)
        if value < 1:
            raise ValueError(f"COMMPROBE_WORD_CAP must be positive, got {value}")
        return value
    return DEFAULT_WORD_TUPLE_CAP
