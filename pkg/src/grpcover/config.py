"""Default computational budgets."""

import os

DEFAULT_MAX_ORDER = 2048
DEFAULT_LATTICE_CAP = 200_000
DEFAULT_NODE_CAP = 10_000_000
DEFAULT_SIGMA_ORDER_BUDGET = 64
FULL_ASSOCIATIVITY_BOUND = 256


def max_order() -> int:
    """Order budget, overridable through GRPCOVER_MAX_ORDER."""
    raw = os.environ.get("GRPCOVER_MAX_ORDER")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            return DEFAULT_MAX_ORDER
        if value >= 1:
            return value
    return DEFAULT_MAX_ORDER
