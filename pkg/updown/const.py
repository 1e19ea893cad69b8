"""Common constants and caps."""

import logging
import os

_LOGGER = logging.getLogger(__name__)

# Largest ground size any Family may have; the member vector is 2**MAX_N bytes.
MAX_N = 24

# Per-operation caps. UPDOWN_MAX_N can only lower them.
TABLE_MAX_N = 20
CHAIN_MAX_N = 12
STRONG_SHIFT_MAX_N = 14
EXHAUSTIVE_ORACLE_MAX_N = 4
BRANCH_AND_BOUND_ORACLE_MAX_N = 5
CONVEX_ORACLE_MAX_N = 5
FERRERS_TSV_MAX_N = 10
FERRERS_SVG_MAX_N = 8

MAX_N_ENV = "UPDOWN_MAX_N"

DEFAULT_VERIFY_MAX_N = 19
DEFAULT_VERIFY_ORACLE_MAX = 4


def capped(limit: int) -> int:
    """Return `limit`, lowered to the value of UPDOWN_MAX_N when that is smaller."""
    raw = os.environ.get(MAX_N_ENV)
    if raw is None or raw.strip() == "":
        return limit
    try:
        override = int(raw)
    except ValueError:
        _LOGGER.warning(f"Ignoring non-integer {MAX_N_ENV}={raw!r}.")
        return limit
    if override < 0:
        _LOGGER.warning(f"Ignoring negative {MAX_N_ENV}={override}.")
        return limit
    return min(limit, override)
