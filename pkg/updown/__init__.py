"""Exact least up/down closures of set families over the Boolean lattice."""

from .family import (
    Family,
    FamilyFormatError,
    GroundSizeMismatchError,
    InvalidMaskError,
    NotConvexError,
    TooLargeError,
    conjugate,
    format_family,
    is_convex,
    parse_family,
    updown_closure,
    updown_size,
)
from .models import export, layout, verification
from .oracle import OracleResult, SearchMode, brute_min_updown, convex_updown_profile
from .phi import (
    DyadicRational,
    MethodDisagreementError,
    OutOfRangeError,
    PhiTable,
    delta,
    phi_fast,
    phi_recursive,
    phi_table,
)
from .shifting import ShiftPair, is_strongly_shifted, shift, strongly_shift
from .suite import run_suite
from .witness import Chain, canonical_chain, verify_chain

__all__ = [
    "Chain",
    "DyadicRational",
    "Family",
    "FamilyFormatError",
    "GroundSizeMismatchError",
    "InvalidMaskError",
    "MethodDisagreementError",
    "NotConvexError",
    "OracleResult",
    "OutOfRangeError",
    "PhiTable",
    "SearchMode",
    "ShiftPair",
    "TooLargeError",
    "brute_min_updown",
    "canonical_chain",
    "conjugate",
    "convex_updown_profile",
    "delta",
    "export",
    "format_family",
    "is_convex",
    "is_strongly_shifted",
    "layout",
    "parse_family",
    "phi_fast",
    "phi_recursive",
    "phi_table",
    "run_suite",
    "shift",
    "strongly_shift",
    "updown_closure",
    "updown_size",
    "verification",
]
