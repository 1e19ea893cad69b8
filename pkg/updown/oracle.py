"""Direct search for the least up/down closure of an m-family.

Nothing here consults the formulas in `updown.phi`; the searches evaluate the defining
minimum, so they can certify those formulas on small ground sets.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum
from functools import cache
from itertools import combinations

import numpy as np

from .const import (
    BRANCH_AND_BOUND_ORACLE_MAX_N,
    CONVEX_ORACLE_MAX_N,
    EXHAUSTIVE_ORACLE_MAX_N,
    capped,
)
from .family import Family, check_ground_size
from .phi import OutOfRangeError

_LOGGER = logging.getLogger(__name__)

# (closure size, family as a bitset over masks); smaller is better.
type Candidate = tuple[int, int]


class SearchMode(StrEnum):
    EXHAUSTIVE = "exhaustive"
    BRANCH_AND_BOUND = "branch-and-bound"


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Family


def brute_min_updown(
    n: int, m: int, mode: SearchMode | None = None, workers: int = 1
) -> OracleResult:
    """Least |F-updown| over all m-families, with the colex-first family attaining it.

    The search is split by the smallest member of the family. With `workers` > 1 the parts
    run in a process pool; the result does not depend on the number of workers.
    """
    if mode is None:
        mode = (
            SearchMode.EXHAUSTIVE if n <= EXHAUSTIVE_ORACLE_MAX_N else SearchMode.BRANCH_AND_BOUND
        )
    limit = EXHAUSTIVE_ORACLE_MAX_N if mode == SearchMode.EXHAUSTIVE else (
        BRANCH_AND_BOUND_ORACLE_MAX_N
    )
    check_ground_size(n, capped(limit), f"The {mode} oracle")
    _check_m(n, m)
    if m == 0:
        return OracleResult(value=0, witness=Family.empty(n))

    size = 1 << n
    firsts = range(size - m + 1)
    best: Candidate = (size + 1, 0)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_search_from, n, m, first, mode, best) for first in firsts]
            best = min(future.result() for future in futures)
    else:
        for first in firsts:
            best = min(best, _search_from(n, m, first, mode, best))

    value, bits = best
    _LOGGER.debug(f"Oracle ({mode}) found {value} for n={n}, m={m}.")
    return OracleResult(value=value, witness=_family_from_bits(n, bits))


def convex_updown_profile(n: int) -> tuple[int, ...]:
    """Least |F-updown| over convex m-families, for every m in 0..2**n.

    A family is convex exactly when it is D & U for a down-set D and an up-set U, and the
    closure of D & U is contained in D | U, so it suffices to minimize |D | U| over pairs.
    """
    check_ground_size(n, capped(CONVEX_ORACLE_MAX_N), "The convex oracle")
    return _convex_profile(n)


def brute_min_updown_convex(n: int, m: int) -> int:
    profile = convex_updown_profile(n)
    _check_m(n, m)
    return profile[m]


def brute_cross_sperner_max(n: int) -> int:
    """Largest m + (2**n - least closure) over m >= 1 where the partner term is positive."""
    if not 2 <= n <= capped(CONVEX_ORACLE_MAX_N):  # noqa: PLR2004
        msg = f"brute_cross_sperner_max supports 2 <= n <= 5, got n={n}"
        raise OutOfRangeError(msg)
    size = 1 << n
    if n <= capped(EXHAUSTIVE_ORACLE_MAX_N):
        minima = [brute_min_updown(n, m).value for m in range(size + 1)]
    else:
        minima = list(convex_updown_profile(n))
    totals = [m + size - minima[m] for m in range(1, size + 1) if size - minima[m] >= 1]
    return max(totals)


def extremal_configs_m1(n: int) -> list[Family]:
    """All one-set families whose closure is as small as possible."""
    if not 2 <= n <= capped(BRANCH_AND_BOUND_ORACLE_MAX_N) or n == 3:  # noqa: PLR2004
        msg = f"extremal_configs_m1 supports n in {{2, 4, 5}}, got n={n}"
        raise OutOfRangeError(msg)
    sizes = [closure.bit_count() for closure in _single_closures(n)]
    least = min(sizes)
    return [Family.from_masks(n, [mask]) for mask, size in enumerate(sizes) if size == least]


def _search_from(
    n: int, m: int, first: int, mode: SearchMode, incumbent: Candidate
) -> Candidate:
    """Best candidate among m-families whose smallest member is `first`."""
    closures = _single_closures(n)
    size = 1 << n
    if mode == SearchMode.EXHAUSTIVE:
        best = incumbent
        for rest in combinations(range(first + 1, size), m - 1):
            closure = closures[first]
            bits = 1 << first
            for mask in rest:
                closure |= closures[mask]
                bits |= 1 << mask
            best = min(best, (closure.bit_count(), bits))
        return best

    best_value, best_bits = incumbent

    def descend(start: int, count: int, closure: int, bits: int) -> None:
        nonlocal best_value, best_bits
        remaining = m - count
        # Each further member is either already covered (a mask >= start) or adds itself.
        free = (closure >> start).bit_count()
        bound = closure.bit_count() + max(0, remaining - free)
        if bound > best_value:
            return
        # Ties go to the smallest bitset, and the lowest completion is the smallest one here.
        lowest = bits | (((1 << remaining) - 1) << start)
        if bound == best_value and lowest >= best_bits:
            return
        if remaining == 0:
            best_value, best_bits = bound, bits
            return
        for mask in range(start, size - remaining + 1):
            descend(mask + 1, count + 1, closure | closures[mask], bits | 1 << mask)

    descend(first + 1, 1, closures[first], 1 << first)
    return best_value, best_bits


@cache
def _single_closures(n: int) -> tuple[int, ...]:
    """Closure of each single set, as a bitset over the 2**n masks."""
    size = 1 << n
    closures = []
    for mask in range(size):
        closure = 0
        for other in range(size):
            if other & mask in (mask, other):
                closure |= 1 << other
        closures.append(closure)
    return tuple(closures)


@cache
def _down_sets(n: int) -> tuple[int, ...]:
    """Every down-set of 2^[n] as a bitset over the 2**n masks."""
    if n == 0:
        return (0, 1)
    smaller = _down_sets(n - 1)
    half = 1 << (n - 1)
    # D splits into the sets without n and the sets with n removed; the second part is a
    # down-set contained in the first.
    return tuple(
        without | (with_top << half)
        for without in smaller
        for with_top in smaller
        if with_top & ~without == 0
    )


@cache
def _convex_profile(n: int) -> tuple[int, ...]:
    size = 1 << n
    downs = np.array(_down_sets(n), dtype=np.uint64)
    ups = np.uint64((1 << size) - 1) ^ downs
    down_sizes = np.bitwise_count(downs).astype(np.int64)
    up_sizes = np.bitwise_count(ups).astype(np.int64)
    best = np.full(size + 1, size + 1, dtype=np.int64)
    for down, down_size in zip(downs, down_sizes, strict=True):
        common = np.bitwise_count(down & ups).astype(np.int64)
        np.minimum.at(best, common, down_size + up_sizes - common)
    _LOGGER.debug(f"Convex oracle checked {len(downs) ** 2} down-set/up-set pairs for n={n}.")
    return tuple(int(value) for value in best)


def _family_from_bits(n: int, bits: int) -> Family:
    return Family.from_masks(n, (mask for mask in range(1 << n) if bits >> mask & 1))


def _check_m(n: int, m: int) -> None:
    if not 0 <= m <= 1 << n:
        msg = f"m must lie in 0..2^{n}, got m={m}"
        raise OutOfRangeError(msg)
