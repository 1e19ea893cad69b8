"""Witness families and the nested chain of convex witnesses F_0 < F_1 < ... < F_{2^n}."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache
from itertools import pairwise

import numpy as np

from .const import CHAIN_MAX_N, capped
from .family import (
    Family,
    GroundSizeMismatchError,
    NotConvexError,
    between_sets,
    check_ground_size,
    complement_family,
    conjugate,
    full_mask,
    is_convex,
    maximal_sets,
    minimal_sets,
    updown_size,
)
from .models.verification import AnchorCheck, AnchorKind, EntryCheck, VerificationReport
from .phi import OutOfRangeError, phi_fast, star_index

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Chain:
    n: int
    families: tuple[Family, ...]

    def __len__(self) -> int:
        return len(self.families)

    def __getitem__(self, m: int) -> Family:
        return self.families[m]

    def __iter__(self) -> Iterator[Family]:
        return iter(self.families)


def anchor_parameters(n: int) -> list[int]:
    """The values a in 0..n - 2 with a = n mod 2."""
    return list(range(n % 2, n - 1, 2))


def c_family(n: int, a: int) -> Family:
    """C_{n,a}: the sets A with [(n - a) / 2] <= A <= [(n + a) / 2]."""
    _check_anchor(n, a)
    low, high = full_mask((n - a) // 2), full_mask((n + a) // 2)
    masks = np.arange(1 << n)
    return Family(n, ((masks & low) == low) & ((masks & ~high) == 0))


def c_star_family(n: int, a: int) -> Family:
    """C*_{n,a}: sets meeting [(n - a) / 2] that miss part of {(n + a) / 2 + 1, ..., n}."""
    _check_anchor(n, a)
    low = full_mask((n - a) // 2)
    top = full_mask(n) ^ full_mask((n + a) // 2)
    masks = np.arange(1 << n)
    return Family(n, ((masks & low) != 0) & ((masks & top) != top))


def sandwich_lift(family: Family, n: int) -> Family:
    """Relabel a family over [n - 2] onto {2, ..., n - 1} and add element 1 to every member."""
    if family.n != n - 2:
        raise GroundSizeMismatchError(n - 2, family.n)
    if not is_convex(family):
        msg = "sandwich_lift needs a convex family"
        raise NotConvexError(msg)
    members = np.zeros(1 << n, dtype=np.bool_)
    members[(family.masks() << 1) | 1] = True
    return Family(n, members)


def join_product(first: Family, second: Family, k: int, n: int) -> Family:
    """{A | B : A in first, B in second}, with `second` relabeled onto {k + 1, ..., n}."""
    if first.n != k:
        raise GroundSizeMismatchError(k, first.n)
    if second.n != n - k:
        raise GroundSizeMismatchError(n - k, second.n)
    if full_mask(k) not in first:
        msg = f"[{k}] is not a member of the first family"
        raise PreconditionViolatedError(msg)
    if 0 not in second:
        msg = "the empty set is not a member of the second family"
        raise PreconditionViolatedError(msg)
    if not (is_convex(first) and is_convex(second)):
        msg = "both factors must be convex"
        raise PreconditionViolatedError(msg)
    masks = first.masks()[:, None] | (second.masks()[None, :] << k)
    members = np.zeros(1 << n, dtype=np.bool_)
    members[masks.ravel()] = True
    return Family(n, members)


def bottom_prefix(n: int, size: int) -> Family:
    """The first `size` subsets of [n] ordered by cardinality, then by mask.

    Such a family contains the empty set when nonempty and is convex.
    """
    check_ground_size(n)
    if not 0 <= size <= 1 << n:
        msg = f"prefix size must lie in 0..2^{n}, got {size}"
        raise OutOfRangeError(msg)
    masks = sorted(range(1 << n), key=lambda mask: (mask.bit_count(), mask))
    return Family.from_masks(n, masks[:size])


def top_prefix(n: int, size: int) -> Family:
    """Complements of `bottom_prefix`: a convex family containing [n]."""
    return complement_family(bottom_prefix(n, size))


def product_witness(n: int, c: int) -> Family:
    """A witness of size c**2 (even n) or 2 c**2 (odd n) built by `join_product`."""
    check_ground_size(n)
    k = n // 2
    limit = 1 << k
    if not 1 <= c <= limit:
        msg = f"product_witness({n}, c) needs 1 <= c <= {limit}, got c={c}"
        raise OutOfRangeError(msg)
    second_size = c if n % 2 == 0 else 2 * c
    return join_product(top_prefix(k, c), bottom_prefix(n - k, second_size), k, n)


def explicit_bound_family(n: int, m: int) -> Family:
    """An m-family whose closure has size 2**k + 2**(n - k) m - m, with k = (n + a) / 2.

    The value a is the least a = n mod 2 with m < 2**(a + 1).
    """
    check_ground_size(n)
    if not 0 <= m <= 1 << n:
        msg = f"m must lie in 0..2^{n}, got m={m}"
        raise OutOfRangeError(msg)
    if m == 0:
        return Family.empty(n)
    a = n % 2
    while m >= 1 << (a + 1):
        a += 2
    k = (n + a) // 2
    return join_product(top_prefix(k, m), Family.from_masks(n - k, [0]), k, n)


def is_witness(family: Family) -> bool:
    return updown_size(family) == phi_fast(family.n, len(family))


def convexify(family: Family) -> Family:
    """Make a family convex without growing its up/down closure.

    A set A between two members is swapped in for a maximal member above it until no such
    set is left. Each swap keeps the size and strictly shrinks the up-closure/down-closure
    intersection.
    """
    current = family
    while True:
        gaps = between_sets(current).masks()
        if gaps.size == 0:
            return current
        target = int(gaps[0])
        tops = maximal_sets(current).masks()
        top = int(tops[(tops & target) == target][0])
        current = current.without(top).with_mask(target)


def interpolate(lower: Family, upper: Family) -> list[Family]:
    """Convex families of every size strictly between two nested convex families.

    Sets of `upper` not in `lower` are deleted one at a time; maximal sets go first, then
    minimal ones, largest mask first. Families are returned by increasing size.
    """
    if lower.n != upper.n:
        raise GroundSizeMismatchError(lower.n, upper.n)
    if not lower.issubset(upper) or lower == upper:
        raise NotNestedError
    if not (is_convex(lower) and is_convex(upper)):
        msg = "interpolate needs convex end points"
        raise NotConvexError(msg)

    steps: list[Family] = []
    current = upper
    for _ in range(len(upper) - len(lower) - 1):
        current = current.without(_deletable(current, lower))
        steps.append(current)
    steps.reverse()
    return steps


def canonical_chain(n: int) -> Chain:
    check_ground_size(n, capped(CHAIN_MAX_N), "Canonical chain")
    return Chain(n=n, families=_chain_families(n))


def verify_chain(chain: Chain) -> VerificationReport:
    """Check sizes, nesting, convexity and witness values, plus the C and C* anchors."""
    n = chain.n
    families = chain.families
    entries = []
    for m, family in enumerate(families):
        nested = True
        if m + 1 < len(families):
            following = families[m + 1]
            nested = family.n == following.n and family.issubset(following) and (
                family != following
            )
        entries.append(
            EntryCheck(
                m=m,
                size=len(family),
                convex=is_convex(family),
                updown=updown_size(family),
                phi=phi_fast(n, len(family)),
                nested=nested,
            )
        )

    anchors = []
    complete = len(families) == (1 << n) + 1
    for a in anchor_parameters(n):
        index = 1 << a
        anchors.append(
            AnchorCheck(
                kind=AnchorKind.INTERVAL,
                a=a,
                index=index,
                ok=complete and families[index] == c_family(n, a),
            )
        )
        star = star_index(n, index)
        anchors.append(
            AnchorCheck(
                kind=AnchorKind.CONJUGATE,
                a=a,
                index=star,
                ok=complete and families[star] == c_star_family(n, a),
            )
        )
    report = VerificationReport(n=n, complete=complete, entries=entries, anchors=anchors)
    _LOGGER.debug(f"Verified chain for n={n}: {len(report.failures())} failing indices.")
    return report


@cache
def _chain_families(n: int) -> tuple[Family, ...]:
    if n == 0:
        return (Family.empty(0), Family.full(0))
    if n == 1:
        return (Family.empty(1), Family.from_masks(1, [1]), Family.full(1))

    lower = _chain_families(n - 2)
    quarter = 1 << (n - 2)
    anchors = {ell: sandwich_lift(lower[ell], n) for ell in range(quarter + 1)}
    for ell in range(quarter):
        anchors[star_index(n, ell)] = conjugate(anchors[ell])

    families: list[Family] = []
    indices = sorted(anchors)
    for start, stop in pairwise(indices):
        families.append(anchors[start])
        if stop > start + 1:
            families.extend(interpolate(anchors[start], anchors[stop]))
    families.append(anchors[indices[-1]])
    _LOGGER.debug(f"Built the witness chain for n={n} from {len(anchors)} anchors.")
    return tuple(families)


def _deletable(current: Family, lower: Family) -> int:
    spare = current.difference(lower)
    for candidates in (maximal_sets(current), minimal_sets(current)):
        masks = candidates.intersection(spare).masks()
        if masks.size:
            return int(masks[-1])
    # Unreachable for convex lower <= current: some spare set is minimal or maximal.
    raise NotNestedError


def _check_anchor(n: int, a: int) -> None:
    check_ground_size(n)
    if not 0 <= a <= n:
        msg = f"a must lie in 0..{n}, got a={a}"
        raise OutOfRangeError(msg)
    if (n - a) % 2:
        raise ParityMismatchError(n, a)


class ParityMismatchError(Exception):
    """a and n have different parities."""

    def __init__(self, n: int, a: int) -> None:  # noqa: D107
        super().__init__(f"a={a} must have the parity of n={n}.")


class PreconditionViolatedError(Exception):
    """The factors of a join product do not meet its requirements."""


class NotNestedError(Exception):
    """The lower family is not a proper subfamily of the upper family."""
