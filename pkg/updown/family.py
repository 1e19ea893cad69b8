"""Families of subsets of [n]: closures, convexity, complement, reverse and conjugate."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cache
from typing import Self

import numpy as np
import numpy.typing as npt

from .const import MAX_N, capped

type SubsetMask = int
type Members = npt.NDArray[np.bool_]

_REPR_LIMIT = 8


def mask_of(elements: Iterable[int]) -> SubsetMask:
    """Encode a set of 1-based elements as a mask (element i is bit i-1)."""
    mask = 0
    for element in elements:
        if element < 1:
            raise InvalidMaskError(element)
        mask |= 1 << (element - 1)
    return mask


def elements_of(mask: SubsetMask) -> tuple[int, ...]:
    """Decode a mask into its sorted 1-based elements."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def full_mask(n: int) -> SubsetMask:
    return (1 << n) - 1


def check_ground_size(n: int, limit: int | None = None, what: str = "Family") -> None:
    """Reject negative ground sizes and ground sizes above `limit`, by default MAX_N.

    UPDOWN_MAX_N lowers the default limit.
    """
    if limit is None:
        limit = capped(MAX_N)
    if n < 0:
        raise InvalidGroundSizeError(n)
    if n > limit:
        raise TooLargeError(what, n, limit)


@dataclass(frozen=True, eq=False)
class Family:
    """A family of subsets of [n].

    `members` is a read-only boolean vector of length 2**n; position p is set when the
    subset with mask p belongs to the family.
    """

    n: int
    members: Members

    def __post_init__(self) -> None:
        check_ground_size(self.n)
        members = np.ascontiguousarray(self.members, dtype=np.bool_)
        if members.shape != (1 << self.n,):
            raise MemberVectorError(self.n, members.size)
        if members.flags.writeable:
            members = members.copy()
            members.flags.writeable = False
        object.__setattr__(self, "members", members)

    @classmethod
    def empty(cls, n: int) -> Self:
        check_ground_size(n)
        return cls(n, _frozen(np.zeros(1 << n, dtype=np.bool_)))

    @classmethod
    def full(cls, n: int) -> Self:
        check_ground_size(n)
        return cls(n, _frozen(np.ones(1 << n, dtype=np.bool_)))

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[SubsetMask]) -> Self:
        check_ground_size(n)
        members = np.zeros(1 << n, dtype=np.bool_)
        for mask in masks:
            if not 0 <= mask < 1 << n:
                raise InvalidMaskError(mask, n)
            members[mask] = True
        return cls(n, _frozen(members))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> Self:
        """Build a family from sets of 1-based elements."""
        return cls.from_masks(n, (mask_of(s) for s in sets))

    def __len__(self) -> int:
        return int(np.count_nonzero(self.members))

    def __contains__(self, mask: object) -> bool:
        if not isinstance(mask, int | np.integer):
            return False
        return 0 <= mask < 1 << self.n and bool(self.members[mask])

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.masks().tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.members, other.members)

    def __hash__(self) -> int:
        return hash((self.n, self.members.tobytes()))

    def __repr__(self) -> str:
        masks = self.masks()
        shown = ", ".join(_format_set(int(mask)) for mask in masks[:_REPR_LIMIT])
        more = f", ... ({len(masks)} sets)" if len(masks) > _REPR_LIMIT else ""
        return f"Family(n={self.n}, [{shown}{more}])"

    def masks(self) -> npt.NDArray[np.intp]:
        """Member masks in ascending order."""
        return np.flatnonzero(self.members)

    def to_sets(self) -> list[tuple[int, ...]]:
        return [elements_of(int(mask)) for mask in self.masks()]

    def issubset(self, other: "Family") -> bool:
        _require_same_ground(self, other)
        return not np.any(self.members & ~other.members)

    def union(self, other: "Family") -> "Family":
        _require_same_ground(self, other)
        return Family(self.n, _frozen(self.members | other.members))

    def intersection(self, other: "Family") -> "Family":
        _require_same_ground(self, other)
        return Family(self.n, _frozen(self.members & other.members))

    def difference(self, other: "Family") -> "Family":
        _require_same_ground(self, other)
        return Family(self.n, _frozen(self.members & ~other.members))

    def without(self, mask: SubsetMask) -> "Family":
        if not 0 <= mask < 1 << self.n:
            raise InvalidMaskError(mask, self.n)
        members = self.members.copy()
        members[mask] = False
        return Family(self.n, _frozen(members))

    def with_mask(self, mask: SubsetMask) -> "Family":
        if not 0 <= mask < 1 << self.n:
            raise InvalidMaskError(mask, self.n)
        members = self.members.copy()
        members[mask] = True
        return Family(self.n, _frozen(members))


@dataclass(frozen=True)
class ClosureTriple:
    up: Family
    down: Family
    updown: Family


def up_closure(family: Family) -> Family:
    """All subsets of [n] containing some member."""
    return Family(family.n, _frozen(_spread_up(family.members, family.n)))


def down_closure(family: Family) -> Family:
    """All subsets of some member."""
    return Family(family.n, _frozen(_spread_down(family.members, family.n)))


def updown_closure(family: Family) -> ClosureTriple:
    up = _spread_up(family.members, family.n)
    down = _spread_down(family.members, family.n)
    return ClosureTriple(
        up=Family(family.n, _frozen(up)),
        down=Family(family.n, _frozen(down)),
        updown=Family(family.n, _frozen(up | down)),
    )


def updown_size(family: Family) -> int:
    """Size of the up/down closure."""
    up = _spread_up(family.members, family.n)
    down = _spread_down(family.members, family.n)
    return int(np.count_nonzero(up | down))


def is_convex(family: Family) -> bool:
    up = _spread_up(family.members, family.n)
    down = _spread_down(family.members, family.n)
    return bool(np.array_equal(up & down, family.members))


def between_sets(family: Family) -> Family:
    """Sets lying between two members that are not members themselves."""
    up = _spread_up(family.members, family.n)
    down = _spread_down(family.members, family.n)
    return Family(family.n, _frozen(up & down & ~family.members))


def minimal_sets(family: Family) -> Family:
    above = _spread_up(_step_up(family.members, family.n), family.n)
    return Family(family.n, _frozen(family.members & ~above))


def maximal_sets(family: Family) -> Family:
    below = _spread_down(_step_down(family.members, family.n), family.n)
    return Family(family.n, _frozen(family.members & ~below))


def complement_family(family: Family) -> Family:
    """Elementwise complement {[n] \\ A : A in F}."""
    # The complement of mask p is (2**n - 1) - p.
    return Family(family.n, _frozen(family.members[::-1].copy()))


def reverse_family(family: Family) -> Family:
    """Image of the family under x -> n + 1 - x."""
    return Family(family.n, _frozen(family.members[_reversal_index(family.n)]))


def conjugate(family: Family) -> Family:
    """2^[n] minus the up/down closure of the reversed family."""
    reversed_members = family.members[_reversal_index(family.n)]
    closure = _spread_up(reversed_members, family.n) | _spread_down(reversed_members, family.n)
    return Family(family.n, _frozen(~closure))


def boundary(family: Family) -> Family:
    """Members of the up/down closure that are not in the family."""
    return updown_closure(family).updown.difference(family)


def cross_sperner_partner(family: Family) -> Family:
    """Largest family G such that no member of G is comparable to a member of F."""
    closure = _spread_up(family.members, family.n) | _spread_down(family.members, family.n)
    return Family(family.n, _frozen(~closure))


def is_cross_sperner(first: Family, second: Family) -> bool:
    return second.issubset(cross_sperner_partner(first))


def singleton_closure_size(n: int, k: int) -> int:
    """Closure size of a single k-element subset of [n]."""
    if not 0 <= k <= n:
        raise InvalidMaskError(k, n)
    return (1 << k) + (1 << (n - k)) - 1


def format_family(family: Family) -> str:
    """Render the text format: header `n=<int>`, then one set per line."""
    lines = [f"n={family.n}"]
    lines.extend(_format_set(int(mask)) for mask in family.masks())
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    """Parse the text format written by `format_family`."""
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise FamilyFormatError(1, "expected header n=<int>")
    try:
        n = int(lines[0][2:])
    except ValueError as err:
        raise FamilyFormatError(1, f"bad ground size {lines[0][2:]!r}") from err
    if n < 0:
        raise FamilyFormatError(1, f"negative ground size {n}")
    check_ground_size(n)

    masks: list[SubsetMask] = []
    seen: set[SubsetMask] = set()
    for number, line in enumerate(lines[1:], start=2):
        mask = _parse_set(line, n, number)
        if mask in seen:
            raise FamilyFormatError(number, f"duplicate set {line}")
        seen.add(mask)
        masks.append(mask)
    return Family.from_masks(n, masks)


def _parse_set(line: str, n: int, number: int) -> SubsetMask:
    if not (line.startswith("{") and line.endswith("}")):
        raise FamilyFormatError(number, f"expected {{...}}, got {line!r}")
    body = line[1:-1].strip()
    if not body:
        return 0
    try:
        elements = [int(token) for token in body.split(",")]
    except ValueError as err:
        raise FamilyFormatError(number, f"bad element in {line!r}") from err
    if any(not 1 <= element <= n for element in elements):
        raise FamilyFormatError(number, f"element outside [1, {n}] in {line!r}")
    if len(set(elements)) != len(elements):
        raise FamilyFormatError(number, f"repeated element in {line!r}")
    return mask_of(elements)


def _format_set(mask: SubsetMask) -> str:
    return "{" + ",".join(str(element) for element in elements_of(mask)) + "}"


def _require_same_ground(first: Family, second: Family) -> None:
    if first.n != second.n:
        raise GroundSizeMismatchError(first.n, second.n)


def _frozen(members: Members) -> Members:
    members.flags.writeable = False
    return members


def _spread_up(members: Members, n: int) -> Members:
    out = members.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return out


def _spread_down(members: Members, n: int) -> Members:
    out = members.copy()
    for i in range(n):
        view = out.reshape(-1, 2, 1 << i)
        view[:, 0, :] |= view[:, 1, :]
    return out


def _step_up(members: Members, n: int) -> Members:
    """Sets obtained from a member by adding exactly one element."""
    out = np.zeros_like(members)
    for i in range(n):
        source = members.reshape(-1, 2, 1 << i)
        target = out.reshape(-1, 2, 1 << i)
        target[:, 1, :] |= source[:, 0, :]
    return out


def _step_down(members: Members, n: int) -> Members:
    out = np.zeros_like(members)
    for i in range(n):
        source = members.reshape(-1, 2, 1 << i)
        target = out.reshape(-1, 2, 1 << i)
        target[:, 0, :] |= source[:, 1, :]
    return out


@cache
def _reversal_index(n: int) -> npt.NDArray[np.intp]:
    masks = np.arange(1 << n, dtype=np.intp)
    index = np.zeros_like(masks)
    for i in range(n):
        index |= ((masks >> i) & 1) << (n - 1 - i)
    index.flags.writeable = False
    return index


class InvalidGroundSizeError(Exception):
    """A ground size was negative."""

    def __init__(self, n: int) -> None:  # noqa: D107
        super().__init__(f"Ground size must be non-negative, got n={n}.")


class GroundSizeMismatchError(Exception):
    """Families over different ground sizes were mixed in one operation."""

    def __init__(self, expected: int, actual: int) -> None:  # noqa: D107
        super().__init__(f"Expected ground size n={expected}, got n={actual}.")


class MemberVectorError(Exception):
    """A member vector does not have 2**n positions."""

    def __init__(self, n: int, length: int) -> None:  # noqa: D107
        super().__init__(f"Ground size n={n} needs {1 << n} positions, got {length}.")


class InvalidMaskError(Exception):
    """A mask or element lies outside the ground set."""

    def __init__(self, value: int, n: int | None = None) -> None:  # noqa: D107
        where = "the ground set" if n is None else f"[{n}]"
        super().__init__(f"Value {value} is outside {where}.")


class TooLargeError(Exception):
    """An operation was asked to work beyond its size cap."""

    def __init__(self, what: str, n: int, limit: int) -> None:  # noqa: D107
        super().__init__(f"{what} supports n <= {limit}, got n={n}.")
        self.n = n
        self.limit = limit


class NotConvexError(Exception):
    """A family that must be convex is not."""


class FamilyFormatError(Exception):
    """The family text format could not be parsed."""

    def __init__(self, line: int, reason: str) -> None:  # noqa: D107
        super().__init__(f"Line {line}: {reason}.")
