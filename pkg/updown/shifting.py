"""Generalized shifts S_{I,J} and the strong-shifting fixpoint."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cache

import numpy as np
import numpy.typing as npt

from .const import STRONG_SHIFT_MAX_N, capped
from .family import Family, Members, SubsetMask, check_ground_size, elements_of

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftPair:
    """The shift A -> (A \\ drop) | add, applied where the image is not already present.

    `add` is the set I and `drop` is the set J.
    """

    add: SubsetMask
    drop: SubsetMask

    def validate(self, n: int) -> None:
        bound = 1 << n
        if not (0 < self.add < bound and 0 < self.drop < bound) or self.add & self.drop:
            raise InvalidShiftPairError(self, n)

    @property
    def is_ordered(self) -> bool:
        """Whether max(I) < min(J)."""
        return self.add.bit_length() < (self.drop & -self.drop).bit_length()

    def swapped(self) -> "ShiftPair":
        return ShiftPair(add=self.drop, drop=self.add)

    def __str__(self) -> str:
        add = ",".join(map(str, elements_of(self.add)))
        drop = ",".join(map(str, elements_of(self.drop)))
        return f"({{{add}}},{{{drop}}})"


@dataclass(frozen=True)
class ShiftStep:
    pair: ShiftPair
    before: Family
    after: Family


def shift(family: Family, pair: ShiftPair) -> Family:
    pair.validate(family.n)
    sources, targets = _moves(family.members, pair)
    return Family(family.n, _apply(family.members, sources, targets))


def fixes(family: Family, pair: ShiftPair) -> bool:
    """Whether the shift leaves the family unchanged."""
    pair.validate(family.n)
    sources, _ = _moves(family.members, pair)
    return sources.size == 0


def is_minimal_violation(family: Family, pair: ShiftPair) -> bool:
    """Whether every shift by a nonempty proper part of I or of J fixes the family."""
    return all(
        fixes(family, ShiftPair(add=part, drop=pair.drop)) for part in _proper_parts(pair.add)
    ) and all(
        fixes(family, ShiftPair(add=pair.add, drop=part)) for part in _proper_parts(pair.drop)
    )


@cache
def ordered_pairs(n: int) -> tuple[ShiftPair, ...]:
    """All pairs with max(I) < min(J), by max(J), then |I| + |J|, then (I, J)."""
    pairs = []
    for drop in range(1, 1 << n):
        lowest = (drop & -drop).bit_length() - 1
        pairs.extend(ShiftPair(add=add, drop=drop) for add in range(1, 1 << lowest))
    pairs.sort(
        key=lambda p: (p.drop.bit_length(), p.add.bit_count() + p.drop.bit_count(), p.add, p.drop)
    )
    return tuple(pairs)


def violating_pairs(family: Family) -> list[ShiftPair]:
    _check_cap(family.n)
    return [
        pair
        for pair in ordered_pairs(family.n)
        if _moves(family.members, pair)[0].size != 0
    ]


def is_strongly_shifted(family: Family) -> bool:
    _check_cap(family.n)
    return _first_violation(family.members, family.n) is None


def shift_steps(family: Family) -> Iterator[ShiftStep]:
    """Apply the first violating ordered pair until none is left, yielding each step.

    The first violating pair in canonical order is always minimal: every pair built from a
    nonempty proper part of I or J comes earlier in that order.
    """
    _check_cap(family.n)
    current = family
    while True:
        found = _first_violation(current.members, current.n)
        if found is None:
            return
        pair, sources, targets = found
        after = Family(current.n, _apply(current.members, sources, targets))
        _LOGGER.debug(f"Shift {pair} moved {sources.size} sets.")
        yield ShiftStep(pair=pair, before=current, after=after)
        current = after


def strongly_shift(family: Family) -> Family:
    result = family
    steps = 0
    for step in shift_steps(family):
        result = step.after
        steps += 1
    _LOGGER.debug(f"Strongly shifted a family of {len(family)} sets in {steps} steps.")
    return result


def shift_potential(family: Family) -> tuple[int, ...]:
    """Number of members containing n, then n - 1, down to 1."""
    masks = family.masks()
    return tuple(int(np.count_nonzero((masks >> i) & 1)) for i in reversed(range(family.n)))


def _check_cap(n: int) -> None:
    check_ground_size(n, capped(STRONG_SHIFT_MAX_N), "Strong shifting")


def _first_violation(
    members: Members, n: int
) -> tuple[ShiftPair, npt.NDArray[np.intp], npt.NDArray[np.intp]] | None:
    for pair in ordered_pairs(n):
        sources, targets = _moves(members, pair)
        if sources.size:
            return pair, sources, targets
    return None


def _moves(
    members: Members, pair: ShiftPair
) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.intp]]:
    masks = np.flatnonzero(members)
    eligible = masks[((masks & pair.add) == 0) & ((masks & pair.drop) == pair.drop)]
    targets = (eligible & ~pair.drop) | pair.add
    free = ~members[targets]
    return eligible[free], targets[free]


def _apply(
    members: Members, sources: npt.NDArray[np.intp], targets: npt.NDArray[np.intp]
) -> Members:
    out = members.copy()
    out[sources] = False
    out[targets] = True
    out.flags.writeable = False
    return out


def _proper_parts(mask: SubsetMask) -> Iterator[SubsetMask]:
    part = (mask - 1) & mask
    while part:
        yield part
        part = (part - 1) & mask


class InvalidShiftPairError(Exception):
    """I or J is empty, they overlap, or one leaves the ground set."""

    def __init__(self, pair: ShiftPair, n: int) -> None:  # noqa: D107
        super().__init__(f"Invalid shift pair I={pair.add:#b}, J={pair.drop:#b} for n={n}.")
