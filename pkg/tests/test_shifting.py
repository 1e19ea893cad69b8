"""Unit tests for updown.shifting."""

from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from updown.family import (
    Family,
    TooLargeError,
    complement_family,
    down_closure,
    is_convex,
    up_closure,
    updown_size,
)
from updown.phi import phi_fast
from updown.shifting import (
    InvalidShiftPairError,
    ShiftPair,
    fixes,
    is_minimal_violation,
    is_strongly_shifted,
    ordered_pairs,
    shift,
    shift_potential,
    shift_steps,
    strongly_shift,
    violating_pairs,
)
from updown.witness import c_family


@st.composite
def families(draw: st.DrawFn, min_n: int = 1, max_n: int = 5) -> Family:
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    members = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
    return Family(n, np.array(members, dtype=np.bool_))


@st.composite
def shifted_pairs(draw: st.DrawFn, max_n: int = 6) -> tuple[Family, ShiftPair]:
    """A family with a valid, not necessarily ordered, pair of disjoint sets."""
    family = draw(families(min_n=2, max_n=max_n))
    n = family.n
    labels = draw(st.lists(st.sampled_from("-IJ"), min_size=n, max_size=n))
    assume("I" in labels and "J" in labels)
    add = sum(1 << i for i, label in enumerate(labels) if label == "I")
    drop = sum(1 << i for i, label in enumerate(labels) if label == "J")
    return family, ShiftPair(add=add, drop=drop)


def test_shift_examples() -> None:
    single = Family.from_sets(2, [[2]])
    assert shift(single, ShiftPair(add=0b01, drop=0b10)) == Family.from_sets(2, [[1]])

    blocked = Family.from_sets(2, [[1], [2]])
    assert shift(blocked, ShiftPair(add=0b01, drop=0b10)) == blocked

    family = Family.from_sets(3, [[3], [2, 3]])
    assert shift(family, ShiftPair(add=0b001, drop=0b100)) == Family.from_sets(3, [[1], [1, 2]])


@pytest.mark.parametrize(
    ("add", "drop"),
    [(0, 1), (1, 0), (1, 1), (0b11, 0b10), (1, 0b1000)],
)
def test_invalid_pairs(add: int, drop: int) -> None:
    with pytest.raises(InvalidShiftPairError):
        shift(Family.full(3), ShiftPair(add=add, drop=drop))


def test_pair_helpers() -> None:
    pair = ShiftPair(add=0b001, drop=0b110)
    assert pair.is_ordered
    assert not pair.swapped().is_ordered
    assert str(pair) == "({1},{2,3})"


def test_ordered_pairs_are_canonical() -> None:
    """Pairs come by max(J), then |I| + |J|, then (I, J)."""
    pairs = ordered_pairs(3)
    assert all(pair.is_ordered for pair in pairs)
    assert pairs[:3] == (
        ShiftPair(add=0b001, drop=0b010),
        ShiftPair(add=0b001, drop=0b100),
        ShiftPair(add=0b010, drop=0b100),
    )
    assert len(pairs) == len(set(pairs))
    # Ordered pairs over [3]: ({1},{2}), ({1},{3}), ({2},{3}), ({1,2},{3}), ({1},{2,3})
    assert len(pairs) == 5


def test_strongly_shifted_examples() -> None:
    for n in range(1, 5):
        assert is_strongly_shifted(Family.from_sets(n, [[1]]))
    assert not is_strongly_shifted(Family.from_sets(2, [[2]]))
    for n in range(2, 7):
        assert is_strongly_shifted(c_family(n, n - 2))


def test_violating_pairs() -> None:
    assert violating_pairs(Family.from_sets(3, [[1]])) == []
    assert ShiftPair(add=1, drop=2) in violating_pairs(Family.from_sets(2, [[2]]))
    assert violating_pairs(Family.from_sets(3, [[2, 3]]))[0] == ShiftPair(add=1, drop=2)


def test_strongly_shift_examples() -> None:
    assert strongly_shift(Family.from_sets(3, [[3]])) == Family.from_sets(3, [[1]])
    fixed = c_family(4, 2)
    assert strongly_shift(fixed) == fixed


def test_strong_shifting_cap() -> None:
    with pytest.raises(TooLargeError):
        is_strongly_shifted(Family.empty(15))


def test_strong_shifting_cap_follows_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("UPDOWN_MAX_N", "3")
    with pytest.raises(TooLargeError):
        is_strongly_shifted(Family.empty(4))


def test_strongly_shift_keeps_witnesses() -> None:
    """Every convex witness 2-family over [4] stays a witness after strong shifting."""
    value = phi_fast(4, 2)
    for masks in combinations(range(16), 2):
        family = Family.from_masks(4, masks)
        if not is_convex(family) or updown_size(family) != value:
            continue
        assert updown_size(strongly_shift(family)) <= value


@given(shifted_pairs())
def test_shift_keeps_cardinality(case: tuple[Family, ShiftPair]) -> None:
    family, pair = case
    assert len(shift(family, pair)) == len(family)


@given(shifted_pairs(max_n=8))
def test_complement_duality(case: tuple[Family, ShiftPair]) -> None:
    family, pair = case
    assert complement_family(shift(family, pair)) == shift(
        complement_family(family), pair.swapped()
    )


@given(families())
def test_strongly_shift_reaches_a_fixpoint(family: Family) -> None:
    result = strongly_shift(family)
    assert len(result) == len(family)
    assert is_strongly_shifted(result)
    assert violating_pairs(result) == []


@given(families())
def test_each_step_is_minimal_and_lowers_the_potential(family: Family) -> None:
    for step in shift_steps(family):
        assert step.pair.is_ordered
        assert not fixes(step.before, step.pair)
        assert is_minimal_violation(step.before, step.pair)
        assert shift_potential(step.after) < shift_potential(step.before)


@given(families(max_n=4))
def test_minimal_shifts_do_not_grow_closures(family: Family) -> None:
    """Under minimality, shifting commutes into the closures as an inclusion."""
    for step in shift_steps(family):
        before, pair, after = step.before, step.pair, step.after
        assert down_closure(after).issubset(shift(down_closure(before), pair))
        assert up_closure(after).issubset(shift(up_closure(before), pair))
        assert updown_size(after) <= updown_size(before)


@given(families(max_n=5))
def test_single_element_shifts_do_not_grow_closures(family: Family) -> None:
    n = family.n
    for i in range(n):
        for j in range(i + 1, n):
            pair = ShiftPair(add=1 << i, drop=1 << j)
            after = shift(family, pair)
            assert down_closure(after).issubset(shift(down_closure(family), pair))
            assert up_closure(after).issubset(shift(up_closure(family), pair))


@settings(max_examples=10_000, deadline=None)
@given(
    st.integers(min_value=5, max_value=6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=1 << (n - 2)),
        )
    )
)
def test_strongly_shifted_closure_lower_bound(case: tuple[int, set[int]]) -> None:
    """A strongly shifted m-family outside C_{n,n-2} has closure >= 2^(n-1) + m."""
    n, masks = case
    family = strongly_shift(Family.from_masks(n, masks))
    if family.issubset(c_family(n, n - 2)):
        return
    assert updown_size(family) >= (1 << (n - 1)) + len(family)


def test_strongly_shifted_closure_lower_bound_exhaustive() -> None:
    for n in range(2, 5):
        base = c_family(n, n - 2)
        for m in range(1, (1 << (n - 2)) + 1):
            for masks in combinations(range(1 << n), m):
                family = Family.from_masks(n, masks)
                if family.issubset(base) or not is_strongly_shifted(family):
                    continue
                assert updown_size(family) >= (1 << (n - 1)) + m
