"""Unit tests for updown.family."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from updown.family import (
    Family,
    FamilyFormatError,
    GroundSizeMismatchError,
    InvalidGroundSizeError,
    InvalidMaskError,
    MemberVectorError,
    TooLargeError,
    between_sets,
    boundary,
    complement_family,
    conjugate,
    cross_sperner_partner,
    down_closure,
    elements_of,
    format_family,
    is_convex,
    is_cross_sperner,
    mask_of,
    maximal_sets,
    minimal_sets,
    parse_family,
    reverse_family,
    singleton_closure_size,
    up_closure,
    updown_closure,
    updown_size,
)
from updown.models.export import FamilyExport


@st.composite
def families(draw: st.DrawFn, max_n: int = 5) -> Family:
    n = draw(st.integers(min_value=0, max_value=max_n))
    members = draw(st.lists(st.booleans(), min_size=1 << n, max_size=1 << n))
    return Family(n, np.array(members, dtype=np.bool_))


def brute_closure(family: Family) -> set[int]:
    members = list(family)
    return {
        other
        for other in range(1 << family.n)
        if any(other & mask in (mask, other) for mask in members)
    }


def test_mask_round_trip() -> None:
    """Elements are 1-based and element i is bit i-1."""
    assert mask_of([1, 3]) == 0b101
    assert elements_of(0b101) == (1, 3)
    assert mask_of([]) == 0
    with pytest.raises(InvalidMaskError):
        mask_of([0])


def test_family_constructors() -> None:
    assert len(Family.empty(3)) == 0
    assert len(Family.full(3)) == 8
    assert Family.from_sets(3, [[1, 2], []]) == Family.from_masks(3, [0b011, 0])
    assert 0b011 in Family.from_sets(3, [[1, 2]])
    assert "x" not in Family.full(2)


def test_family_rejects_bad_input() -> None:
    with pytest.raises(InvalidGroundSizeError):
        Family.empty(-1)
    with pytest.raises(TooLargeError):
        Family.empty(25)
    with pytest.raises(InvalidMaskError):
        Family.from_masks(2, [4])
    with pytest.raises(MemberVectorError):
        Family(2, np.zeros(3, dtype=np.bool_))
    with pytest.raises(GroundSizeMismatchError):
        Family.full(2).union(Family.full(3))


def test_members_are_read_only() -> None:
    """The member vector is copied and frozen on construction."""
    source = np.zeros(4, dtype=np.bool_)
    family = Family(2, source)
    source[0] = True
    assert len(family) == 0
    with pytest.raises(ValueError, match="read-only"):
        family.members[0] = True


def test_closures_of_small_families() -> None:
    """Closures of {{1}} and {{1}, {2}} over [2]."""
    single = Family.from_sets(2, [[1]])
    assert up_closure(single) == Family.from_sets(2, [[1], [1, 2]])
    assert down_closure(single) == Family.from_sets(2, [[], [1]])
    assert updown_size(single) == 3

    pair = Family.from_sets(2, [[1], [2]])
    triple = updown_closure(pair)
    assert triple.updown == Family.full(2)
    assert updown_size(pair) == 4


def test_closure_edge_cases() -> None:
    assert updown_size(Family.empty(4)) == 0
    assert updown_size(Family.from_masks(4, [0])) == 16
    assert updown_size(Family.from_masks(4, [15])) == 16
    assert updown_size(Family.full(0)) == 1


@given(families())
def test_closure_matches_definition(family: Family) -> None:
    assert set(updown_closure(family).updown) == brute_closure(family)


@given(families())
def test_closure_laws(family: Family) -> None:
    """Closure contains the family, is idempotent and matches the up/down union."""
    triple = updown_closure(family)
    assert family.issubset(triple.updown)
    assert triple.updown == triple.up.union(triple.down)
    assert updown_closure(triple.up).up == triple.up
    assert updown_closure(triple.down).down == triple.down


def test_convexity() -> None:
    assert is_convex(Family.from_sets(2, [[], [1]]))
    assert not is_convex(Family.from_sets(2, [[], [1, 2]]))
    assert between_sets(Family.from_sets(2, [[], [1, 2]])) == Family.from_sets(2, [[1], [2]])
    assert is_convex(Family.empty(3))
    assert is_convex(Family.full(3))


@given(families())
def test_between_sets_fill_the_gap(family: Family) -> None:
    """Adding the between sets gives the convex hull up-closure & down-closure."""
    hull = family.union(between_sets(family))
    assert is_convex(hull)
    assert updown_size(hull) == updown_size(family)


@given(families())
def test_minimal_and_maximal_sets(family: Family) -> None:
    members = list(family)
    for mask in minimal_sets(family):
        assert not any(other != mask and other & mask == other for other in members)
    for mask in maximal_sets(family):
        assert not any(other != mask and other & mask == mask for other in members)
    if members:
        assert len(minimal_sets(family)) >= 1
        assert len(maximal_sets(family)) >= 1


@given(families())
def test_complement_and_reverse(family: Family) -> None:
    """Both maps are involutions that keep the closure size."""
    full = (1 << family.n) - 1
    complement = complement_family(family)
    assert set(complement) == {full ^ mask for mask in family}
    assert complement_family(complement) == family
    assert reverse_family(reverse_family(family)) == family
    assert updown_size(complement) == updown_size(family)
    assert updown_size(reverse_family(family)) == updown_size(family)


def test_reverse_maps_elements() -> None:
    assert reverse_family(Family.from_sets(4, [[1], [1, 2]])) == Family.from_sets(
        4, [[4], [3, 4]]
    )


@given(families())
def test_conjugate_properties(family: Family) -> None:
    """F* is convex and |F*| = 2^n - |F-updown|."""
    image = conjugate(family)
    assert is_convex(image)
    assert len(image) == (1 << family.n) - updown_size(family)


def test_conjugate_examples() -> None:
    """The middle interval over [4] is its own conjugate; a 2-set leaves 9 sets."""
    middle = Family.from_masks(4, [mask for mask in range(16) if mask & 1 and not mask & 8])
    assert conjugate(middle) == middle
    assert len(conjugate(Family.from_sets(4, [[1, 2]]))) == 9


def test_conjugate_of_extremes() -> None:
    assert conjugate(Family.empty(3)) == Family.full(3)
    assert conjugate(Family.full(3)) == Family.empty(3)


@given(families())
def test_cross_sperner_partner(family: Family) -> None:
    partner = cross_sperner_partner(family)
    assert is_cross_sperner(family, partner)
    assert len(partner) == (1 << family.n) - updown_size(family)
    assert boundary(family).union(family).union(partner) == Family.full(family.n)


def test_singleton_closure_size() -> None:
    """A single k-set over [n] has closure 2^k + 2^(n-k) - 1."""
    for n in range(6):
        for k in range(n + 1):
            family = Family.from_masks(n, [(1 << k) - 1])
            assert updown_size(family) == singleton_closure_size(n, k)


def test_text_format() -> None:
    family = Family.from_sets(3, [[2], [], [1, 3]])
    text = format_family(family)
    assert text == "n=3\n{}\n{2}\n{1,3}\n"
    assert parse_family(text) == family
    assert parse_family("# comment\nn=2\n\n{ 1, 2 }\n") == Family.from_sets(2, [[1, 2]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "{1}\n",
        "n=x\n",
        "n=-1\n",
        "n=2\n1,2\n",
        "n=2\n{3}\n",
        "n=2\n{1,1}\n",
        "n=2\n{1}\n{1}\n",
        "n=2\n{a}\n",
    ],
)
def test_text_format_rejects(text: str) -> None:
    with pytest.raises(FamilyFormatError):
        parse_family(text)


def test_negative_header_is_a_format_error() -> None:
    with pytest.raises(FamilyFormatError, match="Line 1: negative ground size -1"):
        parse_family("n=-1\n{}\n")


def test_without_checks_the_mask() -> None:
    family = Family.full(2)
    assert family.without(0b01) == Family.from_masks(2, [0, 0b10, 0b11])
    for mask in (-1, 4):
        with pytest.raises(InvalidMaskError):
            family.without(mask)


def test_ground_size_follows_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("UPDOWN_MAX_N", "3")
    assert len(Family.full(3)) == 8
    with pytest.raises(TooLargeError):
        Family.full(12)
    with pytest.raises(TooLargeError):
        Family.empty(4)
    with pytest.raises(TooLargeError):
        parse_family("n=4\n{}\n")


@st.composite
def nested_pairs(draw: st.DrawFn, max_n: int = 8) -> tuple[Family, Family]:
    """A family G and a subfamily F of it."""
    larger = draw(families(max_n))
    keep = draw(st.lists(st.booleans(), min_size=1 << larger.n, max_size=1 << larger.n))
    smaller = Family(larger.n, larger.members & np.array(keep, dtype=np.bool_))
    return smaller, larger


@given(families(max_n=8))
def test_complement_swaps_up_and_down(family: Family) -> None:
    complement = complement_family(family)
    assert down_closure(complement) == complement_family(up_closure(family))
    assert up_closure(complement) == complement_family(down_closure(family))
    assert updown_closure(complement).updown == complement_family(updown_closure(family).updown)


@given(families(max_n=8))
def test_reverse_commutes_with_closures(family: Family) -> None:
    image = reverse_family(family)
    assert up_closure(image) == reverse_family(up_closure(family))
    assert down_closure(image) == reverse_family(down_closure(family))
    assert updown_closure(image).updown == reverse_family(updown_closure(family).updown)
    assert complement_family(image) == reverse_family(complement_family(family))


@given(nested_pairs())
def test_closures_are_monotone(pair: tuple[Family, Family]) -> None:
    smaller, larger = pair
    assert smaller.issubset(larger)
    assert up_closure(smaller).issubset(up_closure(larger))
    assert down_closure(smaller).issubset(down_closure(larger))
    assert updown_closure(smaller).updown.issubset(updown_closure(larger).updown)


@settings(deadline=None)
@given(families(max_n=8))
def test_removing_extreme_sets_keeps_convexity(family: Family) -> None:
    """Dropping one minimal or one maximal set from a convex family leaves it convex."""
    hull = family.union(between_sets(family))
    assert is_convex(hull)
    for mask in [*minimal_sets(hull), *maximal_sets(hull)]:
        assert is_convex(hull.without(mask))


@given(families(max_n=8))
def test_export_round_trip(family: Family) -> None:
    exported = FamilyExport.from_family(family)
    assert exported.n == family.n
    assert exported.sets == [list(members) for members in family.to_sets()]
    assert FamilyExport.from_json(exported.to_json()).to_family() == family
