"""Unit tests for updown.ferrers."""

import pytest

from updown.family import TooLargeError
from updown.ferrers import (
    PartitionError,
    conjugate_partition,
    durfee_side,
    ferrers_dots,
    phi_partition,
    render_svg,
    render_tsv,
)
from updown.models.layout import FerrersLayout


def test_conjugate_partition() -> None:
    assert conjugate_partition([3, 1]) == [2, 1, 1]
    assert conjugate_partition([2, 2, 0]) == [2, 2]
    assert conjugate_partition([]) == []
    with pytest.raises(PartitionError):
        conjugate_partition([1, 2])
    with pytest.raises(PartitionError):
        conjugate_partition([-1])


def test_phi_partitions_are_self_conjugate() -> None:
    for n in range(11):
        parts = phi_partition(n)
        assert conjugate_partition(parts) == parts


def test_durfee_side() -> None:
    assert durfee_side([4, 4, 4, 3]) == 3
    assert durfee_side(phi_partition(2)) == 3
    assert durfee_side(phi_partition(4)) == 12
    assert durfee_side([]) == 0


def test_dots() -> None:
    assert list(ferrers_dots(0)) == [(1, 1)]
    assert len(list(ferrers_dots(2))) == 15
    assert list(ferrers_dots(1)) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_render_tsv() -> None:
    assert render_tsv(1) == "x\ty\n1\t1\n1\t2\n2\t1\n2\t2\n"
    assert render_tsv(3).count("\n") == 1 + sum(phi_partition(3))
    with pytest.raises(TooLargeError):
        render_tsv(11)


def test_render_svg_is_reproducible() -> None:
    first = render_svg(3)
    assert "<svg" in first
    assert render_svg(3) == first


def test_render_svg_uses_the_layout() -> None:
    layout = FerrersLayout.from_yaml("dot_color: '#123456'\ndot_radius: 0.2\n")
    assert layout.dot_radius == 0.2  # noqa: PLR2004
    assert layout.curve_style == "--"
    assert "#123456" in render_svg(2, layout)
    assert "#123456" not in render_svg(2)


def test_render_svg_cap() -> None:
    with pytest.raises(TooLargeError):
        render_svg(9)
