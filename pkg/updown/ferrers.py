"""Ferrers diagram of the partition Phi(n, 2**n) >= ... >= Phi(n, 1)."""

import io
import logging
from collections.abc import Iterator, Sequence

import numpy as np
from matplotlib import rc_context
from matplotlib.collections import PatchCollection
from matplotlib.figure import Figure
from matplotlib.patches import Circle, Rectangle

from .const import FERRERS_SVG_MAX_N, FERRERS_TSV_MAX_N, capped
from .family import check_ground_size
from .models.layout import FerrersLayout
from .phi import phi_table

_LOGGER = logging.getLogger(__name__)


def phi_partition(n: int) -> list[int]:
    return phi_table(n).partition()


def conjugate_partition(parts: Sequence[int]) -> list[int]:
    """Column lengths of the Ferrers diagram of a weakly decreasing sequence."""
    values = np.asarray(parts, dtype=np.int64)
    if values.size and (np.any(values < 0) or np.any(np.diff(values) > 0)):
        msg = "a partition must be a weakly decreasing sequence of non-negative integers"
        raise PartitionError(msg)
    values = values[values > 0]
    if values.size == 0:
        return []
    # at_least[i] = number of parts >= i
    counts = np.bincount(values, minlength=int(values[0]) + 1)
    at_least = np.cumsum(counts[::-1])[::-1]
    return [int(count) for count in at_least[1:]]


def durfee_side(parts: Sequence[int]) -> int:
    """Side of the largest square inside the diagram of a weakly decreasing sequence."""
    values = np.asarray(parts, dtype=np.int64)
    return int(np.count_nonzero(values >= np.arange(1, values.size + 1)))


def ferrers_dots(n: int) -> Iterator[tuple[int, int]]:
    """Dots (x, y) with 1 <= x <= 2**n and 1 <= y <= Phi(n, x), column by column."""
    values = phi_table(n).values
    for x in range(1, len(values)):
        for y in range(1, values[x] + 1):
            yield x, y


def render_tsv(n: int) -> str:
    check_ground_size(n, capped(FERRERS_TSV_MAX_N), "Ferrers TSV")
    rows = [f"{x}\t{y}" for x, y in ferrers_dots(n)]
    return "x\ty\n" + "".join(f"{row}\n" for row in rows)


def render_svg(n: int, layout: FerrersLayout | None = None) -> str:
    """Draw the dots, the Durfee square and the curve sqrt(2**(n + 2) x) - x as SVG.

    The output is byte-for-byte reproducible for a given matplotlib version.
    """
    check_ground_size(n, capped(FERRERS_SVG_MAX_N), "Ferrers SVG")
    layout = layout or FerrersLayout()
    table = phi_table(n)
    size = 1 << n
    side = durfee_side(table.partition())
    width = size - 1 + 2 * layout.margin
    height = size - 1 + 2 * layout.margin

    with rc_context({"svg.hashsalt": layout.hash_salt, "svg.fonttype": "none"}):
        figure = Figure(figsize=(width * layout.inches_per_unit, height * layout.inches_per_unit))
        axes = figure.add_axes((0.0, 0.0, 1.0, 1.0))
        axes.set_xlim(1 - layout.margin, size + layout.margin)
        axes.set_ylim(1 - layout.margin, size + layout.margin)
        axes.set_aspect("equal")
        axes.set_axis_off()

        if side:
            axes.add_patch(
                Rectangle(
                    (size - side + 0.5, 0.5),
                    side,
                    side,
                    facecolor=layout.durfee_color,
                    edgecolor="none",
                    zorder=1,
                )
            )
        dots = [Circle((x, y), layout.dot_radius) for x, y in ferrers_dots(n)]
        axes.add_collection(
            PatchCollection(dots, facecolor=layout.dot_color, edgecolor="none", zorder=2)
        )
        xs = np.arange(1, size + 1, dtype=np.float64)
        axes.plot(
            xs,
            np.sqrt(float(1 << (n + 2)) * xs) - xs,
            linestyle=layout.curve_style,
            color=layout.curve_color,
            linewidth=layout.curve_width,
            zorder=3,
        )

        buffer = io.BytesIO()
        figure.savefig(buffer, format="svg", metadata={"Date": None})

    _LOGGER.debug(f"Rendered the Ferrers diagram for n={n} with Durfee side {side}.")
    return buffer.getvalue().decode("utf-8")


class PartitionError(Exception):
    """The sequence is not a partition."""
