"""CLI to compute, export and verify least up/down closures.

Execute with:
poetry run updown --help
"""

import asyncio
from enum import StrEnum
from logging import DEBUG, INFO
from pathlib import Path

import asyncclick as click
import coloredlogs
from asyncclick.core import Context
from termcolor import colored

from .const import DEFAULT_VERIFY_MAX_N, DEFAULT_VERIFY_ORACLE_MAX, MAX_N
from .family import (
    FamilyFormatError,
    InvalidGroundSizeError,
    TooLargeError,
    format_family,
    parse_family,
    updown_closure,
)
from .ferrers import durfee_side, phi_partition, render_svg, render_tsv
from .models.export import FamilyExport, chain_lines
from .models.layout import FerrersLayout
from .oracle import brute_min_updown
from .phi import (
    MethodDisagreementError,
    OutOfRangeError,
    cross_sperner_bound,
    cross_sperner_g,
    cross_sperner_max,
    phi_fast,
    phi_recursive,
    phi_table,
)
from .suite import run_suite
from .witness import canonical_chain, verify_chain

USAGE_ERRORS = (InvalidGroundSizeError, OutOfRangeError, TooLargeError)


class PhiMethod(StrEnum):
    FAST = "fast"
    RECURSIVE = "recursive"
    BOTH = "both"
    ORACLE = "oracle"


class TableFormat(StrEnum):
    TSV = "tsv"
    JSON = "json"


class FamilyFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


@click.group()
@click.version_option()
@click.option("verbose", "--verbose", help="Enable verbose logging.", is_flag=True)
async def cli(verbose: bool) -> None:
    """Compute Phi(n, m), the least up/down closure of an m-family of subsets of [n]."""
    coloredlogs.install(level=DEBUG if verbose else INFO)


@cli.command()
@click.argument("n", type=click.IntRange(min=0))
@click.argument("m", type=click.IntRange(min=0))
@click.option(
    "method",
    "--method",
    type=click.Choice(PhiMethod),  # pyright: ignore [reportArgumentType]
    default=PhiMethod.FAST,
    help="How to compute the value.",
)
@click.pass_context
async def phi(ctx: Context, n: int, m: int, method: PhiMethod) -> None:
    """Print Phi(n, m)."""
    try:
        match method:
            case PhiMethod.FAST:
                value = phi_fast(n, m)
            case PhiMethod.RECURSIVE:
                value = phi_recursive(n, m)
            case PhiMethod.ORACLE:
                value = (await asyncio.to_thread(brute_min_updown, n, m)).value
            case PhiMethod.BOTH:
                value = phi_fast(n, m)
                recursive = phi_recursive(n, m)
                if value != recursive:
                    print(f"{colored("disagreement:", "red")} fast={value} recursive={recursive}")
                    ctx.exit(1)
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err
    print(value)


@cli.command()
@click.argument("n", type=click.IntRange(min=0))
@click.option(
    "output_format",
    "--format",
    type=click.Choice(TableFormat),  # pyright: ignore [reportArgumentType]
    default=TableFormat.TSV,
    help="Output format.",
)
@click.option("out", "--out", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
async def table(ctx: Context, n: int, output_format: TableFormat, out: Path | None) -> None:
    """Print or write Phi(n, m) for every m in 0..2^n."""
    try:
        values = await asyncio.to_thread(phi_table, n)
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err
    except MethodDisagreementError as err:
        print(f"{colored("disagreement:", "red")} {err}")
        ctx.exit(1)
    text = values.to_tsv() if output_format == TableFormat.TSV else values.to_json() + "\n"
    emit(text, out)


@cli.command()
@click.argument("n", type=click.IntRange(min=0))
@click.option("out", "--out", type=click.Path(dir_okay=False, path_type=Path))
@click.option("verify", "--verify", help="Verify the chain after building it.", is_flag=True)
@click.pass_context
async def chain(ctx: Context, n: int, out: Path | None, verify: bool) -> None:
    """Export the nested chain of convex witnesses F_0, ..., F_{2^n}."""
    try:
        built = await asyncio.to_thread(canonical_chain, n)
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err

    emit("".join(f"{line}\n" for line in chain_lines(built)), out)
    if not verify:
        return

    # Verification goes to stderr so the JSON Lines on stdout stay clean.
    report = await asyncio.to_thread(verify_chain, built)
    if not report.ok:
        if not report.complete:
            click.echo(f"{colored("incomplete:", "red")} {len(built)} families", err=True)
        for label, indices in (
            ("wrong sizes:", report.wrong_sizes()),
            ("non-convex:", report.non_convex()),
            ("non-witnesses:", report.non_witnesses()),
            ("not nested:", report.not_nested()),
        ):
            if indices:
                click.echo(f"{colored(label, "red")} {indices}", err=True)
        for anchor in report.misplaced_anchors():
            label = colored("misplaced anchor:", "red")
            click.echo(f"{label} {anchor.kind} a={anchor.a}", err=True)
        ctx.exit(1)
    click.echo(f"{colored("verified:", "blue")} n={n}, {len(built)} families", err=True)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "output_format",
    "--format",
    type=click.Choice(FamilyFormat),  # pyright: ignore [reportArgumentType]
    default=FamilyFormat.TEXT,
    help="Output format.",
)
@click.option("out", "--out", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
async def closure(ctx: Context, path: Path, output_format: FamilyFormat, out: Path | None) -> None:
    """Write the up/down closure of the family stored in PATH (text format)."""
    try:
        family = parse_family(path.read_text(encoding="utf-8"))
    except FamilyFormatError as err:
        raise click.BadParameter(str(err), ctx, param_hint="PATH") from err
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err
    closed = updown_closure(family).updown
    if output_format == FamilyFormat.JSON:
        emit(FamilyExport.from_family(closed).to_json() + "\n", out)
    else:
        emit(format_family(closed), out)
    click.echo(f"{colored("closure size:", "blue")} {len(closed)} of {1 << family.n}", err=True)


@cli.command()
@click.argument("n", type=click.IntRange(min=0))
@click.option("svg", "--svg", type=click.Path(dir_okay=False, path_type=Path))
@click.option("tsv", "--tsv", type=click.Path(dir_okay=False, path_type=Path))
@click.option(
    "layout_path",
    "--layout",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="YAML file overriding the SVG layout.",
)
@click.pass_context
async def ferrers(
    ctx: Context, n: int, svg: Path | None, tsv: Path | None, layout_path: Path | None
) -> None:
    """Emit the Ferrers diagram of Phi(n, 2^n) >= ... >= Phi(n, 1)."""
    if svg is not None and tsv is not None:
        msg = "--svg and --tsv are mutually exclusive"
        raise click.UsageError(msg, ctx)
    try:
        if svg is not None:
            layout = FerrersLayout()
            if layout_path is not None:
                layout = FerrersLayout.from_yaml(layout_path.read_text(encoding="utf-8"))
            emit(await asyncio.to_thread(render_svg, n, layout), svg)
        else:
            emit(await asyncio.to_thread(render_tsv, n), tsv)
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err

    if svg is not None or tsv is not None:
        print(f"{colored("durfee square:", "blue")} {durfee_side(phi_partition(n))}")


@cli.command()
@click.option(
    "max_n",
    "--max-n",
    type=click.IntRange(0, MAX_N),
    default=DEFAULT_VERIFY_MAX_N,
    help="Largest ground size for the formula checks.",
)
@click.option(
    "oracle_max",
    "--oracle-max",
    type=click.IntRange(0, 4),
    default=DEFAULT_VERIFY_ORACLE_MAX,
    help="Largest ground size for the exhaustive oracle.",
)
@click.pass_context
async def verify(ctx: Context, max_n: int, oracle_max: int) -> None:
    """Run the invariant suite."""
    report = await asyncio.to_thread(run_suite, max_n, oracle_max)
    for check in report.checks:
        print(f"{passed(check.passed)} {check.name}: {check.detail}")
    failed = len(report.failed())
    print(f"{colored("checks:", "blue")} {len(report.checks) - failed} passed, {failed} failed")
    if not report.ok:
        ctx.exit(1)


@cli.command()
@click.argument("n", type=click.IntRange(min=0))
@click.argument("m", type=click.IntRange(min=0), required=False)
@click.pass_context
async def cross_sperner(ctx: Context, n: int, m: int | None) -> None:
    """Print g(n, m), or the largest m + g(n, m) next to its closed form."""
    try:
        if m is not None:
            print(cross_sperner_g(n, m))
        else:
            print(f"{cross_sperner_max(n)} {cross_sperner_bound(n)}")
    except USAGE_ERRORS as err:
        raise click.UsageError(str(err), ctx) from err


def emit(text: str, out: Path | None) -> None:
    """Write UTF-8 text with LF line endings to `out`, or print it."""
    if out is None:
        print(text, end="")
        return
    out.write_text(text, encoding="utf-8", newline="\n")


def passed(cond: bool) -> str:
    return colored("pass", "green") if cond else colored("FAIL", "red")


if __name__ == "__main__":
    cli()
