"""FLCA command-line interface."""

import logging
import sys

import click

from .config import get_settings
from .exceptions import FlcaError, TreeFileParseError, UnknownLabelError
from .services import BenchHarness, Certifier, QueryScratch, build_index, compute_flca, compute_flca_offline
from .services.generator import SHAPES, TreeGenerator
from .services.treefile import format_tree, read_query_file, read_tree_file

logger = logging.getLogger(__name__)

EXIT_DISCREPANCY = 1
EXIT_PARSE = 2
EXIT_UNKNOWN_LABEL = 3


def configure_logging(level: str) -> None:
    logging.basicConfig(
        level=level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


@click.group()
@click.option("--log-level", default=None, help="Override LOG_LEVEL.")
def cli(log_level: str | None) -> None:
    """f-fault lowest common ancestors: query, verify, gen, bench."""
    configure_logging(log_level or get_settings().log_level)


@cli.command()
@click.argument("tree_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("query_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--offline", is_flag=True, help="Use the linear-time pass instead of the index.")
@click.option("--stats", is_flag=True, help="Append recursion_calls and max_branching.")
def query(tree_path: str, query_path: str, offline: bool, stats: bool) -> None:
    """Answer every query line of QUERY_PATH against TREE_PATH."""
    try:
        labeled = read_tree_file(tree_path)
        lines = read_query_file(query_path)
    except TreeFileParseError as e:
        click.echo(f"parse error: {e}", err=True)
        sys.exit(EXIT_PARSE)

    index = None if offline else build_index(labeled.tree)
    scratch = None if index is None else QueryScratch.for_index(index)
    for line in lines:
        try:
            q = labeled.resolve(line)
        except UnknownLabelError as e:
            click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_UNKNOWN_LABEL)
        except FlcaError as e:
            click.echo(f"parse error: line {line.line_no}: {e}", err=True)
            sys.exit(EXIT_PARSE)
        if index is None:
            result = compute_flca_offline(labeled.tree, q)
        else:
            result = compute_flca(index, scratch, q)
        click.echo(labeled.format_result(result, stats=stats))
    logger.info(f"Answered {len(lines)} queries")


@cli.command()
@click.option("--n-max", type=click.IntRange(min=1), default=None)
@click.option("--f-max", type=click.IntRange(min=1), default=None)
@click.option("--instances", type=click.IntRange(min=0), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--exhaustive-n", type=click.IntRange(min=0), default=None)
@click.option("--edge-faults", is_flag=True, help="Also certify under mixed vertex/edge faults.")
@click.option("--corrupt", is_flag=True, hidden=True, help="Perturb results (negative control).")
def verify(
    n_max: int | None,
    f_max: int | None,
    instances: int | None,
    seed: int | None,
    exhaustive_n: int | None,
    edge_faults: bool,
    corrupt: bool,
) -> None:
    """Certify the fast path against the brute-force oracle."""
    certifier = Certifier(edge_faults=edge_faults, corrupt=corrupt)
    report = certifier.run(
        instances=instances, n_max=n_max, f_max=f_max, seed=seed, exhaustive_n=exhaustive_n
    )
    for name, count in sorted(report.checks.items()):
        click.echo(f"check {name} {count}")
    click.echo(f"instances {report.instances}")
    click.echo(f"discrepancies {len(report.discrepancies)}")
    if not report.passed:
        for discrepancy in report.discrepancies:
            click.echo(f"counterexample {discrepancy.dump()}")
        sys.exit(EXIT_DISCREPANCY)
    click.echo("PASS")


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--shape", type=click.Choice(SHAPES), default="random", show_default=True)
@click.option("--seed", type=int, default=None)
def gen(n: int, shape: str, seed: int | None) -> None:
    """Print a tree file with N vertices of the given shape."""
    seed = get_settings().gen_seed if seed is None else seed
    parents = TreeGenerator(seed).shape(shape, n)
    click.echo(format_tree(parents), nl=False)


@cli.command()
@click.option("--n", "n_values", type=click.IntRange(min=1), multiple=True)
@click.option("--f", "f", type=click.IntRange(min=1), default=None)
@click.option("--marks", "mark_sizes", type=click.IntRange(min=1), multiple=True)
@click.option("--repeat", type=click.IntRange(min=1), default=None)
@click.option("--shape", type=click.Choice(SHAPES), default="random", show_default=True)
@click.option("--seed", type=int, default=0)
def bench(
    n_values: tuple[int, ...],
    f: int | None,
    mark_sizes: tuple[int, ...],
    repeat: int | None,
    shape: str,
    seed: int,
) -> None:
    """Time preprocessing and per-query cost; prints bench,<n>,<f>,<m>,<build_ns>,<query_ns>."""
    settings = get_settings()
    harness = BenchHarness(shape=shape, seed=seed, repeat=repeat or settings.bench_repeat)
    rows = harness.run(
        n_values or (settings.bench_n,),
        f or settings.bench_f,
        mark_sizes or settings.bench_marks,
    )
    for row in rows:
        click.echo(row.csv())


if __name__ == "__main__":
    cli()
