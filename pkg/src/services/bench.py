"""Timing harness for index preprocessing and per-query FLCA cost."""

import logging
import statistics
import time
from typing import Iterable

from pydantic import BaseModel

from ..models import QuerySet, build_tree
from .ancestry import AncestryIndex, build_index
from .flca import QueryScratch, compute_flca
from .generator import TreeGenerator

logger = logging.getLogger(__name__)


class BenchRow(BaseModel):
    """Timing for one (n, f, |M|) point."""

    n: int
    f: int
    m: int
    build_ns: int
    query_ns: int

    def csv(self) -> str:
        return f"bench,{self.n},{self.f},{self.m},{self.build_ns},{self.query_ns}"


class BenchHarness:
    """Builds seeded trees, times preprocessing once and queries `repeat` times (median)."""

    def __init__(self, shape: str = "random", seed: int = 0, repeat: int = 5):
        self.shape = shape
        self.seed = seed
        self.repeat = repeat

    def time_build(self, n: int) -> tuple[AncestryIndex, int]:
        parents = TreeGenerator(self.seed).shape(self.shape, n)
        start = time.perf_counter_ns()
        index = build_index(build_tree(parents))
        return index, time.perf_counter_ns() - start

    def time_query(self, index: AncestryIndex, scratch: QueryScratch, query: QuerySet) -> int:
        samples = []
        for _ in range(self.repeat):
            start = time.perf_counter_ns()
            compute_flca(index, scratch, query)
            samples.append(time.perf_counter_ns() - start)
        return int(statistics.median(samples))

    def run(self, n_values: Iterable[int], f: int, mark_sizes: Iterable[int]) -> list[BenchRow]:
        rows = []
        sizes = list(mark_sizes)
        for n in n_values:
            index, build_ns = self.time_build(n)
            scratch = QueryScratch.for_index(index)
            gen = TreeGenerator(self.seed + 1)
            logger.info(f"n={n}: preprocessing took {build_ns / 1e6:.1f} ms")
            for m in sizes:
                query = QuerySet.build(gen.marks(n, m), f)
                query_ns = self.time_query(index, scratch, query)
                rows.append(BenchRow(n=n, f=f, m=len(query), build_ns=build_ns, query_ns=query_ns))
            if not scratch.is_clean():
                logger.error(f"Query scratch left dirty after benchmarking n={n}")
        log_scaling(rows)
        return rows


def log_scaling(rows: list[BenchRow]) -> None:
    """Log query-time growth against |M| growth and build-time growth against n growth."""
    by_n: dict[int, list[BenchRow]] = {}
    for row in rows:
        by_n.setdefault(row.n, []).append(row)
    for n, group in by_n.items():
        group = sorted(group, key=lambda r: r.m)
        for small, large in zip(group, group[1:]):
            ratio = large.query_ns / max(small.query_ns, 1)
            logger.info(
                f"n={n}: |M| x{large.m / small.m:.1f} -> query time x{ratio:.2f}"
            )
    builds = sorted({(r.n, r.build_ns) for r in rows})
    for (n1, b1), (n2, b2) in zip(builds, builds[1:]):
        logger.info(f"n x{n2 / n1:.1f} -> build time x{b2 / max(b1, 1):.2f}")
