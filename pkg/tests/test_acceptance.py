"""Seeded sweeps against the brute-force oracle, plus the opt-in timing checks.

Set FLCA_RUN_BENCH=1 to include the n = 10^6 timing tests.
"""

import os

import pytest

from src.models import QuerySet, build_tree
from src.services import (
    BenchHarness,
    TreeGenerator,
    aggregate,
    brute_force_flca,
    compute_flca,
    compute_flca_offline,
    edge_fault_equivalent,
    equivalent,
)

from .helpers import make_engine, naive_lca_set


def seeded_instances(count, n_max, f_max, seed):
    gen = TreeGenerator(seed)
    for _ in range(count):
        yield gen.instance(n_max, f_max)


def answer(parents, marks, f):
    tree = build_tree(parents)
    index, scratch = make_engine(tree)
    return tree, compute_flca(index, scratch, QuerySet.build(marks, f)).representatives


def test_equivalence_on_1000_instances():
    """FLCA(M, f) is f-equivalent to M on every instance (n <= 12, f <= 3)."""
    for parents, marks, f in seeded_instances(1000, 12, 3, seed=101):
        tree, reps = answer(parents, marks, f)
        assert equivalent(tree, marks, reps, f), (parents, marks, f, reps)


def test_minimality_on_200_instances():
    """The oracle's unique smallest equivalent set is exactly FLCA(M, f)."""
    for parents, marks, f in seeded_instances(200, 10, 3, seed=202):
        tree, reps = answer(parents, marks, f)
        assert brute_force_flca(tree, marks, f) == (reps, True), (parents, marks, f)


def test_f1_is_lca_on_1000_instances():
    for parents, marks, _ in seeded_instances(1000, 30, 1, seed=303):
        _, reps = answer(parents, marks, 1)
        assert reps == (naive_lca_set(parents, marks),)


def test_edge_faults_on_100_instances():
    """Equivalence also holds when edges may fail (n <= 10, f <= 2)."""
    for parents, marks, f in seeded_instances(100, 10, 2, seed=404):
        tree, reps = answer(parents, marks, f)
        assert edge_fault_equivalent(tree, marks, reps, f), (parents, marks, f)


def test_aggregation_on_500_instances():
    for parents, marks, f in seeded_instances(500, 20, 4, seed=505):
        tree = build_tree(parents)
        index, scratch = make_engine(tree)
        half = len(marks) // 2
        left, right = marks[:half], marks[half:]
        one_shot = compute_flca(index, scratch, QuerySet.build(marks, f))
        state = aggregate(index, scratch, None, right, f)
        folded = aggregate(index, scratch, state, left, f) if left else state
        assert folded.representatives == one_shot.representatives


def test_offline_matches_online_on_1000_instances():
    for parents, marks, f in seeded_instances(1000, 40, 5, seed=606):
        tree, reps = answer(parents, marks, f)
        assert compute_flca_offline(tree, QuerySet.build(marks, f)).representatives == reps


BENCH_ONLY = pytest.mark.skipif(not os.environ.get("FLCA_RUN_BENCH"), reason="set FLCA_RUN_BENCH=1 to run")


@pytest.fixture(scope="module")
def bench_rows():
    harness = BenchHarness(shape="random", seed=0, repeat=5)
    return harness.run([500_000, 1_000_000], 4, [1000, 10_000])


@BENCH_ONLY
def test_query_time_tracks_marks(bench_rows):
    """At n = 10^6, 10x more marks costs at most 30x more query time."""
    small, large = sorted((r for r in bench_rows if r.n == 1_000_000), key=lambda r: r.m)

    assert large.query_ns <= 30 * small.query_ns, (small, large)


@BENCH_ONLY
def test_build_time_near_linear(bench_rows):
    """Doubling n grows preprocessing time by at most 2.6x."""
    build = {r.n: r.build_ns for r in bench_rows}

    assert build[1_000_000] <= 2.6 * build[500_000], build
