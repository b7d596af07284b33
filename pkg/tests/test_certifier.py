"""Tests for the certification harness and counterexample minimisation."""

from src.config import Settings
from src.services import Certifier
from src.services.certifier import Discrepancy, VerifyReport


def small_settings(**overrides):
    values = dict(verify_instances=20, verify_n_max=6, verify_f_max=2, verify_exhaustive_n=3)
    values.update(overrides)
    return Settings(**values)


def test_check_instance_runs_every_check():
    """A small f=1 instance triggers the full list of checks and passes them."""
    certifier = Certifier(small_settings(), edge_faults=True)

    failures, ran = certifier.check_instance([None, 0, 1, 1], [2, 3], 1)

    assert failures == []
    assert set(ran) == {
        "size_bound",
        "ancestor_free",
        "sandwich",
        "lca_of_marked_descendants",
        "offline",
        "f1_is_lca",
        "idempotence",
        "aggregation",
        "equivalence",
        "minimality",
        "edge_faults",
        "scratch_hygiene",
    }


def test_minimality_skipped_past_guard():
    """Instances past the subset guard skip only the minimality check."""
    certifier = Certifier(small_settings(oracle_subset_max_n=3))

    failures, ran = certifier.check_instance([None, 0, 0, 1, 1], [3, 4, 2], 2)

    assert failures == []
    assert "minimality" not in ran
    assert "equivalence" in ran


def test_run_passes_and_counts():
    report = Certifier(small_settings()).run()

    assert report.passed
    assert report.instances > 20
    assert report.checks["worst_case"] == 6
    assert report.total_checks == sum(report.checks.values())


def test_run_is_reproducible():
    first = Certifier(small_settings()).run(seed=3)
    second = Certifier(small_settings()).run(seed=3)

    assert first.checks == second.checks
    assert first.instances == second.instances


def test_corruption_is_detected_and_minimised():
    """Dropping a representative is caught; the counterexample shrinks."""
    certifier = Certifier(small_settings(), corrupt=True)

    report = certifier.run(instances=10, exhaustive_n=0)

    assert not report.passed
    assert any(d.check == "worst_case" for d in report.discrepancies)
    shrunk = [d for d in report.discrepancies if d.check != "worst_case"]
    assert shrunk, "random instances should also expose the corruption"
    assert all(len(d.parents) <= 6 for d in shrunk)


def test_minimize_removes_irrelevant_vertices():
    """Extra leaves and marks that do not matter are stripped from a failure."""
    certifier = Certifier(small_settings(), corrupt=True)
    parents = [None, 0, 1, 1, 0, 4]
    failures, _ = certifier.check_instance(parents, [2, 3, 5], 3)
    assert failures

    small = certifier.minimize(failures[0])

    assert len(small.parents) < len(parents) or len(small.marks) < 3
    assert small.check == failures[0].check


def test_discrepancy_dump():
    d = Discrepancy(check="sandwich", parents=[None, 0], marks=[1], f=1, detail="oops")

    dumped = d.dump()

    assert "sandwich" in dumped
    assert "oops" in dumped
    assert not VerifyReport(discrepancies=[d]).passed
