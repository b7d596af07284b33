"""Index, query, oracle and harness services."""

from .ancestry import AncestryIndex, build_index
from .flca import (
    FlcaAggregator,
    QueryScratch,
    ReachabilitySketch,
    aggregate,
    compute_flca,
    compute_flca_offline,
)
from .oracle import (
    brute_force_flca,
    connected_after_faults,
    covers,
    edge_fault_equivalent,
    equivalent,
)
from .generator import TreeGenerator
from .certifier import Certifier, VerifyReport
from .bench import BenchHarness, BenchRow

__all__ = [
    "AncestryIndex",
    "build_index",
    "FlcaAggregator",
    "QueryScratch",
    "ReachabilitySketch",
    "aggregate",
    "compute_flca",
    "compute_flca_offline",
    "brute_force_flca",
    "connected_after_faults",
    "covers",
    "edge_fault_equivalent",
    "equivalent",
    "TreeGenerator",
    "Certifier",
    "VerifyReport",
    "BenchHarness",
    "BenchRow",
]
