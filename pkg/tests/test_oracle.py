"""Tests for the brute-force covering and equivalence oracle."""

import pytest
from hypothesis import given, settings as hyp_settings

from src.config import Settings
from src.exceptions import EmptyMarkSetError, InstanceTooLargeError, InvalidVertexError
from src.models import FaultSet, QuerySet, build_tree
from src.services import (
    brute_force_flca,
    compute_flca,
    connected_after_faults,
    covers,
    edge_fault_equivalent,
    equivalent,
)
from src.services.oracle import mixed_fault_witness, vertex_fault_witness

from .helpers import instances, make_engine


def test_covers(binary_h3):
    """A covers B when every b has an ancestor-or-self in A."""
    assert covers(binary_h3, [1], [7, 8, 9])
    assert covers(binary_h3, [7, 2], [7, 11, 14])
    assert not covers(binary_h3, [1], [7, 11])
    assert covers(binary_h3, [0], [])
    with pytest.raises(InvalidVertexError):
        covers(binary_h3, [15], [1])


def test_path_is_not_equivalent_at_f1(path3):
    """Failing the deepest vertex cuts off M={2} but not N={1}."""
    witness = vertex_fault_witness(path3, [2], [1], 1)

    assert not equivalent(path3, [2], [1], 1)
    assert witness is not None
    assert witness.vertices == frozenset({2})


def test_siblings_equivalent_to_parent_at_f1(fork):
    """With one fault, two siblings behave like their parent."""
    assert equivalent(fork, [2, 3], [1], 1)
    assert not equivalent(fork, [2, 3], [1], 2)


def test_brute_force_fork(fork):
    assert brute_force_flca(fork, [2, 3], 2) == ((2, 3), True)
    assert brute_force_flca(fork, [2, 3], 1) == ((1,), True)


def test_brute_force_guards(binary_h3, path3):
    """Instances past the configured limits are refused, never sampled."""
    with pytest.raises(InstanceTooLargeError):
        brute_force_flca(binary_h3, [7, 8], 2)
    with pytest.raises(InstanceTooLargeError):
        equivalent(path3, [2], [1], 2, Settings(oracle_enumeration_limit=3))
    with pytest.raises(EmptyMarkSetError):
        brute_force_flca(path3, [], 1)


def test_connected_after_faults(path3):
    """A failed edge disconnects exactly like its lower endpoint."""
    cut_edge = FaultSet.for_tree(path3, edges=[(1, 2)])

    assert not connected_after_faults(path3, [2], cut_edge)
    assert connected_after_faults(path3, [1], cut_edge)
    assert not connected_after_faults(path3, [1, 2], FaultSet.for_tree(path3, vertices=[0]))
    assert connected_after_faults(path3, [0], FaultSet())


def test_edge_fault_separation(path3):
    assert mixed_fault_witness(path3, [2], [1], 1) is not None
    assert not edge_fault_equivalent(path3, [2], [1], 1)


@given(instances(max_n=8, max_f=3))
def test_pruned_and_full_searches_agree(instance):
    """Restricting faults and candidates to ancestors of the marks changes nothing."""
    parents, marks, f = instance
    tree = build_tree(parents)
    full = Settings(oracle_prune_candidates=False)
    pruned = Settings(oracle_prune_candidates=True)

    assert brute_force_flca(tree, marks, f, full) == brute_force_flca(tree, marks, f, pruned)


@hyp_settings(max_examples=30)
@given(instances(max_n=7, max_f=2))
def test_flca_survives_edge_faults(instance):
    """M and FLCA(M, f) stay indistinguishable under mixed vertex and edge faults."""
    parents, marks, f = instance
    tree = build_tree(parents)
    index, scratch = make_engine(tree)
    reps = compute_flca(index, scratch, QuerySet.build(marks, f)).representatives

    assert edge_fault_equivalent(tree, marks, reps, f)
