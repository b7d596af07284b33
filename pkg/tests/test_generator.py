"""Tests for seeded instance generation."""

import pytest

from src.models import build_tree
from src.services import TreeGenerator
from src.services.generator import SHAPES, all_parent_arrays, full_binary_parents, worst_case_instance


@pytest.mark.parametrize("shape", SHAPES)
@pytest.mark.parametrize("n", [1, 2, 17, 200])
def test_every_shape_builds_a_valid_tree(shape, n):
    parents = TreeGenerator(5).shape(shape, n)

    tree = build_tree(parents)

    assert tree.n == n


def test_same_seed_same_tree():
    assert TreeGenerator(9).random_tree(100) == TreeGenerator(9).random_tree(100)
    assert TreeGenerator(9).random_tree(100) != TreeGenerator(10).random_tree(100)


def test_shapes():
    gen = TreeGenerator()

    assert build_tree(gen.path(50)).height == 49
    assert build_tree(gen.star(50)).height == 1
    assert build_tree(full_binary_parents(4)).n == 31


def test_unknown_shape():
    with pytest.raises(ValueError):
        TreeGenerator().shape("blob", 5)
    with pytest.raises(ValueError):
        TreeGenerator().shape("path", 0)


def test_worst_case_instance():
    parents, marks = worst_case_instance(4)

    assert len(parents) == 15
    assert marks == list(range(7, 15))


def test_all_parent_arrays_counts():
    """Labelled increasing trees on n vertices number (n-1)!."""
    assert [sum(1 for _ in all_parent_arrays(n)) for n in range(1, 6)] == [1, 1, 2, 6, 24]


def test_marks_are_distinct_and_in_range():
    gen = TreeGenerator(3)
    marks = gen.marks(20, 50)

    assert sorted(marks) == list(range(20))
    assert len(set(gen.marks(1000, 40))) == 40


def test_instance_bounds():
    gen = TreeGenerator(1)
    for _ in range(200):
        parents, marks, f = gen.instance(8, 3)
        assert 1 <= len(parents) <= 8
        assert 1 <= f <= 3
        assert marks and all(0 <= m < len(parents) for m in marks)
