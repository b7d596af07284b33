"""Seeded tree and marked-set generation for fixtures, sweeps and benchmarks."""

import logging
from itertools import product
from typing import Iterator

import numpy as np

from ..models import VertexId

logger = logging.getLogger(__name__)

ParentList = list[VertexId | None]

SHAPES = ("path", "star", "binary", "random", "caterpillar")


def full_binary_parents(height: int) -> ParentList:
    """Full binary tree of the given height in heap order (root 0, children 2v+1, 2v+2)."""
    n = (1 << (height + 1)) - 1
    return [None] + [(v - 1) // 2 for v in range(1, n)]


def worst_case_instance(f: int) -> tuple[ParentList, list[VertexId]]:
    """Full binary tree of height f-1 with every leaf marked: FLCA has 2^(f-1) vertices."""
    height = f - 1
    parents = full_binary_parents(height)
    first_leaf = (1 << height) - 1
    return parents, list(range(first_leaf, len(parents)))


def all_parent_arrays(n: int) -> Iterator[ParentList]:
    """Every rooted tree on n vertices encoded with parent[v] < v (root 0)."""
    for tail in product(*(range(v) for v in range(1, n))):
        yield [None, *tail]


class TreeGenerator:
    """Seeded source of trees, marked sets and budgets."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def shape(self, name: str, n: int) -> ParentList:
        builders = {
            "path": self.path,
            "star": self.star,
            "binary": self.binary,
            "random": self.random_tree,
            "caterpillar": self.caterpillar,
        }
        if name not in builders:
            raise ValueError(f"unknown shape {name!r}; choose from {', '.join(SHAPES)}")
        if n < 1:
            raise ValueError(f"a tree needs n >= 1 vertices, got {n}")
        return builders[name](n)

    def path(self, n: int) -> ParentList:
        return [None] + list(range(n - 1))

    def star(self, n: int) -> ParentList:
        return [None] + [0] * (n - 1)

    def binary(self, n: int) -> ParentList:
        """Heap-ordered binary tree; full when n = 2^(h+1) - 1."""
        return [None] + [(v - 1) // 2 for v in range(1, n)]

    def random_tree(self, n: int) -> ParentList:
        """Random recursive tree with vertex ids shuffled, so the root is not always 0."""
        if n == 1:
            return [None]
        parent = (self.rng.random(n - 1) * np.arange(1, n)).astype(np.int64)
        perm = self.rng.permutation(n)
        shuffled: ParentList = [None] * n
        for child, p in zip(perm[1:].tolist(), perm[parent].tolist()):
            shuffled[child] = p
        return shuffled

    def caterpillar(self, n: int) -> ParentList:
        spine = max(1, n // 2)
        parents: ParentList = [None] + list(range(spine - 1))
        if n > spine:
            legs = self.rng.integers(0, spine, size=n - spine)
            parents.extend(legs.tolist())
        return parents

    def marks(self, n: int, size: int) -> list[VertexId]:
        size = max(1, min(size, n))
        return self.rng.choice(n, size=size, replace=False).tolist()

    def instance(self, n_max: int, f_max: int) -> tuple[ParentList, list[VertexId], int]:
        """A random (parents, marks, f) with 1 <= n <= n_max and 1 <= f <= f_max."""
        n = int(self.rng.integers(1, n_max + 1))
        shape = SHAPES[int(self.rng.integers(0, len(SHAPES)))]
        parents = self.shape(shape, n)
        marks = self.marks(n, int(self.rng.integers(1, n + 1)))
        f = int(self.rng.integers(1, f_max + 1))
        return parents, marks, f
