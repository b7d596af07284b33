"""Immutable rooted tree over dense vertex ids 0..n-1."""

import logging
import operator
from collections import deque
from typing import Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..exceptions import (
    CycleDetectedError,
    InvalidVertexError,
    MultipleRootsError,
    NoRootError,
    ParentOutOfRangeError,
)

logger = logging.getLogger(__name__)

VertexId = int

NO_PARENT = -1


class EulerTour(BaseModel):
    """Depth-first vertex sequence with re-entries (length 2n-1)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    order: np.ndarray
    first_occurrence: np.ndarray
    last_occurrence: np.ndarray
    tour_depth: np.ndarray

    def __len__(self) -> int:
        return len(self.order)


class RootedTree(BaseModel):
    """Validated rooted tree; build instances with `build_tree`."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    root: VertexId
    parent: np.ndarray  # NO_PARENT at the root
    children: tuple[tuple[VertexId, ...], ...]
    depth: np.ndarray
    tour: EulerTour

    def parent_of(self, v: VertexId) -> VertexId | None:
        """Parent of v, or None for the root."""
        p = int(self.parent[self.check_vertex(v)])
        return None if p == NO_PARENT else p

    def check_vertex(self, v: VertexId) -> VertexId:
        """Return v as a plain int, raising if it is not a vertex of this tree."""
        try:
            v = operator.index(v)
        except TypeError:
            raise InvalidVertexError(f"vertex id must be an integer, got {v!r}") from None
        if not 0 <= v < self.n:
            raise InvalidVertexError(f"vertex {v} outside [0, {self.n})")
        return v

    def parent_list(self) -> list[VertexId | None]:
        """Parent array in the form accepted by `build_tree`."""
        return [None if p == NO_PARENT else p for p in self.parent.tolist()]

    def edges(self) -> Iterator[tuple[VertexId, VertexId]]:
        """Yield every tree edge as (parent, child), in child-id order."""
        for child, p in enumerate(self.parent.tolist()):
            if p != NO_PARENT:
                yield p, child

    def is_leaf(self, v: VertexId) -> bool:
        return not self.children[v]

    @property
    def height(self) -> int:
        return int(self.depth.max())


def build_tree(parent_list: Sequence[VertexId | None]) -> RootedTree:
    """
    Validate a parent array and build the rooted tree it encodes.

    Children are kept in encounter order (increasing child id), which fixes the
    Euler tour and every canonical output order downstream.

    Raises:
        NoRootError: the parent list is empty.
        ParentOutOfRangeError: a parent id lies outside [0, n).
        MultipleRootsError: more than one entry is None.
        CycleDetectedError: parent links do not all lead to the root.
    """
    n = len(parent_list)
    if n == 0:
        raise NoRootError("parent list is empty; a tree needs at least its root")

    parents: list[int] = []
    roots: list[int] = []
    for v, p in enumerate(parent_list):
        if p is None:
            roots.append(v)
            parents.append(NO_PARENT)
            continue
        p = operator.index(p)
        if not 0 <= p < n:
            raise ParentOutOfRangeError(f"parent of vertex {v} is {p}, outside [0, {n})")
        parents.append(p)

    if len(roots) > 1:
        raise MultipleRootsError(f"exactly one vertex may lack a parent, found {roots[:5]}")
    if not roots:
        # n >= 1 vertices each with one parent: the parent links close a cycle
        raise CycleDetectedError("every vertex has a parent, so parent links form a cycle")
    root = roots[0]

    children: list[list[int]] = [[] for _ in range(n)]
    for v, p in enumerate(parents):
        if p != NO_PARENT:
            children[p].append(v)

    depth = [0] * n
    seen = bytearray(n)
    seen[root] = 1
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for c in children[v]:
            depth[c] = depth[v] + 1
            seen[c] = 1
            queue.append(c)
    if not all(seen):
        stray = seen.index(0)
        raise CycleDetectedError(f"vertex {stray} does not reach root {root} by following parents")

    frozen_children = tuple(tuple(kids) for kids in children)
    depth_arr = np.asarray(depth, dtype=np.int64)
    tour = _build_tour(n, root, frozen_children, depth_arr)
    logger.debug(f"Built tree with n={n}, root={root}, height={int(depth_arr.max())}")
    return RootedTree.model_construct(
        n=n,
        root=root,
        parent=np.asarray(parents, dtype=np.int64),
        children=frozen_children,
        depth=depth_arr,
        tour=tour,
    )


def _build_tour(
    n: int, root: int, children: Sequence[Sequence[int]], depth: np.ndarray
) -> EulerTour:
    # iterative DFS; a vertex is re-appended after each child returns
    order: list[int] = [root]
    first = [0] * n
    last = [0] * n
    stack: list[list[int]] = [[root, 0]]
    while stack:
        frame = stack[-1]
        v, i = frame
        kids = children[v]
        if i < len(kids):
            frame[1] = i + 1
            c = kids[i]
            first[c] = len(order)
            last[c] = len(order)
            order.append(c)
            stack.append([c, 0])
        else:
            stack.pop()
            if stack:
                up = stack[-1][0]
                last[up] = len(order)
                order.append(up)

    order_arr = np.asarray(order, dtype=np.int64)
    return EulerTour.model_construct(
        order=order_arr,
        first_occurrence=np.asarray(first, dtype=np.int64),
        last_occurrence=np.asarray(last, dtype=np.int64),
        tour_depth=depth[order_arr],
    )


def euler_tour(tree: RootedTree) -> EulerTour:
    """Euler tour of the tree; children are visited in stored list order."""
    return tree.tour


def is_ancestor(tree: RootedTree, a: VertexId, b: VertexId) -> bool:
    """True iff a lies on the root-to-b path (a vertex is its own ancestor)."""
    a = tree.check_vertex(a)
    b = tree.check_vertex(b)
    first = tree.tour.first_occurrence
    return bool(first[a] <= first[b] <= tree.tour.last_occurrence[a])


def walk_is_ancestor(tree: RootedTree, a: VertexId, b: VertexId) -> bool:
    """Parent-chain version of `is_ancestor`, O(depth(b))."""
    a = tree.check_vertex(a)
    v = tree.check_vertex(b)
    parent = tree.parent
    while v != NO_PARENT:
        if v == a:
            return True
        v = int(parent[v])
    return False
