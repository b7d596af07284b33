"""LCA and level-ancestor index over a rooted tree.

LCA is answered by a range-minimum query over the Euler tour depths (sparse
table, O(n log n) build, O(1) query). Level ancestors use a binary-lifting
table (O(n log n) build, O(log n) query).
"""

import logging
from typing import Iterable

import numpy as np

from ..exceptions import EmptySetError, InvalidVertexError, QueryError
from ..models import RootedTree, VertexId
from ..models.tree import NO_PARENT

logger = logging.getLogger(__name__)


def _ilog2(value: int) -> int:
    """Integral part of the base-2 logarithm of a positive integer."""
    return value.bit_length() - 1


class AncestryIndex:
    """Static index answering lca(u, v) and anc(u, l) on one tree."""

    __slots__ = ("tree", "tour", "rmq", "jump", "_first", "_order", "_tour_depth", "_depth")

    def __init__(self, tree: RootedTree):
        self.tree = tree
        self.tour = tree.tour
        self._first = self.tour.first_occurrence
        self._order = self.tour.order
        self._tour_depth = self.tour.tour_depth
        self._depth = tree.depth
        self.rmq = self._build_rmq(self._tour_depth)
        self.jump = self._build_jump(tree.parent, int(tree.depth.max()))

    @staticmethod
    def _build_rmq(tour_depth: np.ndarray) -> np.ndarray:
        # rmq[k][i] = leftmost position of the minimum depth in [i, i + 2^k)
        m = len(tour_depth)
        levels = _ilog2(m) + 1
        rmq = np.full((levels, m), -1, dtype=np.int32)
        rmq[0] = np.arange(m, dtype=np.int32)
        for k in range(1, levels):
            half = 1 << (k - 1)
            width = m - (1 << k) + 1
            left = rmq[k - 1, :width]
            right = rmq[k - 1, half : half + width]
            rmq[k, :width] = np.where(tour_depth[left] <= tour_depth[right], left, right)
        return rmq

    @staticmethod
    def _build_jump(parent: np.ndarray, height: int) -> np.ndarray:
        # jump[k][v] = 2^k-th ancestor of v, NO_PARENT past the root
        levels = height.bit_length()
        jump = np.full((levels, len(parent)), NO_PARENT, dtype=np.int32)
        if levels:
            jump[0] = parent
        for k in range(1, levels):
            prev = jump[k - 1]
            jump[k] = np.where(prev != NO_PARENT, prev[prev], NO_PARENT)
        return jump

    @property
    def n(self) -> int:
        return self.tree.n

    def depth(self, v: VertexId) -> int:
        return int(self._depth[self.tree.check_vertex(v)])

    def _check_ids(self, arr: np.ndarray) -> None:
        if arr.size and (int(arr.min()) < 0 or int(arr.max()) >= self.n):
            raise InvalidVertexError(f"vertex set has ids outside [0, {self.n})")

    def lca(self, u: VertexId, v: VertexId) -> VertexId:
        """Deepest common ancestor of u and v; lca(u, u) = u."""
        check = self.tree.check_vertex
        return self._lca(check(u), check(v))

    def _lca(self, u: int, v: int) -> int:
        left = int(self._first[u])
        right = int(self._first[v])
        if left > right:
            left, right = right, left
        k = _ilog2(right - left + 1)
        row = self.rmq[k]
        a = row[left]
        b = row[right - (1 << k) + 1]
        pos = a if self._tour_depth[a] <= self._tour_depth[b] else b
        return int(self._order[pos])

    def anc(self, u: VertexId, level: int) -> VertexId | None:
        """Ancestor of u at depth `level`, or None when depth(u) < level."""
        u = self.tree.check_vertex(u)
        if level < 0:
            raise QueryError(f"depth level must be >= 0, got {level}")
        diff = int(self._depth[u]) - level
        if diff < 0:
            return None
        k = 0
        while diff:
            if diff & 1:
                u = int(self.jump[k, u])
            diff >>= 1
            k += 1
        return u

    def anc_many(self, vertices: np.ndarray, level: int) -> np.ndarray:
        """Vectorised `anc`; entries whose depth is below `level` come back as -1."""
        vertices = np.asarray(vertices, dtype=np.int64)
        self._check_ids(vertices)
        if level < 0:
            raise QueryError(f"depth level must be >= 0, got {level}")
        diff = self._depth[vertices] - level
        out = np.where(diff >= 0, vertices, NO_PARENT)
        diff = np.maximum(diff, 0)
        k = 0
        while diff.any():
            step = (diff & 1).astype(bool)
            out[step] = self.jump[k, out[step]]
            diff >>= 1
            k += 1
        return out

    def lca_of_set(self, marks: Iterable[VertexId] | np.ndarray) -> VertexId:
        """
        LCA of a non-empty vertex set.

        Equals folding `lca` over the set; computed as the LCA of the two
        members with the smallest and largest Euler first occurrence, since
        every vertex of the set lies inside that tour range.
        """
        arr = np.asarray(marks if isinstance(marks, np.ndarray) else list(marks), dtype=np.int64)
        if arr.size == 0:
            raise EmptySetError("LCA of an empty vertex set is undefined")
        self._check_ids(arr)
        if arr.size == 1:
            return int(arr[0])
        pos = self._first[arr]
        return self._lca(int(arr[pos.argmin()]), int(arr[pos.argmax()]))

    def is_ancestor(self, a: VertexId, b: VertexId) -> bool:
        """Interval containment on the Euler tour, O(1)."""
        check = self.tree.check_vertex
        a, b = check(a), check(b)
        first = self._first
        return bool(first[a] <= first[b] <= self.tour.last_occurrence[a])

    def nbytes(self) -> int:
        return int(self.rmq.nbytes + self.jump.nbytes)


def build_index(tree: RootedTree) -> AncestryIndex:
    """Preprocess a tree for LCA and level-ancestor queries."""
    index = AncestryIndex(tree)
    logger.info(
        f"Built ancestry index: n={tree.n}, rmq_levels={index.rmq.shape[0]}, "
        f"jump_levels={index.jump.shape[0]}, {index.nbytes() / 1e6:.1f} MB"
    )
    return index
