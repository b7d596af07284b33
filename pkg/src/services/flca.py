"""f-fault LCA computation.

`compute_flca` answers queries against a prebuilt `AncestryIndex` using a
reusable `QueryScratch`; `compute_flca_offline` needs only the tree and does one
linear pass. Both return the same `FlcaResult`.
"""

import logging
from typing import Iterable

import numpy as np

from ..exceptions import InvalidBudgetError, InvalidFaultError, ScratchDirtyError
from ..models import FaultSet, FlcaResult, QuerySet, RootedTree, VertexId
from .ancestry import AncestryIndex

logger = logging.getLogger(__name__)


class QueryScratch:
    """
    Per-vertex lookup table used to split a marked set among the children of
    its LCA.

    Each vertex has a switch bit and a bucket pointer. The first mark routed to
    a child flips its switch, opens a bucket and records the child in
    `touched`; later marks are appended to the open bucket. `drain` hands the
    buckets back in first-hit order and restores the cleaned state.

    One scratch serves one query at a time; concurrent queries need their own.
    """

    __slots__ = ("n", "switch_bits", "bucket_ptr", "touched")

    def __init__(self, n: int):
        self.n = n
        self.switch_bits = bytearray(n)
        self.bucket_ptr: list[list[VertexId] | None] = [None] * n
        self.touched: list[VertexId] = []

    @classmethod
    def for_index(cls, index: AncestryIndex) -> "QueryScratch":
        return cls(index.n)

    def route(self, mark: VertexId, child: VertexId) -> None:
        if self.switch_bits[child]:
            self.bucket_ptr[child].append(mark)  # type: ignore[union-attr]
        else:
            self.switch_bits[child] = 1
            self.bucket_ptr[child] = [mark]
            self.touched.append(child)

    def drain(self) -> list[tuple[VertexId, list[VertexId]]]:
        """Return (child, bucket) pairs in first-hit order and clean every touched entry."""
        buckets = []
        for child in self.touched:
            buckets.append((child, self.bucket_ptr[child]))
            self.bucket_ptr[child] = None
            self.switch_bits[child] = 0
        self.touched.clear()
        return buckets

    def ensure_ready(self, n: int) -> None:
        if self.n != n:
            raise ScratchDirtyError(f"scratch sized for n={self.n}, tree has n={n}")
        if self.touched:
            raise ScratchDirtyError(f"scratch has {len(self.touched)} open buckets from another query")

    def is_clean(self) -> bool:
        """Full O(n) check of the cleaned state."""
        return (
            not self.touched
            and not any(self.switch_bits)
            and self.bucket_ptr.count(None) == self.n
        )


def compute_flca(index: AncestryIndex, scratch: QueryScratch, query: QuerySet) -> FlcaResult:
    """
    Compute M* = FLCA(M, f).

    With l = LCA(M): return {l} if l is marked; otherwise split M among the d
    children of l whose subtrees hold marks, return {l} if d > f, and
    otherwise recurse on every part with budget f - d + 1. Recursion runs on
    an explicit stack, so a large f cannot exhaust the interpreter stack.

    Raises:
        InvalidVertexError: a mark is not a vertex of the indexed tree.
        ScratchDirtyError: the scratch is not clean or belongs to another tree.
    """
    marks = query.check_against(index.tree)
    scratch.ensure_ready(index.n)
    # |F| <= n, so any budget past n behaves like n
    budget = min(query.f, index.n)

    representatives: list[VertexId] = []
    stack: list[tuple[np.ndarray, int]] = [(marks, budget)]
    calls = 0
    max_branching = 0
    try:
        while stack:
            part, budget = stack.pop()
            calls += 1
            ell = index.lca_of_set(part)
            if part.size == 1 or bool((part == ell).any()):
                representatives.append(ell)
                continue

            children = index.anc_many(part, index.depth(ell) + 1)
            for mark, child in zip(part.tolist(), children.tolist()):
                scratch.route(mark, child)
            buckets = scratch.drain()
            d = len(buckets)
            max_branching = max(max_branching, d)
            if d > budget:
                representatives.append(ell)
                continue

            # 1 <= budget - d + 1 <= budget - 1, since d >= 2
            sub_budget = budget - d + 1
            for _, bucket in reversed(buckets):
                stack.append((np.asarray(bucket, dtype=np.int64), sub_budget))
    finally:
        if scratch.touched:
            scratch.drain()

    first = index.tour.first_occurrence
    representatives.sort(key=lambda v: int(first[v]))
    logger.debug(
        f"FLCA |M|={len(marks)} f={query.f}: |M*|={len(representatives)}, "
        f"calls={calls}, max_branching={max_branching}"
    )
    return FlcaResult(
        representatives=tuple(representatives),
        f=query.f,
        recursion_calls=calls,
        max_branching=max_branching,
    )


def tour_preorder(tree: RootedTree) -> np.ndarray:
    """Vertices in preorder: the tour positions that are first occurrences, O(n)."""
    order = tree.tour.order
    first = tree.tour.first_occurrence
    return order[first[order] == np.arange(len(order))]


def compute_flca_offline(tree: RootedTree, query: QuerySet) -> FlcaResult:
    """
    Compute FLCA(M, f) in one O(n) pass without an ancestry index.

    A bottom-up pass marks every vertex whose subtree holds a mark and builds,
    per vertex, the list of such children. A top-down replay then walks from
    the root: each part's LCA is reached by descending while the current vertex
    is unmarked with a single marked child, and branching follows the same
    rules as `compute_flca`.
    """
    marks = query.check_against(tree)
    n = tree.n
    budget = min(query.f, n)

    marked = bytearray(n)
    for v in marks.tolist():
        marked[v] = 1

    preorder = tour_preorder(tree).tolist()
    parent = tree.parent.tolist()
    has_mark = bytearray(marked)
    for v in reversed(preorder):
        if has_mark[v] and v != tree.root:
            has_mark[parent[v]] = 1

    hit_children: list[list[int]] = [[] for _ in range(n)]
    for v in preorder:
        if has_mark[v] and v != tree.root:
            hit_children[parent[v]].append(v)

    representatives: list[VertexId] = []
    stack: list[tuple[int, int]] = [(tree.root, budget)]
    calls = 0
    max_branching = 0
    while stack:
        v, budget = stack.pop()
        calls += 1
        while not marked[v] and len(hit_children[v]) == 1:
            v = hit_children[v][0]
        if marked[v]:
            representatives.append(v)
            continue
        kids = hit_children[v]
        d = len(kids)
        max_branching = max(max_branching, d)
        if d > budget:
            representatives.append(v)
            continue
        for child in reversed(kids):
            stack.append((child, budget - d + 1))

    first = tree.tour.first_occurrence
    representatives.sort(key=lambda v: int(first[v]))
    return FlcaResult(
        representatives=tuple(representatives),
        f=query.f,
        recursion_calls=calls,
        max_branching=max_branching,
    )


def aggregate(
    index: AncestryIndex,
    scratch: QueryScratch,
    state: FlcaResult | None,
    batch: Iterable[VertexId],
    f: int,
) -> FlcaResult:
    """FLCA(previous marks + batch, f), computed from the carried representatives only."""
    carried: tuple[VertexId, ...] = ()
    if state is not None:
        if state.f != f:
            raise InvalidBudgetError(f"carried state was built with f={state.f}, batch uses f={f}")
        carried = state.representatives
    query = QuerySet.build((*carried, *batch), f)
    return compute_flca(index, scratch, query)


class FlcaAggregator:
    """Fold marked batches into FLCA state, holding at most 2^(f-1) vertices between batches."""

    def __init__(self, index: AncestryIndex, f: int, scratch: QueryScratch | None = None):
        if f < 1:
            raise InvalidBudgetError(f"fault budget f must be >= 1, got {f}")
        self.index = index
        self.f = f
        self.scratch = scratch or QueryScratch.for_index(index)
        self.state: FlcaResult | None = None
        self.batches = 0

    def push(self, batch: Iterable[VertexId]) -> FlcaResult:
        self.state = aggregate(self.index, self.scratch, self.state, batch, self.f)
        self.batches += 1
        return self.state

    @property
    def carried(self) -> tuple[VertexId, ...]:
        return self.state.representatives if self.state else ()


class ReachabilitySketch:
    """
    Stores only FLCA(M, f) and answers whether the root still reaches some
    marked vertex after at most f vertex and/or edge failures.
    """

    def __init__(self, index: AncestryIndex, result: FlcaResult):
        self.index = index
        self.result = result

    @classmethod
    def build(cls, index: AncestryIndex, scratch: QueryScratch, query: QuerySet) -> "ReachabilitySketch":
        return cls(index, compute_flca(index, scratch, query))

    @property
    def f(self) -> int:
        return self.result.f

    def is_reachable(self, faults: FaultSet) -> bool:
        if faults.size > self.f:
            raise InvalidBudgetError(f"sketch covers up to {self.f} faults, got {faults.size}")
        # a failed edge cuts the root off exactly like its lower endpoint failing
        cut = faults.lower_endpoints()
        for x in cut:
            if not 0 <= x < self.index.n:
                raise InvalidFaultError(f"fault vertex {x} outside [0, {self.index.n})")
        is_ancestor = self.index.is_ancestor
        return any(not any(is_ancestor(x, u) for x in cut) for u in self.result.representatives)
