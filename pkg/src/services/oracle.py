"""Brute-force ground truth for covering, fault equivalence and FLCA minimality.

Everything here enumerates fault sets (and candidate sets) explicitly, so every
entry point is guarded by the limits in `Settings` and raises
`InstanceTooLargeError` rather than sampling.
"""

import logging
from collections import deque
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

import numpy as np

from ..config import Settings, get_settings
from ..exceptions import EmptyMarkSetError, InstanceTooLargeError
from ..models import FaultSet, RootedTree, VertexId
from ..models.tree import NO_PARENT

logger = logging.getLogger(__name__)


def covers(tree: RootedTree, a_set: Iterable[VertexId], b_set: Iterable[VertexId]) -> bool:
    """True iff every b in B has an ancestor (possibly itself) in A."""
    a_members = {tree.check_vertex(a) for a in a_set}
    parent = tree.parent
    for b in b_set:
        v = tree.check_vertex(b)
        while v != NO_PARENT and v not in a_members:
            v = int(parent[v])
        if v == NO_PARENT:
            return False
    return True


class _CoverKernel:
    """Ancestor sets as bitmasks: F covers B iff every anc_mask[b] meets F's mask."""

    def __init__(self, tree: RootedTree):
        self.tree = tree
        parent = tree.parent.tolist()
        preorder = sorted(range(tree.n), key=lambda v: int(tree.tour.first_occurrence[v]))
        self.anc_mask = [0] * tree.n
        for v in preorder:
            p = parent[v]
            self.anc_mask[v] = (self.anc_mask[p] if p != NO_PARENT else 0) | (1 << v)

    def covered(self, fault_mask: int, targets: Iterable[VertexId]) -> bool:
        anc_mask = self.anc_mask
        return all(anc_mask[t] & fault_mask for t in targets)

    def ancestors_of(self, vertices: Iterable[VertexId]) -> list[VertexId]:
        mask = 0
        for v in vertices:
            mask |= self.anc_mask[v]
        return [v for v in range(self.tree.n) if mask >> v & 1]


def _guard(universe: int, f: int, limit: int, what: str) -> None:
    total = sum(comb(universe, k) for k in range(min(f, universe) + 1))
    if total > limit:
        raise InstanceTooLargeError(
            f"{what}: {total} fault sets over {universe} elements exceed the limit of {limit}"
        )


def _fault_masks(universe: list[VertexId], f: int) -> Iterator[tuple[int, tuple[VertexId, ...]]]:
    bits = [1 << v for v in universe]
    for k in range(min(f, len(universe)) + 1):
        for combo in combinations(range(len(universe)), k):
            yield sum(bits[i] for i in combo), tuple(universe[i] for i in combo)


def _checked(tree: RootedTree, vertices: Iterable[VertexId]) -> list[VertexId]:
    return sorted({tree.check_vertex(v) for v in vertices})


def vertex_fault_witness(
    tree: RootedTree,
    m_set: Iterable[VertexId],
    n_set: Iterable[VertexId],
    f: int,
    settings: Settings | None = None,
) -> FaultSet | None:
    """A vertex fault set of size <= f covering exactly one of M and N, or None."""
    settings = settings or get_settings()
    ms, ns = _checked(tree, m_set), _checked(tree, n_set)
    kernel = _CoverKernel(tree)
    if settings.oracle_prune_candidates:
        # faults off every root path to M and N never cover anything in them
        universe = kernel.ancestors_of(ms + ns)
    else:
        universe = list(range(tree.n))
    _guard(len(universe), f, settings.oracle_enumeration_limit, "vertex-fault equivalence")

    for mask, faults in _fault_masks(universe, f):
        if kernel.covered(mask, ms) != kernel.covered(mask, ns):
            return FaultSet.model_construct(vertices=frozenset(faults), edges=frozenset())
    return None


def equivalent(
    tree: RootedTree,
    m_set: Iterable[VertexId],
    n_set: Iterable[VertexId],
    f: int,
    settings: Settings | None = None,
) -> bool:
    """True iff F covers M exactly when F covers N, for every vertex set F with |F| <= f."""
    return vertex_fault_witness(tree, m_set, n_set, f, settings) is None


def brute_force_flca(
    tree: RootedTree,
    m_set: Iterable[VertexId],
    f: int,
    settings: Settings | None = None,
) -> tuple[tuple[VertexId, ...], bool]:
    """
    Smallest N with N ~f M, by enumerating candidate sets in order of size then
    lexicographically. Returns (N in Euler first-occurrence order, whether no other
    set of that size is equivalent).
    """
    settings = settings or get_settings()
    ms = _checked(tree, m_set)
    if not ms:
        raise EmptyMarkSetError("marked set M must be non-empty")
    if tree.n > settings.oracle_subset_max_n or f > settings.oracle_subset_max_f:
        raise InstanceTooLargeError(
            f"minimal-set search limited to n <= {settings.oracle_subset_max_n} and "
            f"f <= {settings.oracle_subset_max_f}, got n={tree.n}, f={f}"
        )
    _guard(tree.n, f, settings.oracle_enumeration_limit, "minimal-set search")

    kernel = _CoverKernel(tree)
    masks = [mask for mask, _ in _fault_masks(list(range(tree.n)), f)]
    expected = [kernel.covered(mask, ms) for mask in masks]
    if settings.oracle_prune_candidates:
        candidates = kernel.ancestors_of(ms)
    else:
        candidates = list(range(tree.n))

    first = tree.tour.first_occurrence
    for size in range(1, len(candidates) + 1):
        found: tuple[VertexId, ...] | None = None
        for cand in combinations(candidates, size):
            if all(kernel.covered(mask, cand) == want for mask, want in zip(masks, expected)):
                if found is not None:
                    logger.warning(f"Second minimal equivalent set {cand} besides {found}")
                    return _canonical(found, first), False
                found = cand
        if found is not None:
            return _canonical(found, first), True
    # M itself is always equivalent, so the loop returns by size |M| at the latest
    raise AssertionError("no equivalent set found")


def _canonical(vertices: Iterable[VertexId], first: np.ndarray) -> tuple[VertexId, ...]:
    return tuple(sorted(vertices, key=lambda v: int(first[v])))


def connected_after_faults(tree: RootedTree, targets: Iterable[VertexId], faults: FaultSet) -> bool:
    """True iff the root reaches some target once failed vertices and edges are removed."""
    goal = {tree.check_vertex(t) for t in targets}
    if tree.root in faults.vertices:
        return False
    if tree.root in goal:
        return True
    cut = {c for _, c in faults.edges} | faults.vertices
    queue = deque([tree.root])
    while queue:
        v = queue.popleft()
        for c in tree.children[v]:
            if c in cut:
                continue
            if c in goal:
                return True
            queue.append(c)
    return False


def mixed_fault_witness(
    tree: RootedTree,
    m_set: Iterable[VertexId],
    n_set: Iterable[VertexId],
    f: int,
    settings: Settings | None = None,
) -> FaultSet | None:
    """A mixed vertex/edge fault set of size <= f separating M from N, or None."""
    settings = settings or get_settings()
    ms, ns = _checked(tree, m_set), _checked(tree, n_set)
    elements: list[tuple[str, object]] = [("v", v) for v in range(tree.n)]
    elements += [("e", edge) for edge in tree.edges()]
    _guard(len(elements), f, settings.oracle_enumeration_limit, "mixed-fault equivalence")

    for k in range(min(f, len(elements)) + 1):
        for combo in combinations(elements, k):
            faults = FaultSet.model_construct(
                vertices=frozenset(x for kind, x in combo if kind == "v"),
                edges=frozenset(x for kind, x in combo if kind == "e"),
            )
            if connected_after_faults(tree, ms, faults) != connected_after_faults(tree, ns, faults):
                return faults
    return None


def edge_fault_equivalent(
    tree: RootedTree,
    m_set: Iterable[VertexId],
    n_set: Iterable[VertexId],
    f: int,
    settings: Settings | None = None,
) -> bool:
    """Root connectivity to M and to N agrees under every mixed fault set of size <= f."""
    return mixed_fault_witness(tree, m_set, n_set, f, settings) is None
