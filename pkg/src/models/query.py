"""Query, result and fault-set models."""

import operator
from typing import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..exceptions import (
    EmptyMarkSetError,
    InvalidBudgetError,
    InvalidFaultError,
    InvalidVertexError,
)
from .tree import RootedTree, VertexId

# 2^(f-1) is reported exactly up to this exponent, as a lower bound beyond it
SIZE_BOUND_CAP_BITS = 63


class QuerySet(BaseModel):
    """A marked vertex set M (deduplicated, first-appearance order) and budget f."""

    model_config = ConfigDict(frozen=True)

    marks: tuple[VertexId, ...] = Field(min_length=1)
    f: int = Field(ge=1, description="Fault budget")

    @field_validator("marks")
    @classmethod
    def _dedupe(cls, marks: tuple[VertexId, ...]) -> tuple[VertexId, ...]:
        return tuple(dict.fromkeys(marks))

    @classmethod
    def build(cls, marks: Iterable[VertexId], f: int) -> "QuerySet":
        """Build a query, raising the package's named errors instead of ValidationError."""
        try:
            unique = tuple(dict.fromkeys(operator.index(m) for m in marks))
        except TypeError as e:
            raise InvalidVertexError(f"marks must be integer vertex ids: {e}") from None
        if not unique:
            raise EmptyMarkSetError("marked set M must be non-empty")
        if isinstance(f, bool) or operator.index(f) < 1:
            raise InvalidBudgetError(f"fault budget f must be >= 1, got {f}")
        return cls.model_construct(marks=unique, f=operator.index(f))

    def check_against(self, tree: RootedTree) -> np.ndarray:
        """Return the marks as an int64 array after checking they are vertices of tree."""
        arr = np.fromiter(self.marks, dtype=np.int64, count=len(self.marks))
        lo, hi = int(arr.min()), int(arr.max())
        if lo < 0 or hi >= tree.n:
            bad = lo if lo < 0 else hi
            raise InvalidVertexError(f"marked vertex {bad} outside [0, {tree.n})")
        return arr

    def __len__(self) -> int:
        return len(self.marks)


class FlcaResult(BaseModel):
    """The representative set M* = FLCA(M, f) with per-query statistics."""

    model_config = ConfigDict(frozen=True)

    representatives: tuple[VertexId, ...] = Field(
        description="M* in ascending Euler first-occurrence order"
    )
    f: int = Field(ge=1)
    recursion_calls: int = 0
    max_branching: int = 0

    def __len__(self) -> int:
        return len(self.representatives)

    def as_set(self) -> frozenset[VertexId]:
        return frozenset(self.representatives)

    @property
    def size_bound(self) -> int:
        """2^(f-1), capped at 2^63 (see `size_bound_capped`)."""
        return 1 << min(self.f - 1, SIZE_BOUND_CAP_BITS)

    @property
    def size_bound_capped(self) -> bool:
        return self.f - 1 > SIZE_BOUND_CAP_BITS

    def describe_bound(self) -> str:
        prefix = ">= " if self.size_bound_capped else ""
        return f"{prefix}{self.size_bound}"


class FaultSet(BaseModel):
    """Failed vertices and failed (parent, child) tree edges."""

    model_config = ConfigDict(frozen=True)

    vertices: frozenset[VertexId] = frozenset()
    edges: frozenset[tuple[VertexId, VertexId]] = frozenset()

    @classmethod
    def for_tree(
        cls,
        tree: RootedTree,
        vertices: Iterable[VertexId] = (),
        edges: Iterable[tuple[VertexId, VertexId]] = (),
    ) -> "FaultSet":
        """Build a fault set, checking every id and that every edge is a tree edge."""
        try:
            vs = frozenset(tree.check_vertex(v) for v in vertices)
        except InvalidVertexError as e:
            raise InvalidFaultError(str(e)) from None
        es = frozenset((int(p), int(c)) for p, c in edges)
        for p, c in es:
            if not (0 <= c < tree.n) or tree.parent_of(c) != p:
                raise InvalidFaultError(f"({p}, {c}) is not a tree edge")
        return cls.model_construct(vertices=vs, edges=es)

    @property
    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    def lower_endpoints(self) -> frozenset[VertexId]:
        """Vertices whose failure cuts the root off exactly as this fault set does."""
        return self.vertices | frozenset(c for _, c in self.edges)
