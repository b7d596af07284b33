"""Data models for the FLCA library."""

from .tree import (
    EulerTour,
    RootedTree,
    VertexId,
    build_tree,
    euler_tour,
    is_ancestor,
    walk_is_ancestor,
)
from .query import FaultSet, FlcaResult, QuerySet

__all__ = [
    "EulerTour",
    "RootedTree",
    "VertexId",
    "build_tree",
    "euler_tour",
    "is_ancestor",
    "walk_is_ancestor",
    "FaultSet",
    "FlcaResult",
    "QuerySet",
]
