"""Line-oriented text formats for trees and queries.

Tree file::

    tree <n> <root-label>
    <child-label> <parent-label>      (n - 1 lines)

Query file::

    query <f> <label> <label> ...

Labels are whitespace-free tokens mapped to dense ids in first-appearance order.
Blank lines and lines starting with ``#`` are ignored in both formats.
"""

import logging
from pathlib import Path
from typing import Iterator, Sequence

from pydantic import BaseModel, ConfigDict, PrivateAttr

from ..exceptions import TreeFileParseError, TreeValidationError, UnknownLabelError
from ..models import FlcaResult, QuerySet, RootedTree, VertexId, build_tree

logger = logging.getLogger(__name__)


class QueryLine(BaseModel):
    """One parsed `query` line, labels still unresolved."""

    model_config = ConfigDict(frozen=True)

    line_no: int
    f: int
    labels: tuple[str, ...]


class LabeledTree(BaseModel):
    """A tree together with the external label of every vertex id."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tree: RootedTree
    labels: tuple[str, ...]

    _label_ids: dict[str, VertexId] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context: object) -> None:
        self._label_ids = {label: v for v, label in enumerate(self.labels)}

    def id_of(self, label: str, line_no: int | None = None) -> VertexId:
        try:
            return self._label_ids[label]
        except KeyError:
            raise UnknownLabelError(label, line_no) from None

    def resolve(self, line: QueryLine) -> QuerySet:
        return QuerySet.build((self.id_of(lb, line.line_no) for lb in line.labels), line.f)

    def format_result(self, result: FlcaResult, stats: bool = False) -> str:
        text = " ".join(["flca", str(result.f), *(self.labels[v] for v in result.representatives)])
        if stats:
            text += f" ; recursion_calls={result.recursion_calls} max_branching={result.max_branching}"
        return text


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield line_no, stripped.split()


def _positive_int(token: str, what: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise TreeFileParseError(f"{what} must be an integer, got {token!r}", line_no) from None
    if value < 1:
        raise TreeFileParseError(f"{what} must be >= 1, got {value}", line_no)
    return value


def parse_tree_text(text: str) -> LabeledTree:
    """Parse a tree file into a validated tree and its labels."""
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise TreeFileParseError("missing 'tree <n> <root-label>' header")
    line_no, tokens = header
    if len(tokens) != 3 or tokens[0] != "tree":
        raise TreeFileParseError("expected 'tree <n> <root-label>'", line_no)
    n = _positive_int(tokens[1], "vertex count", line_no)

    ids: dict[str, int] = {tokens[2]: 0}
    parents: list[int | None] = [None]

    def intern(label: str) -> int:
        if label not in ids:
            ids[label] = len(ids)
            parents.append(None)
        return ids[label]

    has_parent = {0}
    edges = 0
    for line_no, tokens in lines:
        if len(tokens) != 2:
            raise TreeFileParseError("expected '<child-label> <parent-label>'", line_no)
        child_label, parent_label = tokens
        child = intern(child_label)
        parent = intern(parent_label)
        if child == 0:
            raise TreeFileParseError(f"root {child_label!r} cannot appear as a child", line_no)
        if child in has_parent:
            raise TreeFileParseError(f"{child_label!r} already has a parent", line_no)
        has_parent.add(child)
        parents[child] = parent
        edges += 1
        if len(ids) > n:
            raise TreeFileParseError(f"more than {n} distinct labels", line_no)

    if edges != n - 1:
        raise TreeFileParseError(f"expected {n - 1} edge lines, found {edges}")
    if len(ids) != n:
        raise TreeFileParseError(f"expected {n} distinct labels, found {len(ids)}")
    try:
        tree = build_tree(parents)
    except TreeValidationError as e:
        raise TreeFileParseError(f"invalid tree: {e}") from e
    return LabeledTree(tree=tree, labels=tuple(ids))


def parse_query_text(text: str) -> list[QueryLine]:
    """Parse `query <f> <label> ...` lines."""
    queries = []
    for line_no, tokens in _content_lines(text):
        if tokens[0] != "query":
            raise TreeFileParseError("expected 'query <f> <label> ...'", line_no)
        if len(tokens) < 3:
            raise TreeFileParseError("a query needs a budget and at least one label", line_no)
        f = _positive_int(tokens[1], "fault budget", line_no)
        queries.append(QueryLine(line_no=line_no, f=f, labels=tuple(tokens[2:])))
    return queries


def read_tree_file(path: str | Path) -> LabeledTree:
    labeled = parse_tree_text(Path(path).read_text())
    logger.info(f"Loaded tree from {path}: n={labeled.tree.n}")
    return labeled


def read_query_file(path: str | Path) -> list[QueryLine]:
    queries = parse_query_text(Path(path).read_text())
    logger.info(f"Loaded {len(queries)} queries from {path}")
    return queries


def format_tree(parents: Sequence[VertexId | None], labels: Sequence[str] | None = None) -> str:
    """Render a parent array as a tree file (labels default to the ids)."""
    names = list(labels) if labels is not None else [str(v) for v in range(len(parents))]
    root = next(v for v, p in enumerate(parents) if p is None)
    out = [f"tree {len(parents)} {names[root]}"]
    out.extend(f"{names[v]} {names[p]}" for v, p in enumerate(parents) if p is not None)
    return "\n".join(out) + "\n"
