"""Naive reference implementations and hypothesis strategies shared by the tests."""

from hypothesis import strategies as st

from src.services import QueryScratch, build_index


def naive_path_to_root(parents, v):
    """v, parent(v), ..., root."""
    path = [v]
    while parents[path[-1]] is not None:
        path.append(parents[path[-1]])
    return path


def naive_lca(parents, u, v):
    ancestors = set(naive_path_to_root(parents, u))
    for w in naive_path_to_root(parents, v):
        if w in ancestors:
            return w
    raise AssertionError("vertices share no ancestor")


def naive_lca_set(parents, vertices):
    vertices = list(vertices)
    ell = vertices[0]
    for v in vertices[1:]:
        ell = naive_lca(parents, ell, v)
    return ell


def naive_depth(parents, v):
    return len(naive_path_to_root(parents, v)) - 1


@st.composite
def parent_lists(draw, min_n=1, max_n=12):
    """Random rooted trees with shuffled ids, so the root is not always vertex 0."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    shape = [None] + [draw(st.integers(min_value=0, max_value=v - 1)) for v in range(1, n)]
    perm = draw(st.permutations(range(n)))
    parents = [None] * n
    for v, p in enumerate(shape):
        parents[perm[v]] = None if p is None else perm[p]
    return parents


@st.composite
def instances(draw, max_n=12, max_f=3):
    """(parents, marks, f) with a non-empty marked set."""
    parents = draw(parent_lists(max_n=max_n))
    n = len(parents)
    marks = draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=1, max_size=n, unique=True))
    f = draw(st.integers(min_value=1, max_value=max_f))
    return parents, marks, f


def make_engine(tree):
    """Index plus a scratch sized for it."""
    index = build_index(tree)
    return index, QueryScratch.for_index(index)
