"""Enumeration and random generation of small ultrametric spaces.

Shapes are rooted trees with every internal out-degree >= 2, identified up
to isomorphism.  Spaces are enumerated up to weak similarity by assigning
label ranks 1..m to internal nodes, strictly decreasing away from the
root, and deduplicating by canonical code; realized with integer labels,
each class appears exactly once.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .canonical import canonical_code
from .core import ZERO, Space
from .errors import FormatMismatch
from .tree import RootedTree, tree_to_space
from .unrooted import UnrootedTree

# A shape is a nested tuple: () is a leaf, otherwise the sorted tuple of
# child shapes.


def shape_leaf_count(shape) -> int:
    if shape == ():
        return 1
    return sum(shape_leaf_count(c) for c in shape)


def _partitions(total: int, max_part: int) -> list[tuple[int, ...]]:
    """Integer partitions of ``total`` in descending order, parts <= max_part."""
    if total == 0:
        return [()]
    out = []
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def enumerate_shapes(n_leaves: int) -> tuple:
    """All shapes with the given number of leaves, sorted canonically."""
    if n_leaves < 1:
        raise FormatMismatch("shapes need at least one leaf")
    if n_leaves == 1:
        return ((),)
    found = set()
    for part in _partitions(n_leaves, n_leaves - 1):
        if len(part) < 2:
            continue
        # group equal part sizes to draw multisets of child shapes
        sizes: dict[int, int] = {}
        for s in part:
            sizes[s] = sizes.get(s, 0) + 1
        pools = [
            list(combinations_with_replacement(enumerate_shapes(s), mult))
            for s, mult in sorted(sizes.items())
        ]
        for combo in product(*pools):
            children = tuple(sorted(c for group in combo for c in group))
            found.add(children)
    return tuple(sorted(found))


def _rank_labelings(shape) -> list[tuple[int, ...]]:
    """Strictly decreasing rank assignments onto internal nodes, normalized.

    Returned vectors list ranks in internal-node preorder; gaps are
    compressed so the used values are exactly 1..m.
    """
    parents: list[int] = []

    def scan(node, parent_idx):
        if node == ():
            return
        idx = len(parents)
        parents.append(parent_idx)
        for child in node:
            scan(child, idx)

    scan(shape, -1)
    k = len(parents)
    if k == 0:
        return [()]
    out: list[tuple[int, ...]] = []
    seen = set()
    vec = [0] * k

    def assign(i: int):
        if i == k:
            used = sorted(set(vec))
            remap = {v: r + 1 for r, v in enumerate(used)}
            norm = tuple(remap[v] for v in vec)
            if norm not in seen:
                seen.add(norm)
                out.append(norm)
            return
        top = k if parents[i] < 0 else vec[parents[i]] - 1
        for val in range(1, top + 1):
            vec[i] = val
            assign(i + 1)

    assign(0)
    return out


def _tree_from_shape(shape, ranks: tuple[int, ...]) -> RootedTree:
    labels: list[Fraction] = []
    children: list[tuple[int, ...]] = []
    points: list[str | None] = []
    internal_seen = 0
    leaf_seen = 0

    def emit(node) -> int:
        nonlocal internal_seen, leaf_seen
        idx = len(labels)
        labels.append(ZERO)
        children.append(())
        points.append(None)
        if node == ():
            leaf_seen += 1
            points[idx] = f"x{leaf_seen}"
        else:
            labels[idx] = Fraction(ranks[internal_seen])
            internal_seen += 1
            children[idx] = tuple(emit(c) for c in node)
        return idx

    emit(shape)
    return RootedTree(labels, children, points, root=0)


@lru_cache(maxsize=None)
def enumerate_rank_trees(n_leaves: int) -> tuple[RootedTree, ...]:
    """Representing trees of all weak-similarity classes on n_leaves points."""
    out = []
    seen = set()
    for shape in enumerate_shapes(n_leaves):
        for ranks in _rank_labelings(shape):
            tree = _tree_from_shape(shape, ranks)
            code = canonical_code(tree, "labeled")
            if code not in seen:
                seen.add(code)
                out.append(tree)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_spaces(n_leaves: int) -> tuple[Space, ...]:
    """One space per weak-similarity class, labels realized as ranks 1..m."""
    return tuple(tree_to_space(t) for t in enumerate_rank_trees(n_leaves))


_LABEL_STEPS = (
    Fraction(1, 2),
    Fraction(1, 3),
    Fraction(2, 3),
    Fraction(1, 4),
    Fraction(3, 4),
    Fraction(5, 6),
)


def random_space(n: int, seed) -> Space:
    """A pseudo-random n-point ultrametric space; same (n, seed) -> same space.

    Built by drawing a random shape and scaling each internal label down
    from its parent by a random rational step, so repeated labels across
    branches (and the structure classes that depend on them) occur often.
    """
    if n < 1:
        raise FormatMismatch("spaces need at least one point")
    rng = random.Random(seed)
    labels: list[Fraction] = []
    children: list[tuple[int, ...]] = []
    points: list[str | None] = []
    leaf_seen = 0
    # stack of (leaf budget, node id); labels assigned top-down
    labels.append(ZERO)
    children.append(())
    points.append(None)
    stack = [(n, 0, None)]
    while stack:
        budget, idx, parent_label = stack.pop()
        if budget == 1:
            leaf_seen += 1
            points[idx] = f"x{leaf_seen}"
            continue
        if parent_label is None:
            label = Fraction(rng.randint(4, 12))
        else:
            label = parent_label * rng.choice(_LABEL_STEPS)
        labels[idx] = label
        k = rng.randint(2, min(budget, 4))
        cuts = sorted(rng.sample(range(1, budget), k - 1))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        kid_ids = []
        for size in sizes:
            cid = len(labels)
            labels.append(ZERO)
            children.append(())
            points.append(None)
            kid_ids.append(cid)
            stack.append((size, cid, label))
        children[idx] = tuple(kid_ids)
    return tree_to_space(RootedTree(labels, children, points, root=0))


def random_unrooted(n: int, seed) -> UnrootedTree:
    """A pseudo-random vertex-labeled free tree that generates an ultrametric."""
    if n < 1:
        raise FormatMismatch("trees need at least one vertex")
    rng = random.Random(seed)
    vertices = [f"x{i}" for i in range(1, n + 1)]
    edges = []
    for i in range(1, n):
        edges.append((vertices[rng.randrange(i)], vertices[i]))
    labels = {v: Fraction(rng.randint(1, 9)) for v in vertices}
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = list(vertices)
    rng.shuffle(order)
    for v in order:
        # zero labels are allowed on an independent set only
        if rng.random() < 0.25 and all(labels[w] != 0 for w in adj[v]):
            labels[v] = ZERO
    return UnrootedTree(vertices, edges, labels)
