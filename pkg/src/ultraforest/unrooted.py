"""Unrooted vertex-labeled trees and the ultrametrics they generate.

A free tree T with nonnegative vertex labels defines a distance between
vertices as the maximum label along the connecting path, endpoints
included.  That distance is an ultrametric exactly when every edge has at
least one endpoint with a positive label.  A space arises this way iff
every internal node of its representing tree has at least one leaf child;
the conversion below realizes that criterion constructively.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable, Mapping

from .core import ZERO, Space, Verdict
from .errors import (
    FormatMismatch,
    MissingLeafChild,
    NotUltrametricGenerating,
    UnknownVertex,
)
from .tree import RootedTree


class UnrootedTree:
    """A connected acyclic graph with a nonnegative rational label per vertex."""

    __slots__ = ("vertices", "edges", "labels", "_adj")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str]],
        labels: Mapping[str, Fraction],
    ):
        self.vertices = tuple(vertices)
        vs = set(self.vertices)
        if not vs:
            raise FormatMismatch("an unrooted tree needs at least one vertex")
        if len(vs) != len(self.vertices):
            raise FormatMismatch("vertex ids must be pairwise distinct")
        norm = set()
        for u, v in edges:
            if u == v:
                raise FormatMismatch(f"loop at vertex {u!r}")
            if u not in vs or v not in vs:
                raise FormatMismatch(f"edge ({u!r}, {v!r}) leaves the vertex set")
            norm.add((u, v) if u <= v else (v, u))
        self.edges = frozenset(norm)
        if len(self.edges) != len(self.vertices) - 1:
            raise FormatMismatch("edge count must be vertex count minus one")
        lab = {}
        for v in self.vertices:
            if v not in labels:
                raise FormatMismatch(f"vertex {v!r} has no label")
            q = Fraction(labels[v])
            if q < 0:
                raise FormatMismatch(f"vertex {v!r} has a negative label")
            lab[v] = q
        self.labels = lab
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = adj
        # connected + |E| = |V| - 1 together give acyclicity
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) != len(self.vertices):
            raise FormatMismatch("tree is not connected")

    def __repr__(self) -> str:
        return f"UnrootedTree({len(self.vertices)} vertices)"


def _maxima_from(tree: UnrootedTree, source: str) -> dict[str, Fraction]:
    best = {source: tree.labels[source]}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in tree._adj[v]:
            if w not in best:
                best[w] = max(best[v], tree.labels[w])
                queue.append(w)
    return best


def path_max_distance(tree: UnrootedTree, u: str, v: str) -> Fraction:
    """Maximum vertex label along the path from u to v, endpoints included."""
    for x in (u, v):
        if x not in tree.labels:
            raise UnknownVertex(x)
    if u == v:
        return ZERO
    return _maxima_from(tree, u)[v]


def generates_ultrametric(tree: UnrootedTree) -> Verdict:
    """True iff every edge has an endpoint with positive label; witness: a bad edge."""
    for u, v in sorted(tree.edges):
        if tree.labels[u] == 0 and tree.labels[v] == 0:
            return Verdict(False, witness=(u, v))
    return Verdict(True)


def space_from_unrooted(tree: UnrootedTree) -> Space:
    """The ultrametric space on the vertex set under path-maximum distance."""
    check = generates_ultrametric(tree)
    if not check:
        raise NotUltrametricGenerating(check.witness)
    pts = tree.vertices
    index = {p: i for i, p in enumerate(pts)}
    n = len(pts)
    matrix = [[ZERO] * n for _ in range(n)]
    for i, p in enumerate(pts):
        best = _maxima_from(tree, p)
        row = matrix[i]
        for q, val in best.items():
            j = index[q]
            if j != i:
                row[j] = val
    return Space(pts, matrix)


def has_leaf_child_everywhere(tree: RootedTree) -> Verdict:
    """True iff every internal node has at least one leaf child; witness: a node without."""
    for v in tree.preorder():
        if not tree.is_leaf(v) and not any(tree.is_leaf(c) for c in tree.children[v]):
            return Verdict(False, witness=v)
    return Verdict(True)


def unrooted_from_representing(tree: RootedTree) -> UnrootedTree:
    """Build an unrooted labeled tree generating the same space.

    Each internal node's leaf children become a chain carrying that node's
    label; the chain of a deeper internal node hangs off the last chain
    vertex of its parent.  Requires a leaf child on every internal node.
    """
    check = has_leaf_child_everywhere(tree)
    if not check:
        raise MissingLeafChild(check.witness)
    if tree.is_leaf(tree.root):
        p = tree.points[tree.root]
        return UnrootedTree((p,), (), {p: ZERO})
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    labels: dict[str, Fraction] = {}
    queue = deque([(tree.root, None)])
    while queue:
        v, attach = queue.popleft()
        chain = [tree.points[c] for c in tree.children[v] if tree.is_leaf(c)]
        for p in chain:
            labels[p] = tree.labels[v]
        vertices.extend(chain)
        if attach is not None:
            edges.append((attach, chain[0]))
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b))
        for c in tree.children[v]:
            if not tree.is_leaf(c):
                queue.append((c, chain[-1]))
    return UnrootedTree(vertices, edges, labels)
