"""Labeled trees rooted at their largest vertex, edge cuts and Steiner distance.

Vertices are the integers ``1..n``. The root is always ``n`` and the edge
``e_j`` (``j < n``) joins ``j`` to its parent, so edges are indexed by their
non-root endpoint. For every edge cut the side ``A`` is the component that
contains the root.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Tree",
    "EdgeCut",
    "TreeError",
    "build_tree",
    "prufer_decode",
    "prufer_encode",
    "random_tree",
    "all_labeled_trees",
    "path_tree",
    "star_tree",
    "caterpillar_tree",
    "broom_tree",
    "steiner_distance",
    "edge_cuts",
]


class TreeError(ValueError):
    """Raised for edge lists that do not describe a labeled tree on 1..n."""


@dataclass(frozen=True)
class EdgeCut:
    """The bipartition left by deleting edge ``e_j``.

    ``A`` holds the root ``n``; ``B`` is the subtree hanging below ``j``.
    """

    edge_index: int
    A: frozenset
    B: frozenset
    n: int

    @property
    def a_vec(self) -> np.ndarray:
        return np.array([Fraction(int(v in self.A)) for v in range(1, self.n + 1)], dtype=object)

    @property
    def a_centered(self) -> np.ndarray:
        shift = Fraction(len(self.A), self.n)
        return self.a_vec - shift


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]
    _parent: dict = field(repr=False, compare=False)
    _depth: dict = field(repr=False, compare=False)
    _children: dict = field(repr=False, compare=False)
    _below: dict = field(repr=False, compare=False)  # vertex -> bitmask of its subtree

    @property
    def root(self) -> int:
        return self.n

    def parent(self, v: int) -> int | None:
        self._check(v)
        return self._parent[v]

    def depth(self, v: int) -> int:
        self._check(v)
        return self._depth[v]

    def children(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._children[v]

    def subtree(self, v: int) -> frozenset:
        """Vertices ``u`` with ``v`` on the path from ``u`` to the root."""
        self._check(v)
        mask = self._below[v]
        return frozenset(u for u in range(1, self.n + 1) if mask >> u & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        p = self.parent(v)
        return self.children(v) + ((p,) if p is not None else ())

    def lca(self, u: int, v: int) -> int:
        while self.depth(u) > self.depth(v):
            u = self._parent[u]
        while self.depth(v) > self.depth(u):
            v = self._parent[v]
        while u != v:
            u, v = self._parent[u], self._parent[v]
        return u

    def _check(self, v: int) -> None:
        if not (isinstance(v, (int, np.integer)) and 1 <= v <= self.n):
            raise TreeError(f"vertex {v!r} is not in 1..{self.n}")

    def __str__(self) -> str:
        return " ".join(f"{u}-{v}" for u, v in self.edges) or f"K1(n={self.n})"


def build_tree(edge_list: Iterable[Sequence[int]], n: int | None = None) -> Tree:
    """Validate an edge list and root the tree at its largest label.

    Parameters
    ----------
    edge_list
        Pairs ``(u, v)`` of 1-based labels.
    n
        Vertex count. Inferred from the largest label when omitted, which
        means a single vertex needs ``n=1`` and an empty list.

    Raises
    ------
    TreeError
        On self-loops, repeated edges, cycles, disconnected input or labels
        outside ``1..n``.
    """
    pairs = []
    for e in edge_list:
        e = tuple(e)
        if len(e) != 2:
            raise TreeError(f"edge {e!r} does not have two endpoints")
        u, v = (int(x) for x in e)
        pairs.append((u, v))
    if n is None:
        n = max((max(p) for p in pairs), default=1)
    if n < 1:
        raise TreeError("a tree needs at least one vertex")
    seen = set()
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in pairs:
        for x in (u, v):
            if not 1 <= x <= n:
                raise TreeError(f"edge ({u},{v}): vertex {x} is not in 1..{n}")
        if u == v:
            raise TreeError(f"edge ({u},{v}) is a self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise TreeError(f"edge ({u},{v}) is repeated")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)
    if len(pairs) != n - 1:
        # enough information for a useful message either way
        kind = "a cycle" if len(pairs) > n - 1 else "a disconnected graph"
        raise TreeError(f"{len(pairs)} edges on {n} vertices gives {kind}; a tree has {n - 1}")

    parent: dict[int, int | None] = {n: None}
    depth = {n: 0}
    order = []
    queue = deque([n])
    while queue:
        x = queue.popleft()
        order.append(x)
        for y in sorted(adj[x]):
            if y == parent[x]:
                continue
            if y in parent:
                raise TreeError(f"edge ({x},{y}) closes a cycle")
            parent[y] = x
            depth[y] = depth[x] + 1
            queue.append(y)
    if len(parent) != n:
        missing = min(set(range(1, n + 1)) - set(parent))
        raise TreeError(f"vertex {missing} is not connected to root {n}")

    children = {v: [] for v in range(1, n + 1)}
    for v in range(1, n):
        children[parent[v]].append(v)
    below = {}
    for x in reversed(order):
        mask = 1 << x
        for c in children[x]:
            mask |= below[c]
        below[x] = mask
    edges = tuple(sorted(seen))
    return Tree(
        n=n,
        edges=edges,
        _parent=parent,
        _depth=depth,
        _children={v: tuple(c) for v, c in children.items()},
        _below=below,
    )


def prufer_decode(word: Sequence[int], n: int | None = None) -> Tree:
    """Tree on ``len(word) + 2`` vertices encoded by a Prüfer word."""
    word = [int(x) for x in word]
    if n is None:
        n = len(word) + 2
    if len(word) != n - 2:
        raise TreeError(f"a Prüfer word for n={n} has {n - 2} letters, got {len(word)}")
    for x in word:
        if not 1 <= x <= n:
            raise TreeError(f"Prüfer letter {x} is not in 1..{n}")
    degree = [1] * (n + 1)
    for x in word:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in word:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    if n >= 2:
        u, v = heapq.heappop(leaves), heapq.heappop(leaves)
        edges.append((u, v))
    return build_tree(edges, n=n)


def prufer_encode(t: Tree) -> tuple[int, ...]:
    if t.n <= 2:
        return ()
    degree = {v: len(t.neighbors(v)) for v in range(1, t.n + 1)}
    alive = set(range(1, t.n + 1))
    leaves = [v for v, d in degree.items() if d == 1]
    heapq.heapify(leaves)
    word = []
    for _ in range(t.n - 2):
        leaf = heapq.heappop(leaves)
        alive.discard(leaf)
        (nb,) = [u for u in t.neighbors(leaf) if u in alive]
        word.append(nb)
        degree[nb] -= 1
        if degree[nb] == 1:
            heapq.heappush(leaves, nb)
    return tuple(word)


def random_tree(n: int, seed: int) -> Tree:
    """Uniformly random labeled tree, decoded from a random Prüfer word."""
    if n < 1:
        raise TreeError("n must be at least 1")
    if n == 1:
        return build_tree([], n=1)
    rng = random.Random(seed)
    return prufer_decode([rng.randint(1, n) for _ in range(n - 2)], n=n)


def all_labeled_trees(n: int) -> Iterator[Tree]:
    """All ``n**(n-2)`` labeled trees on ``1..n``."""
    if n == 1:
        yield build_tree([], n=1)
        return
    for word in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(word, n=n)


def path_tree(n: int) -> Tree:
    return build_tree([(i, i + 1) for i in range(1, n)], n=n)


def star_tree(n: int, center: int | None = None) -> Tree:
    center = n if center is None else center
    return build_tree([(v, center) for v in range(1, n + 1) if v != center], n=n)


def caterpillar_tree(n: int) -> Tree:
    """Spine ``1..s`` with the remaining vertices hung off it round-robin."""
    s = max(1, (n + 1) // 2)
    edges = [(i, i + 1) for i in range(1, s)]
    for j, v in enumerate(range(s + 1, n + 1)):
        edges.append((1 + j % s, v))
    return build_tree(edges, n=n)


def broom_tree(n: int) -> Tree:
    """A path ``1..h`` whose end ``h`` carries the remaining vertices as leaves."""
    h = max(1, n // 2)
    edges = [(i, i + 1) for i in range(1, h)]
    edges += [(h, v) for v in range(h + 1, n + 1)]
    return build_tree(edges, n=n)


def _support_mask(t: Tree, vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        t._check(v)
        mask |= 1 << int(v)
    return mask


def steiner_distance(t: Tree, vertices: Iterable[int]) -> int:
    """Number of edges of the smallest subtree containing ``vertices``.

    Repetitions in ``vertices`` are ignored. An edge ``e_j`` lies in the
    Steiner tree exactly when the support meets both sides of its cut.
    """
    mask = _support_mask(t, vertices)
    if mask == 0:
        raise ValueError("steiner_distance needs at least one vertex")
    return sum(1 for j in range(1, t.n) if mask & t._below[j] and mask & ~t._below[j])


def edge_cuts(t: Tree) -> list[EdgeCut]:
    if t.n < 2:
        raise TreeError("edge cuts need n >= 2")
    everything = frozenset(range(1, t.n + 1))
    cuts = []
    for j in range(1, t.n):
        B = t.subtree(j)
        cuts.append(EdgeCut(edge_index=j, A=everything - B, B=B, n=t.n))
    return cuts
