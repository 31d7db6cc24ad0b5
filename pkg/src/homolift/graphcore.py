"""Simple graphs, spanning trees and the action of automorphisms on H_1(X; Z_p).

Vertices are labelled ``1..n``.  An arc is an ordered pair ``(u, v)`` with
``u ~ v``; an edge is the sorted pair.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .linalg import FpMatrix
from .permgrp import Perm

Arc = tuple[int, int]

# Fundamental cycle of a cotree arc (u, v): the arc itself, then the tree path
# from v back to u.  A traversal of a designated cotree arc in its own
# direction counts +1, against it -1.  Checked against the published R, S, P,
# T, E, O in the golden tests.
CYCLE_CONVENTION = "cotree-arc-then-tree-path"


class Graph:
    """Undirected simple graph on ``1..n`` with adjacency stored as arcs."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge {(u, v)} outside 1..{n}")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.arcs = frozenset((u, v) for u in range(1, n + 1) for v in self.adj[u])
        self.edges = tuple(sorted((u, v) for u, v in self.arcs if u < v))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(self.adj[v]) for v in range(1, self.n + 1)]

    def adjacent(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_automorphism(self, a: Perm) -> bool:
        return a.degree == self.n and all((a(u), a(v)) in self.arcs for u, v in self.edges)

    def is_connected(self) -> bool:
        return len(self.bfs_order(1)) == self.n if self.n else True

    def bfs_order(self, root: int) -> list[int]:
        seen = {root}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    order.append(v)
                    queue.append(v)
        return order

    def distances_from(self, root: int) -> list[int]:
        dist = [-1] * (self.n + 1)
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def girth(self) -> int | None:
        best = None
        for r in range(1, self.n + 1):
            dist = [-1] * (self.n + 1)
            parent = [0] * (self.n + 1)
            dist[r] = 0
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for v in self.adj[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        queue.append(v)
                    elif parent[u] != v:
                        c = dist[u] + dist[v] + 1
                        if best is None or c < best:
                            best = c
        return best

    def is_bipartite(self) -> bool:
        color = [-1] * (self.n + 1)
        for s in range(1, self.n + 1):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self.adj[u]:
                    if color[v] < 0:
                        color[v] = 1 - color[u]
                        queue.append(v)
                    elif color[v] == color[u]:
                        return False
        return True

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.edges)})"


def gp_graph(n: int, k: int) -> Graph:
    """Generalized Petersen graph GP(n, k).

    Outer cycle ``i ~ 1 + (i mod n)``, spokes ``i ~ n + i`` and inner edges
    ``n + i ~ n + 1 + ((i - 1 + k) mod n)`` for ``i = 1..n``.
    """
    if n < 3 or not (1 <= k < n / 2):
        raise ValueError(f"GP({n}, {k}) needs n >= 3 and 1 <= k < n/2")
    edges = []
    for i in range(1, n + 1):
        edges.append((i, 1 + i % n))
        edges.append((i, n + i))
        edges.append((n + i, n + 1 + (i - 1 + k) % n))
    return Graph(2 * n, edges)


def parse_edge_list(text: str) -> Graph:
    """Graph from ``"u v"`` lines (1-indexed); blank lines and ``#`` comments ignored."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    n = max((max(e) for e in edges), default=0)
    return Graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(graph: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in graph.edges)


@dataclass(frozen=True)
class TreeData:
    """A spanning tree together with one designated arc per cotree edge."""

    graph: Graph
    tree_edges: frozenset
    cotree: tuple[Arc, ...]
    root: int = 1

    def __post_init__(self):
        g = self.graph
        if len(self.tree_edges) != g.n - 1:
            raise ValueError("tree must have n - 1 edges")
        cot = {frozenset(a) for a in self.cotree}
        if len(cot) != len(self.cotree) or cot & self.tree_edges:
            raise ValueError("cotree arcs must be distinct non-tree edges")
        if cot | self.tree_edges != {frozenset(e) for e in g.edges}:
            raise ValueError("tree and cotree must cover every edge")
        parent = {self.root: None}
        depth = {self.root: 0}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if frozenset((u, v)) in self.tree_edges and v not in parent:
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
        if len(parent) != g.n:
            raise ValueError("tree edges do not span the graph")
        object.__setattr__(self, "_parent", parent)
        object.__setattr__(self, "_depth", depth)
        object.__setattr__(self, "_index", {a: j for j, a in enumerate(self.cotree)})

    @property
    def rank(self) -> int:
        return len(self.cotree)

    def cotree_index(self, arc: Arc) -> tuple[int, int] | None:
        """``(j, +1)`` if ``arc`` is cotree arc j, ``(j, -1)`` if it is its reverse."""
        j = self._index.get(arc)
        if j is not None:
            return j, 1
        j = self._index.get((arc[1], arc[0]))
        if j is not None:
            return j, -1
        return None

    def tree_path(self, u: int, v: int) -> list[int]:
        """Vertices of the unique tree path from ``u`` to ``v``."""
        par, dep = self._parent, self._depth
        left, right = [u], [v]
        a, b = u, v
        while dep[a] > dep[b]:
            a = par[a]
            left.append(a)
        while dep[b] > dep[a]:
            b = par[b]
            right.append(b)
        while a != b:
            a, b = par[a], par[b]
            left.append(a)
            right.append(b)
        return left + right[-2::-1]


def mk_tree() -> TreeData:
    """The spanning tree of GP(8, 3) used for the published matrices.

    Tree: all spokes and all inner edges except {11, 16}.  Cotree order:
    x = (16, 11), then x_i = (i, 1 + (i mod 8)).
    """
    g = gp_graph(8, 3)
    tree = {frozenset((i, 8 + i)) for i in range(1, 9)}
    tree |= {frozenset((8 + i, 9 + (i + 2) % 8)) for i in range(1, 9)}
    tree.discard(frozenset((11, 16)))
    cotree = ((16, 11),) + tuple((i, 1 + i % 8) for i in range(1, 9))
    return TreeData(g, frozenset(tree), cotree)


def bfs_tree(graph: Graph, root: int = 1) -> TreeData:
    """BFS spanning tree; cotree arcs oriented from smaller to larger label, sorted."""
    if not graph.is_connected():
        raise ValueError("graph is not connected")
    seen = {root}
    tree = set()
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in graph.adj[u]:
            if v not in seen:
                seen.add(v)
                tree.add(frozenset((u, v)))
                queue.append(v)
    cotree = tuple(e for e in graph.edges if frozenset(e) not in tree)
    return TreeData(graph, frozenset(tree), cotree, root)


def fundamental_cycle(td: TreeData, j: int) -> list[Arc]:
    """Closed walk: cotree arc ``j`` followed by the tree path from its head to its tail."""
    u, v = td.cotree[j]
    path = td.tree_path(v, u)
    return [(u, v)] + list(zip(path, path[1:]))


def walk_coordinates(td: TreeData, walk: Sequence[Arc], p: int) -> tuple[int, ...]:
    """Homology coordinates of a closed walk in the cotree basis, mod ``p``."""
    if walk:
        for (a, b), (c, d) in zip(walk, list(walk[1:]) + [walk[0]]):
            if b != c:
                raise ValueError("walk is not closed")
    coords = [0] * td.rank
    for arc in walk:
        hit = td.cotree_index(arc)
        if hit is not None:
            coords[hit[0]] += hit[1]
    return tuple(c % p for c in coords)


class HomologyRep:
    """Transposed matrices of automorphisms acting on H_1(X; Z_p).

    Row ``j`` of ``matrix(a)`` holds the coordinates of the image under ``a``
    of the fundamental cycle of cotree arc ``j``.
    """

    def __init__(self, td: TreeData, p: int):
        self.td = td
        self.p = p
        self._cycles = [fundamental_cycle(td, j) for j in range(td.rank)]
        self._cache: dict[Perm, FpMatrix] = {}
        self._lock = threading.Lock()

    @property
    def graph(self) -> Graph:
        return self.td.graph

    @property
    def rank(self) -> int:
        return self.td.rank

    def matrix(self, a: Perm) -> FpMatrix:
        m = self._cache.get(a)
        if m is not None:
            return m
        if not self.td.graph.is_automorphism(a):
            raise ValueError(f"{a} is not an automorphism of the base graph")
        rows = [walk_coordinates(self.td, [(a(u), a(v)) for u, v in cyc], self.p) for cyc in self._cycles]
        m = FpMatrix(rows, self.p, self.td.rank)
        with self._lock:
            return self._cache.setdefault(a, m)


def homology_matrix(rep: HomologyRep, a: Perm) -> FpMatrix:
    return rep.matrix(a)
