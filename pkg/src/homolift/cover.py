"""Voltage assignments in Z_p^d, derived covers, and two independent lift tests.

``lifts_by_criterion`` asks whether a homology matrix preserves the subspace
spanned by the voltages.  ``explicit_lift`` never looks at homology: it
builds the candidate lift fibre by fibre from the adjacency rule
``(u, a) ~ (v, a + zeta(u, v))`` and checks every edge of the cover.

Derived vertex ``(u, a)`` has index ``(u - 1) * p**d + code(a)`` where
``code(a)`` reads ``a`` as a base-p numeral, most significant digit first,
so index order is lexicographic order on pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from .graphcore import Graph, HomologyRep, TreeData
from .linalg import FpMatrix, Subspace, image, is_invariant, rref, span
from .permgrp import Perm, PermGroup, invert, vertex_orbits

Vector = tuple


@dataclass(frozen=True)
class VoltageAssignment:
    """Voltages in Z_p^d on the cotree arcs of ``td``; tree arcs carry zero."""

    td: TreeData
    p: int
    d: int
    zeta: tuple[Vector, ...]

    def __post_init__(self):
        if len(self.zeta) != self.td.rank:
            raise ValueError(f"need {self.td.rank} cotree voltages, got {len(self.zeta)}")
        fixed = tuple(tuple(int(x) % self.p for x in z) for z in self.zeta)
        if any(len(z) != self.d for z in fixed):
            raise ValueError(f"every voltage must have length d={self.d}")
        object.__setattr__(self, "zeta", fixed)

    @classmethod
    def from_rows(cls, td: TreeData, rows: Sequence[Sequence[int]], p: int) -> VoltageAssignment:
        """Voltages read off the columns of the d x r matrix ``Z``."""
        rows = [tuple(r) for r in rows]
        d = len(rows)
        return cls(td, p, d, tuple(tuple(r[j] for r in rows) for j in range(td.rank)))

    @property
    def matrix(self) -> FpMatrix:
        """The d x r matrix Z whose column j is the voltage of cotree arc j."""
        return FpMatrix([[z[i] for z in self.zeta] for i in range(self.d)], self.p, self.td.rank)

    @property
    def rank(self) -> int:
        return rref(self.matrix)[1] if self.d else 0

    @property
    def connected(self) -> bool:
        return self.rank == self.d

    def arc_voltage(self, u: int, v: int) -> Vector:
        hit = self.td.cotree_index((u, v))
        if hit is None:
            if not self.td.graph.adjacent(u, v):
                raise ValueError(f"({u}, {v}) is not an arc of the base graph")
            return (0,) * self.d
        j, sign = hit
        return tuple(sign * x % self.p for x in self.zeta[j])


def voltage_for_subspace(s: Subspace, td: TreeData) -> VoltageAssignment:
    """Voltages whose matrix Z has the canonical basis of ``s`` as rows."""
    if s.dim == 0:
        raise ValueError("the zero subspace gives the trivial cover; use d >= 1")
    if s.n != td.rank:
        raise ValueError(f"subspace lives in dimension {s.n}, tree has rank {td.rank}")
    return VoltageAssignment.from_rows(td, s.basis, s.p)


def subspace_of(va: VoltageAssignment) -> Subspace:
    """The row space of Z."""
    if va.d == 0:
        return Subspace.zero(va.td.rank, va.p)
    return span([[z[i] for z in va.zeta] for i in range(va.d)], va.td.rank, va.p)


def _digits(codes: np.ndarray, p: int, d: int) -> np.ndarray:
    out = np.empty((len(codes), d), dtype=np.int64)
    rest = codes.copy()
    for i in range(d - 1, -1, -1):
        out[:, i] = rest % p
        rest //= p
    return out


def _weights(p: int, d: int) -> np.ndarray:
    return p ** np.arange(d - 1, -1, -1, dtype=np.int64)


@dataclass
class DerivedGraph:
    """The cover Cov(X; zeta).  Adjacency is computed on demand."""

    base: Graph
    va: VoltageAssignment

    @property
    def p(self) -> int:
        return self.va.p

    @property
    def d(self) -> int:
        return self.va.d

    @property
    def fibre_size(self) -> int:
        return self.p**self.d

    @property
    def num_vertices(self) -> int:
        return self.base.n * self.fibre_size

    @property
    def num_edges(self) -> int:
        return len(self.base.edges) * self.fibre_size

    @property
    def connected(self) -> bool:
        return self.va.connected

    def index(self, u: int, a: Sequence[int]) -> int:
        code = 0
        for x in a:
            code = code * self.p + x % self.p
        return (u - 1) * self.fibre_size + code

    def vertex(self, idx: int) -> tuple[int, Vector]:
        u, code = divmod(idx, self.fibre_size)
        a = []
        for _ in range(self.d):
            code, r = divmod(code, self.p)
            a.append(r)
        return u + 1, tuple(reversed(a))

    def neighbors(self, u: int, a: Sequence[int]) -> list[tuple[int, Vector]]:
        out = []
        for v in self.base.neighbors(u):
            z = self.va.arc_voltage(u, v)
            out.append((v, tuple((x + y) % self.p for x, y in zip(a, z))))
        return out

    def edge_array(self) -> np.ndarray:
        """All edges as an (E, 2) array of 0-based vertex indices."""
        p, d, n_fib = self.p, self.d, self.fibre_size
        codes = np.arange(n_fib, dtype=np.int64)
        digits = _digits(codes, p, d)
        w = _weights(p, d)
        blocks = []
        for u, v in self.base.edges:
            z = np.array(self.va.arc_voltage(u, v), dtype=np.int64)
            target = ((digits + z) % p) @ w if d else codes
            blocks.append(np.stack([(u - 1) * n_fib + codes, (v - 1) * n_fib + target], axis=1))
        return np.concatenate(blocks)

    def to_graph(self, limit: int = 200_000) -> Graph:
        """The cover as a plain :class:`Graph` on ``1..N`` (index + 1)."""
        if self.num_vertices > limit:
            raise ValueError(f"{self.num_vertices} vertices exceed the materialization limit {limit}")
        edges = self.edge_array() + 1
        return Graph(self.num_vertices, edges.tolist())

    def mapping_lines(self) -> Iterator[str]:
        for idx in range(self.num_vertices):
            u, a = self.vertex(idx)
            yield f"{idx + 1} {u} {' '.join(map(str, a))}"

    def write_edges(self, path: str | Path) -> Path:
        """Edge list to ``path`` and the index -> (base vertex, tag) table to ``path.map``."""
        path = Path(path)
        np.savetxt(path, self.edge_array() + 1, fmt="%d")
        mp = path.with_name(path.name + ".map")
        with mp.open("w") as fh:
            fh.write("# index base_vertex tag...\n")
            for line in self.mapping_lines():
                fh.write(line + "\n")
        return mp

    def write_dot(self, path: str | Path) -> None:
        path = Path(path)
        with path.open("w") as fh:
            fh.write("graph cover {\n")
            for idx in range(self.num_vertices):
                u, a = self.vertex(idx)
                fh.write(f'  {idx + 1} [label="{u}:{",".join(map(str, a))}"];\n')
            for x, y in self.edge_array() + 1:
                fh.write(f"  {x} -- {y};\n")
            fh.write("}\n")


def derive(va: VoltageAssignment) -> DerivedGraph:
    return DerivedGraph(va.td.graph, va)


def lifts_by_criterion(a: Perm, s: Subspace, rep: HomologyRep) -> bool:
    """Homology test: ``a`` lifts along the cover of ``s`` iff its matrix maps ``s`` onto itself."""
    return is_invariant(s, rep.matrix(a))


@dataclass
class LiftResult:
    """Outcome of the explicit lift search.

    ``successes`` counts root choices that extend to a lift; the witness is
    the lift sending the root vertex to tag zero.
    """

    exists: bool
    successes: int
    roots_tried: int
    alpha: Perm
    dg: DerivedGraph
    _table: np.ndarray | None = field(default=None, repr=False)  # codes of h(a)
    _offsets: dict | None = field(default=None, repr=False)

    def image(self, u: int, a: Sequence[int]) -> tuple[int, Vector]:
        if not self.exists:
            raise ValueError("no lift exists")
        dg = self.dg
        code = dg.index(1, a)
        _, h = dg.vertex(int(self._table[code]))
        c = self._offsets[u]
        return self.alpha(u), tuple((x + y) % dg.p for x, y in zip(h, c))

    def permutation(self) -> Perm:
        """The witness as a permutation of ``1..N`` (cover index + 1)."""
        dg = self.dg
        imgs = []
        for idx in range(dg.num_vertices):
            u, a = dg.vertex(idx)
            v, b = self.image(u, a)
            imgs.append(dg.index(v, b) + 1)
        return Perm(imgs)


def _tree_offsets(alpha: Perm, va: VoltageAssignment) -> dict[int, np.ndarray]:
    """c_u: image voltages accumulated along the tree path from the root to u."""
    td, p = va.td, va.p
    root = td.root
    offsets = {root: np.zeros(va.d, dtype=np.int64)}
    order = [root]
    for u in order:
        for w in td.graph.neighbors(u):
            if w not in offsets and frozenset((u, w)) in td.tree_edges:
                z = np.array(va.arc_voltage(alpha(u), alpha(w)), dtype=np.int64)
                offsets[w] = (offsets[u] + z) % p
                order.append(w)
    return offsets


def _spanning_basis(va: VoltageAssignment) -> list[int]:
    """Cotree indices whose voltages form a basis of Z_p^d."""
    picked, rows = [], []
    for j, z in enumerate(va.zeta):
        trial = rows + [z]
        if rref(FpMatrix(trial, va.p, va.d))[1] == len(trial):
            rows = trial
            picked.append(j)
            if len(rows) == va.d:
                break
    return picked


def _propagate(alpha: Perm, va: VoltageAssignment):
    """Values forced on the root fibre by the spanning structure.

    Walking from (root, 0) along the lifted tree and then along a fixed
    basis of cotree arcs reaches every vertex of the (connected) cover, and
    every step is forced, so the candidate is unique once the root image is
    fixed.  Returns the digit array of h on a p x ... x p grid (root image 0)
    and the per-fibre offsets.
    """
    p, d = va.p, va.d
    offsets = _tree_offsets(alpha, va)
    picked = _spanning_basis(va)
    basis = np.array([va.zeta[j] for j in picked], dtype=np.int64).T  # columns z_j
    binv = np.array(FpMatrix(basis.tolist(), p).inverse().rows, dtype=np.int64)
    deltas = []
    for j in picked:
        u, w = va.td.cotree[j]
        z_img = np.array(va.arc_voltage(alpha(u), alpha(w)), dtype=np.int64)
        deltas.append((offsets[u] + z_img - offsets[w]) % p)
    delta = np.array(deltas, dtype=np.int64)  # row k: step forced by basis arc k
    grid = np.indices((p,) * d, dtype=np.int64).reshape(d, -1)  # column = a
    coords = binv @ grid % p  # a = sum_k coords[k] * z_{picked[k]}
    h = delta.T @ coords % p
    return h.reshape((d,) + (p,) * d), offsets


def _consistent(h: np.ndarray, alpha: Perm, va: VoltageAssignment, offsets) -> bool:
    """Every cover edge maps to a cover edge and each fibre map is a bijection.

    With g_u = h + c_u, tree edges hold by construction of c, so only the
    cotree arcs need checking: h(a + z_j) == h(a) + c_u + z'_j - c_w for all a.
    """
    p, d = va.p, va.d
    axes = tuple(range(1, d + 1))
    for j, (u, w) in enumerate(va.td.cotree):
        z = va.zeta[j]
        z_img = np.array(va.arc_voltage(alpha(u), alpha(w)), dtype=np.int64)
        step = (offsets[u] + z_img - offsets[w]) % p
        shifted = np.roll(h, shift=tuple(-x for x in z), axis=axes)
        expect = (h + step.reshape((d,) + (1,) * d)) % p
        if not np.array_equal(shifted, expect):
            return False
    codes = np.tensordot(_weights(p, d), h, axes=1).ravel()
    return np.bincount(codes, minlength=p**d).max() == 1


def explicit_lift(a: Perm, dg: DerivedGraph, va: VoltageAssignment | None = None, exhaustive: bool = False) -> LiftResult:
    """Try to lift ``a`` to an automorphism of the cover by direct propagation.

    By default only the root image tag 0 is propagated; the other p^d root
    choices differ from it by a covering transformation, so they succeed or
    fail together.  ``exhaustive=True`` propagates and checks every root
    choice separately (use on small covers).
    """
    va = dg.va if va is None else va
    if not dg.base.is_automorphism(a):
        raise ValueError(f"{a} is not an automorphism of the base graph")
    if not va.connected:
        raise ValueError("the derived graph is disconnected (rank Z < d)")
    p, d = va.p, va.d
    n_fib = p**d
    if d == 0:
        return LiftResult(True, 1, 1, a, dg, np.zeros(1, dtype=np.int64), {u: () for u in range(1, dg.base.n + 1)})
    h0, offsets = _propagate(a, va)
    roots = range(n_fib) if exhaustive else [0]
    successes = 0
    for b in roots:
        shift = np.array(dg.vertex(b)[1], dtype=np.int64).reshape((d,) + (1,) * d)
        h = (h0 + shift) % p
        if _consistent(h, a, va, offsets):
            successes += 1
    exists = successes > 0
    if not exhaustive and exists:
        successes = n_fib
    table = np.tensordot(_weights(p, d), h0, axes=1).ravel() if exists else None
    offs = {u: tuple(int(x) for x in c) for u, c in offsets.items()}
    return LiftResult(exists, successes, len(roots), a, dg, table, offs)


def equivalent(va1: VoltageAssignment, va2: VoltageAssignment) -> bool:
    _same_setting(va1, va2)
    return subspace_of(va1) == subspace_of(va2)


def isomorphic(
    va1: VoltageAssignment,
    va2: VoltageAssignment,
    rep: HomologyRep,
    automorphisms: Sequence[Perm] | None = None,
) -> bool:
    """Whether some base automorphism's matrix maps S(zeta2) onto S(zeta1).

    ``automorphisms`` defaults to the whole automorphism group of the base
    graph.  For subspaces invariant under a normal subgroup H, a left
    transversal of H gives the same answer more cheaply.
    """
    _same_setting(va1, va2)
    s1, s2 = subspace_of(va1), subspace_of(va2)
    if s1.dim != s2.dim:
        return False
    if automorphisms is None:
        automorphisms = _full_group(rep.graph).elements
    return any(image(rep.matrix(g), s2) == s1 for g in automorphisms)


def _same_setting(va1: VoltageAssignment, va2: VoltageAssignment) -> None:
    if va1.p != va2.p or va1.td != va2.td:
        raise ValueError("voltage assignments over different trees or primes")


_GROUP_CACHE: dict = {}


def _full_group(g: Graph) -> PermGroup:
    key = (g.n, g.edges)
    if key not in _GROUP_CACHE:
        res = naive_aut(g)
        if not res.conclusive:
            raise RuntimeError("automorphism search inconclusive")
        _GROUP_CACHE[key] = PermGroup(res.generators or [Perm.identity(g.n)])
    return _GROUP_CACHE[key]


# --------------------------------------------------------------------------
# automorphisms of small graphs


@dataclass
class AutResult:
    """Summary of a bounded automorphism search."""

    conclusive: bool
    order: int | None
    generators: list[Perm]
    vertex_orbits: list[frozenset]
    edge_orbits: list[frozenset]
    nodes: int

    @property
    def vertex_transitive(self) -> bool | None:
        return len(self.vertex_orbits) == 1 if self.conclusive else None

    @property
    def edge_transitive(self) -> bool | None:
        return len(self.edge_orbits) == 1 if self.conclusive else None

    @property
    def semisymmetric(self) -> bool | None:
        if not self.conclusive:
            return None
        return self.edge_transitive and not self.vertex_transitive


class _Budget(Exception):
    pass


class _Searcher:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.n = g.n
        self.budget = budget
        self.nodes = 0
        dist = np.array([g.distances_from(v)[1:] for v in range(1, g.n + 1)], dtype=np.int64)
        if (dist < 0).any():
            raise ValueError("graph must be connected")
        self.dist = dist  # 0-based
        profile = [tuple(np.bincount(row, minlength=g.n)) for row in dist]
        labels = {}
        self.cell = [labels.setdefault((g.degree(v + 1), profile[v]), len(labels)) for v in range(g.n)]

    def _order(self, v0: int) -> list[tuple[int, int]]:
        """BFS order from v0 as (vertex, parent) pairs, 0-based."""
        seen = {v0}
        out = [(v0, -1)]
        for x, _ in out:
            for y in self.g.neighbors(x + 1):
                y -= 1
                if y not in seen:
                    seen.add(y)
                    out.append((y, x))
        return out

    def search(self, fixed: dict[int, int], count_all: bool = False):
        """Extend the partial map ``fixed`` (0-based) to automorphisms.

        Returns one automorphism (images tuple) or None; with ``count_all``
        returns the number of extensions instead.
        """
        order = self._order(next(iter(fixed)))
        img = [-1] * self.n
        used = [False] * self.n
        for x, y in fixed.items():
            if self.cell[x] != self.cell[y]:
                return 0 if count_all else None
            img[x] = y
            used[y] = True
        for x, y in fixed.items():
            for x2, y2 in fixed.items():
                if self.dist[x, x2] != self.dist[y, y2]:
                    return 0 if count_all else None
        assigned = list(fixed)
        todo = [(x, par) for x, par in order if x not in fixed]
        dist = self.dist
        found = []

        def rec(k: int):
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget
            if k == len(todo):
                found.append(tuple(img))
                return not count_all
            x, par = todo[k]
            cands = self.g.neighbors(img[par] + 1) if par >= 0 else range(1, self.n + 1)
            ax = np.array(assigned)
            ay = np.array([img[a] for a in assigned])
            dx = dist[x, ax]
            for c in cands:
                c -= 1
                if used[c] or self.cell[c] != self.cell[x]:
                    continue
                if not np.array_equal(dist[c, ay], dx):
                    continue
                img[x] = c
                used[c] = True
                assigned.append(x)
                if rec(k + 1):
                    return True
                assigned.pop()
                used[c] = False
                img[x] = -1
            return False

        rec(0)
        if count_all:
            return len(found)
        return found[0] if found else None


def naive_aut(g: Graph, budget: int = 2_000_000) -> AutResult:
    """Automorphism group summary of a small connected graph by backtracking.

    Vertices are refined by degree and distance profile; a candidate image
    must preserve distances to every vertex already mapped.  Vertex and edge
    orbits are exact: whenever two classes might merge, a mapping between
    representatives is searched for explicitly.  The order is
    |orbit(v0)| * |Stab(v0)|.  Exceeding ``budget`` search nodes returns an
    inconclusive result rather than a guess.
    """
    if g.n > 200 or max(g.degrees()) > 4:
        raise ValueError("naive_aut is meant for connected graphs with <= 200 vertices and degree <= 4")
    s = _Searcher(g, budget)
    gens: list[Perm] = []

    def add(images):
        gens.append(Perm(tuple(x + 1 for x in images)))

    try:
        # vertex orbits
        orbits = _orbits(gens, g)
        changed = True
        while changed:
            changed = False
            reps = [min(o) for o in orbits]
            for i, a in enumerate(reps):
                for b in reps[i + 1:]:
                    if s.cell[a - 1] != s.cell[b - 1]:
                        continue
                    res = s.search({a - 1: b - 1})
                    if res is not None:
                        add(res)
                        orbits = _orbits(gens, g)
                        changed = True
                        break
                if changed:
                    break
        vorb = orbits
        # edge orbits
        eorb = _edge_orbits(gens, g)
        changed = True
        while changed:
            changed = False
            reps = [min(o) for o in eorb]
            for i, (a, b) in enumerate(reps):
                for c, d in reps[i + 1:]:
                    res = s.search({a - 1: c - 1, b - 1: d - 1}) or s.search({a - 1: d - 1, b - 1: c - 1})
                    if res is not None:
                        add(res)
                        eorb = _edge_orbits(gens, g)
                        vorb = _orbits(gens, g)
                        changed = True
                        break
                if changed:
                    break
        v0 = 1
        stab = s.search({0: 0}, count_all=True)
        orb0 = next(o for o in vorb if v0 in o)
        order = len(orb0) * stab
    except _Budget:
        return AutResult(False, None, gens, [], [], s.nodes)
    return AutResult(True, order, gens, vorb, eorb, s.nodes)


def _orbits(gens: list[Perm], g: Graph) -> list[frozenset]:
    if not gens:
        return [frozenset([v]) for v in range(1, g.n + 1)]
    return sorted(vertex_orbits(gens, g.n), key=min)


def _edge_orbits(gens: list[Perm], g: Graph) -> list[frozenset]:
    edges = [tuple(e) for e in g.edges]
    if not gens:
        return [frozenset([e]) for e in edges]
    remaining = set(edges)
    out = []
    for e in edges:
        if e not in remaining:
            continue
        orb = {e}
        stack = [e]
        while stack:
            x = stack.pop()
            for h in gens:
                y = tuple(sorted((h(x[0]), h(x[1]))))
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        remaining -= orb
        out.append(frozenset(orb))
    return sorted(out, key=min)
