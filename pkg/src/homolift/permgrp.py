"""Permutations of {1..n}, finite permutation groups and their transitivity.

Products follow the convention ``a * b`` = "apply ``a`` first, then ``b``",
i.e. ``(a * b)(v) == b(a(v))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class Perm:
    """A bijection of {1..n}; ``images[v - 1]`` is the image of ``v``."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation of 1..n")
        self.images = images

    @classmethod
    def _raw(cls, images: tuple) -> Perm:
        obj = cls.__new__(cls)
        obj.images = images
        return obj

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Perm:
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __pow__(self, e: int) -> Perm:
        base = self if e >= 0 else invert(self)
        result = Perm.identity(self.degree)
        for _ in range(abs(e)):
            result = compose(result, base)
        return result

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc, v = [], start
            while v not in seen:
                seen.add(v)
                cyc.append(v)
                v = self(v)
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm({cyc or '()'})"


def compose(a: Perm, b: Perm) -> Perm:
    """The product ``ab``: apply ``a`` first, then ``b``."""
    if a.degree != b.degree:
        raise ValueError("permutations of different degree")
    bi = b.images
    return Perm._raw(tuple(bi[x - 1] for x in a.images))


def invert(a: Perm) -> Perm:
    inv = [0] * a.degree
    for i, v in enumerate(a.images, 1):
        inv[v - 1] = i
    return Perm._raw(tuple(inv))


def order_of(a: Perm) -> int:
    k, x = 1, a
    while not x.is_identity():
        x = compose(x, a)
        k += 1
    return k


class PermGroup:
    """A finite permutation group with its full, sorted element list."""

    def __init__(self, generators: Sequence[Perm], elements: Sequence[Perm] | None = None):
        if not generators and not elements:
            raise ValueError("need at least one generator")
        self.generators = tuple(generators)
        if elements is None:
            elements = _close(self.generators)
        self.elements = tuple(sorted(elements))
        self._set = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return (self.generators or self.elements)[0].degree

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a: Perm) -> bool:
        return a in self._set

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return isinstance(other, PermGroup) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def issubgroup(self, other: PermGroup) -> bool:
        return self._set <= other._set

    def __le__(self, other: PermGroup) -> bool:
        return self.issubgroup(other)

    def __lt__(self, other: PermGroup) -> bool:
        return self._set < other._set

    def is_normal_in(self, other: PermGroup) -> bool:
        return all(conjugate(self, g) == self for g in other.generators)

    def __repr__(self):
        return f"PermGroup(order={self.order}, gens={list(self.generators)})"


def _close(gens: Sequence[Perm]) -> set[Perm]:
    ident = Perm.identity(gens[0].degree)
    if any(g.degree != ident.degree for g in gens):
        raise ValueError("generators of different degree")
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def closure(gens: Sequence[Perm]) -> PermGroup:
    return PermGroup(list(gens))


def conjugate(g: PermGroup, a: Perm) -> PermGroup:
    """``{a^-1 x a : x in g}`` (product convention: a^-1 first, then x, then a)."""
    ai = invert(a)
    conj = lambda x: compose(compose(ai, x), a)  # noqa: E731
    return PermGroup([conj(x) for x in g.generators], [conj(x) for x in g.elements])


def _orbits(gens: Sequence[Perm], points: Sequence, act) -> list[frozenset]:
    remaining = set(points)
    out = []
    for start in points:
        if start not in remaining:
            continue
        orb = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for g in gens:
                y = act(g, x)
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        remaining -= orb
        out.append(frozenset(orb))
    return out


def vertex_orbits(gens: Sequence[Perm], n: int) -> list[frozenset]:
    return _orbits(gens, list(range(1, n + 1)), lambda g, v: g(v))


def edge_orbits(gens: Sequence[Perm], edges: Sequence[tuple[int, int]]) -> list[frozenset]:
    pts = [frozenset(e) for e in edges]
    return _orbits(gens, pts, lambda g, e: frozenset(g(v) for v in e))


def arc_orbits(gens: Sequence[Perm], arcs: Sequence[tuple[int, int]]) -> list[frozenset]:
    return _orbits(gens, list(arcs), lambda g, a: (g(a[0]), g(a[1])))


@dataclass(frozen=True)
class Transitivity:
    vertex: bool
    edge: bool
    arc: bool
    vertex_regular: bool
    arc_regular: bool

    def as_dict(self) -> dict[str, bool]:
        return dict(self.__dict__)


def transitivity(g: PermGroup, graph) -> Transitivity:
    """Transitivity flags of ``g`` acting on a graph's vertices, edges and arcs."""
    if g.degree != graph.n:
        raise ValueError("group degree differs from vertex count")
    gens = g.generators or g.elements
    arcs = sorted(graph.arcs)
    vt = len(vertex_orbits(gens, graph.n)) == 1
    et = len(edge_orbits(gens, graph.edges)) == 1
    at = len(arc_orbits(gens, arcs)) == 1
    return Transitivity(vt, et, at, vt and g.order == graph.n, at and g.order == len(arcs))


@dataclass
class CensusEntry:
    group: PermGroup
    flags: Transitivity
    minimal_vertex_transitive: bool = False
    minimal_edge_transitive: bool = False
    maximal_semisymmetric: bool = False
    name: str | None = None
    extra: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.group.order


def all_subgroups(g: PermGroup, max_order: int = 1000) -> list[PermGroup]:
    """Every subgroup of ``g``, by layered extension of cyclic subgroups."""
    if g.order > max_order:
        raise ValueError(f"group order {g.order} exceeds the census bound {max_order}")
    elems = list(g.elements)
    index = {x: i for i, x in enumerate(elems)}
    n = len(elems)
    table = [[index[compose(a, b)] for b in elems] for a in elems]

    def close(seed: frozenset[int], gens: list[int]) -> frozenset[int]:
        found = set(seed)
        frontier = list(seed)
        while frontier:
            nxt = []
            for x in frontier:
                row = table[x]
                for s in gens:
                    y = row[s]
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    ident = index[Perm.identity(g.degree)]
    subgroups: dict[frozenset[int], list[int]] = {frozenset([ident]): []}
    layer = []
    for i in range(n):
        cyc = close(frozenset([ident]), [i])
        if cyc not in subgroups:
            subgroups[cyc] = [i]
            layer.append(cyc)
    while layer:
        nxt = []
        for sub in layer:
            gens = subgroups[sub]
            for x in range(n):
                if x in sub:
                    continue
                ext = close(sub, gens + [x])
                if ext not in subgroups:
                    subgroups[ext] = gens + [x]
                    nxt.append(ext)
        layer = nxt
    out = []
    for sub, gens in subgroups.items():
        members = [elems[i] for i in sorted(sub)]
        out.append(PermGroup([elems[i] for i in gens] or [elems[ident]], members))
    out.sort(key=lambda h: (h.order, h.elements))
    return out


def subgroup_census(g: PermGroup, graph, max_order: int = 1000) -> list[CensusEntry]:
    """Proper subgroups of ``g`` that are vertex- and/or edge-transitive on ``graph``."""
    entries = []
    for h in all_subgroups(g, max_order):
        if h.order == g.order or h.order < min(graph.n, len(graph.edges)):
            continue
        flags = transitivity(h, graph)
        if flags.vertex or flags.edge:
            entries.append(CensusEntry(h, flags))
    for e in entries:
        below = [f for f in entries if f.group < e.group]
        above = [f for f in entries if e.group < f.group]
        e.minimal_vertex_transitive = e.flags.vertex and not any(f.flags.vertex for f in below)
        e.minimal_edge_transitive = e.flags.edge and not any(f.flags.edge for f in below)
        semi = lambda f: f.flags.edge and not f.flags.vertex  # noqa: E731
        e.maximal_semisymmetric = semi(e) and not any(semi(f) for f in above)
    return entries
