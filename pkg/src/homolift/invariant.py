"""Common invariant subspaces of matrix groups over Z_p and their lifting data.

The enumeration engine is generic.  Lifting classification needs a
:class:`SymmetryContext` describing the base graph's automorphism group: the
generators of its minimal edge-transitive subgroup, of every minimal
vertex-transitive subgroup, a transversal of the edge-transitive subgroup,
and the named subgroups used to tag the largest lifting group.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graphcore import HomologyRep
from .linalg import (
    FpMatrix,
    Subspace,
    charpoly,
    contains,
    image,
    is_invariant,
    kernel,
    matrix_poly,
    primary_decomposition,
    spin,
    subspace_sum,
)
from .gfp import poly_factor
from .permgrp import Perm, PermGroup

DEFAULT_SEED_CAP = 10**7
LATTICE_CAP = 10**6


class EnumerationLimit(RuntimeError):
    pass


def seed_cap() -> int:
    return int(os.environ.get("HOMOLIFT_SEED_CAP", DEFAULT_SEED_CAP))


def is_common_invariant(s: Subspace, mats: Iterable[FpMatrix]) -> bool:
    return all(is_invariant(s, m) for m in mats)


def designated_generator(gens: Sequence[FpMatrix]) -> int:
    """Index of the generator whose charpoly has the most distinct irreducible factors."""
    counts = [len(poly_factor(charpoly(g))) for g in gens]
    return max(range(len(gens)), key=lambda i: (counts[i], -i))


def seed_spaces(gens: Sequence[FpMatrix]) -> list[Subspace]:
    """``Ker f_j(A)`` for the designated generator A and each irreducible factor f_j."""
    a = gens[designated_generator(gens)]
    return [kernel(matrix_poly(c.factor, a)) for c in primary_decomposition(a)]


def minimal_common(gens: Sequence[FpMatrix], cap: int | None = None) -> list[Subspace]:
    """All minimal nonzero subspaces invariant under every matrix in ``gens``.

    Every projective point of every ``Ker f_j(A)`` is spun under ``gens``;
    the minimal members of the resulting family are returned, sorted.
    """
    cap = seed_cap() if cap is None else cap
    seeds = seed_spaces(gens)
    total = sum(s.num_projective_points() for s in seeds)
    if total > cap:
        raise EnumerationLimit(f"{total} seed vectors exceed the cap {cap}")
    mark = all(g.rank == g.nrows for g in gens)
    found: set[Subspace] = set()
    for space in seeds:
        reps = _orbit_representatives(space, gens) if mark else space.projective_points()
        for v in reps:
            found.add(spin(v, gens))
    return _minimal_members(found)


def _projective_array(space: Subspace) -> np.ndarray:
    p, k = space.p, space.dim
    basis = np.array(space.basis, dtype=np.int64)
    blocks = []
    for lead in range(k):
        tail = k - lead - 1
        coeffs = np.zeros((p**tail, k), dtype=np.int64)
        coeffs[:, lead] = 1
        if tail:
            grid = np.indices((p,) * tail).reshape(tail, -1).T
            coeffs[:, lead + 1:] = grid
        blocks.append(coeffs @ basis % p)
    return np.concatenate(blocks)


def _normalize_rows(x: np.ndarray, p: int) -> np.ndarray:
    lead = x[np.arange(len(x)), np.argmax(x != 0, axis=1)]
    inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
    return x * inv[lead][:, None] % p


def _orbit_representatives(space: Subspace, gens: Sequence[FpMatrix]) -> list[tuple]:
    """One projective point per connected class of ``v ~ g.v`` inside ``space``.

    ``spin(g.v) == spin(v)`` for invertible g, so spinning one point per
    class loses nothing.
    """
    p, n = space.p, space.n
    if not space.dim:
        return []
    if p**n >= 2**62:
        return list(space.projective_points())
    pts = _projective_array(space)
    weights = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    codes = pts @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    rows, cols = [], []
    for g in gens:
        img = _normalize_rows(pts @ np.array(g.rows, dtype=np.int64).T % p, p)
        ic = img @ weights
        pos = np.searchsorted(sorted_codes, ic).clip(0, len(codes) - 1)
        hit = sorted_codes[pos] == ic
        rows.append(np.nonzero(hit)[0])
        cols.append(order[pos[hit]])
    rows, cols = np.concatenate(rows), np.concatenate(cols)
    m = len(codes)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    _, labels = connected_components(graph, directed=True, connection="weak")
    _, first = np.unique(labels, return_index=True)
    return [tuple(int(a) for a in pts[i]) for i in np.sort(first)]


def _minimal_members(family: Iterable[Subspace]) -> list[Subspace]:
    keep: list[Subspace] = []
    for s in sorted(family):
        if s.dim and not any(contains(s, t) for t in keep):
            keep.append(s)
    return sorted(keep)


def matrix_group_order(gens: Sequence[FpMatrix], cap: int = 100_000) -> int:
    n, p = gens[0].nrows, gens[0].p
    ident = FpMatrix.identity(n, p)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise EnumerationLimit(f"matrix group larger than {cap}")
        frontier = nxt
    return len(seen)


def _sum_closure(atoms: Sequence[Subspace], n: int, p: int, cap: int) -> list[Subspace]:
    zero = Subspace.zero(n, p)
    seen = {zero}
    queue = deque([zero])
    while queue:
        s = queue.popleft()
        for a in atoms:
            if contains(s, a):
                continue
            t = subspace_sum(s, a)
            if t not in seen:
                seen.add(t)
                if len(seen) > cap:
                    raise EnumerationLimit(f"lattice exceeds {cap} members")
                queue.append(t)
    return sorted(seen)


def cyclic_subspaces(gens: Sequence[FpMatrix], cap: int | None = None) -> list[Subspace]:
    """Distinct spins of all projective points of the whole space."""
    cap = seed_cap() if cap is None else cap
    n, p = gens[0].nrows, gens[0].p
    full = Subspace.full(n, p)
    if full.num_projective_points() > cap:
        raise EnumerationLimit(f"{full.num_projective_points()} vectors exceed the cap {cap}")
    return sorted({spin(v, gens) for v in full.projective_points()})


def full_lattice(
    gens: Sequence[FpMatrix],
    group_order: int | None = None,
    cap: int | None = None,
    lattice_cap: int = LATTICE_CAP,
) -> list[Subspace]:
    """Every common invariant subspace, zero and full space included.

    When p does not divide the group order the representation is completely
    reducible and the lattice is the set of sums of minimal members.
    Otherwise every invariant subspace is a sum of cyclic ones, so the
    lattice is the closure of {0} under adding spins of arbitrary vectors.
    """
    n, p = gens[0].nrows, gens[0].p
    if group_order is None:
        group_order = matrix_group_order(gens)
    if group_order % p:
        atoms = minimal_common(gens, cap)
    else:
        atoms = cyclic_subspaces(gens, cap)
    return _sum_closure(atoms, n, p, lattice_cap)


@dataclass
class SymmetryContext:
    """Automorphism data of a base graph needed to classify projections."""

    rep: HomologyRep
    group: PermGroup
    edge_gens: tuple[Perm, ...]
    vertex_groups: tuple[tuple[Perm, ...], ...]
    transversal: tuple[Perm, ...]
    named: dict[str, PermGroup] = field(default_factory=dict)
    core: str | None = None  # name of the edge-transitive subgroup the transversal is taken over

    @property
    def p(self) -> int:
        return self.rep.p

    def mats(self, perms: Iterable[Perm]) -> list[FpMatrix]:
        return [self.rep.matrix(a) for a in perms]

    def edge_mats(self) -> list[FpMatrix]:
        return self.mats(self.edge_gens)


@dataclass(frozen=True)
class LiftFlags:
    edge_transitive: bool
    vertex_transitive: bool
    largest_lift: str

    @property
    def semisymmetric(self) -> bool:
        return self.edge_transitive and not self.vertex_transitive

    def as_dict(self) -> dict:
        return {
            "edge_transitive": self.edge_transitive,
            "vertex_transitive": self.vertex_transitive,
            "semisymmetric": self.semisymmetric,
        }


def is_edge_transitive(s: Subspace, ctx: SymmetryContext) -> bool:
    return is_common_invariant(s, ctx.edge_mats())


def is_vertex_transitive(s: Subspace, ctx: SymmetryContext) -> bool:
    return any(is_common_invariant(s, ctx.mats(gens)) for gens in ctx.vertex_groups)


def is_semisymmetric(s: Subspace, ctx: SymmetryContext) -> bool:
    return is_edge_transitive(s, ctx) and not is_vertex_transitive(s, ctx)


def stabilizer(s: Subspace, ctx: SymmetryContext) -> frozenset[Perm]:
    """Automorphisms whose homology matrix maps ``s`` onto itself."""
    core = ctx.named.get(ctx.core) if ctx.core else None
    if core is not None and is_common_invariant(s, ctx.mats(core.generators)):
        out: set[Perm] = set()
        for t in ctx.transversal:
            if is_invariant(s, ctx.rep.matrix(t)):
                out.update(t * h for h in core.elements)
        return frozenset(out)
    return frozenset(g for g in ctx.group.elements if is_invariant(s, ctx.rep.matrix(g)))


def lift_tag(stab: frozenset[Perm], ctx: SymmetryContext) -> str:
    for name, grp in ctx.named.items():
        if grp._set == stab:
            return name
    return "other"


def classify_lifting(s: Subspace, ctx: SymmetryContext) -> LiftFlags:
    return LiftFlags(
        is_edge_transitive(s, ctx),
        is_vertex_transitive(s, ctx),
        lift_tag(stabilizer(s, ctx), ctx),
    )


@dataclass
class ProjectionClass:
    representative: Subspace
    orbit: tuple[Subspace, ...]
    members: tuple[Subspace, ...]
    flags: LiftFlags | None = None
    minimal_semisymmetric: bool = False
    name: str | None = None
    info: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.representative.dim


def transversal_orbit(s: Subspace, ctx: SymmetryContext) -> tuple[Subspace, ...]:
    return tuple(sorted({image(ctx.rep.matrix(t), s) for t in ctx.transversal}, key=lambda u: u.basis))


def orbit_reduce(subspaces: Iterable[Subspace], ctx: SymmetryContext) -> list[ProjectionClass]:
    """Group subspaces into isomorphism classes of projections.

    Two edge-transitive subspaces give isomorphic projections iff a
    transversal matrix maps one onto the other.  The representative is the
    orbit member with the lexicographically least canonical basis.
    """
    classes: dict[Subspace, list[Subspace]] = {}
    orbits: dict[Subspace, tuple[Subspace, ...]] = {}
    for s in subspaces:
        orb = transversal_orbit(s, ctx)
        rep = orb[0]
        orbits[rep] = orb
        classes.setdefault(rep, [])
        if s not in classes[rep]:
            classes[rep].append(s)
    out = [ProjectionClass(rep, orbits[rep], tuple(sorted(mem))) for rep, mem in classes.items()]
    out.sort(key=lambda c: c.representative.sort_key())
    return out


def minimal_semisymmetric_subspaces(lattice: Iterable[Subspace], ctx: SymmetryContext) -> list[Subspace]:
    """Semisymmetric lattice members with no smaller nonzero semisymmetric member inside."""
    found: list[Subspace] = []
    for s in sorted(lattice):
        if not s.dim or not is_semisymmetric(s, ctx):
            continue
        if not any(contains(s, t) for t in found):
            found.append(s)
    return found


def minimal_semisymmetric(
    classes: Sequence[ProjectionClass], lattice: Iterable[Subspace], ctx: SymmetryContext
) -> list[ProjectionClass]:
    keep = set(minimal_semisymmetric_subspaces(lattice, ctx))
    out = []
    for c in classes:
        if any(s in keep for s in c.orbit):
            c.minimal_semisymmetric = True
            out.append(c)
    return out


def count_minimal_semisymmetric(p: int) -> int:
    """Number of minimal semisymmetric p-elementary abelian projections of GP(8, 3)."""
    from .mkcensus import full_census

    return full_census(p).counts["minimal_semisymmetric"]
