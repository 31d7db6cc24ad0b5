"""
Subspaces invariant under the edge-transitive group
===================================================

An elementary abelian cover along which H = <rho^2, omega> lifts
corresponds to a subspace invariant under R^2 and O.  We list the
minimal ones and the whole lattice for a few primes.
"""

from homolift import mkcensus as mk
from homolift.invariant import full_lattice, minimal_common

for p in (2, 3, 5, 7):
    gens = mk.edge_matrices(p)
    mins = minimal_common(gens)
    lat = full_lattice(gens)
    dims = sorted(m.dim for m in mins)
    print(f"p={p}: {len(mins)} minimal subspaces (dims {dims}), lattice of {len(lat)}")

# the same minimal subspaces from the closed-form families
for c in mk.closed_form_subspaces(5):
    if c.minimal:
        print(f"  {c.name:<10} dim {c.subspace.dim}")
