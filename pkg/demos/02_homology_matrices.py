"""
Homology matrices of the Moebius-Kantor graph
=============================================

GP(8, 3) has cycle rank 9.  Fixing a spanning tree gives a basis of
fundamental cycles, and each automorphism acts on it by a 9x9 matrix.
"""

from homolift import mkcensus as mk
from homolift.graphcore import HomologyRep, mk_tree

g = mk.base_graph()
print(f"GP(8,3): {g.n} vertices, {len(g.edges)} edges, girth {g.girth()}")

td = mk_tree()
print("cotree arcs:", td.cotree)

# rho is the step-1 rotation; its matrix mod 7
rep = HomologyRep(td, 7)
R = rep.matrix(mk.generators()["rho"])
print(R)

# a product of automorphisms maps to the product of matrices, left factor first
a, b = mk.generators()["rho"], mk.generators()["omega"]
print("M(ab) == M(a) M(b):", rep.matrix(a * b) == R @ rep.matrix(b))

# the same matrices, checked against the stored integer tables
print(sorted(mk.paper_matrices(7)))
