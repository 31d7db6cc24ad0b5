"""
The semisymmetric graph on 144 vertices
=======================================

At p = 3 there is one minimal semisymmetric class.  Its cover has 144
vertices; a direct automorphism search shows it is edge-transitive with
two vertex orbits.
"""

from homolift import mkcensus as mk
from homolift.cover import derive, naive_aut, voltage_for_subspace
from homolift.graphcore import mk_tree

report = mk.full_census(3)
(cls,) = report.semisymmetric_classes
print(cls.name, "largest lifting group", cls.flags.largest_lift)
print(cls.info["voltage_table"].render())

g = derive(voltage_for_subspace(cls.representative, mk_tree())).to_graph()
res = naive_aut(g)
print(f"{g.n} vertices, girth {g.girth()}, bipartite {g.is_bipartite()}")
print(f"|Aut| = {res.order}, vertex orbits {sorted(len(o) for o in res.vertex_orbits)}, "
      f"edge orbits {len(res.edge_orbits)}")
print("semisymmetric:", res.semisymmetric)
