"""
Census of minimal semisymmetric covers
======================================

For each prime the pipeline enumerates the lattice, groups it into
isomorphism classes, flags the semisymmetric ones and compares the count
with the closed formula in p mod 24.
"""

from homolift import mkcensus as mk

print(mk.render_text(mk.full_census(13)))
print()
print(f"{'p':>3} {'count':>6} {'formula':>8}")
for row in mk.verify_formula(31):
    print(f"{row.p:>3} {row.computed:>6} {row.expected:>8}")
