"""
Arithmetic in Z_p and polynomial factoring
==========================================

Scalars are plain integers reduced mod p.  Polynomials carry their prime
and factor into monic irreducibles.
"""

from homolift.gfp import FpPoly, fp_inv, fp_sqrt, poly_factor

# inverses and square roots; the smaller root is returned
print("1/2 mod 5 =", fp_inv(2, 5))
print("sqrt(3) mod 13 =", fp_sqrt(3, 13))
print("sqrt(-1) mod 7 =", fp_sqrt(-1, 7), "(no root)")

# x^4 - 1 splits completely mod 5 but not mod 7
for p in (5, 7):
    f = FpPoly([-1, 0, 0, 0, 1], p)
    print(f"x^4-1 mod {p}:", " * ".join(f"({g})^{m}" for g, m in poly_factor(f)))
