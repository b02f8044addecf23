"""
Products of rational homology spheres
=====================================

The tangent bundle of M^2p x N^2q has total Chern class 1 + a u + b v + 4 uv
with integer unknowns a and b.  Conjugation symmetry and index integrality
cut this down.
"""

from acstruct import classify_product_rhs, classify_product_spheres
from acstruct.decide import derive_product_constraints

con = derive_product_constraints(3, 5)
print("coefficients of c(T) c(conj T) for (p, q) = (3, 5):")
for k, v in con.coefficients.items():
    print(f"  {k:2s}: {v}")
print("  so ab =", con.ab)
print()

print("     " + " ".join(f"q={q}" for q in range(1, 7)))
for p in range(1, 7):
    row = []
    for q in range(1, 7):
        s = classify_product_rhs(p, q, n_spin_c=True, m_spin_c=True).status.value
        row.append({"EXISTS": " yes", "NOT_EXISTS": "  no", "UNDETERMINED": "   ?"}[s])
    print(f"p={p} " + " ".join(row))
print()

v = classify_product_rhs(3, 2)
print("M6 x N4:", v.decided_by.conclusion)
print()

print("products of even spheres that are almost complex:")
for p in range(1, 6):
    for q in range(p, 6):
        if classify_product_spheres(p, q).status.value == "EXISTS":
            print(f"  S{2 * p} x S{2 * q}")
