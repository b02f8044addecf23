"""
Characteristic classes of projective spaces
===========================================

Chern classes, Pontryagin classes and the L and A-hat genera, all with
exact rational coefficients.
"""

from acstruct import GenusId, complex_projective, evaluate_genus, pontryagin_from_chern
from acstruct.chern import chern_character, genus_polynomials, spinc_dirac_index
from acstruct.graded import integrate

# The first few L-polynomials.  They are computed, not tabulated.
for i, k in enumerate(genus_polynomials(GenusId.L, 3), start=1):
    print(f"L_{i} =", k)
print()

# CP^n has total Chern class (1 + h)^(n+1).
cp4 = complex_projective(4)
print("c(CP4)  =", cp4.tangent_chern)
p = pontryagin_from_chern(cp4.tangent_chern)
print("p(CP4)  =", " + ".join(str(x) for x in p.classes))
print("ch(CP4) =", chern_character(cp4.tangent_chern))
print()

# Hirzebruch's signature theorem: integrating the L-genus gives sigma.
for n in (2, 4, 6):
    cp = complex_projective(n)
    sig = integrate(evaluate_genus(GenusId.L, pontryagin_from_chern(cp.tangent_chern)))
    print(f"sigma(CP{n}) from the L-genus: {sig}")

# The spin^c Dirac operator twisted by the tangent bundle has integer index
# on almost complex manifolds.
for n in (1, 2, 3, 4):
    c = complex_projective(n).tangent_chern
    print(f"index on CP{n}:", spinc_dirac_index(c, pontryagin_from_chern(c)))
