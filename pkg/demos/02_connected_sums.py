"""
When is a connected sum almost complex?
=======================================

Guarantee mode answers for all collections of summands at once; instance
mode runs the rule pipeline on one concrete sum and keeps a trace.
"""

from acstruct import (
    NONE_BUT_ONE,
    classify_connected_sum,
    complex_projective,
    guaranteed_connected_sum,
    hopf_manifold,
    sphere_product,
    connected_sum_threshold,
)

# Moduli for l (the number of summands).  Dimensions divisible by 4 only
# allow l = 1.
for dim in range(2, 24, 2):
    t = connected_sum_threshold(dim)
    print(f"dim {dim:2d}:", "only l = 1" if t == NONE_BUT_ONE else f"l = 1 mod {t}")
print()

v = guaranteed_connected_sum(14, 2)
print("dim 14, l = 2:", v.status.value, "witness", v.trace[0].witness)
print()

# Sums of S^5 x S^5: l must be 1 mod 24.
s5 = sphere_product(5, 5)
for l in (1, 2, 13, 25, 49):
    v = classify_connected_sum([s5] * l)
    rule = v.decided_by.rule_id if v.decided_by else "-"
    print(f"#{l:<2d} S5xS5: {v.status.value:12s} by {rule}")
print()

# A Hopf-manifold sum fails even though the mod 4 congruence holds.
v = classify_connected_sum([hopf_manifold(1)] * 3)
for f in v.trace:
    if f.applicable:
        print(f"[{f.rule_id}] {f.conclusion}")
print()

# CP2 # CP2 already fails the congruence; three copies are not decided.
cp2 = complex_projective(2)
print("CP2#CP2   :", classify_connected_sum([cp2, cp2]).status.value)
print("CP2#CP2#CP2:", classify_connected_sum([cp2] * 3).status.value)
