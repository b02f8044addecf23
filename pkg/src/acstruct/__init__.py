"""Exact characteristic-class arithmetic and almost complex structure rules."""

from .chern import (
    ChernVector,
    GenusId,
    PontryaginVector,
    bernoulli,
    chern_character,
    conjugate_chern,
    evaluate_genus,
    genus_polynomials,
    newton_power_sums,
    pontryagin_from_chern,
    spinc_dirac_index,
)
from .decide import (
    NONE_BUT_ONE,
    RuleFiring,
    Status,
    Verdict,
    classify_connected_sum,
    classify_product_rhs,
    classify_product_spheres,
    guaranteed_connected_sum,
    hirzebruch_congruence,
    obstruction_group_order,
    obstruction_residue,
    prop29_check,
    connected_sum_threshold,
    theoremA_threshold,
    yang_divisibility,
)
from .graded import GradedElement, RingModel, exp_series, integrate, make_ring
from .manifold import (
    Flag,
    ManifoldData,
    complex_projective,
    connected_sum,
    hopf_manifold,
    product_of_rhs,
    sphere,
    sphere_product,
    symbolic_product_chern,
)

__version__ = "0.1.0"
