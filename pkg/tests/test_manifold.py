import pytest
from hypothesis import given
from hypothesis import strategies as st

from acstruct.chern import GenusId, evaluate_genus, pontryagin_from_chern
from acstruct.errors import (
    DimensionMismatch,
    EmptyList,
    InvalidDescriptor,
    NotRationalHomologySphere,
    OddDimension,
)
from acstruct.graded import integrate
from acstruct.manifold import (
    A,
    B,
    Flag,
    ManifoldData,
    close_flags,
    complex_projective,
    connected_sum,
    hopf_manifold,
    point_ring,
    product_of_rhs,
    sphere,
    sphere_product,
    symbolic_product_chern,
)

PROPAGATED = (Flag.STABLY_ACX, Flag.SPIN_C, Flag.STABLY_PARALLELISABLE,
              Flag.HIGHLY_CONNECTED, Flag.MIDDLE_RATIONAL_TRIVIAL)

DIM8 = [complex_projective(4), sphere(8), sphere_product(1, 7), sphere_product(3, 5),
        ManifoldData("N8", 8, 2, 0, flags=frozenset({Flag.RATIONAL_HOMOLOGY_SPHERE, Flag.SPIN_C}))]


def test_flag_closure():
    assert close_flags([Flag.ALMOST_COMPLEX]) == {Flag.ALMOST_COMPLEX, Flag.STABLY_ACX, Flag.SPIN_C}
    ihs = close_flags(["INTEGRAL_HOMOLOGY_SPHERE"])
    assert {Flag.RATIONAL_HOMOLOGY_SPHERE, Flag.MIDDLE_RATIONAL_TRIVIAL,
            Flag.STABLY_PARALLELISABLE, Flag.STABLY_ACX} <= ihs


def test_closed_by_default():
    assert sphere(4).has(Flag.CLOSED)
    open_m = ManifoldData("R4", 4, 1, 0, point_ring(4), flags=frozenset({Flag.NONCOMPACT}))
    assert not open_m.has(Flag.CLOSED)


@pytest.mark.parametrize("kwargs, err", [
    (dict(name="X", dim=5, euler=0), OddDimension),
    (dict(name="X", dim=6, euler=2, signature=1,
          flags=frozenset({Flag.RATIONAL_HOMOLOGY_SPHERE})), InvalidDescriptor),
    (dict(name="X", dim=4, euler=3, flags=frozenset({Flag.RATIONAL_HOMOLOGY_SPHERE})), InvalidDescriptor),
    (dict(name="X", dim=4, euler=3), InvalidDescriptor),
    (dict(name="X", dim=4, euler=2, flags=frozenset({Flag.CLOSED, Flag.NONCOMPACT})), InvalidDescriptor),
])
def test_invalid_manifolds(kwargs, err):
    with pytest.raises(err):
        ManifoldData(**kwargs)


def test_top_chern_must_match_euler():
    cp = complex_projective(2)
    with pytest.raises(InvalidDescriptor):
        ManifoldData("bad", 4, 4, 1, cp.ring, cp.tangent_chern, frozenset({Flag.ALMOST_COMPLEX}))


def test_c_top_integral():
    assert complex_projective(3).c_top_integral == 4
    assert sphere(6).c_top_integral == 2
    assert sphere(4).c_top_integral == 0  # stably parallelisable
    assert ManifoldData("N", 4, 2, flags=frozenset({Flag.RATIONAL_HOMOLOGY_SPHERE})).c_top_integral is None


def test_cp2_sum():
    cp = complex_projective(2)
    x = connected_sum([cp, cp])
    assert (x.euler, x.signature) == (4, 2)
    assert not x.has(Flag.ALMOST_COMPLEX)
    assert x.has(Flag.SPIN_C, Flag.STABLY_ACX)
    h1, h2 = x.ring.gen("M1.h"), x.ring.gen("M2.h")
    assert (h1 * h2).is_zero()
    assert integrate(h1**2) == integrate(h2**2) == 1
    p = pontryagin_from_chern(x.tangent_chern)
    assert p[1] == 3 * h1**2 + 3 * h2**2
    assert integrate(evaluate_genus(GenusId.L, p)) == 2
    # Cartan sum structure: c_2 integrates to chi(CP2) + chi(CP2)
    assert x.c_top_integral == 6


def test_single_summand_is_identity():
    cp = complex_projective(2)
    assert connected_sum([cp]) is cp


def test_point_like_sum():
    x = connected_sum([sphere_product(5, 5)] * 3)
    assert x.ring.is_point_like
    assert x.euler == -4
    assert x.has(Flag.HIGHLY_CONNECTED, Flag.STABLY_PARALLELISABLE, Flag.MIDDLE_RATIONAL_TRIVIAL)
    assert x.tangent_chern is not None and x.tangent_chern.classes == ()


def test_sum_errors():
    with pytest.raises(EmptyList):
        connected_sum([])
    with pytest.raises(DimensionMismatch):
        connected_sum([sphere(4), sphere(6)])


@given(st.lists(st.sampled_from(DIM8), min_size=1, max_size=6))
def test_sum_invariants(ms):
    x = connected_sum(ms)
    l = len(ms)
    assert x.euler == sum(m.euler for m in ms) - 2 * (l - 1)
    assert x.signature == sum(m.signature for m in ms)
    for f in PROPAGATED:
        assert x.has(f) == all(m.has(f) for m in ms)
    if l > 1:
        assert not x.has(Flag.ALMOST_COMPLEX)
    if x.tangent_chern is not None:
        assert x.c_top_integral == sum(m.c_top_integral for m in ms)


@given(st.lists(st.sampled_from(DIM8), min_size=2, max_size=4))
def test_sum_order_irrelevant(ms):
    a, b = connected_sum(ms), connected_sum(list(reversed(ms)))
    assert (a.euler, a.signature, a.flags) == (b.euler, b.signature, b.flags)


def test_product_of_rhs():
    x = product_of_rhs(sphere(2), sphere(6))
    assert (x.dim, x.euler, x.signature) == (8, 4, 0)
    assert x.has(Flag.SPIN_C, Flag.STABLY_PARALLELISABLE)
    with pytest.raises(NotRationalHomologySphere):
        product_of_rhs(complex_projective(1), sphere(2))


def test_symbolic_product_chern():
    c = symbolic_product_chern(1, 3)
    u, v = c.ring.gen("u"), c.ring.gen("v")
    assert c.total() == 1 + u * A + v * B + 4 * u * v
    d = c.subs({A: 2, B: 2})
    assert (d[1], d[3], d[4]) == (2 * u, 2 * v, 4 * u * v)


def test_hopf_manifold():
    m = hopf_manifold(2)
    assert (m.name, m.dim, m.euler) == ("S1xS7", 8, 0)
    assert m.has(Flag.ALMOST_COMPLEX, Flag.MIDDLE_RATIONAL_TRIVIAL)
    assert not m.has(Flag.HIGHLY_CONNECTED)
