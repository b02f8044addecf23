from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from acstruct.chern import (
    ChernVector,
    GenusId,
    PontryaginVector,
    bernoulli,
    characteristic_series,
    chern_character,
    conjugate_chern,
    evaluate_genus,
    genus_polynomials,
    newton_power_sums,
    pontryagin_from_chern,
    pontryagin_ring,
    spinc_dirac_index,
)
from acstruct.graded import integrate, make_ring
from acstruct.manifold import complex_projective

from oracles import bernoulli_by_series, elementary_from_roots, power_sums, root_series

# Frozen from oracles.formal_root_genus (sympy series over four formal roots).
# Keys are exponents of (p1, p2, p3, p4).
L_TABLE = [
    {(1, 0, 0, 0): Fraction(1, 3)},
    {(0, 1, 0, 0): Fraction(7, 45), (2, 0, 0, 0): Fraction(-1, 45)},
    {(0, 0, 1, 0): Fraction(62, 945), (1, 1, 0, 0): Fraction(-13, 945),
     (3, 0, 0, 0): Fraction(2, 945)},
    {(0, 0, 0, 1): Fraction(127, 4725), (0, 2, 0, 0): Fraction(-19, 14175),
     (1, 0, 1, 0): Fraction(-71, 14175), (2, 1, 0, 0): Fraction(22, 14175),
     (4, 0, 0, 0): Fraction(-1, 4725)},
]
AHAT_TABLE = [
    {(1, 0, 0, 0): Fraction(-1, 24)},
    {(0, 1, 0, 0): Fraction(-1, 1440), (2, 0, 0, 0): Fraction(7, 5760)},
    {(0, 0, 1, 0): Fraction(-1, 60480), (1, 1, 0, 0): Fraction(11, 241920),
     (3, 0, 0, 0): Fraction(-31, 967680)},
    {(0, 0, 0, 1): Fraction(-1, 2419200), (0, 2, 0, 0): Fraction(13, 29030400),
     (1, 0, 1, 0): Fraction(1, 907200), (2, 1, 0, 0): Fraction(-113, 58060800),
     (4, 0, 0, 0): Fraction(127, 154828800)},
]

# H*(CP^6), big enough for six Chern roots
CP6 = make_ring({"generators": [("h", 2)], "top_degree": 12,
                 "nilpotency": {"h": 7}, "fundamental": {"h": 6}})
H = CP6.gen("h")

# free-ish ring for random Chern data
FREE = make_ring({"generators": [("x", 2), ("y", 4), ("z", 6)], "top_degree": 12,
                  "fundamental": {"z": 2}, "aliases": [{"x": 6}, {"y": 3}]})


def as_table(polys):
    return [dict(k.terms) for k in polys]


def random_class(draw, degree):
    x, y, z = FREE.gen("x"), FREE.gen("y"), FREE.gen("z")
    monos = [x**a * y**b * z**c for a in range(7) for b in range(4) for c in range(3)
             if 2 * a + 4 * b + 6 * c == degree]
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(monos), max_size=len(monos)))
    out = FREE.zero()
    for m, k in zip(monos, coeffs):
        out = out + m * k
    return out


@st.composite
def chern_vectors(draw, max_len=6):
    n = draw(st.integers(0, max_len))
    classes = tuple(random_class(draw, 2 * j) for j in range(1, n + 1))
    return ChernVector(FREE, draw(st.integers(n, n + 2)), classes)


@st.composite
def root_lists(draw):
    return draw(st.lists(st.integers(-4, 4), min_size=0, max_size=6))


def from_roots(roots):
    total = CP6.one()
    for r in roots:
        total = total * (1 + r * H)
    return ChernVector.from_total(total, len(roots))


# Bernoulli numbers

def test_bernoulli_matches_series():
    for n in range(0, 21):
        assert bernoulli(n) == bernoulli_by_series(n), n


def test_bernoulli_sign_convention():
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(12) == Fraction(-691, 2730)


@pytest.mark.parametrize("kind, genus", [("l", GenusId.L), ("ahat", GenusId.AHAT)])
def test_series_match_sympy(kind, genus):
    assert characteristic_series(genus, 6) == [Fraction(int(c.p), int(c.q))
                                               for c in root_series(kind, 6)]


# genera

def test_genus_tables():
    assert as_table(genus_polynomials(GenusId.L, 4)) == L_TABLE
    assert as_table(genus_polynomials(GenusId.AHAT, 4)) == AHAT_TABLE


def test_genus_prefix_stable():
    long = genus_polynomials(GenusId.L, 5)
    short = genus_polynomials(GenusId.L, 3)
    assert [str(k) for k in long[:3]] == [str(k) for k in short]


def test_genus_empty():
    assert genus_polynomials(GenusId.AHAT, 0) == []


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_leading_l_coefficient_nonzero(m):
    k = genus_polynomials(GenusId.L, m)[-1]
    top = tuple(1 if i == m - 1 else 0 for i in range(m))
    assert k.coefficient(top) != 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_signature_of_projective_spaces(n):
    cp = complex_projective(2 * n)
    p = pontryagin_from_chern(cp.tangent_chern)
    assert integrate(evaluate_genus(GenusId.L, p)) == 1


def test_cp2_pontryagin():
    cp = complex_projective(2)
    h = cp.ring.gen("h")
    p = pontryagin_from_chern(cp.tangent_chern)
    assert p[1] == 3 * h**2


def test_genus_multiplicative():
    r = make_ring({"generators": [("h", 2), ("k", 2)], "top_degree": 8,
                   "nilpotency": {"h": 3, "k": 3}, "fundamental": {"h": 2, "k": 2}})
    h, k = r.gen("h"), r.gen("k")
    ph = PontryaginVector(r, (3 * h**2,))
    pk = PontryaginVector(r, (3 * k**2,))
    both = PontryaginVector(r, (3 * h**2 + 3 * k**2, 9 * h**2 * k**2))
    for g in GenusId:
        assert evaluate_genus(g, both) == evaluate_genus(g, ph) * evaluate_genus(g, pk)
    assert integrate(evaluate_genus(GenusId.L, both)) == 1  # sigma(CP2 x CP2)


# Newton identities and the Chern character

@settings(max_examples=100, deadline=None)
@given(chern_vectors())
def test_newton_identity(c):
    # k e_k = sum_{i=1..k} (-1)^(i-1) e_(k-i) s_i
    n = 6
    s = newton_power_sums(c, n)
    for k in range(1, n + 1):
        rhs = FREE.zero()
        for i in range(1, k + 1):
            t = c[k - i] * s[i - 1]
            rhs = rhs + t if i % 2 else rhs - t
        assert c[k] * k == rhs


@settings(max_examples=100, deadline=None)
@given(root_lists())
def test_power_sums_of_roots(roots):
    c = from_roots(roots)
    assert [x.coefficient({"h": j}) for j, x in enumerate(newton_power_sums(c, 6), 1)] \
        == power_sums(roots, 6)
    assert [c[j].coefficient({"h": j}) for j in range(1, len(roots) + 1)] \
        == elementary_from_roots(roots)


@settings(max_examples=50, deadline=None)
@given(root_lists())
def test_chern_character_of_roots(roots):
    ch = chern_character(from_roots(roots))
    expected = CP6.scalar(len(roots))
    for j in range(1, 7):
        expected = expected + H**j * (sum((Fraction(r) ** j for r in roots), Fraction(0)) / factorial(j))
    assert ch == expected


@settings(max_examples=50, deadline=None)
@given(chern_vectors(3), chern_vectors(3))
def test_chern_character_additive(e, f):
    assert chern_character(e + f) == chern_character(e) + chern_character(f)


@settings(max_examples=50, deadline=None)
@given(chern_vectors())
def test_conjugation_is_involution(c):
    assert conjugate_chern(conjugate_chern(c)) == c
    assert pontryagin_from_chern(conjugate_chern(c)).classes == pontryagin_from_chern(c).classes


def test_chern_vector_validation():
    with pytest.raises(ValueError):
        ChernVector(CP6, 1, (H**2,))
    # h^7 = 0, so the seventh class is dropped
    assert len(ChernVector(CP6, 7, tuple(H**j for j in range(1, 8))).classes) == 6
    c = from_roots([1, 2])
    assert c[0] == 1 and c[9].is_zero()


def test_symbolic_classes():
    a = sp.Symbol("a")
    c = ChernVector(CP6, 1, (CP6.element({CP6.monomial(h=1): a}),))
    assert c.subs({a: 3}) == from_roots([3])
    assert newton_power_sums(c, 2)[1] == CP6.element({CP6.monomial(h=2): a**2})


# twisted Dirac index

def _series_index_cp(n):
    # independent: integral over CP^n of e^{(n+1)h/2} ((n+1)e^h - 1) ((h/2)/sinh(h/2))^(n+1)
    h = sp.Symbol("h")
    f = sp.exp((n + 1) * h / 2) * ((n + 1) * sp.exp(h) - 1) * ((h / 2) / sp.sinh(h / 2)) ** (n + 1)
    c = sp.series(f, h, 0, n + 1).removeO().coeff(h, n)
    return Fraction(int(c.p), int(c.q))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_index_of_projective_space(n):
    cp = complex_projective(n)
    c = cp.tangent_chern
    got = spinc_dirac_index(c, pontryagin_from_chern(c))
    assert got == _series_index_cp(n)
    assert got.denominator == 1


def test_index_needs_matching_rings():
    c = from_roots([1])
    p = pontryagin_from_chern(complex_projective(2).tangent_chern)
    with pytest.raises(ValueError):
        spinc_dirac_index(c, p)


def test_pontryagin_ring_shape():
    r = pontryagin_ring(3)
    assert r.generators == (("p1", 4), ("p2", 8), ("p3", 12))
