"""Independent reference computations used by the tests.

None of these import the package's series, Newton or genus code.
"""

from fractions import Fraction
from itertools import product as iproduct

import sympy as sp

X = sp.Symbol("x")


def root_series(kind, n):
    """Coefficients of z^0..z^n of Q(z), z = x^2, via sympy's own series."""
    f = X / sp.tanh(X) if kind == "l" else (X / 2) / sp.sinh(X / 2)
    ser = sp.series(f, X, 0, 2 * n + 2).removeO()
    return [sp.Rational(ser.coeff(X, 2 * k)) for k in range(n + 1)]


def _weighted_monomials(weight, nvars):
    # exponent vectors e with sum (i+1) e_i == weight
    out = []
    for e in iproduct(*[range(weight // (i + 1) + 1) for i in range(nvars)]):
        if sum((i + 1) * k for i, k in enumerate(e)) == weight:
            out.append(e)
    return out


def formal_root_genus(kind, nvars):
    """K_1..K_nvars as {exponent tuple in p1..p_nvars: Fraction}.

    Expands prod_i Q(z_i) over nvars formal roots and rewrites each weight
    piece in the elementary symmetric functions p_j = e_j(z) by matching
    coefficients.
    """
    z = sp.symbols(f"z1:{nvars + 1}")
    q = root_series(kind, nvars)
    total = sp.Integer(1)
    for zi in z:
        total = sp.expand(total * sum(q[k] * zi**k for k in range(nvars + 1)))
    poly = sp.Poly(total, *z)
    elem = [sp.expand(sum(sp.prod(c) for c in _combos(z, j))) for j in range(1, nvars + 1)]
    out = []
    for w in range(1, nvars + 1):
        piece = sum(c * sp.prod(zz**e for zz, e in zip(z, m))
                    for m, c in poly.terms() if sum(m) == w)
        monos = _weighted_monomials(w, nvars)
        unknowns = sp.symbols(f"k0:{len(monos)}")
        guess = sum(u * sp.prod(elem[i] ** e for i, e in enumerate(m))
                    for u, m in zip(unknowns, monos))
        eqs = sp.Poly(sp.expand(guess - piece), *z).coeffs()
        sol = sp.solve(eqs, unknowns, dict=True)[0]
        out.append({m: Fraction(int(sol[u].p), int(sol[u].q))
                    for u, m in zip(unknowns, monos) if sol[u] != 0})
    return out


def _combos(z, j):
    from itertools import combinations
    return combinations(z, j)


def elementary_from_roots(roots):
    """e_1..e_n of a list of numbers, by expanding prod (1 + r t)."""
    coeffs = [Fraction(1)]
    for r in roots:
        coeffs = [a + r * b for a, b in zip(coeffs + [0], [0] + coeffs)]
    return coeffs[1:]


def power_sums(roots, n):
    return [sum(Fraction(r) ** k for r in roots) for k in range(1, n + 1)]


def bernoulli_by_series(n):
    """B_n from the exponential generating function t/(e^t - 1)."""
    t = sp.Symbol("t")
    ser = sp.series(t / (sp.exp(t) - 1), t, 0, n + 1).removeO()
    c = ser.coeff(t, n) * sp.factorial(n)
    return Fraction(int(c.p), int(c.q))
