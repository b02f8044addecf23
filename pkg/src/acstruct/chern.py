"""Chern and Pontryagin classes, power sums, the Chern character, and genera.

Everything is computed modulo torsion inside a :class:`~acstruct.graded.RingModel`.
Classes beyond the stored list are zero.
"""

from __future__ import annotations

import enum
import threading
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .graded import GradedElement, RingModel, exp_series, integrate, make_ring

__all__ = [
    "ChernVector",
    "PontryaginVector",
    "GenusId",
    "conjugate_chern",
    "pontryagin_from_chern",
    "newton_power_sums",
    "power_sums_from_elementary",
    "chern_character",
    "bernoulli",
    "characteristic_series",
    "pontryagin_ring",
    "genus_polynomials",
    "evaluate_genus",
    "spinc_dirac_index",
]


def _check_pure(classes: Sequence[GradedElement], step: int, what: str) -> None:
    for j, c in enumerate(classes, start=1):
        if not c.is_homogeneous(step * j):
            raise ValueError(f"{what}_{j} must be homogeneous of degree {step * j}")


@dataclass(frozen=True)
class ChernVector:
    """Chern classes ``c_1..c_n`` of a complex bundle of the given rank.

    Trailing zero classes are dropped, so equal bundles compare equal.
    """

    ring: RingModel
    rank: int
    classes: tuple[GradedElement, ...] = ()

    def __post_init__(self):
        classes = list(self.classes)
        while classes and classes[-1].is_zero():
            classes.pop()
        object.__setattr__(self, "classes", tuple(classes))
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        for c in self.classes:
            if c.ring != self.ring:
                raise ValueError("Chern class lives in a different ring")
        _check_pure(self.classes, 2, "c")
        if len(self.classes) > self.ring.top_degree // 2:
            raise ValueError("more Chern classes than the ring can hold")

    @classmethod
    def from_total(cls, total: GradedElement, rank: int) -> ChernVector:
        """Split a total class ``1 + c_1 + c_2 + ...`` into its components."""
        n = total.ring.top_degree // 2
        return cls(total.ring, rank, tuple(total.part(2 * j) for j in range(1, n + 1)))

    def __getitem__(self, j: int) -> GradedElement:
        """``c_j``; ``c_0 = 1`` and classes past the stored list are 0."""
        if j == 0:
            return self.ring.one()
        if 1 <= j <= len(self.classes):
            return self.classes[j - 1]
        return self.ring.zero()

    def total(self) -> GradedElement:
        out = self.ring.one()
        for c in self.classes:
            out = out + c
        return out

    def subs(self, values) -> ChernVector:
        return ChernVector(self.ring, self.rank, tuple(c.subs(values) for c in self.classes))

    def __add__(self, other: ChernVector) -> ChernVector:
        """Whitney sum: total classes multiply, ranks add."""
        return ChernVector.from_total(self.total() * other.total(), self.rank + other.rank)

    def __str__(self) -> str:
        return str(self.total())


@dataclass(frozen=True)
class PontryaginVector:
    ring: RingModel
    classes: tuple[GradedElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        _check_pure(self.classes, 4, "p")

    def __getitem__(self, i: int) -> GradedElement:
        if i == 0:
            return self.ring.one()
        if 1 <= i <= len(self.classes):
            return self.classes[i - 1]
        return self.ring.zero()

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.classes)


class GenusId(enum.Enum):
    AHAT = "ahat"
    L = "l"


def conjugate_chern(c: ChernVector) -> ChernVector:
    """Chern classes of the conjugate bundle: ``(-1)^j c_j``."""
    return ChernVector(
        c.ring, c.rank, tuple(x if j % 2 == 0 else -x for j, x in enumerate(c.classes, start=1))
    )


def pontryagin_from_chern(c: ChernVector) -> PontryaginVector:
    """Pontryagin classes of the underlying real bundle.

    ``p_i = (-1)^i`` times the degree-``4i`` part of ``c(E) c(conj E)``.
    """
    prod = c.total() * conjugate_chern(c).total()
    n = c.ring.top_degree // 4
    return PontryaginVector(
        c.ring, tuple(prod.part(4 * i) * (-1) ** i for i in range(1, n + 1))
    )


def power_sums_from_elementary(
    e: Sequence[GradedElement], n: int, one: GradedElement
) -> list[GradedElement]:
    """Newton's identities: power sums ``s_1..s_n`` from ``e_1, e_2, ...``.

    ``s_k = sum_{i<k} (-1)^(i-1) e_i s_(k-i) + (-1)^(k-1) k e_k``; entries
    of ``e`` past its end count as zero.
    """
    zero = one * 0

    def el(i: int) -> GradedElement:
        return e[i - 1] if i <= len(e) else zero

    s: list[GradedElement] = []
    for k in range(1, n + 1):
        acc = el(k) * (k if k % 2 else -k)
        for i in range(1, k):
            ei = el(i)
            if ei.is_zero():
                continue
            t = ei * s[k - i - 1]
            acc = acc + t if i % 2 else acc - t
        s.append(acc)
    return s


def newton_power_sums(c: ChernVector, n: int) -> list[GradedElement]:
    """Power sums ``s_1..s_n`` of the Chern roots."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return power_sums_from_elementary(c.classes, n, c.ring.one())


def chern_character(c: ChernVector) -> GradedElement:
    n = c.ring.top_degree // 2
    out = c.ring.scalar(c.rank)
    for k, s in enumerate(newton_power_sums(c, n), start=1):
        out = out + s / factorial(k)
    return out


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with ``B_1 = -1/2``.

    From ``sum_{k=0}^{n} C(n+1, k) B_k = 0``.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    return -sum((comb(n + 1, k) * bernoulli(k) for k in range(n)), Fraction(0)) / (n + 1)


def characteristic_series(genus: GenusId, n: int) -> list[Fraction]:
    """Coefficients ``q_0..q_n`` of the even power series in ``z = x^2``.

    L: ``x / tanh x``; A-hat: ``(x/2) / sinh(x/2)``.
    """
    out = []
    for k in range(n + 1):
        b = bernoulli(2 * k) / factorial(2 * k)
        if genus is GenusId.L:
            out.append(4**k * b)
        else:
            out.append((2 - 4**k) * b / 4**k)
    return out


def _series_log(q: list[Fraction]) -> list[Fraction]:
    # log of a power series with q[0] == 1, via q * (log q)' = q'
    n = len(q) - 1
    a = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        a[k] = q[k] - sum((j * a[j] * q[k - j] for j in range(1, k)), Fraction(0)) / k
    return a


@lru_cache(maxsize=None)
def pontryagin_ring(n: int) -> RingModel:
    """Free ring on ``p_1..p_n`` (``deg p_i = 4i``) truncated above degree ``4n``."""
    if n < 1:
        raise ValueError("need at least one Pontryagin class")
    return make_ring({
        "generators": [(f"p{i}", 4 * i) for i in range(1, n + 1)],
        "top_degree": 4 * n,
        "fundamental": {f"p{n}": 1},
    })


_genus_cache: dict[tuple[GenusId, int], tuple[GradedElement, ...]] = {}
_genus_lock = threading.Lock()


def genus_polynomials(genus: GenusId, max_i: int) -> list[GradedElement]:
    """Multiplicative-sequence polynomials ``K_1..K_max_i``.

    Elements of :func:`pontryagin_ring`; ``K_i`` is the degree-``4i`` part.
    Computed by writing the product of the characteristic series over the
    formal roots as ``exp(sum_k a_k P_k)``, where ``a_k`` are the
    coefficients of ``log Q`` and ``P_k`` the power sums of the squared
    roots, themselves obtained from the ``p_i`` by Newton's identities.
    """
    genus = GenusId(genus)
    if max_i < 0:
        raise ValueError("max_i must be non-negative")
    if max_i == 0:
        return []
    key = (genus, max_i)
    cached = _genus_cache.get(key)
    if cached is None:
        with _genus_lock:
            cached = _genus_cache.get(key)
            if cached is None:
                cached = _compute_genus(genus, max_i)
                _genus_cache[key] = cached
    return list(cached)


def _compute_genus(genus: GenusId, n: int) -> tuple[GradedElement, ...]:
    ring = pontryagin_ring(n)
    p = [ring.gen(f"p{i}") for i in range(1, n + 1)]
    logq = _series_log(characteristic_series(genus, n))
    power = power_sums_from_elementary(p, n, ring.one())
    exponent = ring.zero()
    for k in range(1, n + 1):
        exponent = exponent + power[k - 1] * logq[k]
    full = exp_series(exponent)
    return tuple(full.part(4 * i) for i in range(1, n + 1))


def evaluate_genus(genus: GenusId, p: PontryaginVector) -> GradedElement:
    """``1 + K_1(p) + K_2(p) + ...`` truncated at the ring's top degree."""
    n = p.ring.top_degree // 4
    out = p.ring.one()
    if n == 0:
        return out
    images = {f"p{i}": p[i] for i in range(1, n + 1)}
    for k in genus_polynomials(genus, n):
        out = out + k.substitute(images, p.ring)
    return out


def spinc_dirac_index(
    c: ChernVector, p: PontryaginVector, twist: ChernVector | None = None
):
    """Index of the spin^c Dirac operator of the structure with first Chern class ``c_1``.

    ``integral of exp(c_1/2) ch(E) A-hat(p)`` with ``E`` the bundle with
    Chern data ``c`` unless another ``twist`` is given.  ``c_1/2`` is taken
    in rational cohomology; whether the manifold is spin^c is the caller's
    responsibility.
    """
    if c.ring != p.ring or (twist is not None and twist.ring != c.ring):
        raise ValueError("Chern and Pontryagin data must share a ring")
    e = twist if twist is not None else c
    integrand = exp_series(c[1] / 2) * chern_character(e) * evaluate_genus(GenusId.AHAT, p)
    return integrate(integrand)
