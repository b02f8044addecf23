"""Closed manifolds described by their invariants, with connected sums and products."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

import sympy as sp

from .chern import ChernVector
from .errors import (
    DimensionMismatch,
    EmptyList,
    InvalidDescriptor,
    NotRationalHomologySphere,
    OddDimension,
)
from .graded import GradedElement, RingModel, integrate, make_ring

__all__ = [
    "Flag",
    "ManifoldData",
    "connected_sum",
    "product_of_rhs",
    "product_ring",
    "symbolic_product_chern",
    "A",
    "B",
    "point_ring",
    "sphere",
    "sphere_product",
    "complex_projective",
    "hopf_manifold",
]


class Flag(str, enum.Enum):
    CLOSED = "CLOSED"
    NONCOMPACT = "NONCOMPACT"
    ALMOST_COMPLEX = "ALMOST_COMPLEX"
    STABLY_ACX = "STABLY_ACX"
    SPIN_C = "SPIN_C"
    # (n-1)-connected of dimension 2n
    HIGHLY_CONNECTED = "HIGHLY_CONNECTED"
    # H^{2j}(M; Q) = 0 for 0 < 2j < dim
    MIDDLE_RATIONAL_TRIVIAL = "MIDDLE_RATIONAL_TRIVIAL"
    RATIONAL_HOMOLOGY_SPHERE = "RATIONAL_HOMOLOGY_SPHERE"
    STABLY_PARALLELISABLE = "STABLY_PARALLELISABLE"
    INTEGRAL_HOMOLOGY_SPHERE = "INTEGRAL_HOMOLOGY_SPHERE"


_IMPLIES = {
    Flag.ALMOST_COMPLEX: {Flag.STABLY_ACX},
    Flag.STABLY_ACX: {Flag.SPIN_C},
    Flag.INTEGRAL_HOMOLOGY_SPHERE: {Flag.STABLY_PARALLELISABLE, Flag.RATIONAL_HOMOLOGY_SPHERE},
    Flag.RATIONAL_HOMOLOGY_SPHERE: {Flag.MIDDLE_RATIONAL_TRIVIAL},
    # stably trivial tangent bundle: trivial stable complex structure
    Flag.STABLY_PARALLELISABLE: {Flag.STABLY_ACX},
}


def close_flags(flags: Iterable[Flag | str]) -> frozenset[Flag]:
    out = {Flag(f) for f in flags}
    todo = list(out)
    while todo:
        for g in _IMPLIES.get(todo.pop(), ()):
            if g not in out:
                out.add(g)
                todo.append(g)
    return frozenset(out)


def point_ring(dim: int) -> RingModel:
    """Cohomology mod torsion of a rational homology sphere: just ``1`` and the top class."""
    return make_ring({"generators": [], "top_degree": dim})


@dataclass(frozen=True)
class ManifoldData:
    """A connected manifold, as far as the decision rules can see it.

    ``flags`` is closed under the implications
    ALMOST_COMPLEX => STABLY_ACX => SPIN_C, INTEGRAL_HOMOLOGY_SPHERE =>
    STABLY_PARALLELISABLE and RATIONAL_HOMOLOGY_SPHERE; stably
    parallelisable manifolds also get STABLY_ACX.
    """

    name: str
    dim: int
    euler: int
    signature: int = 0
    ring: Optional[RingModel] = None
    tangent_chern: Optional[ChernVector] = None
    flags: frozenset[Flag] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.dim <= 0 or self.dim % 2:
            raise OddDimension(f"{self.name}: dimension must be positive and even, got {self.dim}")
        flags = close_flags(self.flags)
        if Flag.CLOSED in flags and Flag.NONCOMPACT in flags:
            raise InvalidDescriptor(f"{self.name}: CLOSED and NONCOMPACT are exclusive")
        if Flag.NONCOMPACT not in flags:
            flags = flags | {Flag.CLOSED}
        object.__setattr__(self, "flags", flags)
        if self.ring is None:
            if Flag.RATIONAL_HOMOLOGY_SPHERE in flags or Flag.MIDDLE_RATIONAL_TRIVIAL in flags:
                object.__setattr__(self, "ring", point_ring(self.dim))
            else:
                raise InvalidDescriptor(f"{self.name}: a cohomology ring model is required")
        if self.ring.top_degree != self.dim:
            raise InvalidDescriptor(f"{self.name}: ring top degree differs from dimension")
        if self.dim % 4 and self.signature:
            raise InvalidDescriptor(f"{self.name}: signature must vanish unless dim is 0 mod 4")
        if (Flag.MIDDLE_RATIONAL_TRIVIAL in flags or Flag.RATIONAL_HOMOLOGY_SPHERE in flags) \
                and not self.ring.is_point_like:
            raise InvalidDescriptor(f"{self.name}: rationally trivial middle cohomology needs a point-like ring")
        if Flag.RATIONAL_HOMOLOGY_SPHERE in flags and self.euler != 2:
            raise InvalidDescriptor(f"{self.name}: an even-dimensional rational homology sphere has euler 2")
        if Flag.RATIONAL_HOMOLOGY_SPHERE in flags and self.signature:
            raise InvalidDescriptor(f"{self.name}: a rational homology sphere has signature 0")
        c = self.tangent_chern
        if c is not None:
            if c.ring != self.ring:
                raise InvalidDescriptor(f"{self.name}: tangent Chern classes live in another ring")
            if c.rank != self.dim // 2:
                raise InvalidDescriptor(f"{self.name}: tangent Chern rank must be dim/2")
            if Flag.ALMOST_COMPLEX in flags and Flag.CLOSED in flags:
                top = integrate(c[self.dim // 2])
                if isinstance(top, Fraction) and top != self.euler:
                    raise InvalidDescriptor(
                        f"{self.name}: top Chern class integrates to {top}, not euler {self.euler}"
                    )

    def has(self, *flags: Flag) -> bool:
        return all(f in self.flags for f in flags)

    @property
    def c_top_integral(self):
        """Integral of the top Chern class, if known.

        For an almost complex closed manifold without stored Chern data this
        is the Euler characteristic.
        """
        if self.tangent_chern is not None:
            return integrate(self.tangent_chern[self.dim // 2])
        if self.has(Flag.ALMOST_COMPLEX, Flag.CLOSED):
            return self.euler
        if self.has(Flag.STABLY_PARALLELISABLE):
            return 0
        return None

    def with_flags(self, *flags: Flag) -> ManifoldData:
        return replace(self, flags=self.flags | set(flags))


def _sum_ring(ms: Sequence[ManifoldData]) -> tuple[RingModel, list[dict[str, str]]]:
    """Ring of a connected sum plus, per summand, the renaming of its generators."""
    gens: list[tuple[str, int]] = []
    nil: dict[str, int] = {}
    zeros: list[dict[str, int]] = []
    tops: list[dict[str, int]] = []
    renames: list[dict[str, str]] = []
    for i, m in enumerate(ms, start=1):
        r = m.ring
        ren: dict[str, str] = {}
        if not r.is_point_like:
            for n, d in r.generators:
                ren[n] = f"M{i}.{n}"
                gens.append((ren[n], d))
            for n, k in zip(r.names, r.nilpotency):
                if k is not None:
                    nil[ren[n]] = k
            for z in r.zero_monomials:
                zeros.append({ren[n]: e for n, e in zip(r.names, z) if e})
            tops.append({ren[n]: e for n, e in zip(r.names, r.fundamental) if e})
            for a in r.aliases:
                tops.append({ren[n]: e for n, e in zip(r.names, a) if e})
        renames.append(ren)
    # cross products of classes from different summands vanish
    owner = {}
    for i, ren in enumerate(renames):
        for new in ren.values():
            owner[new] = i
    names = [n for n, _ in gens]
    for x in range(len(names)):
        for y in range(x + 1, len(names)):
            if owner[names[x]] != owner[names[y]]:
                zeros.append({names[x]: 1, names[y]: 1})
    dim = ms[0].dim
    if not gens:
        return point_ring(dim), renames
    spec = {
        "generators": gens,
        "nilpotency": nil,
        "zero_monomials": zeros,
        "top_degree": dim,
        "fundamental": tops[0],
        "aliases": tops[1:],
    }
    return make_ring(spec), renames


def _pullback(x: GradedElement, ring: RingModel, rename: dict[str, str]) -> GradedElement:
    src = x.ring
    terms = {}
    for m, c in x.terms.items():
        if m == src.fundamental or m in src.aliases:
            terms[ring.fundamental] = terms.get(ring.fundamental, 0) + c
        else:
            terms[ring.monomial({rename[n]: e for n, e in zip(src.names, m) if e})] = c
    return ring.element(terms)


_ALL_PROPAGATE = (
    Flag.STABLY_ACX,
    Flag.SPIN_C,
    Flag.STABLY_PARALLELISABLE,
    Flag.HIGHLY_CONNECTED,
    Flag.MIDDLE_RATIONAL_TRIVIAL,
    Flag.RATIONAL_HOMOLOGY_SPHERE,
    Flag.INTEGRAL_HOMOLOGY_SPHERE,
)


def connected_sum(ms: Sequence[ManifoldData], name: str | None = None) -> ManifoldData:
    """Connected sum of equal-dimensional summands.

    Euler characteristic ``sum chi_i - 2(l-1)``, signature additive, rings
    glued along the top class, and (when every summand carries stable
    Chern data) the stable structure whose Chern classes are the sums of
    the pulled-back summand classes.  ALMOST_COMPLEX is never propagated;
    deciding it is the point of :mod:`acstruct.decide`.
    """
    ms = list(ms)
    if not ms:
        raise EmptyList("connected sum of no manifolds")
    dims = {m.dim for m in ms}
    if len(dims) != 1:
        raise DimensionMismatch(f"summands have dimensions {sorted(dims)}")
    if len(ms) == 1:
        return ms[0]
    dim = ms[0].dim
    l = len(ms)
    ring, renames = _sum_ring(ms)

    chern = None
    if all(m.tangent_chern is not None for m in ms):
        n = dim // 2
        classes = []
        for j in range(1, n + 1):
            cj = ring.zero()
            for m, ren in zip(ms, renames):
                cj = cj + _pullback(m.tangent_chern[j], ring, ren)
            classes.append(cj)
        while classes and classes[-1].is_zero():
            classes.pop()
        chern = ChernVector(ring, n, tuple(classes))

    flags = {f for f in _ALL_PROPAGATE if all(f in m.flags for m in ms)}
    if any(m.has(Flag.NONCOMPACT) for m in ms):
        flags.add(Flag.NONCOMPACT)
    else:
        flags.add(Flag.CLOSED)
    return ManifoldData(
        name=name or "#".join(m.name for m in ms),
        dim=dim,
        euler=sum(m.euler for m in ms) - 2 * (l - 1),
        signature=sum(m.signature for m in ms),
        ring=ring,
        tangent_chern=chern,
        flags=frozenset(flags),
    )


def product_ring(p: int, q: int) -> RingModel:
    """``Q[u, v]/(u^2, v^2)`` with ``deg u = 2p``, ``deg v = 2q`` and ``uv`` the top class."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be positive")
    return make_ring({
        "generators": [("u", 2 * p), ("v", 2 * q)],
        "nilpotency": {"u": 2, "v": 2},
        "top_degree": 2 * (p + q),
        "fundamental": {"u": 1, "v": 1},
    })


def product_of_rhs(pM: ManifoldData, pN: ManifoldData) -> ManifoldData:
    """Product of two even-dimensional rational homology spheres."""
    for m in (pM, pN):
        if not m.has(Flag.RATIONAL_HOMOLOGY_SPHERE):
            raise NotRationalHomologySphere(f"{m.name} is not a rational homology sphere")
        if m.dim % 2:
            raise OddDimension(f"{m.name} is odd-dimensional")
    flags = {Flag.CLOSED}
    if pM.has(Flag.SPIN_C) and pN.has(Flag.SPIN_C):
        flags.add(Flag.SPIN_C)
    if pM.has(Flag.STABLY_PARALLELISABLE) and pN.has(Flag.STABLY_PARALLELISABLE):
        flags.add(Flag.STABLY_PARALLELISABLE)
    return ManifoldData(
        name=f"{pM.name}x{pN.name}",
        dim=pM.dim + pN.dim,
        euler=4,
        signature=0,
        ring=product_ring(pM.dim // 2, pN.dim // 2),
        flags=frozenset(flags),
    )


#: integer unknowns in ``c(T(M x N)) = 1 + a u + b v + 4 uv``
A, B = sp.symbols("a b", integer=True)


def symbolic_product_chern(p: int, q: int) -> ChernVector:
    """Total Chern class ``1 + a u + b v + 4 uv`` on the product model with unknown ``a``, ``b``.

    The top coefficient is 4 because ``c_top`` integrates to ``chi = 4``
    (``u``, ``v`` positively oriented, ``integral of uv = 1``).
    """
    ring = product_ring(p, q)
    u, v = ring.gen("u"), ring.gen("v")
    total = ring.one() + u * A + v * B + u * v * 4
    return ChernVector.from_total(total, p + q)


# common descriptors

def sphere(n: int) -> ManifoldData:
    """The standard even-dimensional sphere ``S^n``."""
    flags = {Flag.INTEGRAL_HOMOLOGY_SPHERE}
    if n in (2, 6):
        flags.add(Flag.ALMOST_COMPLEX)
    return ManifoldData(f"S{n}", n, 2, 0, point_ring(n), flags=frozenset(flags))


def sphere_product(a: int, b: int) -> ManifoldData:
    """``S^a x S^b`` with ``a``, ``b`` odd: parallelisable, complex (Hopf / Calabi-Eckmann)."""
    if a % 2 == 0 or b % 2 == 0:
        raise ValueError("use product_of_rhs for even spheres")
    flags = {Flag.ALMOST_COMPLEX, Flag.STABLY_PARALLELISABLE, Flag.MIDDLE_RATIONAL_TRIVIAL}
    if a == b:
        flags.add(Flag.HIGHLY_CONNECTED)
    dim = a + b
    ring = point_ring(dim)
    chern = ChernVector(ring, dim // 2, ())
    return ManifoldData(f"S{a}xS{b}", dim, 0, 0, ring, chern, frozenset(flags))


def hopf_manifold(m: int) -> ManifoldData:
    """``S^1 x S^(4m-1)``."""
    return sphere_product(1, 4 * m - 1)


def complex_projective(n: int) -> ManifoldData:
    """``CP^n`` with ``c(T) = (1 + h)^(n+1)``."""
    ring = make_ring({
        "generators": [("h", 2)],
        "nilpotency": {"h": n + 1},
        "top_degree": 2 * n,
        "fundamental": {"h": n},
    })
    h = ring.gen("h")
    chern = ChernVector.from_total((ring.one() + h) ** (n + 1), n)
    return ManifoldData(
        f"CP{n}", 2 * n, n + 1, 1 if n % 2 == 0 else 0, ring, chern,
        frozenset({Flag.ALMOST_COMPLEX}),
    )
