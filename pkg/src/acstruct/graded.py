"""Truncated, evenly graded commutative rings with exact coefficients.

A :class:`RingModel` stands in for ``H^*(M; Z)/torsion`` tensored with the
rationals: a polynomial ring on even-degree generators modulo monomial
relations, truncated above the top degree, with one distinguished monomial
(the fundamental monomial) whose coefficient is what :func:`integrate`
returns.  Several top-degree monomials may be identified with the
fundamental one; that is how connected sums glue their top classes.

Coefficients are :class:`fractions.Fraction`.  When a computation needs
integer unknowns (a Chern class ``a*u`` with ``a`` undetermined) the
coefficient may be a sympy expression instead; it is expanded on entry and
collapses back to a ``Fraction`` as soon as it is a plain rational.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from types import MappingProxyType
from typing import Any, Union

import sympy as sp

from .errors import (
    InconsistentRelations,
    NonNilpotentInput,
    OddDegreeGenerator,
    RingMismatch,
)

__all__ = [
    "Coefficient",
    "Monomial",
    "RingModel",
    "GradedElement",
    "TOP_CLASS",
    "as_coefficient",
    "make_ring",
    "add",
    "mul",
    "integrate",
    "exp_series",
]

Monomial = tuple[int, ...]
Coefficient = Union[Fraction, sp.Expr]

#: name of the formal generator carrying the top class of a ring that has
#: no other generators (a rational homology sphere)
TOP_CLASS = "vol"


def as_coefficient(c: Any) -> Coefficient:
    """Normalise a scalar to a Fraction, or an expanded sympy expression."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, sp.Basic):
        c = sp.expand(c)
        if c.is_Rational:
            return Fraction(int(c.p), int(c.q))
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_zero(c: Coefficient) -> bool:
    return c == 0


@dataclass(frozen=True)
class RingModel:
    """Validated ring presentation; build it with :func:`make_ring`."""

    names: tuple[str, ...]
    degrees: tuple[int, ...]
    nilpotency: tuple[int | None, ...]
    zero_monomials: tuple[Monomial, ...]
    top_degree: int
    fundamental: Monomial
    aliases: frozenset[Monomial] = frozenset()

    @property
    def generators(self) -> tuple[tuple[str, int], ...]:
        return tuple(zip(self.names, self.degrees))

    @property
    def is_point_like(self) -> bool:
        """True when the only generator is the formal top class."""
        return self.names in ((), (TOP_CLASS,))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def monomial(self, exps: Mapping[str, int] | None = None, **kw: int) -> Monomial:
        exps = dict(exps or {}, **kw)
        m = [0] * len(self.names)
        for name, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            m[self.index(name)] = e
        return tuple(m)

    def reduce_monomial(self, m: Monomial) -> Monomial | None:
        """Normal form of a monomial, or None if the relations kill it."""
        if self.degree(m) > self.top_degree:
            return None
        for e, n in zip(m, self.nilpotency):
            if n is not None and e >= n:
                return None
        for z in self.zero_monomials:
            if all(e >= f for e, f in zip(m, z)):
                return None
        if m in self.aliases:
            return self.fundamental
        return m

    # constructors for elements
    def element(self, terms: Mapping[Any, Any] | None = None) -> GradedElement:
        """Build an element from ``{monomial: coeff}``.

        Monomials may be exponent tuples or ``{name: exponent}`` mappings.
        """
        out: dict[Monomial, Any] = {}
        for mono, c in (terms or {}).items():
            if isinstance(mono, Mapping):
                mono = self.monomial(mono)
            elif isinstance(mono, str):
                mono = self.monomial({mono: 1})
            out[tuple(mono)] = out.get(tuple(mono), 0) + as_coefficient(c)
        return GradedElement(self, out)

    def zero(self) -> GradedElement:
        return GradedElement(self, {})

    def scalar(self, c: Any) -> GradedElement:
        return GradedElement(self, {(0,) * len(self.names): as_coefficient(c)})

    def one(self) -> GradedElement:
        return self.scalar(1)

    def gen(self, name: str) -> GradedElement:
        return GradedElement(self, {self.monomial({name: 1}): Fraction(1)})

    def fundamental_class(self) -> GradedElement:
        return GradedElement(self, {self.fundamental: Fraction(1)})

    def to_dict(self) -> dict[str, Any]:
        def named(m: Monomial) -> dict[str, int]:
            return {n: e for n, e in zip(self.names, m) if e}

        return {
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "nilpotency": {n: k for n, k in zip(self.names, self.nilpotency) if k is not None},
            "zero_monomials": [named(z) for z in self.zero_monomials],
            "top_degree": self.top_degree,
            "fundamental": named(self.fundamental),
            "aliases": [named(a) for a in sorted(self.aliases)],
        }


def _parse_generators(gens: Iterable[Any]) -> list[tuple[str, int]]:
    out = []
    for g in gens:
        if isinstance(g, Mapping):
            out.append((str(g["name"]), int(g["degree"])))
        else:
            name, deg = g
            out.append((str(name), int(deg)))
    return out


def make_ring(spec: Mapping[str, Any]) -> RingModel:
    """Validate a ring specification and return a :class:`RingModel`.

    ``spec`` keys: ``generators`` (list of ``(name, degree)`` pairs or
    ``{"name", "degree"}`` dicts), ``top_degree``, and optionally
    ``nilpotency`` (``{name: k}`` meaning ``name**k == 0``),
    ``zero_monomials``, ``fundamental`` and ``aliases`` (monomials as
    ``{name: exponent}``).  With no generators the ring gets a single
    formal top class named :data:`TOP_CLASS`.
    """
    top = int(spec["top_degree"])
    if top < 0 or top % 2:
        raise OddDegreeGenerator(f"top degree must be even and non-negative, got {top}")
    gens = sorted(_parse_generators(spec.get("generators", ())))
    names = [n for n, _ in gens]
    if len(set(names)) != len(names):
        raise InconsistentRelations("duplicate generator names")
    for name, deg in gens:
        if deg <= 0 or deg % 2:
            raise OddDegreeGenerator(f"generator {name!r} has degree {deg}")

    nil_spec = dict(spec.get("nilpotency") or {})
    fundamental_spec = spec.get("fundamental")
    if not gens and top > 0:
        if fundamental_spec not in (None, {TOP_CLASS: 1}, {}):
            raise InconsistentRelations("point-like ring only has the formal top class")
        gens = [(TOP_CLASS, top)]
        names = [TOP_CLASS]
        nil_spec = {TOP_CLASS: 2}
        fundamental_spec = {TOP_CLASS: 1}

    unknown = set(nil_spec) - set(names)
    if unknown:
        raise InconsistentRelations(f"nilpotency for unknown generators {sorted(unknown)}")
    for name, k in nil_spec.items():
        if int(k) < 1:
            raise InconsistentRelations(f"nilpotency order of {name!r} must be >= 1")

    def mono(d: Mapping[str, int]) -> Monomial:
        bad = set(d) - set(names)
        if bad:
            raise InconsistentRelations(f"monomial uses unknown generators {sorted(bad)}")
        return tuple(int(d.get(n, 0)) for n in names)

    degrees = tuple(d for _, d in gens)
    if fundamental_spec is None:
        if top == 0:
            fundamental_spec = {}
        else:
            raise InconsistentRelations("fundamental monomial required")
    ring = RingModel(
        names=tuple(names),
        degrees=degrees,
        nilpotency=tuple(int(nil_spec[n]) if n in nil_spec else None for n in names),
        zero_monomials=tuple(mono(z) for z in spec.get("zero_monomials", ())),
        top_degree=top,
        fundamental=mono(fundamental_spec),
        aliases=frozenset(),
    )
    if ring.degree(ring.fundamental) != top:
        raise InconsistentRelations("fundamental monomial must have the top degree")
    if ring.reduce_monomial(ring.fundamental) is None:
        raise InconsistentRelations("relations kill the fundamental monomial")

    aliases = []
    for a in spec.get("aliases", ()):
        m = mono(a)
        if ring.degree(m) != top:
            raise InconsistentRelations("aliases of the fundamental monomial must have top degree")
        if ring.reduce_monomial(m) is None:
            raise InconsistentRelations("alias of the fundamental monomial is killed by relations")
        if m != ring.fundamental:
            aliases.append(m)
    if aliases:
        ring = RingModel(
            ring.names, ring.degrees, ring.nilpotency, ring.zero_monomials,
            ring.top_degree, ring.fundamental, frozenset(aliases),
        )
    return ring


class GradedElement:
    """An immutable element of a :class:`RingModel`, kept in reduced form."""

    __slots__ = ("_ring", "_terms")

    def __init__(self, ring: RingModel, terms: Mapping[Monomial, Any]):
        reduced: dict[Monomial, Coefficient] = {}
        for m, c in terms.items():
            r = ring.reduce_monomial(tuple(m))
            if r is None:
                continue
            c = as_coefficient(c)
            reduced[r] = as_coefficient(reduced[r] + c) if r in reduced else c
        object.__setattr__(self, "_ring", ring)
        object.__setattr__(
            self, "_terms",
            {m: c for m, c in sorted(reduced.items(), key=lambda mc: (ring.degree(mc[0]), mc[0]))
             if not _is_zero(c)},
        )

    def __setattr__(self, name, value):
        raise AttributeError("GradedElement is immutable")

    @property
    def ring(self) -> RingModel:
        return self._ring

    @property
    def terms(self) -> Mapping[Monomial, Coefficient]:
        return MappingProxyType(self._terms)

    # queries
    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {self._ring.degree(m) for m in self._terms}

    def part(self, degree: int) -> GradedElement:
        """The homogeneous component of the given degree."""
        return GradedElement(
            self._ring, {m: c for m, c in self._terms.items() if self._ring.degree(m) == degree}
        )

    def is_homogeneous(self, degree: int) -> bool:
        return all(self._ring.degree(m) == degree for m in self._terms)

    def constant_term(self) -> Coefficient:
        return self._terms.get((0,) * len(self._ring.names), Fraction(0))

    def coefficient(self, mono: Monomial | Mapping[str, int]) -> Coefficient:
        if isinstance(mono, Mapping):
            mono = self._ring.monomial(mono)
        return self._terms.get(tuple(mono), Fraction(0))

    @property
    def free_symbols(self) -> set[sp.Symbol]:
        out: set[sp.Symbol] = set()
        for c in self._terms.values():
            if isinstance(c, sp.Basic):
                out |= c.free_symbols
        return out

    def subs(self, values: Mapping[Any, Any]) -> GradedElement:
        """Substitute values for the symbolic unknowns in the coefficients."""
        return GradedElement(
            self._ring,
            {m: (c.subs(values) if isinstance(c, sp.Basic) else c) for m, c in self._terms.items()},
        )

    def substitute(self, images: Mapping[str, GradedElement], target: RingModel) -> GradedElement:
        """Evaluate this element as a polynomial, sending generators to ``images``."""
        powers: dict[tuple[str, int], GradedElement] = {}

        def power(name: str, e: int) -> GradedElement:
            key = (name, e)
            if key not in powers:
                powers[key] = target.one() if e == 0 else power(name, e - 1) * images[name]
            return powers[key]

        total = target.zero()
        for m, c in self._terms.items():
            t = target.scalar(c)
            for name, e in zip(self._ring.names, m):
                if e:
                    t = t * power(name, e)
            total = total + t
        return total

    # arithmetic
    def _check(self, other: GradedElement) -> None:
        if other._ring is not self._ring and other._ring != self._ring:
            raise RingMismatch("elements live in different rings")

    def _lift(self, other: Any) -> GradedElement:
        if isinstance(other, GradedElement):
            self._check(other)
            return other
        return self._ring.scalar(other)

    def __add__(self, other: Any) -> GradedElement:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedElement(self._ring, terms)

    __radd__ = __add__

    def __neg__(self) -> GradedElement:
        return GradedElement(self._ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> GradedElement:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> GradedElement:
        return (-self) + other

    def __mul__(self, other: Any) -> GradedElement:
        if not isinstance(other, GradedElement):
            try:
                c = as_coefficient(other)
            except TypeError:
                return NotImplemented
            return GradedElement(self._ring, {m: v * c for m, v in self._terms.items()})
        self._check(other)
        ring = self._ring
        terms: dict[Monomial, Any] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                r = ring.reduce_monomial(tuple(a + b for a, b in zip(m1, m2)))
                if r is None:
                    continue
                terms[r] = terms[r] + c1 * c2 if r in terms else c1 * c2
        return GradedElement(ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> GradedElement:
        c = as_coefficient(other)
        inv = 1 / c if isinstance(c, Fraction) else sp.Integer(1) / c
        return self * inv

    def __pow__(self, k: int) -> GradedElement:
        if k < 0:
            raise ValueError("negative power")
        out = self._ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GradedElement):
            return (self._ring is other._ring or self._ring == other._ring) and self._terms == other._terms
        try:
            return self._terms == self._ring.scalar(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self._ring, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"GradedElement({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self._terms.items():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(self._ring.names, m) if e
            )
            pieces.append(_format_term(c, mono))
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def _format_term(c: Coefficient, mono: str) -> str:
    if isinstance(c, Fraction):
        if not mono:
            return str(c)
        if c == 1:
            return mono
        if c == -1:
            return f"-{mono}"
        return f"{c}*{mono}"
    text = str(c)
    if c.is_Add:
        text = f"({text})"
    return f"{text}*{mono}" if mono else text


def add(x: GradedElement, y: GradedElement) -> GradedElement:
    return x + y


def mul(x: GradedElement, y: GradedElement) -> GradedElement:
    return x * y


def integrate(x: GradedElement) -> Coefficient:
    """Pair with the fundamental class: the coefficient of the fundamental monomial."""
    return x.coefficient(x.ring.fundamental)


def exp_series(x: GradedElement) -> GradedElement:
    """``sum x**k / k!``; finite because ``x`` has no degree-0 part."""
    if not _is_zero(x.constant_term()):
        raise NonNilpotentInput("exp_series needs an element without degree-0 term")
    total = x.ring.one()
    term = x.ring.one()
    k = 0
    while True:
        k += 1
        term = term * x
        if term.is_zero():
            return total
        total = total + term / factorial(k)
