"""Decision rules for almost complex structures, with traces.

Two query modes:

* guarantee mode, :func:`guaranteed_connected_sum` -- is the connected sum of
  *any* ``l`` closed almost complex ``dim``-manifolds almost complex?
* instance mode, :func:`classify_connected_sum`, :func:`classify_product_rhs`
  and :func:`classify_product_spheres` -- decide for given descriptors.

Every verdict carries the ordered list of rules that were evaluated.  A
rule with an ``outcome`` is decisive; the first decisive rule fixes the
status, later ones are still evaluated and logged.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Optional, Union

import sympy as sp

from .chern import (
    ChernVector,
    GenusId,
    conjugate_chern,
    evaluate_genus,
    pontryagin_from_chern,
    spinc_dirac_index,
)
from .errors import (
    DimensionMismatch,
    EmptyList,
    InvalidDimensions,
    NotApplicableDimension,
    OddDimension,
    ParityViolation,
    PreconditionFlagsMissing,
)
from .graded import integrate
from .manifold import A, B, Flag, ManifoldData, connected_sum, sphere_product, symbolic_product_chern

__all__ = [
    "Status",
    "RuleFiring",
    "Verdict",
    "NONE_BUT_ONE",
    "connected_sum_threshold",
    "theoremA_threshold",
    "obstruction_group_order",
    "guaranteed_connected_sum",
    "hirzebruch_congruence",
    "yang_divisibility",
    "obstruction_residue",
    "prop29_check",
    "classify_connected_sum",
    "derive_product_constraints",
    "classify_product_rhs",
    "classify_product_spheres",
]

#: threshold value meaning "only l = 1 is guaranteed"
NONE_BUT_ONE = "NONE_BUT_ONE"

Witness = Mapping[str, Union[int, Fraction, str, bool, None]]


class Status(str, enum.Enum):
    EXISTS = "EXISTS"
    NOT_EXISTS = "NOT_EXISTS"
    UNDETERMINED = "UNDETERMINED"


class Anchor:
    """Citation strings for the rules."""

    ORIENTABLE_SURFACE = "every orientable surface admits an almost complex structure"
    MASSEY_W3 = ("Massey: a 6-manifold is almost complex iff W3 = 0; "
                 "W3 is additive under connected sum")
    NONCOMPACT = ("stable almost complex structures on open 2n-manifolds destabilise "
                  "(BU(n) -> BU is 2n-connected); connected sums of stably almost "
                  "complex manifolds are stably almost complex")
    HIRZEBRUCH = ("Hirzebruch, chi_y-genus: chi(M) = (-1)^m sigma(M) mod 4 for closed "
                  "almost complex 4m-manifolds; chi(M#N) = chi(M)+chi(N)-2, "
                  "sigma(M#N) = sigma(M)+sigma(N)")
    HOPF_SUMS = ("top Pontryagin class p_m = 2(-1)^m c_2m when c_1..c_2m-1 vanish; "
                 "signature formula with nonzero leading L-coefficient forces p_m = 0, "
                 "so c_2m = 0, contradicting chi != 0")
    KAHN = ("Kahn: obstruction to extending over the top cell is "
            "1/2(chi - c_top) o(S^n) in Z/(4k)! (n = 8k+2) or Z/((4k+2)!/2) (n = 8k+6); "
            "pi_n-1(SO/U) = 0 makes this an iff for the Cartan-sum stable structure")
    YANG = ("Yang: an almost complex (n-1)-connected 2n-manifold, n = 2m+1, "
            "has (2m)! | chi")
    YANG_IFF = ("Yang: for sums of copies of S^(2m+1) x S^(2m+1) existence holds iff "
                "l = 1 mod (4k)! (n = 8k+2) or l = 1 mod (4k+2)!/2 (n = 8k+6)")
    DIRAC_INDEX = ("index of the spin^c Dirac operator twisted by TM, "
                   "integral of exp(c_1/2) ch(TM) A-hat(TM), is an integer")
    CONJUGATE = ("Pontryagin classes torsion => c(T) c(conj T) = 1 in H*/torsion, "
                 "with c(T) = 1 + a u + b v + 4 uv")
    SINGLE = "a single summand: the connected sum is the manifold itself"
    THRESHOLD = ("connected sums of l closed almost complex n-manifolds: guaranteed iff "
                 "n = 4m and l = 1, n = 8k+2 and l = 1 mod (4k)!, "
                 "n = 8k+6 and l = 1 mod (4k+2)!/2")
    SURFACE_PRODUCT = "S^2 x S^2 is a product of almost complex manifolds"
    SPINC_SIX = ("orientable 4-manifolds are spin^c, so S^2 x N^4 is a spin^c 6-manifold, "
                 "hence almost complex")
    SIX_RHS = ("a rational homology 6-sphere is almost complex iff spin^c; "
               "S^2 x N almost complex forces N spin^c")
    OPEN_ODD = ("p, q odd > 1: the twisted Dirac index vanishes and gives no obstruction; "
                "whether only dimensions 2 and 6 occur is open")
    DATTA_SUBRAMANIAN = ("Datta-Subramanian: the only products of even spheres admitting "
                         "almost complex structures are S2xS2, S2xS4, S2xS6, S6xS6")
    BOREL_SERRE = "Borel-Serre: S^2 and S^6 are the only almost complex spheres"
    ODD_SPHERES = ("products of two odd spheres are parallelisable and carry "
                   "Hopf / Calabi-Eckmann complex structures")


@dataclass(frozen=True)
class RuleFiring:
    """One evaluated rule.

    ``outcome`` is set only when the rule is decisive; ``applicable`` is
    False when the rule's hypotheses were not met.
    """

    rule_id: str
    conclusion: str
    anchor: str
    witness: Optional[Witness] = None
    outcome: Optional[Status] = None
    applicable: bool = True

    def __post_init__(self):
        if not self.anchor:
            raise ValueError("rule firing needs an anchor")
        if self.outcome is not None:
            object.__setattr__(self, "outcome", Status(self.outcome))
        if self.witness is not None:
            object.__setattr__(self, "witness", dict(self.witness))

    def to_dict(self) -> dict[str, Any]:
        return {
            "rule_id": self.rule_id,
            "conclusion": self.conclusion,
            "anchor": self.anchor,
            "witness": None if self.witness is None
            else {k: encode_value(v) for k, v in self.witness.items()},
            "outcome": None if self.outcome is None else self.outcome.value,
            "applicable": self.applicable,
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> RuleFiring:
        w = d.get("witness")
        return cls(
            rule_id=d["rule_id"],
            conclusion=d["conclusion"],
            anchor=d["anchor"],
            witness=None if w is None else {k: decode_value(v) for k, v in w.items()},
            outcome=None if d.get("outcome") is None else Status(d["outcome"]),
            applicable=d.get("applicable", True),
        )


_RATIONAL = re.compile(r"^-?\d+/\d+$")


def encode_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    if isinstance(v, sp.Basic):
        return str(v)
    return v


def decode_value(v: Any) -> Any:
    if isinstance(v, str) and _RATIONAL.match(v):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class Verdict:
    status: Status
    trace: tuple[RuleFiring, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        object.__setattr__(self, "trace", tuple(self.trace))
        if self.status is Status.UNDETERMINED:
            if not any(not f.applicable or f.outcome is None for f in self.trace):
                raise ValueError("UNDETERMINED verdict must record the inconclusive rules")
        elif not any(f.outcome is self.status for f in self.trace):
            raise ValueError(f"{self.status.value} verdict needs a decisive firing")

    @property
    def decided_by(self) -> Optional[RuleFiring]:
        for f in self.trace:
            if f.outcome is not None:
                return f
        return None

    def firing(self, rule_id: str) -> Optional[RuleFiring]:
        for f in self.trace:
            if f.rule_id == rule_id:
                return f
        return None

    def to_dict(self) -> dict[str, Any]:
        d = self.decided_by
        return {
            "status": self.status.value,
            "decided_by": None if d is None else d.rule_id,
            "trace": [f.to_dict() for f in self.trace],
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Verdict:
        return cls(Status(d["status"]), tuple(RuleFiring.from_dict(f) for f in d["trace"]))


def _conclude(trace: list[RuleFiring]) -> Verdict:
    decisive = [f for f in trace if f.outcome is not None]
    if not decisive:
        return Verdict(Status.UNDETERMINED, tuple(trace))
    status = decisive[0].outcome
    clash = [f.rule_id for f in decisive if f.outcome is not status]
    if clash:
        trace.append(RuleFiring(
            "CONSISTENCY",
            f"rules {clash} disagree with {decisive[0].rule_id}; input flags are contradictory",
            decisive[0].anchor,
        ))
    return Verdict(status, tuple(trace))


# thresholds and elementary tests

def _check_dim(dim: int) -> None:
    if dim < 2 or dim % 2:
        raise OddDimension(f"dimension must be even and >= 2, got {dim}")


def connected_sum_threshold(dim: int) -> Union[int, str]:
    """Modulus ``t`` with ``l = 1 mod t`` guaranteeing an almost complex sum.

    :data:`NONE_BUT_ONE` in dimensions divisible by 4.
    """
    _check_dim(dim)
    if dim % 4 == 0:
        return NONE_BUT_ONE
    return obstruction_group_order(dim)


theoremA_threshold = connected_sum_threshold


def obstruction_group_order(dim: int) -> int:
    """Order of ``pi_(dim-1)(SO(dim)/U(dim/2))`` for ``dim = 2 mod 4``."""
    if dim < 2 or dim % 4 != 2:
        raise NotApplicableDimension(f"no top-cell obstruction group for dimension {dim}")
    if dim % 8 == 2:
        return factorial(4 * ((dim - 2) // 8))
    return factorial(4 * ((dim - 6) // 8) + 2) // 2


def hirzebruch_congruence(euler: int, sigma: int, m: int) -> bool:
    return (euler - (-1) ** m * sigma) % 4 == 0


def yang_divisibility(m: int, euler: int) -> bool:
    return euler % factorial(2 * m) == 0


def obstruction_residue(euler: int, c_top_integral: int, dim: int) -> int:
    """``(chi - c_top)/2`` reduced modulo the obstruction group order."""
    order = obstruction_group_order(dim)
    diff = euler - c_top_integral
    if diff % 2:
        raise ParityViolation(f"chi - c_top = {diff} is odd")
    return (diff // 2) % order


# guarantee mode

def _counterexample(dim: int, l: int) -> tuple[str, Verdict]:
    if dim % 4 == 0:
        m = dim // 4
        summand = sphere_product(1, 4 * m - 1)
    else:
        m = (dim - 2) // 4
        summand = sphere_product(2 * m + 1, 2 * m + 1)
    return f"#{l}({summand.name})", classify_connected_sum([summand] * l)


def guaranteed_connected_sum(dim: int, l: int) -> Verdict:
    """Is every connected sum of ``l`` closed almost complex ``dim``-manifolds almost complex?

    When not, the witness names a family (sums of ``S^1 x S^(4m-1)`` or of
    ``S^(2m+1) x S^(2m+1)``) whose ``l``-fold sum the instance rules refute.
    """
    _check_dim(dim)
    if l < 1:
        raise ValueError("l must be a positive integer")
    t = connected_sum_threshold(dim)
    ok = l == 1 if t == NONE_BUT_ONE else (l - 1) % t == 0
    witness: dict[str, Any] = {"dim": dim, "l": l, "modulus": t}
    if ok:
        return Verdict(Status.EXISTS, (RuleFiring(
            "GUARANTEE",
            f"every connected sum of {l} closed almost complex {dim}-manifolds is almost complex",
            Anchor.THRESHOLD if l > 1 else Anchor.SINGLE,
            witness,
            Status.EXISTS,
        ),))
    name, instance = _counterexample(dim, l)
    if instance.status is not Status.NOT_EXISTS:
        raise AssertionError(f"counterexample {name} was not refuted: {instance.status}")
    witness.update(counterexample=name, counterexample_rule=instance.decided_by.rule_id)
    return Verdict(Status.NOT_EXISTS, (RuleFiring(
        "GUARANTEE",
        f"not guaranteed: {name} does not admit an almost complex structure",
        instance.decided_by.anchor,
        witness,
        Status.NOT_EXISTS,
    ),) + instance.trace)


# instance mode: connected sums

def _hypothetical_top_chern(x: ManifoldData) -> ChernVector:
    """Chern data of an almost complex structure on a rationally middle-trivial ``x``."""
    ring = x.ring
    n = x.dim // 2
    classes = [ring.zero()] * (n - 1) + [ring.fundamental_class() * x.euler]
    return ChernVector(ring, n, tuple(classes))


def prop29_check(summands: Sequence[ManifoldData]) -> Verdict:
    """Dirac index integrality for sums of rationally middle-trivial almost complex summands.

    An almost complex structure on the sum would have only ``c_top``
    (integrating to ``chi``) rationally nonzero and torsion Pontryagin
    classes; the twisted index is then ``chi / (2m)!``.
    """
    summands = list(summands)
    if not summands:
        raise EmptyList("no summands")
    dim = summands[0].dim
    if any(s.dim != dim for s in summands):
        raise DimensionMismatch("summands differ in dimension")
    if dim % 4 != 2:
        raise NotApplicableDimension(f"index check needs dim = 4m+2, got {dim}")
    missing = [s.name for s in summands
               if not s.has(Flag.MIDDLE_RATIONAL_TRIVIAL, Flag.ALMOST_COMPLEX, Flag.CLOSED)]
    if missing:
        raise PreconditionFlagsMissing(
            f"summands {missing} are not closed, almost complex and rationally middle-trivial"
        )
    return Verdict(*_prop29(summands))


def _prop29(summands: list[ManifoldData]) -> tuple[Status, list[RuleFiring]]:
    x = connected_sum(summands)
    m = (x.dim - 2) // 4
    c = _hypothetical_top_chern(x)
    p = pontryagin_from_chern(c)
    index = spinc_dirac_index(c, p)
    witness = {
        "l": len(summands),
        "euler": x.euler,
        "index": index,
        "modulus": factorial(2 * m) // 2 if m else 1,
    }
    if index.denominator != 1:
        return Status.NOT_EXISTS, [RuleFiring(
            "R7", f"twisted Dirac index {index} is not an integer",
            Anchor.DIRAC_INDEX, witness, Status.NOT_EXISTS)]
    return Status.UNDETERMINED, [RuleFiring(
        "R7", f"twisted Dirac index {index} is an integer; no obstruction",
        Anchor.DIRAC_INDEX, witness)]


def _skip(rule_id: str, why: str, anchor: str) -> RuleFiring:
    return RuleFiring(rule_id, f"not applicable: {why}", anchor, applicable=False)


def classify_connected_sum(summands: Sequence[ManifoldData]) -> Verdict:
    """Decide whether a given connected sum admits an almost complex structure.

    Rules, in order: single almost complex summand; R0 a non-compact
    summand; R1 dimension 2; R2 dimension 6 with W3 = 0; R3 Hirzebruch
    congruence; R4 vanishing top Pontryagin class against ``chi != 0``;
    R5 top-cell obstruction residue; R6 Yang divisibility (combined with R5
    for sums of odd sphere products); R7 twisted Dirac index.
    """
    summands = list(summands)
    if not summands:
        raise EmptyList("no summands")
    dims = {s.dim for s in summands}
    if len(dims) != 1:
        raise DimensionMismatch(f"summands have dimensions {sorted(dims)}")
    dim = summands[0].dim
    l = len(summands)
    x = connected_sum(summands)
    every = lambda *fl: all(s.has(*fl) for s in summands)  # noqa: E731
    closed = x.has(Flag.CLOSED)
    trace: list[RuleFiring] = []

    if l == 1 and summands[0].has(Flag.ALMOST_COMPLEX):
        trace.append(RuleFiring("SINGLE", f"{x.name} is almost complex", Anchor.SINGLE,
                                {"l": 1}, Status.EXISTS))

    # R0
    if not closed:
        if every(Flag.STABLY_ACX):
            trace.append(RuleFiring(
                "R0", "a non-compact summand: the sum is almost complex",
                Anchor.NONCOMPACT, {"noncompact": sum(s.has(Flag.NONCOMPACT) for s in summands)},
                Status.EXISTS))
        else:
            trace.append(_skip("R0", "some summand is not stably almost complex", Anchor.NONCOMPACT))
    else:
        trace.append(_skip("R0", "all summands are closed", Anchor.NONCOMPACT))

    # R1
    if dim == 2:
        trace.append(RuleFiring("R1", "orientable surface", Anchor.ORIENTABLE_SURFACE,
                                {"dim": 2}, Status.EXISTS))
    else:
        trace.append(_skip("R1", f"dimension {dim} != 2", Anchor.ORIENTABLE_SURFACE))

    # R2
    if dim == 6 and every(Flag.SPIN_C):
        trace.append(RuleFiring("R2", "W3 vanishes on every summand, hence on the sum",
                                Anchor.MASSEY_W3, {"dim": 6, "W3": 0}, Status.EXISTS))
    elif dim == 6:
        trace.append(_skip("R2", "some summand is not known to be spin^c", Anchor.MASSEY_W3))
    else:
        trace.append(_skip("R2", f"dimension {dim} != 6", Anchor.MASSEY_W3))

    if dim % 4 == 0:
        m = dim // 4
        if not closed:
            trace.append(_skip("R3", "non-compact sum", Anchor.HIRZEBRUCH))
            trace.append(_skip("R4", "non-compact sum", Anchor.HOPF_SUMS))
        else:
            trace.append(_rule_congruence(x, m))
            trace.append(_rule_top_pontryagin(x, m))
        for rid, anchor in (("R5", Anchor.KAHN), ("R6", Anchor.YANG), ("R7", Anchor.DIRAC_INDEX)):
            trace.append(_skip(rid, f"dimension {dim} is divisible by 4", anchor))
    else:
        trace.append(_skip("R3", f"dimension {dim} = 2 mod 4", Anchor.HIRZEBRUCH))
        trace.append(_skip("R4", f"dimension {dim} = 2 mod 4", Anchor.HOPF_SUMS))
        if not closed:
            for rid, anchor in (("R5", Anchor.KAHN), ("R6", Anchor.YANG), ("R7", Anchor.DIRAC_INDEX)):
                trace.append(_skip(rid, "non-compact sum", anchor))
        else:
            r5, residue = _rule_residue(summands, x)
            trace.append(r5)
            trace.append(_rule_yang(summands, x, residue))
            if every(Flag.MIDDLE_RATIONAL_TRIVIAL, Flag.ALMOST_COMPLEX):
                trace.extend(_prop29(summands)[1])
            else:
                trace.append(_skip("R7", "summands not all almost complex with trivial "
                                   "rational middle cohomology", Anchor.DIRAC_INDEX))
    return _conclude(trace)


def _rule_congruence(x: ManifoldData, m: int) -> RuleFiring:
    ok = hirzebruch_congruence(x.euler, x.signature, m)
    witness = {"euler": x.euler, "signature": x.signature, "m": m,
               "residue_mod_4": (x.euler - (-1) ** m * x.signature) % 4}
    if ok:
        return RuleFiring("R3", "chi = (-1)^m sigma mod 4 holds; no obstruction",
                          Anchor.HIRZEBRUCH, witness)
    return RuleFiring("R3", "chi != (-1)^m sigma mod 4", Anchor.HIRZEBRUCH, witness,
                      Status.NOT_EXISTS)


def _rule_top_pontryagin(x: ManifoldData, m: int) -> RuleFiring:
    if not x.has(Flag.MIDDLE_RATIONAL_TRIVIAL):
        return _skip("R4", "middle rational cohomology not known to vanish", Anchor.HOPF_SUMS)
    c = _hypothetical_top_chern(x)
    p = pontryagin_from_chern(c)
    p_top = integrate(p[m])
    sigma_forced = integrate(evaluate_genus(GenusId.L, p))
    witness = {"euler": x.euler, "m": m, "p_top": p_top,
               "signature_from_L": sigma_forced, "signature": x.signature}
    if sigma_forced != x.signature:
        return RuleFiring(
            "R4", f"c_2m would integrate to {x.euler}, forcing p_m = {p_top} and "
            f"signature {sigma_forced} != {x.signature}",
            Anchor.HOPF_SUMS, witness, Status.NOT_EXISTS)
    return RuleFiring("R4", "chi = 0; no obstruction from the top Pontryagin class",
                      Anchor.HOPF_SUMS, witness)


def _rule_residue(summands: list[ManifoldData], x: ManifoldData) -> tuple[RuleFiring, Optional[int]]:
    if not all(s.has(Flag.STABLY_ACX) for s in summands):
        return _skip("R5", "some summand is not stably almost complex", Anchor.KAHN), None
    tops = [s.c_top_integral for s in summands]
    if any(t is None or not isinstance(t, (int, Fraction)) for t in tops):
        return _skip("R5", "top Chern number of some summand unknown", Anchor.KAHN), None
    c_top = sum(tops)
    if Fraction(c_top).denominator != 1:
        return _skip("R5", "non-integral top Chern number", Anchor.KAHN), None
    c_top = int(c_top)
    try:
        residue = obstruction_residue(x.euler, c_top, x.dim)
    except ParityViolation as exc:
        return _skip("R5", str(exc), Anchor.KAHN), None
    order = obstruction_group_order(x.dim)
    witness = {"euler": x.euler, "c_top": c_top, "order": order, "residue": residue}
    if residue == 0:
        return RuleFiring("R5", "obstruction (chi - c_top)/2 vanishes; the structure extends "
                          "over the top cell", Anchor.KAHN, witness, Status.EXISTS), 0
    return RuleFiring("R5", f"obstruction residue {residue} mod {order} is nonzero for the "
                      "Cartan-sum stable structure", Anchor.KAHN, witness), residue


def _rule_yang(summands: list[ManifoldData], x: ManifoldData, residue: Optional[int]) -> RuleFiring:
    if not all(s.has(Flag.HIGHLY_CONNECTED, Flag.STABLY_ACX) for s in summands):
        return _skip("R6", "summands not all highly connected and stably almost complex", Anchor.YANG)
    m = (x.dim - 2) // 4
    divisor = factorial(2 * m)
    witness = {"m": m, "divisor": divisor, "euler": x.euler}
    if not yang_divisibility(m, x.euler):
        return RuleFiring("R6", f"{divisor} does not divide chi = {x.euler}",
                          Anchor.YANG, witness, Status.NOT_EXISTS)
    yang_family = all(
        s.has(Flag.STABLY_PARALLELISABLE, Flag.MIDDLE_RATIONAL_TRIVIAL) for s in summands
    )
    if yang_family and residue:
        witness.update(residue=residue, order=obstruction_group_order(x.dim))
        return RuleFiring("R5+R6", f"{divisor} | chi but the obstruction residue {residue} "
                          "is nonzero", Anchor.YANG_IFF, witness, Status.NOT_EXISTS)
    return RuleFiring("R6", f"{divisor} divides chi = {x.euler}; no obstruction",
                      Anchor.YANG, witness)


# instance mode: products of rational homology spheres

@dataclass(frozen=True)
class ProductConstraints:
    """What ``c(T) c(conj T) = 1`` says about ``c(T) = 1 + a u + b v + 4 uv``."""

    p: int
    q: int
    coefficients: dict[str, Any]
    solution: dict[sp.Symbol, Any]
    contradiction: Optional[Fraction]
    ab: Optional[Any]


def derive_product_constraints(p: int, q: int) -> ProductConstraints:
    """Expand ``c(T) c(conj T)`` with unknown ``a``, ``b`` and solve coefficientwise.

    The ``u`` and ``v`` coefficients are linear; their solutions are
    substituted into the ``uv`` coefficient, which is then either a nonzero
    constant (contradiction), identically zero, or a relation solved for ``a``.
    """
    c = symbolic_product_chern(p, q)
    prod = c.total() * conjugate_chern(c).total()
    ring = c.ring
    coeff = {
        "u": sp.sympify(prod.coefficient({"u": 1})),
        "v": sp.sympify(prod.coefficient({"v": 1})),
        "uv": sp.sympify(prod.coefficient({"u": 1, "v": 1})),
    }
    assert prod.coefficient(ring.monomial()) == 1
    solution: dict[sp.Symbol, Any] = {}
    for key, sym in (("u", A), ("v", B)):
        eq = coeff[key]
        if eq != 0:
            (val,) = sp.solve(eq, sym)
            solution[sym] = val
    uv = sp.expand(coeff["uv"].subs(solution))
    contradiction = None
    ab = None
    if uv.is_number:
        if uv != 0:
            contradiction = Fraction(int(uv.p), int(uv.q))
    else:
        sols = sp.solve(uv, A)
        if len(sols) != 1:
            raise AssertionError(f"unexpected uv constraint {uv}")
        solution[A] = sols[0]
        ab = sp.simplify((A * B).subs(solution))
    if ab is None and A in solution and B not in solution:
        ab = sp.simplify(A * B).subs(solution)
    return ProductConstraints(p, q, coeff, solution, contradiction, ab)


def _product_index(p: int, q: int, solution: Mapping[sp.Symbol, Any]):
    c = symbolic_product_chern(p, q).subs(solution)
    pont = pontryagin_from_chern(c)
    if not pont.is_zero():
        raise AssertionError("Pontryagin classes should vanish after imposing c c-bar = 1")
    index = spinc_dirac_index(c, pont)
    if isinstance(index, sp.Basic):
        index = sp.simplify(index)
        if index.is_Rational:
            index = Fraction(int(index.p), int(index.q))
    return index


def classify_product_rhs(
    p: int, q: int, n_spin_c: Optional[bool] = None, m_spin_c: Optional[bool] = None
) -> Verdict:
    """Almost complex structures on ``M^(2p) x N^(2q)``, both rational homology spheres.

    ``n_spin_c`` / ``m_spin_c`` say whether ``N`` / ``M`` is spin^c (None if
    unknown); they only matter for ``S^2 x N^6``.  The pair is normalised so
    ``p <= q``, swapping the flags with it.
    """
    if p < 1 or q < 1:
        raise InvalidDimensions(f"p and q must be positive, got ({p}, {q})")
    if p > q:
        p, q = q, p
        n_spin_c, m_spin_c = m_spin_c, n_spin_c
    trace: list[RuleFiring] = []

    cons = derive_product_constraints(p, q)
    cw: dict[str, Any] = {"p": p, "q": q, "uv_coefficient": str(cons.coefficients["uv"])}
    for sym in (A, B):
        if sym in cons.solution and cons.solution[sym] == 0:
            cw[str(sym)] = 0
    if cons.contradiction is not None:
        cw["uv_coefficient_forced"] = cons.contradiction
        trace.append(RuleFiring(
            "P1", f"a = b = 0 but the coefficient of uv is {cons.contradiction} != 0",
            Anchor.CONJUGATE, cw, Status.NOT_EXISTS))
        return _conclude(trace)
    if cons.ab is not None:
        cw["ab"] = str(cons.ab)
    found = ", ".join(f"{k} = {v}" for k, v in cw.items() if k in ("a", "b", "ab"))
    trace.append(RuleFiring("P1", f"c c-bar = 1 is solvable ({found or 'no constraint'})",
                            Anchor.CONJUGATE, cw))

    index = _product_index(p, q, cons.solution)
    iw = {"p": p, "q": q, "index": index}
    if isinstance(index, Fraction) and index.denominator != 1:
        trace.append(RuleFiring("P2", f"twisted Dirac index {index} is not an integer",
                                Anchor.DIRAC_INDEX, iw, Status.NOT_EXISTS))
    elif isinstance(index, Fraction):
        trace.append(RuleFiring("P2", f"twisted Dirac index {index} is an integer",
                                Anchor.DIRAC_INDEX, iw))
    else:
        trace.append(RuleFiring("P2", f"index {index} depends on unknowns",
                                Anchor.DIRAC_INDEX, iw, applicable=False))

    if p == 1:
        if q == 1:
            trace.append(RuleFiring("P3", "S^2 x S^2 is almost complex", Anchor.SURFACE_PRODUCT,
                                    {"p": 1, "q": 1}, Status.EXISTS))
        elif q == 2:
            trace.append(RuleFiring("P3", "S^2 x N^4 is a spin^c 6-manifold", Anchor.SPINC_SIX,
                                    {"p": 1, "q": 2}, Status.EXISTS))
        elif q == 3:
            w = {"p": 1, "q": 3, "n_spin_c": n_spin_c}
            if n_spin_c is True:
                trace.append(RuleFiring("P3", "N^6 is spin^c, hence almost complex, and so is S^2 x N",
                                        Anchor.SIX_RHS, w, Status.EXISTS))
            elif n_spin_c is False:
                trace.append(RuleFiring("P3", "N^6 is not spin^c, so S^2 x N is not spin^c",
                                        Anchor.SIX_RHS, w, Status.NOT_EXISTS))
            else:
                trace.append(RuleFiring("P3", "answer depends on whether N is spin^c, which is unknown",
                                        Anchor.SIX_RHS, w, applicable=False))
        else:
            trace.append(_skip("P3", f"no construction for q = {q}", Anchor.SPINC_SIX))
    else:
        trace.append(_skip("P3", "p > 1", Anchor.SPINC_SIX))

    if p > 1 and p % 2 and q % 2:
        trace.append(RuleFiring("P4", "both half-dimensions odd and > 1: open case",
                                Anchor.OPEN_ODD, {"p": p, "q": q}, applicable=False))
    return _conclude(trace)


_EVEN_SPHERE_AC = {(1, 1), (1, 2), (1, 3), (3, 3)}


def classify_product_spheres(p: int, q: int, odd: bool = False) -> Verdict:
    """``S^(2p) x S^(2q)``, or ``S^(2p-1) x S^(2q-1)`` when ``odd`` is set."""
    if p < 1 or q < 1:
        raise InvalidDimensions(f"p and q must be positive, got ({p}, {q})")
    if odd:
        return Verdict(Status.EXISTS, (RuleFiring(
            "S_ODD", f"S^{2 * p - 1} x S^{2 * q - 1} is parallelisable and complex",
            Anchor.ODD_SPHERES, {"a": 2 * p - 1, "b": 2 * q - 1}, Status.EXISTS),))
    p, q = min(p, q), max(p, q)
    rhs = classify_product_rhs(p, q, n_spin_c=True, m_spin_c=True)
    trace = list(rhs.trace)
    exists = (p, q) in _EVEN_SPHERE_AC
    status = Status.EXISTS if exists else Status.NOT_EXISTS
    trace.append(RuleFiring(
        "DS", f"S^{2 * p} x S^{2 * q} {'admits' if exists else 'does not admit'} "
        "an almost complex structure", Anchor.DATTA_SUBRAMANIAN,
        {"p": p, "q": q}, status))
    if rhs.status is not Status.UNDETERMINED and rhs.status is not status:
        raise AssertionError(f"sphere rule disagrees with rational rules for ({p}, {q})")
    return _conclude(trace)
