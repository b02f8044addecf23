"""Command-line interface.

Exit codes: 0 success / EXISTS, 1 NOT_EXISTS or not guaranteed, 2 usage or
input error, 3 UNDETERMINED.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from .chern import GenusId, genus_polynomials, pontryagin_from_chern, spinc_dirac_index
from .decide import (
    Status,
    Verdict,
    encode_value,
    classify_connected_sum,
    classify_product_rhs,
    classify_product_spheres,
    guaranteed_connected_sum,
)
from .descriptor import load_descriptor
from .errors import AcstructError, CapExceeded, MissingChernData, SchemaError
from .manifold import connected_sum

EXIT_OK = 0
EXIT_OBSTRUCTED = 1
EXIT_USAGE = 2
EXIT_UNDETERMINED = 3

DEFAULT_GENUS_CAP = 24

_EXIT = {
    Status.EXISTS: EXIT_OK,
    Status.NOT_EXISTS: EXIT_OBSTRUCTED,
    Status.UNDETERMINED: EXIT_UNDETERMINED,
}


class UsageError(AcstructError):
    pass


def _tri_state(text: str) -> bool:
    v = text.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="acstruct",
        description="Exact characteristic-class calculator and almost complex structure rules.",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("guarantee", parents=[fmt],
                       help="is every l-fold connected sum of closed almost complex dim-manifolds almost complex?")
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--l", type=int, required=True)

    c = sub.add_parser("classify", parents=[fmt], help="classify a named summand list from a descriptor file")
    c.add_argument("descriptor")
    c.add_argument("--list", dest="list_name", required=True)

    p = sub.add_parser("product", parents=[fmt], help="products of rational homology spheres or spheres")
    p.add_argument("--p", type=int, required=True, help="first factor has dimension 2p")
    p.add_argument("--q", type=int, required=True, help="second factor has dimension 2q")
    p.add_argument("--spin-c", type=_tri_state, default=None, help="is the 2q-dimensional factor spin^c?")
    p.add_argument("--m-spin-c", type=_tri_state, default=None, help="is the 2p-dimensional factor spin^c?")
    p.add_argument("--spheres", action="store_true", help="genuine spheres S^2p x S^2q")
    p.add_argument("--odd", action="store_true", help="with --spheres: S^(2p-1) x S^(2q-1)")

    i = sub.add_parser("index", parents=[fmt], help="twisted spin^c Dirac index of a descriptor")
    i.add_argument("descriptor")
    i.add_argument("--manifold", required=True, help="manifold name, or a summand list name")

    gn = sub.add_parser("genus", parents=[fmt], help="print multiplicative-sequence polynomials")
    which = gn.add_mutually_exclusive_group(required=True)
    which.add_argument("--ahat", dest="genus", action="store_const", const=GenusId.AHAT)
    which.add_argument("--l", dest="genus", action="store_const", const=GenusId.L)
    gn.add_argument("--max-degree", type=int, required=True)
    gn.add_argument("--cap", type=int, default=DEFAULT_GENUS_CAP)
    return parser


# commands return (report, exit code)

def cmd_guarantee(dim: int, l: int) -> tuple[dict[str, Any], int]:
    if dim < 2 or dim % 2:
        raise UsageError(f"--dim must be even and >= 2, got {dim}")
    if l < 1:
        raise UsageError(f"--l must be >= 1, got {l}")
    v = guaranteed_connected_sum(dim, l)
    return {"query": {"command": "guarantee", "dim": dim, "l": l}, "verdict": v.to_dict()}, _EXIT[v.status]


def cmd_classify(descriptor_file: str, list_name: str) -> tuple[dict[str, Any], int]:
    desc = load_descriptor(descriptor_file)
    v = classify_connected_sum(desc.summands(list_name))
    query = {"command": "classify", "descriptor": str(descriptor_file), "list": list_name,
             "l": len(desc.summand_lists[list_name])}
    return {"query": query, "verdict": v.to_dict()}, _EXIT[v.status]


def cmd_product(p: int, q: int, spin_c: bool | None = None, spheres: bool = False,
                m_spin_c: bool | None = None, odd: bool = False) -> tuple[dict[str, Any], int]:
    if p < 1 or q < 1:
        raise UsageError("--p and --q must be positive")
    if odd and not spheres:
        raise UsageError("--odd only applies with --spheres")
    if spheres:
        v = classify_product_spheres(p, q, odd=odd)
    else:
        v = classify_product_rhs(p, q, n_spin_c=spin_c, m_spin_c=m_spin_c)
    query = {"command": "product", "p": p, "q": q, "spin_c": spin_c, "m_spin_c": m_spin_c,
             "spheres": spheres, "odd": odd}
    return {"query": query, "verdict": v.to_dict()}, _EXIT[v.status]


def cmd_index(descriptor_file: str, manifold_name: str) -> tuple[dict[str, Any], int]:
    desc = load_descriptor(descriptor_file)
    if manifold_name in desc.manifolds:
        m = desc.manifolds[manifold_name]
    elif manifold_name in desc.summand_lists:
        m = connected_sum(desc.summands(manifold_name))
    else:
        raise SchemaError(f"no manifold or summand list named {manifold_name!r}")
    if m.tangent_chern is None:
        raise MissingChernData(f"{m.name} has no tangent Chern data")
    c = m.tangent_chern
    index = spinc_dirac_index(c, pontryagin_from_chern(c))
    value = {"manifold": m.name, "index": encode_value(index), "integral": index.denominator == 1}
    query = {"command": "index", "descriptor": str(descriptor_file), "manifold": manifold_name}
    return {"query": query, "value": value}, EXIT_OK


def cmd_genus(genus: GenusId, max_degree: int, cap: int = DEFAULT_GENUS_CAP) -> tuple[dict[str, Any], int]:
    if max_degree > cap:
        raise CapExceeded(f"--max-degree {max_degree} exceeds the cap {cap}")
    if max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    polys = genus_polynomials(genus, max_degree // 4)
    table = []
    for i, k in enumerate(polys, start=1):
        terms = []
        for mono, coeff in k.terms.items():
            terms.append({
                "monomial": {n: e for n, e in zip(k.ring.names, mono) if e},
                "coeff": encode_value(Fraction(coeff)),
            })
        table.append({"degree": 4 * i, "polynomial": str(k), "terms": terms})
    query = {"command": "genus", "genus": genus.value, "max_degree": max_degree}
    return {"query": query, "value": table}, EXIT_OK


# rendering

def _fmt_witness(w: dict[str, Any] | None) -> str:
    if not w:
        return ""
    return ", ".join(f"{k}={'null' if v is None else v}" for k, v in w.items())


def render_text(report: dict[str, Any]) -> str:
    q = report["query"]
    lines = ["query: " + " ".join([q["command"]] + [f"{k}={v}" for k, v in q.items() if k != "command"])]
    if "verdict" in report:
        v = report["verdict"]
        lines.append(f"status: {v['status']}")
        lines.append(f"decided by: {v['decided_by'] or '-'}")
        lines.append("trace:")
        for f in v["trace"]:
            tag = f["outcome"] or ("n/a" if not f["applicable"] else "note")
            lines.append(f"  [{f['rule_id']}] {tag}: {f['conclusion']}")
            lines.append(f"      anchor: {f['anchor']}")
            if f["witness"]:
                lines.append(f"      witness: {_fmt_witness(f['witness'])}")
    elif q["command"] == "index":
        val = report["value"]
        flag = "" if val["integral"] else "  (NOT AN INTEGER)"
        lines.append(f"index: {val['index']}{flag}")
    elif q["command"] == "genus":
        if not report["value"]:
            lines.append("(empty table)")
        for row in report["value"]:
            lines.append(f"K_{row['degree'] // 4} (degree {row['degree']}): {row['polynomial']}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "guarantee":
            report, code = cmd_guarantee(args.dim, args.l)
        elif args.command == "classify":
            report, code = cmd_classify(args.descriptor, args.list_name)
        elif args.command == "product":
            report, code = cmd_product(args.p, args.q, args.spin_c, args.spheres,
                                       m_spin_c=args.m_spin_c, odd=args.odd)
        elif args.command == "index":
            report, code = cmd_index(args.descriptor, args.manifold)
        else:
            report, code = cmd_genus(args.genus, args.max_degree, args.cap)
    except AcstructError as exc:
        print(f"acstruct {args.command}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(render_text(report))
    return code


def verdict_of(report: dict[str, Any]) -> Verdict:
    """Rebuild the :class:`Verdict` from a JSON report."""
    return Verdict.from_dict(report["verdict"])


if __name__ == "__main__":
    sys.exit(main())
