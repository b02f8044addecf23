"""JSON descriptor files: parse, validate and serialise :class:`ManifoldData`.

Schema: ``acstruct/schemas/descriptor.schema.json``.  Bundled fixtures live
in ``acstruct/fixtures``; ``ACSTRUCT_FIXTURE_DIR`` points lookups elsewhere.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .chern import ChernVector
from .errors import ParseError, SchemaError
from .graded import GradedElement, RingModel, make_ring
from .manifold import Flag, ManifoldData, point_ring

__all__ = [
    "VERSION",
    "DescriptorFile",
    "load_descriptor",
    "parse_descriptor",
    "dump_descriptor",
    "manifold_to_dict",
    "manifold_from_dict",
    "fixture_dir",
    "resolve_path",
    "schema",
]

VERSION = 1
FIXTURE_ENV = "ACSTRUCT_FIXTURE_DIR"


def schema(name: str = "descriptor") -> dict[str, Any]:
    text = resources.files("acstruct").joinpath(f"schemas/{name}.schema.json").read_text()
    return json.loads(text)


def fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("acstruct").joinpath("fixtures")))


def resolve_path(path: str | os.PathLike) -> Path:
    """Use ``path`` as given if it exists, else look it up among the fixtures."""
    p = Path(path)
    if p.exists():
        return p
    candidate = fixture_dir() / p.name
    if candidate.exists():
        return candidate
    raise ParseError(f"no such descriptor file: {path}")


@dataclass(frozen=True)
class DescriptorFile:
    manifolds: dict[str, ManifoldData]
    summand_lists: dict[str, tuple[str, ...]] = field(default_factory=dict)
    description: str = ""

    def summands(self, list_name: str) -> list[ManifoldData]:
        try:
            names = self.summand_lists[list_name]
        except KeyError:
            raise SchemaError(
                f"no summand list {list_name!r}; available: {sorted(self.summand_lists)}"
            ) from None
        return [self.manifolds[n] for n in names]


def _coeff(c: Any) -> Fraction:
    return Fraction(c) if isinstance(c, str) else Fraction(int(c))


def _encode_coeff(c: Any) -> int | str:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else str(c)


def _element_from(ring: RingModel, terms: list[dict[str, Any]]) -> GradedElement:
    return ring.element({
        ring.monomial(t["monomial"]): _coeff(t["coeff"]) for t in terms
    })


def _element_to(x: GradedElement) -> list[dict[str, Any]]:
    ring = x.ring
    if x.free_symbols:
        raise ValueError("cannot serialise classes with symbolic unknowns")
    return [
        {"monomial": {n: e for n, e in zip(ring.names, m) if e}, "coeff": _encode_coeff(c)}
        for m, c in x.terms.items()
    ]


def manifold_from_dict(d: dict[str, Any]) -> ManifoldData:
    dim = int(d["dim"])
    flags = frozenset(Flag(f) for f in d.get("flags", ()))
    ring = None
    if "ring" in d:
        spec = dict(d["ring"])
        spec.setdefault("top_degree", dim)
        ring = make_ring(spec)
    elif not ({Flag.RATIONAL_HOMOLOGY_SPHERE, Flag.MIDDLE_RATIONAL_TRIVIAL,
               Flag.INTEGRAL_HOMOLOGY_SPHERE} & flags):
        raise SchemaError(f"{d['name']}: 'ring' is required unless the manifold is "
                          "rationally middle-trivial")
    else:
        ring = point_ring(dim)
    chern = None
    if "tangent_chern" in d:
        classes = tuple(_element_from(ring, c) for c in d["tangent_chern"])
        chern = ChernVector(ring, dim // 2, classes)
    return ManifoldData(
        name=d["name"],
        dim=dim,
        euler=int(d["euler"]),
        signature=int(d.get("signature", 0)),
        ring=ring,
        tangent_chern=chern,
        flags=flags,
    )


def manifold_to_dict(m: ManifoldData) -> dict[str, Any]:
    out: dict[str, Any] = {
        "name": m.name,
        "dim": m.dim,
        "euler": m.euler,
        "signature": m.signature,
        "ring": m.ring.to_dict(),
        "flags": sorted(f.value for f in m.flags),
    }
    if m.tangent_chern is not None:
        out["tangent_chern"] = [_element_to(c) for c in m.tangent_chern.classes]
    return out


def parse_descriptor(doc: Any) -> DescriptorFile:
    try:
        jsonschema.validate(doc, schema("descriptor"))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None
    manifolds: dict[str, ManifoldData] = {}
    for entry in doc["manifolds"]:
        if entry["name"] in manifolds:
            raise SchemaError(f"duplicate manifold name {entry['name']!r}")
        try:
            manifolds[entry["name"]] = manifold_from_dict(entry)
        except SchemaError:
            raise
        except (ValueError, KeyError) as exc:
            raise SchemaError(f"manifold {entry['name']!r}: {exc}") from exc
    lists: dict[str, tuple[str, ...]] = {}
    for name, items in doc.get("summand_lists", {}).items():
        names: list[str] = []
        for item in items:
            if isinstance(item, str):
                names.append(item)
            else:
                names.extend([item["name"]] * item["copies"])
        missing = sorted(set(names) - set(manifolds))
        if missing:
            raise SchemaError(f"summand list {name!r} refers to unknown manifolds {missing}")
        lists[name] = tuple(names)
    return DescriptorFile(manifolds, lists, doc.get("description", ""))


def load_descriptor(path: str | os.PathLike) -> DescriptorFile:
    p = resolve_path(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: {exc}") from None
    return parse_descriptor(doc)


def dump_descriptor(desc: DescriptorFile) -> dict[str, Any]:
    out: dict[str, Any] = {"version": VERSION}
    if desc.description:
        out["description"] = desc.description
    out["manifolds"] = [manifold_to_dict(m) for m in desc.manifolds.values()]
    if desc.summand_lists:
        out["summand_lists"] = {k: list(v) for k, v in desc.summand_lists.items()}
    return out
