"""Descriptor/provider file formats and the report document.

Descriptor file: one JSON object with keys ``n``, ``kappa``,
``boundary_volumes``, ``V`` and optional ``V1``, ``genus``, ``ell`` (object
mapping ``"k"`` to a length), ``laplace_eigs``.  Unknown keys are rejected.

Report document (``schema_version`` "1")::

    {"schema_version": "1",
     "inputs": {"descriptor": ..., "constants": ..., "what_if": ...},
     "derived": {...},
     "items": [BoundItem, ...],          # sorted by (target, kind, name)
     "diagnostics": [str, ...]}

Floats are written with 17 significant digits so binary64 values round-trip.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .bounds import BoundReport, ConstantProvider, ManifoldDescriptor, assemble_report
from .errors import InputError
from .hypgeom import PinchedClass

SCHEMA_VERSION = "1"

_REQUIRED = ("n", "kappa", "boundary_volumes", "V")
_OPTIONAL = ("V1", "genus", "ell", "laplace_eigs")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _number_list(data, key) -> list[float]:
    value = data[key]
    if not isinstance(value, list) or not all(_is_number(v) for v in value):
        raise InputError(f"{key} must be an array of numbers")
    return [float(v) for v in value]


def parse_descriptor(data: Mapping[str, Any]) -> ManifoldDescriptor:
    if not isinstance(data, Mapping):
        raise InputError("descriptor must be a JSON object")
    unknown = set(data) - set(_REQUIRED) - set(_OPTIONAL)
    if unknown:
        raise InputError(f"unknown descriptor key(s): {', '.join(sorted(unknown))}")
    missing = [k for k in _REQUIRED if k not in data]
    if missing:
        raise InputError(f"missing descriptor key(s): {', '.join(missing)}")
    n = data["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise InputError("n must be an integer")
    for key in ("kappa", "V", "V1"):
        if key in data and not _is_number(data[key]):
            raise InputError(f"{key} must be a number")
    genus = None
    if "genus" in data:
        genus = data["genus"]
        if not isinstance(genus, list) or not all(
            isinstance(g, int) and not isinstance(g, bool) for g in genus
        ):
            raise InputError("genus must be an array of integers")
    ell = None
    if "ell" in data:
        raw = data["ell"]
        if not isinstance(raw, Mapping):
            raise InputError("ell must be an object mapping index strings to lengths")
        ell = {}
        for k, v in raw.items():
            if not (isinstance(k, str) and k.isdigit()) or not _is_number(v):
                raise InputError(f"ell entry {k!r} must map a decimal index to a number")
            ell[int(k)] = float(v)
    try:
        cls = PinchedClass(n, float(data["kappa"]))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return ManifoldDescriptor(
        cls=cls,
        boundary_volumes=tuple(_number_list(data, "boundary_volumes")),
        total_volume=float(data["V"]),
        collar_volume=float(data["V1"]) if "V1" in data else None,
        genus=tuple(genus) if genus is not None else None,
        ell=ell,
        laplace_eigs=tuple(_number_list(data, "laplace_eigs")) if "laplace_eigs" in data else None,
    )


def descriptor_to_dict(d: ManifoldDescriptor) -> dict:
    out: dict[str, Any] = {
        "n": d.cls.n,
        "kappa": d.cls.kappa,
        "boundary_volumes": list(d.boundary_volumes),
        "V": d.V,
    }
    if d.collar_volume is not None:
        out["V1"] = d.collar_volume
    if d.genus is not None:
        out["genus"] = list(d.genus)
    if d.ell is not None:
        out["ell"] = {str(k): v for k, v in d.ell.items()}
    if d.laplace_eigs is not None:
        out["laplace_eigs"] = list(d.laplace_eigs)
    return out


def example_descriptor_path() -> Path:
    """Path of the descriptor bundled with the package."""
    return Path(str(resources.files("stekbound") / "data" / "example_descriptor.json"))


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None


def build_document(
    descriptor: ManifoldDescriptor,
    provider: ConstantProvider,
    report: BoundReport,
    what_if: Mapping[str, Any] | None = None,
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "inputs": {
            "descriptor": descriptor_to_dict(descriptor),
            "constants": provider.to_dict(),
            "what_if": dict(what_if or {}),
        },
        "derived": report.derived,
        "items": [item.to_dict() for item in report.items],
        "diagnostics": list(report.diagnostics),
    }


def run_report(
    descriptor_data: Mapping,
    constants_data: Mapping | None = None,
    *,
    thm52: tuple[int, float] | None = None,
    example51_j: int | None = None,
) -> dict:
    descriptor = parse_descriptor(descriptor_data)
    provider = ConstantProvider.from_mapping(constants_data or {})
    report = assemble_report(descriptor, provider, thm52=thm52, example51_j=example51_j)
    what_if = {}
    if thm52 is not None:
        what_if["short_arc"] = {"k": thm52[0], "epsilon": thm52[1]}
    if example51_j is not None:
        what_if["gluing_j"] = example51_j
    return build_document(descriptor, provider, report, what_if)


# ---------------------------------------------------------------------------
# Serialisation


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    text = format(x, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        parts = [
            f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}"
            for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))
        ]
        return "{\n" + ",\n".join(parts) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        parts = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(document: Any, indent: int = 2) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, 17-digit floats."""
    return _encode(document, indent, 0) + "\n"


def render_text(document: Mapping) -> str:
    lines = [f"schema_version {document['schema_version']}"]
    derived = document["derived"]
    lines.append(
        "width {w}  closed-form lower {c}  disjointness gap {g}".format(
            w=format_float(derived["width"]),
            c=format_float(derived["width_closed_form_lower"]),
            g=format_float(derived["disjointness_gap"]),
        )
    )
    lines.append(f"{'target':<12} {'kind':<6} {'name':<28} {'value':>24}  rigor")
    for item in document["items"]:
        rigor = item["rigor"]
        if item["placeholders"]:
            rigor += " [placeholders: " + ", ".join(item["placeholders"]) + "]"
        lines.append(
            f"{item['target']:<12} {item['kind']:<6} {item['name']:<28} "
            f"{format_float(item['value']):>24}  {rigor}"
        )
    if document["diagnostics"]:
        lines.append("diagnostics:")
        lines.extend(f"  {d}" for d in document["diagnostics"])
    return "\n".join(lines) + "\n"
