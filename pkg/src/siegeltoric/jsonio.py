"""JSON readers/writers for the on-disk formats.

Integers are emitted as JSON numbers up to 2^53 and as decimal strings
beyond; readers accept both.  Complex matrices travel as {"re": [[...]],
"im": [[...]]}.  All emitters produce deterministic output (sorted keys,
fixed separators) so identical runs are byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

import numpy as np

from .cone_lattice import ConeShapeError, Fan, GroupElement, MarkedCone
from .exact_algebra import MultiPoly, poly_from_json, poly_to_json

INT_JSON_MAX = 2 ** 53


class InputFormatError(ValueError):
    pass


def encode_int(v: int):
    return v if abs(v) <= INT_JSON_MAX else str(v)


def decode_int(v) -> int:
    if isinstance(v, bool):
        raise InputFormatError(f"expected integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v)
        except ValueError as exc:
            raise InputFormatError(f"bad integer literal {v!r}") from exc
    if isinstance(v, float) and v.is_integer():
        return int(v)
    raise InputFormatError(f"expected integer, got {v!r}")


def int_matrix_to_json(m: Sequence[Sequence[int]]):
    return [[encode_int(int(v)) for v in row] for row in m]


def int_matrix_from_json(obj) -> tuple[tuple[int, ...], ...]:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputFormatError("matrix must be a nonempty list of rows")
    return tuple(tuple(decode_int(v) for v in row) for row in obj)


def cone_to_json(c: MarkedCone) -> dict:
    out: dict[str, Any] = {
        "g": c.g,
        "scale": c.scale,
        "generators": [int_matrix_to_json(m) for m in c.generators],
    }
    if c.labels is not None:
        out["labels"] = list(c.labels)
    return out


def cone_from_json(obj: Mapping) -> MarkedCone:
    try:
        g = decode_int(obj["g"])
        scale = decode_int(obj.get("scale", 1))
        gens = tuple(int_matrix_from_json(m) for m in obj["generators"])
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"bad cone object: {exc}") from exc
    labels = obj.get("labels")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
    try:
        return MarkedCone(g=g, scale=scale, generators=gens, labels=labels)
    except ConeShapeError as exc:
        raise InputFormatError(f"invalid cone: {exc}") from exc


def group_element_from_json(obj: Mapping) -> GroupElement:
    try:
        mat = int_matrix_from_json(obj["matrix"])
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"bad group element object: {exc}") from exc
    try:
        return GroupElement(matrix=mat)
    except ConeShapeError as exc:
        raise InputFormatError(f"invalid group element: {exc}") from exc


def group_from_json(obj) -> list[GroupElement]:
    """A group file is either one element object or a list of them
    (optionally wrapped as {"elements": [...]})."""
    if isinstance(obj, Mapping) and "elements" in obj:
        obj = obj["elements"]
    if isinstance(obj, Mapping):
        return [group_element_from_json(obj)]
    if isinstance(obj, list):
        return [group_element_from_json(e) for e in obj]
    raise InputFormatError("group file must hold an element or a list of elements")


def fan_from_json(obj: Mapping) -> Fan:
    if "cones" not in obj:
        raise InputFormatError("fan file needs a 'cones' list")
    cones = tuple(cone_from_json(c) for c in obj["cones"])
    try:
        return Fan(cones=cones)
    except ConeShapeError as exc:
        raise InputFormatError(f"invalid fan: {exc}") from exc


def complex_matrix_from_json(obj: Mapping) -> np.ndarray:
    try:
        re_part = np.asarray(obj["re"], dtype=float)
        im_part = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"bad complex matrix: {exc}") from exc
    if re_part.shape != im_part.shape:
        raise InputFormatError("re/im shapes disagree")
    return re_part + 1j * im_part


def complex_matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def fraction_to_json(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def poly_json(p: MultiPoly) -> dict:
    return poly_to_json(p)


def poly_parse(obj: Mapping) -> MultiPoly:
    return poly_from_json(obj)


def dump_report(report: dict) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, separators=(", ", ": "),
                      ensure_ascii=False) + "\n"


def render_text(report: dict, indent: int = 0) -> str:
    """Human-readable rendering of the same report object."""
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines)
