"""JSON readers and writers.  Rationals always travel as ``"p/q"`` strings."""

from __future__ import annotations

import json

from .errors import FormatError
from .exact import format_rational, parse_rational
from .intervals import IntervalSet
from .matching import matrix_from_json
from .stepfunc import StepFunction
from .wavelet import ComplexProfile


def parse_points(data) -> list:
    if isinstance(data, dict):
        data = data.get("X", data.get("points"))
    if not isinstance(data, list):
        raise FormatError("expected a JSON list of rational strings")
    return [parse_rational(str(x)) for x in data]


def points_to_json(points) -> list:
    return [format_rational(p) for p in points]


def decode(data):
    """Guess the object kind from its JSON shape."""
    if isinstance(data, list):
        if data and isinstance(data[0], list):
            return matrix_from_json(data)
        return parse_points(data)
    if not isinstance(data, dict):
        raise FormatError("unrecognized JSON document")
    if "intervals" in data:
        return IntervalSet.from_dict(data)
    if "matrix" in data:
        return matrix_from_json(data["matrix"])
    if {"F", "U", "V"} <= data.keys():
        return {k: IntervalSet.from_dict(data[k]) for k in ("F", "U", "V")}
    if "X" in data or "points" in data:
        return parse_points(data)
    if "cells" in data:
        cells = data["cells"]
        if cells and ("re" in cells[0] or "im" in cells[0]):
            return ComplexProfile.from_dict(data)
        return StepFunction.from_dict(data)
    raise FormatError(f"unrecognized JSON object with keys {sorted(data)}")


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    return decode(data)


def encode(obj):
    if isinstance(obj, (IntervalSet, StepFunction, ComplexProfile)):
        return obj.to_dict()
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        if obj and isinstance(obj[0], (list, tuple)):
            return {"matrix": [[format_rational(x) for x in row] for row in obj]}
        return points_to_json(obj)
    raise FormatError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
