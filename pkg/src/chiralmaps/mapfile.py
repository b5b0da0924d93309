"""The ``regmap-v1`` JSON map format.

A map file is one line of JSON::

    {"format":"regmap-v1","darts":4,"x":[1,2,3,0],"y":[3,0,1,2],"label":"..."}

Keys always appear in this order, there is no whitespace, ``label`` is
omitted when absent, and the line ends with a newline, so equal maps give
byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import MapFileError, ValidationError
from .maps import OrientedMap, validate

FORMAT = "regmap-v1"


def map_to_obj(M: OrientedMap) -> dict:
    obj = {"format": FORMAT, "darts": M.d, "x": list(M.x.images), "y": list(M.y.images)}
    if M.label is not None:
        obj["label"] = M.label
    return obj


def dumps_map(M: OrientedMap) -> str:
    return json.dumps(map_to_obj(M), separators=(",", ":"), ensure_ascii=False) + "\n"


def map_digest(M: OrientedMap) -> str:
    """sha256 of the canonical file with the label stripped."""
    obj = map_to_obj(M)
    obj.pop("label", None)
    text = json.dumps(obj, separators=(",", ":")) + "\n"
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def emit_map(M: OrientedMap, path) -> None:
    Path(path).write_bytes(dumps_map(M).encode("utf-8"))


def map_from_obj(obj) -> OrientedMap:
    if not isinstance(obj, dict):
        raise MapFileError("map must be a JSON object", "schema")
    if obj.get("format") != FORMAT:
        raise MapFileError("field 'format' must be %r" % FORMAT, "schema", "format")
    extra = set(obj) - {"format", "darts", "x", "y", "label"}
    if extra:
        name = sorted(extra)[0]
        raise MapFileError("unexpected field %r" % name, "schema", name)
    d = obj.get("darts")
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise MapFileError("field 'darts' must be a positive integer", "schema", "darts")
    for key in ("x", "y"):
        arr = obj.get(key)
        if not isinstance(arr, list) or len(arr) != d:
            raise MapFileError("field %r must be an array of length %d" % (key, d), "schema", key)
        if not all(isinstance(a, int) and not isinstance(a, bool) and 0 <= a < d for a in arr):
            raise MapFileError("field %r must hold dart indices 0..%d" % (key, d - 1), "schema", key)
        if len(set(arr)) != d:
            raise MapFileError("field %r is not a permutation" % key, "schema", key)
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise MapFileError("field 'label' must be a string", "schema", "label")
    try:
        return validate(d, obj["x"], obj["y"], label)
    except ValidationError as exc:
        raise MapFileError("%s: %s" % (type(exc).__name__, exc), "validation", cause=exc) from exc


def loads_map(text: str) -> OrientedMap:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapFileError("invalid JSON: %s" % exc, "json", cause=exc) from exc
    return map_from_obj(obj)


def parse_map(path) -> OrientedMap:
    return loads_map(Path(path).read_text(encoding="utf-8"))
