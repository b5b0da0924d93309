"""Named maps shipped with the package (``data/catalog``).

Every load re-validates the map and re-measures the properties recorded in
the manifest; a mismatch raises PropertyDrift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import PropertyDrift, UnknownName
from .mapfile import loads_map
from .maps import OrientedMap, census, is_reflexible


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    map: OrientedMap
    provenance: str
    expected: dict


def _data_dir():
    return resources.files("chiralmaps") / "data" / "catalog"


@lru_cache(maxsize=None)
def _manifest() -> dict[str, dict]:
    text = (_data_dir() / "manifest.json").read_text(encoding="utf-8")
    return {e["name"]: e for e in json.loads(text)["entries"]}


def catalog_names() -> list[str]:
    return list(_manifest())


def catalog_get(name: str) -> CatalogEntry:
    try:
        rec = _manifest()[name]
    except KeyError:
        raise UnknownName("no catalog entry named %r" % name) from None
    M = loads_map((_data_dir() / rec["file"]).read_text(encoding="utf-8"))
    measured = {
        "type": [M.type.m, M.type.n],
        "darts": M.d,
        "genus": census(M).genus,
        "chirality": is_reflexible(M).verdict,
    }
    for key, value in measured.items():
        if rec[key] != value:
            raise PropertyDrift("%s: recorded %s=%r, measured %r" % (name, key, rec[key], value))
    return CatalogEntry(name, M, rec["provenance"], measured)


def catalog_maps(names=None) -> list[OrientedMap]:
    return [catalog_get(n).map for n in (names or catalog_names())]
