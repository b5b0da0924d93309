"""Regenerate the shipped catalog under src/chiralmaps/data/catalog.

Each entry comes from a generating pair on a few points (see PAIRS) or
from a torus constructor; the manifest records the properties measured at
build time, which catalog_get re-checks on every load.
"""

import json
from pathlib import Path

from chiralmaps.mapfile import emit_map
from chiralmaps.maps import census, is_reflexible, map_from_generators, unrooted_isomorphic, mirror
from chiralmaps.perm import Perm
from chiralmaps.seeds import torus_map_36, torus_map_44

OUT = Path(__file__).resolve().parents[1] / "src" / "chiralmaps" / "data" / "catalog"

# name: (points, x cycles, y cycles)
PAIRS = {
    "tetrahedron": (4, [(0, 1, 2)], [(0, 3, 2)]),
    "cube": (4, [(0, 1, 2, 3)], [(0, 2, 1)]),
    "klein-quartic": (7, [(0, 1, 2), (3, 4, 5)], [(0, 3, 6, 5, 4, 2, 1)]),
    "genus3-4-6": (6, [(0, 1, 2, 3), (4, 5)], [(0, 5, 1, 2, 4, 3)]),
    "genus3-6-6": (6, [(0, 1, 2, 3, 4, 5)], [(0, 2, 4, 3, 5, 1)]),
    "genus4-5-5": (5, [(0, 1, 2, 3, 4)], [(0, 2, 3, 4, 1)]),
    "genus9-5-6": (5, [(0, 1, 2, 3, 4)], [(0, 2, 1), (3, 4)]),
    "genus7-7-7-chiral": (8, [(0, 1, 2, 3, 4, 5, 6)], [(0, 3, 4, 6, 7, 5, 2)]),
    "genus19-7-7": (7, [(0, 1, 2, 3, 4, 5, 6)], [(0, 3, 4, 6, 5, 2, 1)]),
    "genus4-4-5": (5, [(0, 1, 2, 3)], [(0, 4, 3, 2, 1)]),
    "genus4-6-6": (6, [(0, 1, 2, 3, 4, 5)], [(0, 3, 4, 5, 2, 1)]),
    "genus11-6-6": (5, [(0, 1, 2), (3, 4)], [(0, 4, 1), (2, 3)]),
    "genus6-4-6": (5, [(0, 1, 2, 3)], [(0, 1), (2, 3, 4)]),
    "genus61-6-6-chiral": (6, [(0, 1, 2, 3, 4, 5)], [(0, 3, 1), (4, 5)]),
}
TORI = {
    "torus-44-1-0": (torus_map_44, 1, 0),
    "torus-44-2-0": (torus_map_44, 2, 0),
    "torus-44-2-1": (torus_map_44, 2, 1),
    "torus-36-1-1": (torus_map_36, 1, 1),
    "torus-36-2-1": (torus_map_36, 2, 1),
}


def cycles_text(cycles):
    return "".join("(%s)" % " ".join(map(str, c)) for c in cycles)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = []
    for name, (r, xc, yc) in PAIRS.items():
        M = map_from_generators(Perm.from_cycles(r, xc), Perm.from_cycles(r, yc), label=name)
        prov = "regular representation of <x, y> with x = %s, y = %s on %d points" % (
            cycles_text(xc), cycles_text(yc), r)
        manifest.append(entry(name, M, prov))
    for name, (fn, b, c) in TORI.items():
        M = fn(b, c)
        manifest.append(entry(name, M, "%s(%d, %d)" % (fn.__name__, b, c)))
    (OUT / "manifest.json").write_text(json.dumps({"entries": manifest}, indent=2) + "\n")


def entry(name, M, provenance):
    emit_map(M, OUT / (name + ".json"))
    verdict = is_reflexible(M).verdict
    # cross-check with the independent basepoint oracle before recording
    assert (verdict == "reflexible") == unrooted_isomorphic(M, mirror(M))
    return {
        "name": name,
        "file": name + ".json",
        "provenance": provenance,
        "type": [M.type.m, M.type.n],
        "darts": M.d,
        "genus": census(M).genus,
        "chirality": verdict,
    }


if __name__ == "__main__":
    main()
