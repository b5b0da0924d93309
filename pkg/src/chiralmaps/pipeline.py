"""Chiral smooth covers of a given map of hyperbolic type.

Construction: take a chiral seed map ``M1`` of the same type whose
orientation-preserving automorphism group is Sym(r) or Alt(r), a smooth
cover ``M2`` of the input whose group has a different order, and return the
parallel product ``M1 || M2``.  Every claim about the result is checked
directly and written into a JSON certificate that can be re-checked from
its own contents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import MapError, NonHyperbolicType, NoSuitableBase
from .mapfile import map_digest, map_from_obj, map_to_obj
from .maps import (
    OrientedMap,
    is_reflexible,
    is_smooth_cover,
    map_from_generators,
    mirror,
    rooted_morphism,
    summary,
    unrooted_isomorphic,
)
from .perm import Perm
from .products import goursat_classify, parallel_product, product_with_pairs
from .seeds import Exhausted, SeedResult, iter_chiral_seeds, sym_alt_tag

CERT_FORMAT = "chiral-cover-cert-v1"
ORACLE_LIMIT = 5000
INLINE_LIMIT = 20_000

NOTES = [
    "the seed is found by bounded exhaustive search over generating pairs of Sym(r)/Alt(r)",
    "the cover base is the input itself or its parallel product with auxiliary maps",
    "non-isomorphism of the seed group and the cover-base group is witnessed by unequal orders",
    "an infinite family of covers is replaced by finitely many verified parallel products",
]


@dataclass
class CoverCertificate:
    document: dict
    product: OrientedMap = field(repr=False, compare=False)

    @property
    def verifications(self) -> dict:
        return self.document["verifications"]

    def to_json(self) -> str:
        return json.dumps(self.document, indent=1, ensure_ascii=False) + "\n"


@dataclass
class CoverBatch:
    certificates: list[CoverCertificate]
    exhausted: Exhausted | None = None


def _cover_base(M: OrientedMap, seed_order: int,
                aux: Sequence[OrientedMap]) -> tuple[OrientedMap, list[OrientedMap]]:
    if M.d != seed_order:
        return M, []
    base, used = M, []
    for a in aux:
        if a.type != M.type:
            raise ValueError("auxiliary map %r has type %s, expected %s" % (a.label, a.type, M.type))
        base = parallel_product(base, a)
        used.append(a)
        if base.d != seed_order:
            return base, used
    raise NoSuitableBase("input and seed both have order %d and no auxiliary map separates them"
                         % seed_order)


def choose_cover_base(M: OrientedMap, seed: SeedResult,
                      aux: Sequence[OrientedMap] = ()) -> OrientedMap:
    """A smooth cover of ``M`` whose group order differs from the seed's.

    ``M`` itself when the orders already differ; otherwise ``M`` is
    multiplied by auxiliary maps in turn until they do.
    """
    return _cover_base(M, seed.map.d, aux)[0]


def _seed_record(seed: SeedResult) -> dict:
    return {
        "degree": seed.r,
        "group_tag": seed.group_tag,
        "x_points": list(seed.x_points.images),
        "y_points": list(seed.y_points.images),
        "darts": seed.map.d,
        "digest": map_digest(seed.map),
        "summary": summary(seed.map),
    }


def _verify(M: OrientedMap, seed_map: OrientedMap, base: OrientedMap, P: OrientedMap) -> dict:
    out = {
        "same_type": P.type == M.type,
        "product_covers_input": is_smooth_cover(P, M),
        "product_covers_seed": is_smooth_cover(P, seed_map),
        "product_covers_base": is_smooth_cover(P, base),
        "base_covers_input": is_smooth_cover(base, M),
        "orders_differ": base.d != seed_map.d,
        "seed_chiral": is_reflexible(seed_map).chiral,
        "product_chiral": is_reflexible(P).chiral,
    }
    if seed_map.d <= ORACLE_LIMIT:
        out["seed_chiral_basepoint_oracle"] = not unrooted_isomorphic(seed_map, mirror(seed_map))
    if P.d <= ORACLE_LIMIT:
        out["product_chiral_basepoint_oracle"] = not unrooted_isomorphic(P, mirror(P))
    return out


def _certificate(M: OrientedMap, seed: SeedResult, aux: Sequence[OrientedMap],
                 allow_large: bool, anomalies: list[str]) -> CoverCertificate | str:
    """A certificate, or an anomaly description if some check fails."""
    base, used = _cover_base(M, seed.map.d, aux)
    pm = product_with_pairs(seed.map, base, allow_large, label="chiral-cover-%s" % (M.label or "input"))
    P = pm.map
    report = goursat_classify(seed.map, base, pm)
    checks = _verify(M, seed.map, base, P)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        return "seed %s (degree %d): failed %s" % (seed.group_tag, seed.r, ", ".join(failed))
    doc = {
        "format": CERT_FORMAT,
        "input": {"summary": summary(M), "map": map_to_obj(M)},
        "seed": _seed_record(seed),
        "cover_base": {
            "construction": "input" if not used else "input || aux",
            "aux": [map_to_obj(a) for a in used],
            "darts": base.d,
            "digest": map_digest(base),
        },
        "goursat": report.as_dict(),
        "product": {
            "summary": summary(P),
            "darts": P.d,
            "digest": map_digest(P),
            "map": map_to_obj(P) if P.d <= INLINE_LIMIT else None,
        },
        "verifications": checks,
        "notes": NOTES,
        "anomalies": list(anomalies),
    }
    return CoverCertificate(doc, P)


def _check_input(M: OrientedMap) -> None:
    if not M.type.hyperbolic:
        raise NonHyperbolicType("type %s is %s, not hyperbolic" % (M.type, M.type.geometry))


def _distinct_seeds(M: OrientedMap, r_max: int, budget, workers):
    seen: list[OrientedMap] = []
    for seed in iter_chiral_seeds(M.type, r_max, budget, workers):
        if any(s.d == seed.map.d and rooted_morphism(seed.map, s) is not None for s in seen):
            continue
        seen.append(seed.map)
        yield seed


def chiral_cover(M: OrientedMap, r_max: int = 8, budget: int | None = None,
                 aux: Sequence[OrientedMap] = (), workers: int = 1,
                 allow_large: bool = False) -> CoverCertificate | Exhausted:
    """One verified chiral smooth cover of ``M`` of the same type."""
    batch = many_chiral_covers(M, 1, r_max, budget, aux, workers, allow_large)
    if batch.certificates:
        return batch.certificates[0]
    return batch.exhausted


def many_chiral_covers(M: OrientedMap, k: int, r_max: int = 8, budget: int | None = None,
                       aux: Sequence[OrientedMap] = (), workers: int = 1,
                       allow_large: bool = False) -> CoverBatch:
    """Up to ``k`` certificates with pairwise non-isomorphic products."""
    _check_input(M)
    if k < 1:
        raise ValueError("k must be positive")
    anomalies: list[str] = []
    certs: list[CoverCertificate] = []
    for seed in _distinct_seeds(M, r_max, budget, workers):
        result = _certificate(M, seed, aux, allow_large, anomalies)
        if isinstance(result, str):
            anomalies.append(result)
            continue
        P = result.product
        witnesses = []
        duplicate = False
        for j, other in enumerate(certs):
            if other.product.d != P.d:
                witnesses.append({"certificate": j, "witness": "darts differ"})
            elif rooted_morphism(P, other.product) is None:
                witnesses.append({"certificate": j, "witness": "not isomorphic (no rooted isomorphism)"})
            else:
                duplicate = True
                break
        if duplicate:
            continue
        result.document["distinct_from"] = witnesses
        certs.append(result)
        if len(certs) == k:
            return CoverBatch(certs)
    reason = "found %d of %d chiral covers of type %s with seeds of degree <= %d" % (
        len(certs), k, M.type, r_max)
    return CoverBatch(certs, Exhausted(reason, tuple(anomalies)))


def verify_certificate(doc: dict, product: OrientedMap | None = None) -> list[str]:
    """Re-run every check recorded in ``doc`` from its own data.

    Returns the list of failures (empty when the certificate holds).
    ``product`` may supply an externally stored product map; otherwise the
    product is rebuilt from the seed and cover base.  Malformed data is
    reported as a failure rather than raised.
    """
    if not isinstance(doc, dict) or doc.get("format") != CERT_FORMAT:
        return ["unknown certificate format %r" % (doc.get("format") if isinstance(doc, dict) else None)]
    try:
        return _recheck(doc, product)
    except (MapError, KeyError, TypeError, ValueError) as exc:
        return ["malformed certificate: %s: %s" % (type(exc).__name__, exc)]


def _recheck(doc: dict, product: OrientedMap | None) -> list[str]:
    failures = []
    M = map_from_obj(doc["input"]["map"])
    s = doc["seed"]
    seed_map = map_from_generators(Perm(s["x_points"]), Perm(s["y_points"]))
    if map_digest(seed_map) != s["digest"]:
        failures.append("seed digest mismatch")
    if sym_alt_tag(Perm(s["x_points"]), Perm(s["y_points"])) != s["group_tag"]:
        failures.append("seed group tag %r not confirmed" % s["group_tag"])
    base = M
    for a in doc["cover_base"]["aux"]:
        base = parallel_product(base, map_from_obj(a))
    if map_digest(base) != doc["cover_base"]["digest"]:
        failures.append("cover base digest mismatch")
    rebuilt = product_with_pairs(seed_map, base, allow_large=True)
    if doc["product"]["map"] is not None:
        inline = map_from_obj(doc["product"]["map"])
        if map_digest(inline) != doc["product"]["digest"]:
            failures.append("inline product does not match its digest")
    if product is not None and map_digest(product) != doc["product"]["digest"]:
        failures.append("supplied product does not match the digest")
    if map_digest(rebuilt.map) != doc["product"]["digest"]:
        failures.append("rebuilt product does not match the digest")
    P = rebuilt.map
    report = goursat_classify(seed_map, base, rebuilt)
    if report.as_dict() != doc["goursat"]:
        failures.append("goursat report differs")
    checks = _verify(M, seed_map, base, P)
    for key, value in doc["verifications"].items():
        if checks.get(key) != value or value is not True:
            failures.append("verification %s: recorded %r, recomputed %r" % (key, value, checks.get(key)))
    for key in checks:
        if key not in doc["verifications"]:
            failures.append("verification %s missing from certificate" % key)
    return failures
