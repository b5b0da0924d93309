"""Orientably-regular maps, chirality testing, parallel products and
verified chiral smooth covers of maps of hyperbolic type."""

__version__ = "0.1.0"

from .perm import Perm, compose, element_order, inverse, is_regular_action, orbit
from .maps import (
    MapType,
    OrientedMap,
    census,
    dual,
    is_reflexible,
    is_smooth_cover,
    map_from_generators,
    map_type,
    mirror,
    rooted_morphism,
    unrooted_isomorphic,
    validate,
    word_apply,
)
from .products import goursat_classify, parallel_product
from .exceptional import GammaType, exceptional_report, extend_theta, try_theta
from .seeds import (
    enumerate_generating_pairs,
    find_chiral_seed,
    torus_map_36,
    torus_map_44,
)
from .catalog import catalog_get, catalog_names
from .mapfile import emit_map, parse_map
from .pipeline import choose_cover_base, chiral_cover, many_chiral_covers, verify_certificate

__all__ = [
    "Perm", "compose", "element_order", "inverse", "is_regular_action", "orbit",
    "MapType", "OrientedMap", "census", "dual", "is_reflexible", "is_smooth_cover",
    "map_from_generators", "map_type", "mirror", "rooted_morphism", "unrooted_isomorphic",
    "validate", "word_apply", "goursat_classify", "parallel_product", "GammaType",
    "exceptional_report", "extend_theta", "try_theta", "enumerate_generating_pairs",
    "find_chiral_seed", "torus_map_36", "torus_map_44", "catalog_get", "catalog_names",
    "emit_map", "parse_map", "choose_cover_base", "chiral_cover", "many_chiral_covers",
    "verify_certificate",
]
