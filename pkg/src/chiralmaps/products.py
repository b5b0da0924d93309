"""Parallel products of same-type maps and where the product group sits
inside the direct product of the factor groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import SizeLimitExceeded, StructureViolation, TypeMismatch
from .exceptional import GammaType, applicable_types, exceptional_report
from .maps import OrientedMap, validate
from .perm import Perm

MAX_PRODUCT_DARTS = 10_000_000


@dataclass(frozen=True)
class ProductMap:
    """A parallel product together with the dart pair behind each product dart."""

    map: OrientedMap
    pairs: tuple[tuple[int, int], ...]


def product_with_pairs(M1: OrientedMap, M2: OrientedMap, allow_large: bool = False,
                       label: str | None = None) -> ProductMap:
    if M1.type != M2.type:
        raise TypeMismatch("cannot multiply maps of types %s and %s" % (M1.type, M2.type))
    if M1.d * M2.d > MAX_PRODUCT_DARTS and not allow_large:
        raise SizeLimitExceeded("product of %d and %d darts exceeds %d; pass allow_large"
                                % (M1.d, M2.d, MAX_PRODUCT_DARTS))
    edges = (
        (M1.x.images, M2.x.images),
        (M1.x_inv.images, M2.x_inv.images),
        (M1.y.images, M2.y.images),
        (M1.y_inv.images, M2.y_inv.images),
    )
    d2 = M2.d
    index = {0: 0}
    pairs = [(0, 0)]
    queue = deque([(0, 0)])
    while queue:
        a, b = queue.popleft()
        for s1, s2 in edges:
            a2, b2 = s1[a], s2[b]
            key = a2 * d2 + b2
            if key not in index:
                index[key] = len(pairs)
                pairs.append((a2, b2))
                queue.append((a2, b2))
    x1, x2, y1, y2 = M1.x.images, M2.x.images, M1.y.images, M2.y.images
    xs = [index[x1[a] * d2 + x2[b]] for a, b in pairs]
    ys = [index[y1[a] * d2 + y2[b]] for a, b in pairs]
    if label is None and M1.label and M2.label:
        label = "(%s || %s)" % (M1.label, M2.label)
    P = validate(len(pairs), Perm(xs, check=False), Perm(ys, check=False), label)
    return ProductMap(P, tuple(pairs))


def parallel_product(M1: OrientedMap, M2: OrientedMap, allow_large: bool = False) -> OrientedMap:
    """``M1 || M2``: the orbit of the dart pair (0, 0) under the paired generators.

    Product darts are numbered in breadth-first discovery order from (0, 0)
    with letter order x, x^-1, y, y^-1.
    """
    return product_with_pairs(M1, M2, allow_large).map


@dataclass(frozen=True)
class GoursatReport:
    order1: int
    order2: int
    order_product: int
    index: int
    case: str  # "DirectProduct", "Index2Subproduct" or "Other"
    gamma_type: GammaType | None = None
    checks: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "order1": self.order1,
            "order2": self.order2,
            "order_product": self.order_product,
            "index": self.index,
            "case": self.case,
            "gamma_type": self.gamma_type.value if self.gamma_type else None,
            "checks": self.checks,
        }


def goursat_classify(M1: OrientedMap, M2: OrientedMap, product: ProductMap | None = None,
                     allow_large: bool = False) -> GoursatReport:
    """Index of the product group in ``G1 x G2`` and, at index 2, the
    verified index-2 structure (common exceptional type, ``H = H1 x H2``)."""
    if M1.type != M2.type:
        raise TypeMismatch("cannot compare maps of types %s and %s" % (M1.type, M2.type))
    if product is None:
        product = product_with_pairs(M1, M2, allow_large)
    D = product.map.d
    full = M1.d * M2.d
    if full % D:
        raise StructureViolation("product order %d does not divide %d" % (D, full))
    index = full // D
    if index == 1:
        return GoursatReport(M1.d, M2.d, D, 1, "DirectProduct")
    if index != 2:
        return GoursatReport(M1.d, M2.d, D, index, "Other")

    P = product.map
    for t in applicable_types(P.type.m, P.type.n):
        reps = [exceptional_report(M, t) for M in (M1, M2, P)]
        if all(r.exceptional for r in reps):
            r1, r2, rp = reps
            break
    else:
        raise StructureViolation("index-2 product but no common exceptional type")
    proj1 = {product.pairs[p][0] for p in rp.h_orbit}
    proj2 = {product.pairs[p][1] for p in rp.h_orbit}
    checks = {
        "h_order": len(rp.h_orbit),
        "h1_order": len(r1.h_orbit),
        "h2_order": len(r2.h_orbit),
        "h_is_h1_times_h2": len(rp.h_orbit) == len(r1.h_orbit) * len(r2.h_orbit),
        "h_projects_onto_h1": proj1 == r1.h_orbit,
        "h_projects_onto_h2": proj2 == r2.h_orbit,
    }
    if not all(v for k, v in checks.items() if k.startswith("h_is") or k.startswith("h_proj")):
        raise StructureViolation("index-2 structure checks failed: %r" % checks)
    return GoursatReport(M1.d, M2.d, D, 2, "Index2Subproduct", t, checks)
