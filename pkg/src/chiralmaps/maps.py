"""Orientably-regular maps as ``Map(G; x, y)`` acting on their own darts.

A map is stored as two dart permutations: ``x`` rotates a dart around its
face, ``y`` rotates it around its vertex, and ``x*y`` (x then y) is the edge
involution.  Validation forces the action of ``<x, y>`` to be regular, so
the darts *are* the group elements (dart 0 is the identity) and ``x``, ``y``
act by right multiplication.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import perm as _perm
from .errors import (
    DartOutOfRange,
    DegreeMismatch,
    EdgeWordNotInvolution,
    NotRegular,
    NotTransitive,
)
from .perm import Perm, element_order, group_closure, inverse


@dataclass(frozen=True)
class MapType:
    m: int
    n: int

    @property
    def curvature(self) -> Fraction:
        return Fraction(1, self.m) + Fraction(1, self.n) - Fraction(1, 2)

    @property
    def spherical(self) -> bool:
        return self.curvature > 0

    @property
    def euclidean(self) -> bool:
        return self.curvature == 0

    @property
    def hyperbolic(self) -> bool:
        return self.curvature < 0

    @property
    def geometry(self) -> str:
        if self.spherical:
            return "spherical"
        return "euclidean" if self.euclidean else "hyperbolic"

    def dual(self) -> MapType:
        return MapType(self.n, self.m)

    def __str__(self) -> str:
        return "{%d,%d}" % (self.m, self.n)


@dataclass(frozen=True)
class OrientedMap:
    """A validated orientably-regular map; build through :func:`validate`."""

    d: int
    x: Perm
    y: Perm
    label: str | None = field(default=None, compare=False)

    @cached_property
    def x_inv(self) -> Perm:
        return inverse(self.x)

    @cached_property
    def y_inv(self) -> Perm:
        return inverse(self.y)

    @cached_property
    def type(self) -> MapType:
        return MapType(element_order(self.x), element_order(self.y))

    def __repr__(self) -> str:
        name = " %r" % self.label if self.label else ""
        return "<OrientedMap%s d=%d type=%s>" % (name, self.d, self.type)


@dataclass(frozen=True)
class Census:
    vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    genus: int


@dataclass(frozen=True)
class RootedMorphism:
    """Dart labelling ``phi`` with ``phi[0] == 0`` commuting with the generators."""

    phi: tuple[int, ...]

    def __call__(self, p: int) -> int:
        return self.phi[p]

    def __len__(self) -> int:
        return len(self.phi)

    def is_bijective(self) -> bool:
        return len(set(self.phi)) == len(self.phi)


@dataclass(frozen=True)
class ChiralityReport:
    verdict: str  # "reflexible" or "chiral"
    witness: RootedMorphism | None = None

    @property
    def reflexible(self) -> bool:
        return self.verdict == "reflexible"

    @property
    def chiral(self) -> bool:
        return self.verdict == "chiral"


def validate(d: int, x, y, label: str | None = None) -> OrientedMap:
    """Check the raw data ``(d, x, y)`` and return the map.

    Raises DegreeMismatch, NotTransitive, NotRegular (carrying a
    :class:`~chiralmaps.perm.SchreierWitness`) or EdgeWordNotInvolution.
    """
    x = x if isinstance(x, Perm) else Perm(x)
    y = y if isinstance(y, Perm) else Perm(y)
    if d < 1 or x.degree != d or y.degree != d:
        raise DegreeMismatch("expected two permutations of degree %d, got %d and %d"
                             % (d, x.degree, y.degree))
    check = _perm.check_regular([x, y])
    if not check.transitive:
        raise NotTransitive("<x, y> has an orbit of size %d on %d darts" % (check.orbit_size, d))
    if check.witness is not None:
        w = check.witness
        raise NotRegular(
            "stabiliser of dart 0 is not trivial: Schreier generator at dart %d, "
            "generator %s moves %d to %d" % (w.dart, "xy"[w.generator], w.moved, w.moved_to),
            witness=w,
        )
    k = element_order(x * y)
    if k != 2:
        raise EdgeWordNotInvolution("x*y has order %d, not 2" % k, order=k)
    m, n = element_order(x), element_order(y)
    # Orbit sizes of a regular action; cannot fail after the checks above.
    assert d % m == 0 and d % n == 0 and d % 2 == 0
    return OrientedMap(d, x, y, label)


def map_from_generators(x: Perm, y: Perm, label: str | None = None) -> OrientedMap:
    """The regular representation of ``<x, y>`` (on any number of points).

    Darts are the group elements in breadth-first order from the identity
    (letter order x, x^-1, y, y^-1), and the generators act by right
    multiplication.
    """
    elements = group_closure([x, y])
    index = {e: i for i, e in enumerate(elements)}
    xi, yi = x.images, y.images
    xs = [index[tuple([xi[a] for a in e])] for e in elements]
    ys = [index[tuple([yi[a] for a in e])] for e in elements]
    return validate(len(elements), Perm(xs, check=False), Perm(ys, check=False), label)


def map_type(M: OrientedMap) -> MapType:
    return M.type


def census(M: OrientedMap) -> Census:
    t = M.type
    V, E, F = M.d // t.n, M.d // 2, M.d // t.m
    chi = V - E + F
    assert chi % 2 == 0, "odd Euler characteristic: invalid map escaped validation"
    return Census(V, E, F, chi, (2 - chi) // 2)


def dual(M: OrientedMap) -> OrientedMap:
    return OrientedMap(M.d, M.y, M.x, M.label)


def mirror(M: OrientedMap) -> OrientedMap:
    return OrientedMap(M.d, M.x_inv, M.y_inv, M.label)


def _propagate(src: OrientedMap, tgt_gens: Sequence[Perm], q: int) -> list[int] | None:
    """Extend ``0 -> q`` along the edges of ``src`` (order x, x^-1, y, y^-1),
    sending each generator of ``src`` to the matching one of ``tgt_gens``.
    Returns None at the first inconsistency.
    """
    tx, ty = tgt_gens
    edges = (
        (src.x.images, tx.images),
        (src.x_inv.images, inverse(tx).images),
        (src.y.images, ty.images),
        (src.y_inv.images, inverse(ty).images),
    )
    phi = [-1] * src.d
    phi[0] = q
    queue = deque([0])
    while queue:
        p = queue.popleft()
        fp = phi[p]
        for s, t in edges:
            p2 = s[p]
            v = t[fp]
            old = phi[p2]
            if old < 0:
                phi[p2] = v
                queue.append(p2)
            elif old != v:
                return None
    return phi


def rooted_morphism(src: OrientedMap, tgt: OrientedMap) -> RootedMorphism | None:
    """The epimorphism ``src -> tgt`` fixing dart 0 and matching generators, if any."""
    if src.type != tgt.type:
        return None
    phi = _propagate(src, (tgt.x, tgt.y), 0)
    return None if phi is None else RootedMorphism(tuple(phi))


def is_smooth_cover(M2: OrientedMap, M1: OrientedMap) -> bool:
    return M2.type == M1.type and rooted_morphism(M2, M1) is not None


def unrooted_isomorphic(M1: OrientedMap, M2: OrientedMap) -> bool:
    """Basepoint exhaustion: try every image ``q`` of dart 0 (quadratic)."""
    if M1.d != M2.d:
        return False
    for q in range(M2.d):
        phi = _propagate(M1, (M2.x, M2.y), q)
        if phi is not None and len(set(phi)) == M1.d:
            return True
    return False


def is_reflexible(M: OrientedMap) -> ChiralityReport:
    witness = rooted_morphism(M, mirror(M))
    if witness is None:
        return ChiralityReport("chiral")
    return ChiralityReport("reflexible", witness)


_TOKEN = re.compile(r"\s*([xyXY])(?:\s*(?:\^\s*([+-]?\d+)|(⁻¹)))?")


def parse_word(word) -> tuple[tuple[int, int], ...]:
    """Parse ``"y x y^-1"``, ``"yxY"`` (capitals are inverses), ``"y^2"`` or
    ``"x⁻¹"`` into letters ``(generator, exponent)`` with x = 0, y = 1.

    Sequences of letters are passed through unchanged.
    """
    if not isinstance(word, str):
        return tuple((int(i), int(e)) for i, e in word)
    out = []
    pos = 0
    word = word.strip()
    while pos < len(word):
        mt = _TOKEN.match(word, pos)
        if mt is None:
            raise ValueError("cannot parse word %r at position %d" % (word, pos))
        ch, exp, sup = mt.groups()
        gen = 0 if ch in "xX" else 1
        sign = -1 if ch.isupper() else 1
        k = int(exp) if exp is not None else (-1 if sup else 1)
        k *= sign
        out.extend([(gen, 1 if k > 0 else -1)] * abs(k))
        pos = mt.end()
        while pos < len(word) and word[pos].isspace():
            pos += 1
    return tuple(out)


def word_perm(M: OrientedMap, word) -> Perm:
    """The dart permutation of right multiplication by ``word``."""
    tables = {(0, 1): M.x, (0, -1): M.x_inv, (1, 1): M.y, (1, -1): M.y_inv}
    p = Perm.identity(M.d)
    for let in parse_word(word):
        p = p * tables[let]
    return p


def word_apply(M: OrientedMap, word, p: int) -> int:
    """Apply ``word`` to dart ``p``, leftmost letter first."""
    if not (0 <= p < M.d):
        raise DartOutOfRange("dart %d not in 0..%d" % (p, M.d - 1))
    tables = {(0, 1): M.x.images, (0, -1): M.x_inv.images,
              (1, 1): M.y.images, (1, -1): M.y_inv.images}
    for let in parse_word(word):
        p = tables[let][p]
    return p


def summary(M: OrientedMap, chirality: bool = True) -> dict:
    c = census(M)
    out = {
        "label": M.label,
        "darts": M.d,
        "type": [M.type.m, M.type.n],
        "geometry": M.type.geometry,
        "vertices": c.vertices,
        "edges": c.edges,
        "faces": c.faces,
        "euler_characteristic": c.euler_characteristic,
        "genus": c.genus,
    }
    if chirality:
        out["chirality"] = is_reflexible(M).verdict
    return out
