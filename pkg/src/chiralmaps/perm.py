"""Permutations on dart indices, orbits with spanning-tree words, and the
regularity test for a two-generator action.

Convention (used everywhere in the package): permutations act on the right
and darts are ``0 .. d-1``.  ``compose(p, q)`` means "apply ``p``, then
``q``", so ``compose(p, q)(a) == q(p(a))``.  ``p * q`` is the same product.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatch, DartOutOfRange


class Perm:
    """An immutable bijection of ``{0, ..., d-1}``, stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], *, check: bool = True):
        images = tuple(images)
        if check:
            d = len(images)
            seen = bytearray(d)
            for a in images:
                if not (0 <= a < d) or seen[a]:
                    raise ValueError("not a permutation of 0..%d" % (d - 1))
                seen[a] = 1
        self.images = images
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
        """Build from disjoint cycles, e.g. ``Perm.from_cycles(3, [(0, 1, 2)])``."""
        images = list(range(degree))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                images[a] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __mul__(self, other: Perm) -> Perm:
        return compose(self, other)

    def __invert__(self) -> Perm:
        return inverse(self)

    def __len__(self) -> int:
        return len(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        return "Perm(%s)" % (cycle_string(self),)

    def is_identity(self) -> bool:
        return all(i == a for i, a in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = bytearray(self.degree)
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = 1
            j = self.images[i]
            while j != i:
                seen[j] = 1
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def power(self, k: int) -> Perm:
        if k < 0:
            return inverse(self).power(-k)
        images = list(range(self.degree))
        for cyc in self.cycles():
            n = len(cyc)
            s = k % n
            for i, a in enumerate(cyc):
                images[a] = cyc[(i + s) % n]
        return Perm(images, check=False)


def cycle_string(p: Perm) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(%s)" % " ".join(map(str, c)) for c in cycles)


def _same_degree(*perms: Perm) -> int:
    d = perms[0].degree
    for p in perms[1:]:
        if p.degree != d:
            raise DegreeMismatch("permutation degrees differ: %d vs %d" % (d, p.degree))
    return d


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``: the result sends ``a`` to ``q(p(a))``."""
    _same_degree(p, q)
    qi = q.images
    return Perm([qi[a] for a in p.images], check=False)


def inverse(p: Perm) -> Perm:
    inv = [0] * p.degree
    for i, a in enumerate(p.images):
        inv[a] = i
    return Perm(inv, check=False)


def element_order(p: Perm) -> int:
    """Least ``k >= 1`` with ``p**k`` the identity (lcm of cycle lengths)."""
    images = p.images
    seen = bytearray(len(images))
    order = 1
    for i in range(len(images)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = images[j]
            n += 1
        order = order * n // math.gcd(order, n)
    return order


# A letter is (generator index, +1 or -1).  Generators are tried in the
# normative order gen 0, gen 0^-1, gen 1, gen 1^-1, ...
Letter = tuple[int, int]


@dataclass(frozen=True)
class Orbit:
    """Breadth-first orbit of ``start`` with a spanning tree.

    ``points`` lists members in discovery order; ``parent[p]`` and
    ``letter[p]`` record the tree edge that first reached ``p`` (``-1`` and
    ``None`` for ``start`` and for darts outside the orbit).
    """

    start: int
    points: tuple[int, ...]
    parent: tuple[int, ...]
    letter: tuple[Letter | None, ...]

    def __contains__(self, p: int) -> bool:
        return p == self.start or self.parent[p] >= 0

    def __len__(self) -> int:
        return len(self.points)

    def members(self) -> frozenset[int]:
        return frozenset(self.points)

    def word(self, p: int) -> tuple[Letter, ...]:
        """Shortest word (breadth-first, ties by generator order) from start to ``p``."""
        if p not in self:
            raise KeyError(p)
        out = []
        while p != self.start:
            out.append(self.letter[p])
            p = self.parent[p]
        out.reverse()
        return tuple(out)

    def words(self) -> dict[int, tuple[Letter, ...]]:
        return {p: self.word(p) for p in self.points}


def _letter_tables(gens: Sequence[Perm]) -> list[tuple[tuple[int, ...], Letter]]:
    tables = []
    for i, g in enumerate(gens):
        tables.append((g.images, (i, 1)))
        tables.append((inverse(g).images, (i, -1)))
    return tables


def orbit(gens: Sequence[Perm], start: int) -> Orbit:
    """Closure of ``{start}`` under ``gens`` and their inverses."""
    if not gens:
        raise ValueError("at least one generator required")
    d = _same_degree(*gens)
    if not (0 <= start < d):
        raise DartOutOfRange("start dart %d not in 0..%d" % (start, d - 1))
    tables = _letter_tables(gens)
    parent = [-1] * d
    letter: list[Letter | None] = [None] * d
    seen = bytearray(d)
    seen[start] = 1
    points = [start]
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for images, let in tables:
            q = images[p]
            if not seen[q]:
                seen[q] = 1
                parent[q] = p
                letter[q] = let
                points.append(q)
                queue.append(q)
    return Orbit(start, tuple(points), tuple(parent), tuple(letter))


def apply_word(gens: Sequence[Perm], word: Iterable[Letter], p: int) -> int:
    for i, e in word:
        g = gens[i].images if e > 0 else inverse(gens[i]).images
        p = g[p]
    return p


@dataclass(frozen=True)
class SchreierWitness:
    """A Schreier generator ``g_p * s * g_{p.s}^-1`` of the stabilizer of the
    base dart that moves ``moved`` (``g_p`` is the tree word reaching ``p``).
    """

    dart: int
    generator: int
    moved: int
    moved_to: int


@dataclass(frozen=True)
class RegularityCheck:
    transitive: bool
    orbit_size: int
    witness: SchreierWitness | None

    @property
    def regular(self) -> bool:
        return self.transitive and self.witness is None


def _tree_labelling(tree: Orbit, gens_images, q: int) -> list[int]:
    """``T[p] = q . g_p`` along the spanning tree (``g_p`` the tree word of ``p``)."""
    inv_images = [None] * len(gens_images)
    T = [-1] * len(tree.parent)
    T[tree.start] = q
    for p in tree.points[1:]:
        i, e = tree.letter[p]
        if e > 0:
            T[p] = gens_images[i][T[tree.parent[p]]]
        else:
            if inv_images[i] is None:
                inv = [0] * len(gens_images[i])
                for a, b in enumerate(gens_images[i]):
                    inv[b] = a
                inv_images[i] = inv
            T[p] = inv_images[i][T[tree.parent[p]]]
    return T


def check_regular(gens: Sequence[Perm], exhaustive: bool = False) -> RegularityCheck:
    """Decide whether ``<gens>`` acts regularly, with a witness if not.

    All Schreier generators (one per tree dart and generator) must act as
    the identity.  A Schreier generator is the identity iff it fixes every
    dart ``q``; for a fixed ``q`` this is the statement that the tree
    labelling ``p -> q . g_p`` commutes with every generator.  Such
    labellings lie in the centraliser of the group, and if they exist for
    ``q = 0.s`` with ``s`` ranging over the generators they generate a
    transitive centraliser, which forces the stabiliser to be trivial.  So by
    default only those ``q`` are checked (linear time); ``exhaustive=True``
    checks every ``q`` (quadratic).
    """
    d = _same_degree(*gens)
    tree = orbit(gens, 0)
    if len(tree) != d:
        return RegularityCheck(False, len(tree), None)
    images = [g.images for g in gens]
    if exhaustive:
        candidates = range(d)
    else:
        candidates = sorted({g[0] for g in images})
    for q in candidates:
        T = _tree_labelling(tree, images, q)
        for p in tree.points:
            tp = T[p]
            for i, g in enumerate(images):
                if T[g[p]] != g[tp]:
                    return RegularityCheck(True, d, SchreierWitness(p, i, q, apply_word(
                        gens, tree.word(p) + ((i, 1),) + tuple((j, -e) for j, e in reversed(tree.word(g[p]))), q)))
    return RegularityCheck(True, d, None)


def is_regular_action(x: Perm, y: Perm) -> bool:
    """True iff ``<x, y>`` is transitive on the darts with trivial dart stabiliser."""
    return check_regular([x, y]).regular


def group_closure(gens: Sequence[Perm], limit: int | None = None) -> list[tuple[int, ...]] | None:
    """All elements of ``<gens>`` as image tuples, breadth-first from the
    identity with right multiplication in the normative letter order.

    Returns None if more than ``limit`` elements turn up.
    """
    d = _same_degree(*gens)
    letters = []
    for g in gens:
        letters.append(g.images)
        letters.append(inverse(g).images)
    ident = tuple(range(d))
    seen = {ident}
    out = [ident]
    i = 0
    while i < len(out):
        e = out[i]
        i += 1
        for g in letters:
            h = tuple([g[a] for a in e])
            if h not in seen:
                seen.add(h)
                out.append(h)
                if limit is not None and len(out) > limit:
                    return None
    return out
