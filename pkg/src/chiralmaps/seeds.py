"""Raw material for the cover construction.

* parametric toroidal maps of types {4,4} and {3,6};
* enumeration of (m, n, 2) generating pairs of symmetric and alternating
  groups of small degree;
* bounded, deterministic search for chiral maps with such groups ("seeds").
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .errors import MapError
from .maps import MapType, OrientedMap, is_reflexible, map_from_generators, validate
from .perm import Perm, compose, element_order, group_closure, inverse, orbit

TORUS_BOUND = 100_000

# (a, b) means a + b*w in the square (w = i) or hexagonal (w = e^{i pi/3}) lattice.
_SQUARE_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))
_HEX_DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def _lattice_reducer(u: tuple[int, int], v: tuple[int, int]):
    """Canonical representative of Z^2 modulo the lattice spanned by u, v
    (Hermite normal form of the basis)."""
    g, s, t = _ext_gcd(u[0], v[0])
    row1 = (g, s * u[1] + t * v[1])
    det = abs(u[0] * v[1] - u[1] * v[0])
    if g == 0:
        raise ValueError("degenerate lattice")
    c3 = det // g

    def reduce(p: tuple[int, int]) -> tuple[int, int]:
        a, b = p
        k = a // g
        a -= k * g
        b -= k * row1[1]
        return (a, b % c3)

    return reduce, det


def _torus_map(b: int, c: int, dirs, rot, label: str) -> OrientedMap:
    if b < 0 or c < 0 or (b == 0 and c == 0):
        raise ValueError("torus parameters must be non-negative and not both zero")
    u = (b, c)
    reduce, nverts = _lattice_reducer(u, rot(u))
    if nverts > TORUS_BOUND:
        raise ValueError("torus with %d vertices exceeds the bound %d" % (nverts, TORUS_BOUND))
    k = len(dirs)
    vindex = {}
    todo = [reduce((0, 0))]
    while todo:
        v = todo.pop()
        if v in vindex:
            continue
        vindex[v] = None
        for dv in dirs:
            w = reduce((v[0] + dv[0], v[1] + dv[1]))
            if w not in vindex:
                todo.append(w)
    vertices = sorted(vindex)
    assert len(vertices) == nverts
    vindex = {v: i for i, v in enumerate(vertices)}
    d = k * nverts
    y = [0] * d
    t = [0] * d
    for v, i in vindex.items():
        for dr, dv in enumerate(dirs):
            p = k * i + dr
            y[p] = k * i + (dr + 1) % k
            w = vindex[reduce((v[0] + dv[0], v[1] + dv[1]))]
            t[p] = k * w + (dr + k // 2) % k
    y_inv = [0] * d
    for p, q in enumerate(y):
        y_inv[q] = p
    x = [y_inv[t[p]] for p in range(d)]
    return validate(d, Perm(x), Perm(y), label)


def torus_map_44(b: int, c: int) -> OrientedMap:
    """The {4,4} map on the torus C / Z[i](b + ci), with 4(b^2 + c^2) darts."""
    return _torus_map(b, c, _SQUARE_DIRS, lambda p: (-p[1], p[0]), "torus-44-%d-%d" % (b, c))


def torus_map_36(b: int, c: int) -> OrientedMap:
    """The {3,6} map on the torus C / Z[w](b + cw), w = e^{i pi/3};
    6(b^2 + bc + c^2) darts."""
    return _torus_map(b, c, _HEX_DIRS, lambda p: (-p[1], p[0] + p[1]), "torus-36-%d-%d" % (b, c))


# --------------------------------------------------------------------------
# generating pairs of symmetric / alternating groups


def _cycle_types(r: int, m: int) -> list[tuple[int, ...]]:
    """Partitions of r (parts > 1 listed, fixed points implied) with lcm m."""
    divisors = [k for k in range(2, m + 1) if m % k == 0]
    out = []

    def rec(remaining, max_part, parts):
        if parts and math.lcm(*parts) == m:
            out.append(tuple(parts))
        for k in reversed(divisors):
            if k <= max_part and k <= remaining:
                rec(remaining - k, k, parts + [k])

    rec(r, r, [])
    return sorted(set(out), reverse=True)


def _representative(r: int, parts: tuple[int, ...]) -> Perm:
    cycles, start = [], 0
    for k in parts:
        cycles.append(tuple(range(start, start + k)))
        start += k
    return Perm.from_cycles(r, cycles)


def _involutions(r: int) -> Iterator[tuple[int, ...]]:
    """Non-identity involutions of {0..r-1}, in lexicographic order of images."""
    img = [-1] * r

    def rec(i):
        while i < r and img[i] >= 0:
            i += 1
        if i == r:
            yield tuple(img)
            return
        img[i] = i
        yield from rec(i + 1)
        for j in range(i + 1, r):
            if img[j] < 0:
                img[i], img[j] = j, i
                yield from rec(i + 1)
                img[j] = -1
        img[i] = -1

    ident = tuple(range(r))
    for z in rec(0):
        if z != ident:
            yield z


def _centralizer(x: Perm) -> list[tuple[int, ...]]:
    """All elements of the centraliser of x in Sym(r)."""
    r = x.degree
    cycles = x.cycles(include_fixed=True)
    gens = [Perm.from_cycles(r, [c]) for c in cycles if len(c) > 1]
    by_len: dict[int, list[tuple[int, ...]]] = {}
    for c in cycles:
        by_len.setdefault(len(c), []).append(c)
    for cs in by_len.values():
        for a, b in zip(cs, cs[1:]):
            # swap two cycles of equal length, matching positions
            gens.append(Perm.from_cycles(r, [(p, q) for p, q in zip(a, b)]))
    if not gens:
        return [tuple(range(r))]
    return group_closure(gens)


def _is_conjugate_min(z: tuple[int, ...], cent: list[tuple[int, ...]]) -> bool:
    """True iff z is lexicographically least among its conjugates by ``cent``."""
    r = len(z)
    for c in cent:
        # conjugate c^-1 z c:  c(a) -> c(z(a))
        w = [0] * r
        for a in range(r):
            w[c[a]] = c[z[a]]
        if tuple(w) < z:
            return False
    return True


def _inverting_conjugator_exists(x: Perm, y: Perm) -> bool:
    """Is there sigma in Sym(r) with x^sigma = x^-1 and y^sigma = y^-1?

    For transitive <x, y> sigma is determined by the image of point 0.
    """
    r = x.degree
    xi, yi, xv, yv = x.images, y.images, inverse(x).images, inverse(y).images
    edges = ((xi, xv), (xv, xi), (yi, yv), (yv, yi))
    for q in range(r):
        sigma = [-1] * r
        sigma[0] = q
        stack = [0]
        ok = True
        while stack and ok:
            p = stack.pop()
            for s, t in edges:
                p2, v = s[p], t[sigma[p]]
                if sigma[p2] < 0:
                    sigma[p2] = v
                    stack.append(p2)
                elif sigma[p2] != v:
                    ok = False
                    break
        if ok and len(set(sigma)) == r:
            return True
    return False


def _is_primitive(gens: list[Perm]) -> bool:
    """Transitive group is primitive iff for every b != 0 the smallest block
    containing {0, b} is everything (Atkinson's union-find closure)."""
    r = gens[0].degree
    images = [g.images for g in gens]
    for b in range(1, r):
        parent = list(range(r))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        parent[find(b)] = find(0)
        queue = [(0, b)]
        while queue:
            a, c = queue.pop()
            for g in images:
                ra, rc = find(g[a]), find(g[c])
                if ra != rc:
                    parent[rc] = ra
                    queue.append((g[a], g[c]))
        root = find(0)
        if any(find(a) != root for a in range(r)):
            return False
    return True


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _jordan_certificate(gens: list[Perm], search: int = 400) -> bool:
    """Sufficient test for <gens> >= Alt(r): primitive and containing a
    p-cycle for a prime p <= r - 3 (Jordan).  Elements are scanned
    breadth-first; a cycle of prime length p whose other cycle lengths are
    prime to p yields a p-cycle as a power.
    """
    r = gens[0].degree
    if not _is_primitive(gens):
        return False
    for e in _first_elements(gens, search):
        lengths = Perm(e, check=False).cycle_type()
        for p in set(lengths):
            if _is_prime(p) and p <= r - 3 and lengths.count(p) == 1 \
                    and all(k % p for k in lengths if k != p):
                return True
    return False


def _first_elements(gens: list[Perm], count: int) -> list[tuple[int, ...]]:
    r = gens[0].degree
    letters = [g.images for g in gens] + [inverse(g).images for g in gens]
    ident = tuple(range(r))
    seen, out, i = {ident}, [ident], 0
    while i < len(out) and len(out) < count:
        e = out[i]
        i += 1
        for g in letters:
            h = tuple([g[a] for a in e])
            if h not in seen:
                seen.add(h)
                out.append(h)
    return out


def sym_alt_tag(x: Perm, y: Perm) -> str | None:
    """"Alternating" or "Symmetric" if <x, y> is Alt(r) or Sym(r), else None."""
    r = x.degree
    gens = [x, y]
    if len(orbit(gens, 0)) != r:
        return None
    even = x.is_even() and y.is_even()
    if _jordan_certificate(gens):
        return "Alternating" if even else "Symmetric"
    if r > 9:
        return None
    full = math.factorial(r)
    target = full // 2 if even else full
    elements = group_closure(gens, limit=target)
    if elements is not None and len(elements) == target:
        return "Alternating" if even else "Symmetric"
    return None


@dataclass(frozen=True)
class PairCandidate:
    r: int
    x: Perm
    y: Perm
    group_tag: str

    @property
    def encoding(self) -> tuple:
        """Canonical sort key: degree, x cycle type (as enumerated), x*y images."""
        return (self.r, tuple(-k for k in sorted(
            (len(c) for c in self.x.cycles()), reverse=True)), compose(self.x, self.y).images)


def _partition_pairs(r: int, parts: tuple[int, ...], n: int, budget: int | None,
                     chiral_only: bool) -> Iterator[PairCandidate]:
    x = _representative(r, parts)
    x_inv = inverse(x)
    cent = None
    for count, z in enumerate(_involutions(r)):
        if budget is not None and count >= budget:
            return
        y = compose(x_inv, Perm(z, check=False))
        if element_order(y) != n:
            continue
        if len(orbit([x, y], 0)) != r:
            continue
        if chiral_only and _inverting_conjugator_exists(x, y):
            continue
        if cent is None:
            cent = _centralizer(x)
        if not _is_conjugate_min(z, cent):
            continue
        tag = sym_alt_tag(x, y)
        if tag is not None:
            yield PairCandidate(r, x, y, tag)


def _partitions(r: int, m: int):
    return _cycle_types(r, m)


def enumerate_generating_pairs(r: int, m: int, n: int,
                               budget: int | None = None) -> Iterator[tuple[Perm, Perm]]:
    """Pairs (x, y) on r points with orders (m, n, 2) generating Alt(r) or Sym(r).

    x runs over one representative per cycle type of order m; y = x^-1 z
    for involutions z, one per orbit of the centraliser of x.
    """
    if r < 5:
        raise ValueError("degree must be at least 5")
    if m < 3 or n < 3:
        raise ValueError("orders m, n must be at least 3")
    for parts in _partitions(r, m):
        for cand in _partition_pairs(r, parts, n, budget, chiral_only=False):
            yield cand.x, cand.y


@dataclass(frozen=True)
class SeedResult:
    map: OrientedMap
    r: int
    group_tag: str
    x_points: Perm
    y_points: Perm
    chirality: str = "chiral"

    @property
    def encoding(self) -> tuple:
        return PairCandidate(self.r, self.x_points, self.y_points, self.group_tag).encoding


@dataclass(frozen=True)
class Exhausted:
    """Bounded search (or pipeline) finished without a result."""

    reason: str
    anomalies: tuple = field(default=())


def _chiral_candidates_for(args) -> list[PairCandidate]:
    r, parts, n, budget = args
    return list(_partition_pairs(r, parts, n, budget, chiral_only=True))


def iter_chiral_candidates(t: MapType, r_max: int, budget: int | None,
                           workers: int = 1) -> Iterator[PairCandidate]:
    """Pair-level chiral candidates in canonical order: degree, then x cycle
    type as enumerated, then the involution z = x*y lexicographically."""
    for r in range(5, r_max + 1):
        tasks = [(r, parts, t.n, budget) for parts in _partitions(r, t.m)]
        if workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_chiral_candidates_for, tasks))
            # pool.map keeps task order, so the merge matches the serial order
            yield from itertools.chain.from_iterable(results)
        else:
            yield from itertools.chain.from_iterable(
                _partition_pairs(*task, chiral_only=True) for task in tasks)


def iter_chiral_seeds(t: MapType, r_max: int, budget: int | None = None,
                      workers: int = 1, max_darts: int = 4_000_000) -> Iterator[SeedResult]:
    """Chiral Sym/Alt maps of type t, in canonical order.

    Candidates surviving the pair-level filters are turned into their
    regular representation and accepted only if the dart-level chirality
    test says chiral.
    """
    for cand in iter_chiral_candidates(t, r_max, budget, workers):
        full = math.factorial(cand.r)
        order = full // 2 if cand.group_tag == "Alternating" else full
        if order > max_darts:
            continue
        M = map_from_generators(cand.x, cand.y, label="seed-%s%d-%d-%d" % (
            "A" if cand.group_tag == "Alternating" else "S", cand.r, t.m, t.n))
        if M.d != order:
            raise MapError("group order %d does not match %s(%d)" % (M.d, cand.group_tag, cand.r))
        if M.type != t:
            continue
        if is_reflexible(M).chiral:
            yield SeedResult(M, cand.r, cand.group_tag, cand.x, cand.y)


def find_chiral_seed(t: MapType, r_max: int = 8, budget: int | None = None,
                     workers: int = 1) -> SeedResult | Exhausted:
    if not t.hyperbolic:
        raise ValueError("type %s is not hyperbolic" % t)
    for seed in iter_chiral_seeds(t, r_max, budget, workers):
        return seed
    return Exhausted("no chiral Sym/Alt seed of type %s with degree <= %d" % (t, r_max))
