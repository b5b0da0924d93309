"""Maps whose map subgroup sits inside an index-2 subgroup of the triangle group.

The index-2 subgroups of ``<X, Y | X^m, Y^n, (XY)^2>`` are

* type A:     ``Gamma(X, Y^2)``,   needs n even, generators U = YXY^-1, V = Y^2;
* type B:     ``Gamma(X^2, Y^2)``, needs m, n even, generators U = XY^-1, V = Y^2, W = YX;
* type DualA: ``Gamma(X^2, Y)``,   needs m even; handled as type A of the dual map.

For a map ``M = Map(G; x, y)`` the image ``H`` of such a subgroup is
computed as the orbit of dart 0 under right multiplication by the images
u, v (, w).  ``M`` is exceptional for the type iff ``H`` has index 2.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, replace

from .errors import NotExceptional, ParityViolation, StructureViolation
from .maps import OrientedMap, RootedMorphism, dual, word_apply, word_perm
from .perm import Perm, element_order, inverse, orbit


class GammaType(str, enum.Enum):
    A = "A"
    B = "B"
    DualA = "dualA"

    @classmethod
    def parse(cls, text: str) -> GammaType:
        for t in cls:
            if text.lower() == t.value.lower():
                return t
        raise ValueError("unknown subgroup type %r (expected A, B or dualA)" % text)


_WORDS = {
    GammaType.A: {"u": "y x Y", "v": "y y"},
    GammaType.B: {"u": "x Y", "v": "y y", "w": "y x"},
}


def applicable_types(m: int, n: int) -> list[GammaType]:
    out = []
    if n % 2 == 0:
        out.append(GammaType.A)
    if m % 2 == 0 and n % 2 == 0:
        out.append(GammaType.B)
    if m % 2 == 0:
        out.append(GammaType.DualA)
    return out


def _check_parity(M: OrientedMap, t: GammaType) -> None:
    m, n = M.type.m, M.type.n
    if t == GammaType.A and n % 2:
        raise ParityViolation("type A needs an even vertex valency, got n=%d" % n)
    if t == GammaType.B and (m % 2 or n % 2):
        raise ParityViolation("type B needs m and n even, got {%d,%d}" % (m, n))
    if t == GammaType.DualA and m % 2:
        raise ParityViolation("type dualA needs an even face length, got m=%d" % m)


@dataclass(frozen=True)
class ExceptionalReport:
    gamma_type: GammaType
    exceptional: bool
    h_orbit: frozenset[int]
    index: int
    u: int
    v: int
    w: int | None
    presentation_ok: bool
    orders: dict

    def as_dict(self) -> dict:
        return {
            "gamma_type": self.gamma_type.value,
            "exceptional": self.exceptional,
            "index": self.index,
            "h_order": len(self.h_orbit),
            "u": self.u,
            "v": self.v,
            "w": self.w,
            "presentation_ok": self.presentation_ok,
            "orders": self.orders,
        }


def h_generators(M: OrientedMap, t: GammaType) -> dict[str, Perm]:
    """Dart permutations of the generators of H (types A and B)."""
    return {k: word_perm(M, w) for k, w in _WORDS[t].items()}


def exceptional_report(M: OrientedMap, t: GammaType) -> ExceptionalReport:
    _check_parity(M, t)
    if t == GammaType.DualA:
        return replace(exceptional_report(dual(M), GammaType.A), gamma_type=t)
    gens = h_generators(M, t)
    H = orbit(list(gens.values()), 0)
    size = len(H)
    if M.d % size or M.d // size not in (1, 2):
        raise StructureViolation("H-orbit of size %d in %d darts" % (size, M.d))
    m, n = M.type.m, M.type.n
    u, v = gens["u"], gens["v"]
    if t == GammaType.A:
        orders = {"u": element_order(u), "v": element_order(v), "uv": element_order(u * v)}
        bounds = {"u": m, "v": n // 2, "uv": m}
    else:
        w = gens["w"]
        orders = {"uw": element_order(u * w), "v": element_order(v),
                  "uv": element_order(u * v), "w": element_order(w)}
        bounds = {"uw": m // 2, "v": n // 2, "uv": 2, "w": 2}
    ok = all(bounds[k] % orders[k] == 0 for k in orders)
    darts = {k: word_apply(M, w, 0) for k, w in _WORDS[t].items()}
    return ExceptionalReport(
        gamma_type=t,
        exceptional=(size * 2 == M.d),
        h_orbit=H.members(),
        index=M.d // size,
        u=darts["u"],
        v=darts["v"],
        w=darts.get("w"),
        presentation_ok=ok,
        orders=orders,
    )


def _theta_targets(gens: dict[str, Perm], t: GammaType) -> dict[str, Perm]:
    u, v = gens["u"], gens["v"]
    v_inv = inverse(v)
    if t == GammaType.A:
        # u -> v^-1 u^-1 v,  v -> v^-1
        return {"u": v_inv * inverse(u) * v, "v": v_inv}
    w = gens["w"]
    # u -> w v,  v -> v^-1,  w -> u v
    return {"u": w * v, "v": v_inv, "w": u * v}


def try_theta(M: OrientedMap, t: GammaType) -> RootedMorphism | None:
    """The automorphism of H prescribed on its generators, if it exists.

    The result is a labelling of the H-darts (entries outside H are -1).
    """
    _check_parity(M, t)
    if t == GammaType.DualA:
        return try_theta(dual(M), GammaType.A)
    rep = exceptional_report(M, t)
    if not rep.exceptional:
        raise NotExceptional("map is not %s-exceptional" % t.value)
    gens = h_generators(M, t)
    targets = _theta_targets(gens, t)
    edges = []
    for k, g in gens.items():
        tg = targets[k]
        edges.append((g.images, tg.images))
        edges.append((inverse(g).images, inverse(tg).images))
    phi = [-1] * M.d
    phi[0] = 0
    queue = deque([0])
    while queue:
        p = queue.popleft()
        fp = phi[p]
        for s, tt in edges:
            p2, val = s[p], tt[fp]
            if phi[p2] < 0:
                phi[p2] = val
                queue.append(p2)
            elif phi[p2] != val:
                return None
    image = {phi[p] for p in rep.h_orbit}
    if len(image) != len(rep.h_orbit) or not image <= rep.h_orbit:
        return None
    return RootedMorphism(tuple(phi))


def extend_theta(M: OrientedMap, t: GammaType, theta: RootedMorphism) -> RootedMorphism | None:
    """Extend theta from H to G by ``(h y) -> theta(h) y^-1`` and check that the
    result is an automorphism of G inverting x and y (a rooted morphism from
    ``M`` to its mirror image).  Returns None if any check fails.
    """
    _check_parity(M, t)
    if t == GammaType.DualA:
        return extend_theta(dual(M), GammaType.A, theta)
    rep = exceptional_report(M, t)
    if not rep.exceptional:
        raise NotExceptional("map is not %s-exceptional" % t.value)
    if len(theta.phi) != M.d or theta.phi[0] != 0 or \
            any((theta.phi[p] >= 0) != (p in rep.h_orbit) for p in range(M.d)):
        raise ValueError("theta must label exactly the H-darts and fix dart 0")
    H = rep.h_orbit
    y_inv = M.y_inv.images
    phi = list(theta.phi)
    for q in range(M.d):
        if q in H:
            continue
        h = y_inv[q]
        if h not in H:
            raise StructureViolation("dart %d is neither in H nor in H y" % q)
        phi[q] = y_inv[theta.phi[h]]
    x, y, x_inv = M.x.images, M.y.images, M.x_inv.images
    for p in range(M.d):
        fp = phi[p]
        if phi[x[p]] != x_inv[fp] or phi[y[p]] != y_inv[fp]:
            return None
    if len(set(phi)) != M.d:
        return None
    return RootedMorphism(tuple(phi))
