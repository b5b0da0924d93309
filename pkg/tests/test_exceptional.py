import pytest

from chiralmaps.catalog import catalog_get, catalog_names
from chiralmaps.errors import NotExceptional, ParityViolation
from chiralmaps.exceptional import (
    GammaType,
    applicable_types,
    exceptional_report,
    extend_theta,
    h_generators,
    try_theta,
)
from chiralmaps.maps import dual, is_reflexible, word_apply
from chiralmaps.seeds import torus_map_36, torus_map_44

from oracles import naive_closure

TORI = [torus_map_44(b, c) for b in range(1, 5) for c in range(b + 1)]
TORI += [torus_map_36(b, c) for b in range(1, 4) for c in range(b + 1)]
CATALOG = [catalog_get(n).map for n in catalog_names() if catalog_get(n).map.d <= 720]


def all_cases():
    for M in TORI + CATALOG:
        for t in applicable_types(M.type.m, M.type.n):
            yield M, t


def subgroup_order(M, t):
    """|H| from the closure of the generating words (independent of orbits)."""
    N = dual(M) if t == GammaType.DualA else M
    tt = GammaType.A if t == GammaType.DualA else t
    return len(naive_closure([g.images for g in h_generators(N, tt).values()]))


def test_gamma_type_parse():
    assert GammaType.parse("a") is GammaType.A
    assert GammaType.parse("DUALA") is GammaType.DualA
    with pytest.raises(ValueError):
        GammaType.parse("C")


def test_applicable_types():
    assert applicable_types(3, 7) == []
    assert applicable_types(3, 6) == [GammaType.A]
    assert applicable_types(6, 3) == [GammaType.DualA]
    assert applicable_types(4, 4) == [GammaType.A, GammaType.B, GammaType.DualA]


def test_parity_violation():
    K = catalog_get("klein-quartic").map
    for t in GammaType:
        with pytest.raises(ParityViolation):
            exceptional_report(K, t)
    with pytest.raises(ParityViolation):
        exceptional_report(torus_map_36(1, 1), GammaType.B)
    with pytest.raises(ParityViolation):
        try_theta(torus_map_36(1, 1), GammaType.DualA)


def test_torus_type_a_example():
    M = torus_map_44(1, 1)
    rep = exceptional_report(M, GammaType.A)
    assert M.d == 8 and len(rep.h_orbit) == 4 and rep.index == 2 and rep.exceptional
    rep = exceptional_report(torus_map_44(1, 0), GammaType.A)
    assert rep.index == 1 and not rep.exceptional


@pytest.mark.parametrize("b,c", [(b, c) for b in range(1, 7) for c in range(b + 1)])
def test_torus_44_exceptional_pattern(b, c):
    M = torus_map_44(b, c)
    assert exceptional_report(M, GammaType.B).index == 2
    expect = 2 if (b - c) % 2 == 0 else 1
    assert exceptional_report(M, GammaType.A).index == expect
    assert exceptional_report(M, GammaType.DualA).index == expect


def test_report_matches_closure_oracle():
    for M, t in all_cases():
        rep = exceptional_report(M, t)
        assert len(rep.h_orbit) == subgroup_order(M, t)
        assert rep.exceptional == (rep.index == 2)
        # presentation relations always hold in a quotient
        assert rep.presentation_ok


def test_generator_darts():
    M = torus_map_44(2, 1)
    rep = exceptional_report(M, GammaType.B)
    assert rep.u == word_apply(M, "x Y", 0)
    assert rep.v == word_apply(M, "y y", 0)
    assert rep.w == word_apply(M, "y x", 0)
    # u v = x y^-1 y^2 = x y, an involution
    assert word_apply(M, "x Y y y", 0) == word_apply(M, "x y", 0)
    rep = exceptional_report(M, GammaType.A)
    assert rep.w is None and rep.u == word_apply(M, "y x Y", 0)
    # u v = y x y: as darts this is x^-1 (since (x y)^2 = 1)
    assert word_apply(M, "y x Y y y", 0) == word_apply(M, "X", 0)


def test_not_exceptional_raises():
    M = torus_map_44(1, 0)
    with pytest.raises(NotExceptional):
        try_theta(M, GammaType.A)


CASES = list(all_cases())


@pytest.mark.parametrize("M,t", CASES, ids=["%s-%s" % (M.label or M.d, t.value) for M, t in CASES])
def test_reflexible_iff_theta_extends(M, t):
    rep = exceptional_report(M, t)
    if not rep.exceptional:
        return
    theta = try_theta(M, t)
    ext = None if theta is None else extend_theta(M, t, theta)
    witness = is_reflexible(M).witness
    assert (ext is not None) == (witness is not None)
    if ext is not None:
        # the extension is the (unique) rooted isomorphism to the mirror image
        target = witness if t != GammaType.DualA else is_reflexible(dual(M)).witness
        assert ext == target
        phi = ext.phi
        # an inverting automorphism applied twice is the identity
        assert all(phi[phi[p]] == p for p in range(len(phi)))
        assert phi[0] == 0


def test_chiral_examples_have_no_extension():
    for M in (torus_map_44(2, 1), torus_map_44(3, 1), catalog_get("genus61-6-6-chiral").map):
        for t in applicable_types(M.type.m, M.type.n):
            if not exceptional_report(M, t).exceptional:
                continue
            theta = try_theta(M, t)
            assert theta is None or extend_theta(M, t, theta) is None


def test_extend_rejects_bad_theta():
    from chiralmaps.maps import RootedMorphism

    M = torus_map_44(1, 1)
    with pytest.raises(ValueError):
        extend_theta(M, GammaType.A, RootedMorphism(tuple(range(M.d))))
