import random

import pytest

from siltkit import fixture
from siltkit.algebra import basis
from siltkit.constructions import linear_path
from siltkit.errors import IncompletePoset, NotBasic, NotWeaklySymmetric
from siltkit.explorer import component_tilting_audit, enumerate_interval, hasse, in_interval, two_silting_finite
from siltkit.homotopy import (
    ChainMap,
    base_node,
    cone,
    cone_minimize,
    direct_sum,
    endo_algebra,
    g_matrix,
    hom_dim,
    hom_profile,
    hom_space,
    identity_map,
    is_chain_map,
    left_mutation,
    make_complex,
    map_into_sum,
    minimize,
    presilting_profile,
    right_mutation,
    silting_leq,
    stalk,
)


def test_hom_between_projectives():
    a2 = basis(linear_path(2))
    assert hom_dim(a2, stalk([2]), stalk([1])) == 1
    assert hom_dim(a2, stalk([1]), stalk([2])) == 0
    assert hom_dim(a2, stalk([1]), stalk([1]).shift(1), 0) == 0


def test_cone_identity_and_arrow():
    a2 = basis(linear_path(2))
    P = stalk([1])
    assert cone_minimize(a2, identity_map(P, a2)).is_zero
    sp = hom_space(a2, stalk([2]), stalk([1]))
    (f,) = sp.maps()
    C = cone_minimize(a2, f)
    assert C.total_rank() == 2 and (C.lo, C.hi) == (-1, 0)


def _random_two_term(alg, rng):
    vs = alg.quiver.vertices
    p0 = [rng.choice(vs) for _ in range(rng.randint(1, 2))]
    p1 = [rng.choice(vs) for _ in range(rng.randint(0, 2))]
    d = [[{k: rng.randint(-2, 2) for k in alg.block(t, s) if rng.random() < 0.7} for s in p1] for t in p0]
    return minimize(alg, make_complex(-1, [p1, p0], [d]))


@pytest.mark.parametrize("fid", ["n-2-3", "a3-path", "commutative-square", "example-kronecker"])
def test_cone_with_unit_component(fid):
    alg = basis(fixture(fid))
    rng = random.Random(fid)
    for _ in range(15):
        X, Y = _random_two_term(alg, rng), _random_two_term(alg, rng)
        if X.is_zero or Y.is_zero:
            continue
        hs = hom_space(alg, X, Y).maps()
        h = hs[0] if hs else ChainMap(X, Y, 0, {})
        f = map_into_sum([X, Y], [identity_map(X, alg), h], X)
        assert is_chain_map(alg, f)
        raw = cone(alg, f)
        small = minimize(alg, raw)
        assert small.total_rank() < raw.total_rank()
        assert small.total_rank() == Y.total_rank()
        for W in (stalk([v]) for v in alg.quiver.vertices):
            assert _nz(hom_profile(alg, W, raw)) == _nz(hom_profile(alg, W, small)) == _nz(hom_profile(alg, W, Y))


def _nz(prof: dict) -> dict:
    return {n: d for n, d in prof.items() if d}


def test_base_objects():
    alg = basis(fixture("commutative-square"))
    A = base_node(alg)
    n = len(alg.quiver.vertices)
    assert A.g_matrix == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    assert base_node(alg, 1).g_matrix == tuple(tuple(-int(i == j) for j in range(n)) for i in range(n))
    prof = presilting_profile(alg, A.summands)
    assert prof["presilting"] and prof["pretilting"]
    assert silting_leq(alg, A, base_node(alg, 1))
    assert not silting_leq(alg, base_node(alg, 1), A)


def test_left_mutation_examples():
    # arrow 1 -> 2 lies in e1 A e2, so P2 is the simple projective and maps into P1
    a2 = basis(linear_path(2))
    mu = left_mutation(a2, base_node(a2), 1)
    g = mu.g_matrix
    assert abs(g[0][0] * g[1][1] - g[0][1] * g[1][0]) == 1
    mixed = [c for c in zip(*g) if any(x > 0 for x in c) and any(x < 0 for x in c)]
    assert mixed == [(1, -1)]
    assert left_mutation(a2, base_node(a2), 0).g_matrix == ((-1, 0), (0, 1))
    dual = basis(fixture("dual-numbers"))
    mu = left_mutation(dual, base_node(dual), 0)
    assert mu.fine_key == base_node(dual, 1).fine_key


def test_right_mutation_tilting_over_selfinjective():
    alg = basis(fixture("n-2-3"))
    for k in range(2):
        assert right_mutation(alg, base_node(alg), k).is_tilting


def test_endo_algebra_of_base():
    for fid in ("n-2-3", "example-kronecker", "commutative-square"):
        alg = basis(fixture(fid))
        end = endo_algebra(alg, base_node(alg).summands)
        assert end.dimension == alg.dimension
        arrows = {}
        pos = {v: i for i, v in enumerate(alg.quiver.vertices)}
        for a in alg.quiver.arrows:
            key = (pos[a.source], pos[a.target])
            arrows[key] = arrows.get(key, 0) + 1
        # arrow a -> b of End(A) counts irreducible maps P_b -> P_a, i.e. arrows a -> b of Q
        assert end.arrows == arrows
    with pytest.raises(NotBasic):
        endo_algebra(alg, [stalk([1]), stalk([1])])


def test_enumeration_examples():
    dual = enumerate_interval(fixture("dual-numbers"), 2)
    assert len(dual) == 2 and len(hasse(dual).edges) == 1
    a2 = enumerate_interval(fixture("a2-path"), 2)
    assert len(a2) == 5 and len(hasse(a2).edges) == 5
    assert two_silting_finite(fixture("a3-path")).count == 14
    res = two_silting_finite(fixture("kronecker-2"), cap=30)
    assert res.finite is None and res.status == "cap_exceeded"
    with pytest.raises(IncompletePoset):
        hasse(enumerate_interval(fixture("kronecker-2"), 2, cap=10))


@pytest.mark.parametrize("fid", ["a3-path", "n-2-3", "commutative-square"])
def test_interval_contracts(fid):
    alg = basis(fixture(fid))
    p2 = enumerate_interval(alg, 2)
    p3 = enumerate_interval(alg, 3, cap=400)
    top, bottom = base_node(alg), base_node(alg, 1)
    for node in p2.nodes:
        assert node.is_presilting
        assert in_interval(alg, top, bottom, node)
        assert abs(round(_det(node.g_matrix))) == 1
    if p3.complete:
        assert {n.fine_key for n in p2.nodes} <= {n.fine_key for n in p3.nodes}
    for s, t, k in p2.edges:
        assert left_mutation(alg, p2.nodes[s], k).fine_key == p2.nodes[t].fine_key


def _det(m):
    from siltkit.homotopy import det_int

    return det_int(m)


def test_tilting_audit():
    poset = enumerate_interval(fixture("n-2-3"), 2)
    audit = component_tilting_audit(fixture("n-2-3"), poset)
    assert audit.all_tilting and audit.dichotomy_holds
    d = enumerate_interval(fixture("dual-numbers"), 2)
    assert component_tilting_audit(fixture("dual-numbers"), d).all_tilting
    with pytest.raises(NotWeaklySymmetric):
        component_tilting_audit(fixture("a2-path"), enumerate_interval(fixture("a2-path"), 2))


def test_direct_sum_and_g_matrix():
    alg = basis(fixture("bongartz-fails"))
    parts = [stalk([1]), stalk([2]).shift(1), stalk([3]).shift(2)]
    X = direct_sum(parts)
    assert X.total_rank() == 3 and (X.lo, X.hi) == (-2, 0)
    assert g_matrix(alg, parts) == ((1, 0, 0), (0, -1, 0), (0, 0, 1))
