from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superquot.atlas import (Atlas, FibrationData, GlobalFree, GlobalNotFree, Iso, NoneUpTo,
                             build_CY_truncation, build_fibration, build_projective_superspace,
                             build_supergrassmannian, classify_fibration, global_freeness, grass_coordinate_count,
                             iso_check, pi_action_field, pi_weights, poly_weight, quotient_atlas,
                             quotient_invariance_report, relabel, splitting_solve, torsor_data, truncate_atlas)
from superquot.homological import check_not_free_certificate, is_homological
from superquot.superalgebra import Ring, SuperPoly, dumps, invert_even, parse_poly


def test_p1_transition():
    X = build_projective_superspace(1, 0)
    assert len(X) == 2
    u1 = X.overlap_ring(0, 1).gen("u1")
    assert X.hom(0, 1).images == {"u0": invert_even(u1)}


def test_p12_transition():
    X = build_projective_superspace(1, 2)
    R = X.overlap_ring(0, 1)
    ui = invert_even(R.gen("u1"))
    assert X.hom(0, 1).images == {"u0": ui, "e0": ui * R.gen("e0"), "e1": ui * R.gen("e1")}


@pytest.mark.parametrize("m,n", [(2, 0), (2, 3), (3, 1)])
def test_projective_cocycles(m, n):
    X = build_projective_superspace(m, n)
    assert len(X) == m + 1
    assert X.triples()
    assert X.check() == []


def test_grassmannian_builders():
    G = build_supergrassmannian(1, 0, 2, 0)
    P = build_projective_superspace(1, 0)
    assert isinstance(iso_check(G, P), Iso)
    assert [c.ring.even for c in G.charts] == [("f1_0",), ("f0_0",)]
    G = build_supergrassmannian(1, 1, 2, 2)
    assert len(G) == 4
    assert grass_coordinate_count(1, 1, 2, 2) == (2, 2)
    assert all((len(c.ring.even), len(c.ring.odd)) == (2, 2) for c in G.charts)
    assert G.check() == []


def test_two_p12_constructions_isomorphic():
    r = iso_check(build_projective_superspace(1, 2), build_supergrassmannian(1, 0, 2, 2))
    assert isinstance(r, Iso)


def test_iso_trivial_cases():
    X = build_projective_superspace(1, 2)
    r = iso_check(X, X)
    assert isinstance(r, Iso)
    assert all(m == {g: X.ring(i).gen(g) for g in X.ring(i).gens} for i, m in enumerate(r.maps))
    P = build_projective_superspace(1, 0)
    r = iso_check(relabel(P, [1, 0]), P)
    # either the relabelling or the inversion u -> 1/u identifies them
    assert isinstance(r, Iso) and sorted(r.order) == [0, 1]


def test_pi_field_on_grassmannian_chart():
    G = build_supergrassmannian(1, 0, 2, 2)
    v = pi_action_field(G)
    R = G.ring(0)
    assert v.at(0).images == {"f1_0": parse_poly(R, "f3_0 - f1_0*f2_0"), "f2_0": -R.one(),
                              "f3_0": parse_poly(R, "-f1_0 + f3_0*f2_0")}
    assert v.incompatibilities() == []


def test_pi_field_homological_on_g1122():
    G = build_supergrassmannian(1, 1, 2, 2)
    v = pi_action_field(G)
    assert all(is_homological(f)[0] for f in v.fields)
    assert v.incompatibilities() == []


def test_pi_field_rejects_bad_symmetry():
    G = build_supergrassmannian(1, 0, 2, 2)
    one, zero = Fraction(1), Fraction(0)
    # p^2 = +id, not -id
    bad = [[zero, zero, one, zero], [zero, zero, zero, one], [one, zero, zero, zero], [zero, one, zero, zero]]
    with pytest.raises(ValueError):
        pi_action_field(G, bad)


def test_global_freeness_depends_on_a_minus_b():
    G = build_supergrassmannian(1, 0, 2, 2)
    r = global_freeness(G, pi_action_field(G))
    assert isinstance(r, GlobalFree)
    v = pi_action_field(G)
    assert all(v.fields[i](w) == G.ring(i).one() for i, w in enumerate(r.witnesses))
    G = build_supergrassmannian(1, 1, 2, 2)
    v = pi_action_field(G)
    r = global_freeness(G, v)
    assert isinstance(r, GlobalNotFree)
    assert check_not_free_certificate(v.fields[r.chart], r.point)
    assert all(x == 0 for x in r.point.values())


def test_p12_quotient_is_p1pi():
    X = build_projective_superspace(1, 2)
    Q = quotient_atlas(X, pi_action_field(X))
    R = X.ring(0)
    emb = Q.quotients[0].embedding.images
    assert list(emb.values()) == [parse_poly(R, "u1 - e1*e0"), parse_poly(R, "e1 - u1*e0")]
    zeta = emb["q_e1"]
    assert zeta * zeta == R.zero()
    assert quotient_invariance_report(Q) == []


def test_odd_line_quotient_is_a_point():
    T = Ring((), ("t",))
    from superquot.homological import OddDerivation, invariant_generators
    assert invariant_generators(OddDerivation(T, {"t": T.one()}), T.gen("t")) == []


def test_p23_quotient():
    X = pi_weights(build_projective_superspace(2, 3))
    Q = quotient_atlas(X, pi_action_field(X))
    assert len(Q) == 3
    assert all((len(c.ring.even), len(c.ring.odd)) == (2, 2) for c in Q.charts)
    assert quotient_invariance_report(Q) == []
    assert Q.check() == []


def test_truncation():
    X = build_projective_superspace(1, 2)
    T1 = truncate_atlas(X, 1)
    assert isinstance(iso_check(T1, build_projective_superspace(1, 0)), Iso)
    assert all(not c.ring.odd for c in T1.charts)
    for k in (1, 2, 3):
        T = truncate_atlas(X, k)
        assert dumps(truncate_atlas(T, k).to_doc()) == dumps(T.to_doc())
    with pytest.raises(ValueError):
        truncate_atlas(X, 0)


def test_cy_truncation_n1_is_split():
    C = build_CY_truncation(1)
    R = C.overlap_ring(0, 1)
    u = R.gen("u1")
    assert C.hom(0, 1).images["e0"] == -(invert_even(u * u) * R.gen("e1"))
    assert isinstance(iso_check(C, build_CY_truncation(1, 0)), Iso)


def test_cy_truncation_n2():
    C = build_CY_truncation(2)
    assert C.check() == []
    assert isinstance(iso_check(C, build_CY_truncation(2, 0), D=3), NoneUpTo)


def test_truncated_p2pi_is_cy():
    X = pi_weights(build_projective_superspace(2, 3))
    Q = quotient_atlas(X, pi_action_field(X))
    assert isinstance(iso_check(truncate_atlas(Q, 3), build_CY_truncation(2), D=3), Iso)


def test_atlas_round_trip():
    for X in (build_projective_superspace(2, 1), build_supergrassmannian(1, 1, 2, 2), build_CY_truncation(2)):
        doc = X.to_doc()
        assert dumps(Atlas.from_doc(doc).to_doc()) == dumps(doc)


# ---------------------------------------------------------------- fibrations

def test_trivial_fibration():
    X = build_projective_superspace(1, 1)
    data = FibrationData({k: X.overlap_ring(*k).one() for k in X.pairs()},
                         {k: X.overlap_ring(*k).zero() for k in X.pairs()})
    F = build_fibration(X, data)
    back = classify_fibration(F, X)
    assert back.a == data.a and back.psi == data.psi


def test_p23_torsor_has_no_splitting():
    X = pi_weights(build_projective_superspace(2, 3))
    Q = quotient_atlas(X, pi_action_field(X))
    data = torsor_data(Q)
    assert all(a == a.ring.one() for a in data.a.values())
    assert any(p for p in data.psi.values())
    w = poly_weight(Q.quotients[0].theta, X.charts[0].weights)
    assert splitting_solve(Q, data, w) is None


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_fibration_round_trip(cs):
    X = build_projective_superspace(1, 1)
    R01, R10 = X.overlap_ring(0, 1), X.overlap_ring(1, 0)
    u1, u0 = R01.gen("u1"), R10.gen("u0")
    a = {(0, 1): u1, (1, 0): u0}
    psi01 = R01.zero()
    for k, c in zip((-1, 0, 1), cs):
        psi01 = psi01 + (R01.gen("e0") * u1 ** k).scale(c)
    # the (1,0,1) cocycle condition fixes psi10 = -a10 * phi10(psi01)
    psi10 = -(a[1, 0] * X.hom(1, 0)(psi01.coerce(X.hom(1, 0).source)))
    data = FibrationData(a, {(0, 1): psi01, (1, 0): psi10})
    F = build_fibration(X, data)
    back = classify_fibration(F, X)
    assert back.a == data.a and back.psi == data.psi
    assert dumps(build_fibration(X, back).to_doc()) == dumps(F.to_doc())


def test_classify_rejects_non_affine():
    X = build_projective_superspace(1, 1)
    data = FibrationData({k: X.overlap_ring(*k).one() for k in X.pairs()},
                         {k: X.overlap_ring(*k).zero() for k in X.pairs()})
    F = build_fibration(X, data)
    h = F.phi[0, 1]
    R = h.target
    h.images["t"] = R.gen("t") * R.gen("e0") * R.gen("e0") + R.gen("e0")  # drops the linear part
    with pytest.raises(ValueError):
        classify_fibration(F, X)
