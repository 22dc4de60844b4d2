import pytest
from hypothesis import given, strategies as st

from superquot.atlas import (build_projective_superspace, build_supergrassmannian, pi_action_field, pi_weights,
                             quotient_atlas)
from superquot.cohomology import (Box, DimTable, Omega, bott_dim, bott_table, cech_cohomology, gr_pieces,
                                  h1_vanishing_report, kunneth, point_table, symbol_table)
from superquot.linebundle import standard_cocycles
from superquot.oracle import monomial_h0


@pytest.fixture(scope="module")
def p23():
    X = pi_weights(build_projective_superspace(2, 3))
    v = pi_action_field(X)
    return X, v, quotient_atlas(X, v)


def test_bott_examples():
    assert bott_dim(1, 0, -2, 1) == 1
    assert [bott_dim(2, 1, 0, q) for q in range(3)] == [0, 1, 0]
    assert [bott_dim(2, 1, 1, q) for q in range(3)] == [0, 0, 0]
    with pytest.raises(ValueError):
        bott_dim(2, 3, 0, 0)


@given(st.integers(1, 4), st.integers(-6, 6), st.data())
def test_bott_serre_duality(n, m, data):
    j = data.draw(st.integers(0, n))
    for q in range(n + 1):
        assert bott_dim(n, j, m, q) == bott_dim(n, n - j, -m, n - q)


@given(st.integers(1, 4), st.integers(-8, 8))
def test_line_bundle_euler_characteristic(n, m):
    chi = sum((-1) ** q * bott_dim(n, 0, m, q) for q in range(n + 1))
    expect = monomial_h0(n, m) if m >= 0 else (-1) ** n * monomial_h0(n, -m - n - 1)
    assert chi == expect


def test_kunneth_examples():
    t = bott_table(Omega(1, 0, -3))
    assert kunneth(t, point_table()) == t
    assert kunneth(bott_table(Omega(1, 0, -2)), bott_table(Omega(1, 0, 0))).get(1) == 1
    assert kunneth(bott_table(Omega(1, 0, -1)), bott_table(Omega(1, 0, -1))).get(1) == 0
    with pytest.raises(ValueError):
        kunneth(DimTable({(0, 0): 1}, {(0, 0): False}), point_table())


def test_gr_pieces():
    assert gr_pieces(2, 0) == [Box((Omega(1, 0, 0), Omega(1, 0, 0)))]
    assert set(gr_pieces(2, 1)) == {Box((Omega(1, 0, -1), Omega(1, 1, 1))), Box((Omega(1, 1, 1), Omega(1, 0, -1)))}
    assert gr_pieces(2, 2) == [Box((Omega(1, 1, 0), Omega(1, 1, 0)))]
    assert gr_pieces(2, 3) == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_h1_vanishing(n):
    rep = h1_vanishing_report(n)
    assert rep.vanishes
    assert all(h1 == 0 for *_, h1 in rep.rows)


def test_twisted_report():
    rep = h1_vanishing_report(2, (-1, 1))
    assert rep.h1_total == {0: 0, 1: 2}
    assert not rep.vanishes


def test_symbol_table_total():
    from superquot.cohomology import gr_symbol
    t = symbol_table(gr_symbol(2, 1))
    assert t.get(1, 0) == 0 and t.get(1, 1) == 0


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("m", [-4, -3, -1, 0, 2, 4])
def test_cech_agrees_with_bott(n, m):
    X = build_projective_superspace(n, 0)
    t = cech_cohomology(X, "twist", window=abs(m) + 1, L=standard_cocycles(X, m), degrees=range(n + 1))
    assert t.fully_stable
    assert [t.get(q) for q in range(n + 1)] == [bott_dim(n, 0, m, q) for q in range(n + 1)]


def test_cech_p1_structure_sheaf():
    t = cech_cohomology(build_projective_superspace(1, 0), "O", 2)
    assert (t.get(0), t.get(1)) == (1, 0)


def test_cech_p23(p23):
    X, _, _ = p23
    t = cech_cohomology(X, "O", 1)
    assert t.fully_stable
    assert t.get(1, 0) == t.get(1, 1) == 0
    assert t.get(0, 0) == 1


def test_cech_p2pi(p23):
    X, v, Q = p23
    t = cech_cohomology(Q, "O", 1)
    assert t.fully_stable
    assert (t.get(0, 0), t.get(1, 1)) == (1, 1)
    up = cech_cohomology(X, "ker", 1, v=v)
    assert up.entries == t.entries


def test_cech_stability_under_growth(p23):
    _, _, Q = p23
    small, big = cech_cohomology(Q, "O", 1), cech_cohomology(Q, "O", 3)
    for k in small.entries:
        if small.is_stable(*k):
            assert small.entries[k] == big.entries[k]


def test_cech_needs_separating_weights():
    G = pi_weights(build_supergrassmannian(1, 1, 2, 2))
    with pytest.raises(ValueError):
        cech_cohomology(G, "O", 1)


def test_cech_arguments():
    X = build_projective_superspace(1, 0)
    with pytest.raises(ValueError):
        cech_cohomology(X, "ker", 1)
    with pytest.raises(ValueError):
        cech_cohomology(X, "twist", 1)


def test_table_round_trip():
    t = h1_vanishing_report(2, (-1, 1))
    tab = symbol_table(Box((Omega(1, 0, -2), Omega(1, 0, 0))))
    doc = tab.to_doc()
    assert doc["entries"] == [[1, 0, 1, True]]
    assert "H1 of gr: even=0 odd=2" in t.render()
