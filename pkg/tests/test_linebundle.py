from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superquot.atlas import (Iso, build_projective_superspace, build_supergrassmannian, iso_check, pi_action_field,
                             product_atlas, product_field, quotient_atlas)
from superquot.linebundle import (LineCocycle, NoneUpTo, Obstructed, VConnection, connection_solve, curvature,
                                  external_product, flat_connection, flat_descend, global_functions, gq1,
                                  gq1_cocycle, gq1_inverse, gq1_matrix, gq1_mul, gq1_project, standard_cocycles,
                                  tensor, trivial_cocycle)
from superquot.superalgebra import Ring, dumps, invert_even

from spaces import affine_chart, p12_times_odd_line
from strategies import polys


@pytest.fixture(scope="module")
def P12():
    X = build_projective_superspace(1, 2)
    return X, pi_action_field(X)


def test_o_minus_one_on_p1():
    X = build_projective_superspace(1, 0)
    L = standard_cocycles(X, -1)
    # s_1 = g_01 s_0 with g_01 the chart-1 coordinate u0 = 1/u1
    assert L.g[0, 1] == X.hom(0, 1)(X.ring(1).gen("u0").coerce(X.hom(0, 1).source))
    assert L.failures() == []


def test_ber_on_g1022_is_o_minus_one():
    G = build_supergrassmannian(1, 0, 2, 2)
    X = build_projective_superspace(1, 2)
    assert isinstance(iso_check(X, G), Iso)
    B = standard_cocycles(G, 1).g
    O = standard_cocycles(X, -1).g
    # the chart rings agree position by position (f1_0, f2_0, f3_0 <-> u1, e0, e1)
    assert B.keys() == O.keys()
    assert all(B[k].terms == O[k].terms for k in B)


def test_ber_on_g1122_restricts_to_o_minus_one_times_o_one():
    G = build_supergrassmannian(1, 1, 2, 2)
    red = standard_cocycles(G, 1).reduced()
    # chart labels choose one even and one odd row; f1_0, f0_0 are the even-factor
    # coordinates and f3_1, f2_1 the odd-factor ones
    for (i, j), g in red.items():
        ei, oi = G.labels[i].split("|")
        ej, oj = G.labels[j].split("|")
        R = g.ring
        expect = R.one()
        if ei != ej:
            expect = expect * invert_even(R.gen(f"f{ej}_0"))
        if oi != oj:
            expect = expect * R.gen(f"f{oj}_1")
        assert g == expect


def test_cocycle_round_trip(P12):
    X, _ = P12
    L = standard_cocycles(X, 3)
    assert dumps(LineCocycle.from_doc(X, L.to_doc()).to_doc()) == dumps(L.to_doc())


def test_trivial_connection(P12):
    X, v = P12
    n = connection_solve(trivial_cocycle(X), v)
    assert all(not p for p in n.phi)
    assert all(not c for c in curvature(n).values)


def test_o_minus_one_connection_unique(P12):
    X, v = P12
    n = connection_solve(standard_cocycles(X, -1), v, D=1)
    assert isinstance(n, VConnection)
    c = curvature(n)
    assert abs(c.constant) == 1
    assert global_functions(X, 1, 3) == []


@pytest.mark.parametrize("k", [-5, -3, -1, 1, 2, 5])
def test_o_n_curvature(P12, k):
    X, v = P12
    c = curvature(connection_solve(standard_cocycles(X, k), v)).constant
    c1 = curvature(connection_solve(standard_cocycles(X, 1), v)).constant
    assert c == k * c1 and abs(c) == abs(k)


def test_tensor_powers(P12):
    X, v = P12
    base = connection_solve(standard_cocycles(X, -1), v)
    c1 = curvature(base).constant
    triv = connection_solve(trivial_cocycle(X), v)
    assert tensor(base, triv).phi == base.phi
    acc = base
    for n in range(2, 5):
        acc = tensor(acc, base)
        assert curvature(acc).constant == n * c1


@pytest.mark.parametrize("n1,n2", [(1, -1), (2, -2), (1, 0), (0, -2), (2, 1), (0, 0)])
def test_product_flatness(P12, n1, n2):
    X, v = P12
    PX = product_atlas(X, X)
    w = product_field(PX, v, v)
    L = external_product(PX, standard_cocycles(X, n1), standard_cocycles(X, n2))
    n = connection_solve(L, w)
    assert curvature(n).constant == -(n1 + n2)
    r = flat_connection(L, w)
    assert isinstance(r, VConnection) == (n1 + n2 == 0)
    if n1 + n2:
        assert isinstance(r, Obstructed)


def test_descent(P12):
    X, v = P12
    Q = quotient_atlas(X, v)
    D = flat_descend(trivial_cocycle(X), v, Q)
    assert all(g == g.ring.one() for g in D.g.values())
    for k in (-2, -1, 1, 3):
        r = flat_descend(standard_cocycles(X, k), v, Q)
        assert isinstance(r, Obstructed) and abs(r.curvature) == abs(k)
    both = standard_cocycles(X, 1) * standard_cocycles(X, -1)
    assert isinstance(flat_descend(both, v, Q), LineCocycle)


# ---------------------------------------------------------------- gauge covariance

_fib = p12_times_odd_line()
_aff = affine_chart()
_aff_odd = polys(_aff[0].ring(0), max_terms=4, max_deg=3, parity=1)


@given(st.fractions(min_value=-9, max_value=9, max_denominator=5))
def test_gauge_shift_fibration(c):
    F, v, L = _fib
    n = connection_solve(L, v, 2)
    fam = global_functions(F, 1, 1)[0]
    shift = [s.scale(c) for s in fam]
    lhs = curvature(n.shifted(shift)).values
    rhs = [a + v.fields[i](s) for i, (a, s) in enumerate(zip(curvature(n).values, shift))]
    assert lhs == rhs


@given(_aff_odd)
def test_gauge_shift_affine(phi):
    A, v, L = _aff
    n = connection_solve(L, v, 1)
    lhs = curvature(n.shifted([phi])).values[0]
    assert lhs == curvature(n).values[0] + v.fields[0](phi)


# ---------------------------------------------------------------- GQ(1)

R = Ring(("x",), ("t1", "t2", "t3"), invertible=("x",))
t1, t2, t3 = (R.gen(g) for g in R.odd)
one = R.one()


def test_gq1_examples():
    lhs = gq1_mul(gq1(one, t1), gq1(one, t2))
    rhs = gq1_mul(gq1(one + t1 * t2), gq1(one, t1 + t2))
    assert (lhs.a0, lhs.a1) == (rhs.a0, rhs.a1)
    x = gq1(R.gen("x"), t3)
    e = gq1(one)
    assert gq1_mul(x, e) == x == gq1_mul(e, x)
    lam = gq1(R.const(Fraction(7, 3)))
    assert gq1_mul(lam, x) == gq1_mul(x, lam)
    assert gq1_mul(x, gq1_inverse(x)) == e


def test_gq1_rejects_bad_parts():
    with pytest.raises(ValueError):
        gq1(t1)
    with pytest.raises(ValueError):
        gq1(one, one)


_odd = polys(R, max_terms=3, max_deg=2, parity=1)
_even_unit = polys(R, max_terms=2, max_deg=2, parity=0).map(lambda f: R.gen("x") + (f - f.reduced()))


@given(_even_unit, _odd, _even_unit, _odd)
def test_gq1_project_is_homomorphism(a0, a1, b0, b1):
    x, y = gq1(a0, a1), gq1(b0, b1)
    assert gq1_project(gq1_mul(x, y)) == gq1_project(x) + gq1_project(y)
    assert gq1_matrix(gq1_mul(x, y)) == gq1_matrix(x) @ gq1_matrix(y)


@given(_odd, _odd, _odd)
def test_gq1_cocycle_identity(a, b, c):
    assert gq1_cocycle(a, b) * gq1_cocycle(a + b, c) == gq1_cocycle(b, c) * gq1_cocycle(a, b + c)
