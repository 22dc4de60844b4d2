"""Naive brute-force verifiers.

Everything here is deliberately slow and shares nothing with the main engines
beyond the polynomial arithmetic: its own elimination, its own Leibniz
expansion, its own enumeration of Laurent monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .superalgebra import Ring, SuperPoly, invert_even


@dataclass(frozen=True)
class OracleReport:
    query: str
    method: str
    value: object
    seed: int = 0


# ---------------------------------------------------------------- elimination

def _rank(rows: list[list[Fraction]]) -> int:
    m = [list(map(Fraction, r)) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _kernel(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        lead = m[rank][c]
        m[rank] = [a / lead for a in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -m[r][f]
        basis.append(vec)
    return basis


# ---------------------------------------------------------------- section counts

def monomial_h0(n: int, m: int) -> int:
    """Number of degree-``m`` monomials in ``n + 1`` variables."""
    if m < 0:
        return 0
    return sum(1 for e in product(range(m + 1), repeat=n + 1) if sum(e) == m)


def cech_p1(m: int, bound: int = 30) -> tuple[int, int]:
    """``(h0, h1)`` of ``O(m)`` on ``P^1`` from Laurent monomials ``x0^a x1^b``, ``a + b = m``.

    Each monomial spans its own graded piece of the Cech complex: it lies in
    ``C^0`` once per chart it is regular on and once in ``C^1``.  The
    differential ``(s0, s1) -> s1 - s0`` is solved piece by piece.
    """
    if abs(m) > 12:
        raise ValueError("|m| <= 12")
    h0 = h1 = 0
    for a in range(-bound, bound + 1):
        b = m - a
        rows = [[]]
        if b >= 0:
            rows[0].append(Fraction(-1))
        if a >= 0:
            rows[0].append(Fraction(1))
        c0 = len(rows[0])
        rk = _rank(rows) if c0 else 0
        h0 += c0 - rk
        h1 += 1 - rk
    return h0, h1


def _forms_on(I: tuple, mu: tuple, j: int, n: int):
    """Basis ``x^(mu - 1_S) e_S`` of ``Lambda^j`` sections of multidegree ``mu`` regular on ``U_I``."""
    out = []
    for S in combinations(range(n + 1), j):
        a = [mu[k] - (1 if k in S else 0) for k in range(n + 1)]
        if all(a[k] >= 0 or k in I for k in range(n + 1)):
            out.append(S)
    return out


def _contraction_matrix(basis_j: list, basis_lower: list, mu) -> list[list[Fraction]]:
    """Rows indexed by ``basis_lower``: the Euler contraction ``e_S -> sum +-x_s e_{S - s}``."""
    idx = {S: r for r, S in enumerate(basis_lower)}
    rows = [[Fraction(0)] * len(basis_j) for _ in basis_lower]
    for c, S in enumerate(basis_j):
        for t, s in enumerate(S):
            T = S[:t] + S[t + 1:]
            if T in idx:
                rows[idx[T]][c] += (-1) ** t
            else:
                raise AssertionError("lower form missing")
    return rows


def forms_cech(n: int, j: int, m: int, bound: int | None = None) -> list[int]:
    """``[h^0, ..., h^n]`` of ``Omega^j(m)`` on ``P^n`` by brute force.

    ``Omega^j(m)`` is the kernel of the Euler contraction on
    ``Lambda^j(O(-1)^{n+1})(m)``; sections on ``U_I`` are spanned by
    ``x^a e_S`` of multidegree ``mu = a + 1_S`` with ``a_k >= 0`` off ``I``.
    Every multidegree ``mu`` with ``|mu_k| <= bound`` and ``sum(mu) = m`` is
    handled separately.
    """
    if bound is None:
        bound = abs(m) + n + 2
    charts = list(range(n + 1))
    simplices = {p: list(combinations(charts, p + 1)) for p in range(n + 1)}
    total = [0] * (n + 1)
    for mu in product(range(-bound, bound + 1), repeat=n + 1):
        if sum(mu) != m:
            continue
        # kernel bases per simplex, as vectors over the ambient (I, S) coordinates
        K = {}
        for p in range(n + 1):
            vecs = []
            for I in simplices[p]:
                bj = _forms_on(I, mu, j, n)
                if not bj:
                    continue
                if j == 0:
                    ker = [[Fraction(1)]]
                else:
                    lower = sorted({S[:t] + S[t + 1:] for S in bj for t in range(len(S))})
                    ker = _kernel(_contraction_matrix(bj, lower, mu), len(bj))
                for vec in ker:
                    vecs.append({(I, S): c for S, c in zip(bj, vec) if c})
            K[p] = vecs
        ranks = {}
        for p in range(n):
            coords = {}
            cols = []
            for vec in K[p]:
                img = {}
                for (I, S), c in vec.items():
                    for J in simplices[p + 1]:
                        if set(I) <= set(J):
                            k = next(t for t in range(len(J)) if J[t] not in I)
                            key = (J, S)
                            img[key] = img.get(key, 0) + (-1) ** k * c
                cols.append(img)
                for key in img:
                    coords.setdefault(key, len(coords))
            rows = [[Fraction(0)] * len(cols) for _ in coords]
            for c, img in enumerate(cols):
                for key, x in img.items():
                    rows[coords[key]][c] = Fraction(x)
            ranks[p] = _rank(rows) if rows else 0
        for q in range(n + 1):
            total[q] += len(K[q]) - ranks.get(q, 0) - ranks.get(q - 1, 0)
    return total


def bott_oracle(n: int, j: int, m: int, q: int) -> OracleReport:
    if n == 1 and j == 0:
        h = cech_p1(m)
        val = h[q] if q < 2 else 0
        return OracleReport(f"h^{q}(P^1, O({m}))", "exhaustive linear solve", val)
    val = forms_cech(n, j, m)[q] if q <= n else 0
    return OracleReport(f"h^{q}(P^{n}, Omega^{j}({m}))", "exhaustive linear solve", val)


# ---------------------------------------------------------------- witnesses

def _leibniz(images: dict, ring: Ring, key) -> SuperPoly:
    """Apply the derivation with the given generator images to one monomial by expanding
    it as an ordered product of atoms ``g`` or ``g^-1``."""
    exps, odd = key
    atoms = []  # (value, derivative, is_odd)
    for k, (g, e) in enumerate(zip(ring.even, exps)):
        if e >= 0:
            atoms += [(ring.gen(g), images[g], False)] * e
        else:
            inv_exps = [0] * len(ring.even)
            inv_exps[k] = -1
            inv = SuperPoly(ring, {(tuple(inv_exps), ()): Fraction(1)})
            # d(g^-1) = -g^-1 v(g) g^-1
            atoms += [(inv, -(inv * images[g] * inv), False)] * (-e)
    atoms += [(ring.gen(ring.odd[i]), images[ring.odd[i]], True) for i in odd]
    out = ring.zero()
    for t, (_, dv, _) in enumerate(atoms):
        left = ring.one()
        for a in atoms[:t]:
            left = left * a[0]
        right = ring.one()
        for a in atoms[t + 1:]:
            right = right * a[0]
        sign = (-1) ** sum(1 for a in atoms[:t] if a[2])
        out = out + (left * dv * right).scale(sign)
    return out


@dataclass
class WitnessSolutions:
    particular: SuperPoly | None
    kernel: list

    @property
    def empty(self) -> bool:
        return self.particular is None


def exhaustive_witness(images: dict, ring: Ring, D: int) -> WitnessSolutions:
    """All odd ``theta`` of even degree ``<= D`` with ``v(theta) = 1``, as particular + kernel."""
    if len(ring.even) > 4 or len(ring.odd) > 4:
        raise ValueError("oracle rings are capped at 4|4 generators")
    keys = []
    for r in range(1, len(ring.odd) + 1, 2):
        for odd in combinations(range(len(ring.odd)), r):
            for exps in product(range(D + 1), repeat=len(ring.even)):
                if sum(exps) <= D:
                    keys.append((exps, odd))
    cols = [_leibniz(images, ring, k) for k in keys]
    target = ring.one()
    mons = sorted({m for c in cols for m in c.terms} | set(target.terms))
    rows = [[c.terms.get(m, Fraction(0)) for c in cols] + [target.terms.get(m, Fraction(0))] for m in mons]
    ker = _kernel(rows, len(keys) + 1)
    particular = None
    homog = []
    for vec in ker:
        if vec[-1] != 0:
            if particular is None:
                scale = -1 / vec[-1]
                particular = SuperPoly(ring, {k: c * scale for k, c in zip(keys, vec[:-1]) if c})
        else:
            homog.append(SuperPoly(ring, {k: c for k, c in zip(keys, vec[:-1]) if c}))
    if particular is not None:
        # fold other particular directions into the kernel
        for vec in ker:
            if vec[-1] != 0:
                p = SuperPoly(ring, {k: c * (-1 / vec[-1]) for k, c in zip(keys, vec[:-1]) if c})
                if p != particular:
                    homog.append(p - particular)
    return WitnessSolutions(particular, homog)


def apply_derivation(images: dict, f: SuperPoly) -> SuperPoly:
    out = f.ring.zero()
    for key, c in f.terms.items():
        out = out + _leibniz(images, f.ring, key).scale(c)
    return out


# ---------------------------------------------------------------- small linear systems

def _keys(ring: Ring, D: int, parity: int | None = None, low: int = 0) -> list:
    """Monomials with every even exponent in ``[low, D]`` (``low`` only on invertible generators)."""
    out = []
    for r in range(len(ring.odd) + 1):
        if parity is not None and r % 2 != parity:
            continue
        if ring.nil is not None and r >= ring.nil:
            continue
        for odd in combinations(range(len(ring.odd)), r):
            ranges = [range(low if g in ring.invertible else 0, D + 1) for g in ring.even]
            for exps in product(*ranges):
                out.append((exps, odd))
    return out


def _solve(columns: list[dict], rhs: dict) -> list[Fraction] | None:
    """One solution of ``sum x_c columns[c] = rhs`` (dicts keyed by equation labels), or None."""
    labels = sorted({k for c in columns for k in c} | set(rhs), key=repr)
    rows = [[c.get(k, Fraction(0)) for c in columns] + [-rhs.get(k, Fraction(0))] for k in labels]
    for vec in _kernel(rows, len(columns) + 1):
        if vec[-1] != 0:
            return [x / vec[-1] for x in vec[:-1]]
    return None


def _tagged(tag, f: SuperPoly) -> dict:
    return {(tag, m): c for m, c in f.terms.items()}


def _mono(ring: Ring, key) -> SuperPoly:
    return SuperPoly(ring, {key: Fraction(1)})


def _rank_of(polys: list[SuperPoly]) -> int:
    keys = sorted({m for f in polys for m in f.terms}, key=repr)
    return _rank([[f.terms.get(k, Fraction(0)) for f in polys] for k in keys]) if keys else 0


# ---------------------------------------------------------------- superalgebra values

def inverse_report() -> OracleReport:
    """Inverse of ``x + t1 t2`` by solving ``f g = 1`` over a box of Laurent monomials."""
    R = Ring(("x",), ("t1", "t2"), invertible=("x",))
    f = R.gen("x") + R.gen("t1") * R.gen("t2")
    keys = _keys(R, 3, parity=0, low=-3)
    sol = _solve([_tagged(0, f * _mono(R, k)) for k in keys], _tagged(0, R.one()))
    g = SuperPoly(R, {k: c for k, c in zip(keys, sol) if c})
    return OracleReport("(x + t1*t2)^-1", "exhaustive linear solve", g)


def laurent_flip_report() -> OracleReport:
    """``u -> 1/u`` on ``u^2 + 1`` by negating exponents; applying it twice is the identity."""
    P = Ring(("u",), invertible=("u",))
    f = P.gen("u") * P.gen("u") + P.one()
    flip = lambda h: SuperPoly(P, {((-e[0][0],), e[1]): c for e, c in h.terms.items()})
    assert flip(flip(f)) == f
    return OracleReport("u -> u^-1 on u^2 + 1", "exhaustive expansion", flip(f))


def ber11(a: SuperPoly, b: SuperPoly, c: SuperPoly, d: SuperPoly) -> SuperPoly:
    di = invert_even(d)
    return (a - b * di * c) * di


def ber_multiplicativity_report(seed: int = 0, trials: int = 20) -> OracleReport:
    import random
    rng = random.Random(seed)
    R = Ring(("a", "d"), ("s", "r"), invertible=("a", "d"))
    s, r = R.gen("s"), R.gen("r")

    def rand_odd():
        return s.scale(rng.randint(-3, 3)) + r.scale(rng.randint(-3, 3)) + (R.gen("a") * s).scale(rng.randint(-2, 2))

    def rand_unit(g):
        return R.gen(g).scale(rng.randint(1, 4)) + (s * r).scale(rng.randint(-3, 3))

    ok = True
    for _ in range(trials):
        M = [rand_unit("a"), rand_odd(), rand_odd(), rand_unit("d")]
        N = [rand_unit("d"), rand_odd(), rand_odd(), rand_unit("a")]
        MN = [M[0] * N[0] + M[1] * N[2], M[0] * N[1] + M[1] * N[3],
              M[2] * N[0] + M[3] * N[2], M[2] * N[1] + M[3] * N[3]]
        ok &= ber11(*MN) == ber11(*M) * ber11(*N)
    return OracleReport("Ber(MN) = Ber(M) Ber(N) on random 1|1 matrices", "exhaustive expansion", ok, seed)


# ---------------------------------------------------------------- projective charts by hand

def proj_chart_ring(n: int, odd: int, i: int, inverted=()) -> Ring:
    return Ring(tuple(f"u{j}" for j in range(n + 1) if j != i), tuple(f"e{k}" for k in range(odd)),
                frozenset(inverted))


def proj_transition(n: int, odd: int, i: int, j: int) -> dict:
    """Chart-``j`` coordinates ``x_k/x_j``, ``theta_k/x_j`` written in chart ``i``."""
    R = proj_chart_ring(n, odd, i, (f"u{j}",))
    x = lambda k: R.one() if k == i else R.gen(f"u{k}")
    inv = invert_even(x(j))
    out = {f"u{k}": x(k) * inv for k in range(n + 1) if k != j}
    out.update({f"e{k}": R.gen(f"e{k}") * inv for k in range(odd)})
    return out


def _psi_coefficient(f: SuperPoly, base: Ring) -> SuperPoly:
    out = {}
    for (exps, odd), c in f.terms.items():
        if odd and odd[0] == 0:
            out[(exps, tuple(k - 1 for k in odd[1:]))] = c
    return SuperPoly.from_terms(base, out)


def proj_pi_field(n: int, i: int) -> tuple[Ring, dict]:
    """The field on chart ``i`` of ``P^{n|n+1}`` read off from the action
    ``x_k -> x_k + psi theta_k``, ``theta_k -> theta_k - psi x_k`` (psi on the left)."""
    base = proj_chart_ring(n, n + 1, i)
    R = Ring(base.even, ("psi",) + base.odd)
    psi = R.gen("psi")
    x = lambda k: R.one() if k == i else R.gen(f"u{k}")
    th = lambda k: R.gen(f"e{k}")
    den = invert_even(x(i) + psi * th(i))
    images = {f"u{k}": _psi_coefficient((x(k) + psi * th(k)) * den, base) for k in range(n + 1) if k != i}
    images.update({f"e{k}": _psi_coefficient((th(k) - psi * x(k)) * den, base) for k in range(n + 1)})
    return base, images


def square_zero_report(name: str, images: dict) -> OracleReport:
    ok = all(not apply_derivation(images, f) for f in images.values() if f)
    return OracleReport(f"v^2 = 0 on {name}", "exhaustive expansion", ok)


def compatibility_report(name: str, vi: dict, vj: dict, hom_images: dict) -> OracleReport:
    """``phi(v_j(g)) = v_i(phi(g))`` for every chart-``j`` generator ``g``; ``phi`` given by images."""
    from .superalgebra import RingHom
    tgt = next(iter(hom_images.values())).ring
    src_ring = next(iter(vj.values())).ring
    vi_t = {g: f.coerce(tgt) for g, f in vi.items()}
    phi = RingHom(src_ring, tgt, hom_images, check=False)
    ok = all(phi(vj[g]) == apply_derivation(vi_t, hom_images[g]) for g in vj)
    return OracleReport(f"overlap compatibility on {name}", "exhaustive expansion", ok)


def slice_report(images: dict, ring: Ring, weights: dict, dmax: int) -> OracleReport:
    """``dim ker = dim im`` on every slice of weighted degree ``<= dmax`` (degree-0 field)."""
    def basis(d, par):
        keys = []
        for r in range(len(ring.odd) + 1):
            if r % 2 != par:
                continue
            for odd in combinations(range(len(ring.odd)), r):
                ow = sum(weights[ring.odd[k]] for k in odd)
                for exps in product(range(d + 1), repeat=len(ring.even)):
                    if ow + sum(e * weights[g] for e, g in zip(exps, ring.even)) == d:
                        keys.append((exps, odd))
        return keys

    def rank_of(keys):
        return _rank_of([_leibniz(images, ring, k) for k in keys]) if keys else 0

    dims = {}
    for d in range(dmax + 1):
        for par in (0, 1):
            B = basis(d, par)
            dims[d, par] = (len(B) - rank_of(B), rank_of(basis(d, 1 - par)))
    return OracleReport(f"ker/im slice dimensions up to degree {dmax}", "exhaustive linear solve", dims)


def decomposition(images: dict, ring: Ring, theta: SuperPoly, f: SuperPoly, D: int = 2):
    """``(a, b)`` with ``f = a + b theta`` and ``v(a) = v(b) = 0``, by a linear solve over all
    monomials of even degree ``<= D``; None when no solution exists at the bound."""
    keys = _keys(ring, D)
    cols = []
    for k in keys:
        m = _mono(ring, k)
        cols.append({**_tagged("sum", m), **_tagged("va", _leibniz(images, ring, k))})
    for k in keys:
        m = _mono(ring, k)
        cols.append({**_tagged("sum", m * theta), **_tagged("vb", _leibniz(images, ring, k))})
    sol = _solve(cols, _tagged("sum", f))
    if sol is None:
        return None
    n = len(keys)
    a = SuperPoly(ring, {k: c for k, c in zip(keys, sol[:n]) if c})
    b = SuperPoly(ring, {k: c for k, c in zip(keys, sol[n:]) if c})
    return a, b


def decomposition_report(images: dict, ring: Ring, theta: SuperPoly, f: SuperPoly) -> OracleReport:
    return OracleReport(f"decompose {f}", "exhaustive linear solve", decomposition(images, ring, theta, f))


def invariant_generators(images: dict, ring: Ring, theta: SuperPoly, D: int = 2) -> list[SuperPoly]:
    """Non-constant parts of all decompositions of generators, without linear repeats."""
    kept: list[SuperPoly] = []
    for g in ring.gens:
        for e in decomposition(images, ring, theta, ring.gen(g), D):
            if not e or e.is_constant():
                continue
            if _rank_of(kept + [e]) > len(kept):
                kept.append(e)
    return kept


def invariants_report(images: dict, ring: Ring, theta: SuperPoly) -> OracleReport:
    return OracleReport("invariant generators", "exhaustive linear solve", invariant_generators(images, ring, theta))


def same_span(gens1: list[SuperPoly], gens2: list[SuperPoly], degree: int) -> bool:
    """Products of at most ``degree`` generators span the same space on both sides."""
    def products(gens):
        ring = gens[0].ring
        out, layer = [ring.one()], [ring.one()]
        for _ in range(degree):
            layer = [p * g for p in layer for g in gens]
            out += layer
        return out

    p1, p2 = products(gens1), products(gens2)
    r1, r2 = _rank_of(p1), _rank_of(p2)
    return r1 == r2 == _rank_of(p1 + p2)


def proj_quotient_report(n: int) -> OracleReport:
    """Parities of the invariant generators on every chart of ``P^{n|n+1}``."""
    counts = []
    for i in range(n + 1):
        ring, images = proj_pi_field(n, i)
        theta = exhaustive_witness(images, ring, 0).particular
        gens = invariant_generators(images, ring, theta)
        counts.append((sum(1 for g in gens if g.is_even()), sum(1 for g in gens if g.is_odd())))
    return OracleReport(f"quotient charts of P^{{{n}|{n + 1}}}", "exhaustive linear solve", counts)


def grass_report(a: int, b: int, m: int, n: int) -> OracleReport:
    from math import comb
    value = (comb(m, a) * comb(n, b), (a * (m - a) + b * (n - b), a * (n - b) + b * (m - a)))
    return OracleReport(f"charts and chart dimension of G({a}|{b},{m}|{n})", "monomial count", value)


# ---------------------------------------------------------------- line bundles by hand

def tautological_report() -> OracleReport:
    """``s_1 = g_01 s_0`` for the frames ``s_i = (x_0/x_i, x_1/x_i)`` of ``O(-1)`` on ``P^1``."""
    R = proj_chart_ring(1, 0, 0, ("u1",))
    u = R.gen("u1")
    s0 = (R.one(), u)
    s1 = (invert_even(u), R.one())
    g = s1[0] * invert_even(s0[0])
    assert s1[1] == g * s0[1]
    return OracleReport("O(-1) on P^1: g_01", "exhaustive expansion", g)


def ber_block_report() -> OracleReport:
    """On G(1|0,2|2) the top block seen from chart 1 is the 1|0 entry ``f1_0``; ``g_01 = Ber^-1``."""
    R = Ring(("f1_0",), ("f2_0", "f3_0"), frozenset({"f1_0"}))
    return OracleReport("Ber(S) on G(1|0,2|2): g_01", "exhaustive expansion", invert_even(R.gen("f1_0")))


def connection_report(k: int, D: int = 1) -> OracleReport:
    """v-connection on ``O(k)`` over ``P^{1|2}`` by exhaustive solve: ``(phi_0, phi_1, curvature, unique)``."""
    rings, fields = [], []
    for i in range(2):
        r, im = proj_pi_field(1, i)
        rings.append(r)
        fields.append(im)
    keys = [_keys(r, D, parity=1) for r in rings]
    cols, unknowns = [], []
    g = {(0, 1): None, (1, 0): None}
    for (i, j) in g:
        R = proj_chart_ring(1, 2, i, (f"u{j}",))
        u = R.gen(f"u{j}")
        # O(k) = O(-1)^(-k) with g_01 = u1^-1 read in chart 0 and g_10 = u0^-1 in chart 1
        g[i, j] = invert_even(u) ** (-k) if k < 0 else u ** k
    rhs = {}
    for (i, j), gij in g.items():
        R = gij.ring
        vi = {n: f.coerce(R) for n, f in fields[i].items()}
        # phi_ij(phi_j) - phi_i = v(g_ij) / g_ij
        rhs.update(_tagged((i, j), apply_derivation(vi, gij) * invert_even(gij)))
    from .superalgebra import RingHom
    for c in range(2):
        for key in keys[c]:
            col = {}
            for (i, j) in g:
                R = g[i, j].ring
                if c == i:
                    col.update({kk: col.get(kk, 0) - x for kk, x in _tagged((i, j), _mono(rings[i], key).coerce(R)).items()})
                if c == j:
                    src = proj_chart_ring(1, 2, j, (f"u{i}",))
                    img = RingHom(src, R, proj_transition(1, 2, i, j), check=False)(_mono(src, key))
                    col.update({kk: col.get(kk, 0) + x for kk, x in _tagged((i, j), img).items()})
            cols.append(col)
            unknowns.append((c, key))
    sol = _solve(cols, rhs)
    if sol is None:
        return OracleReport(f"v-connection on O({k}) over P^1|2", "exhaustive linear solve", None)
    phi = [rings[c].zero() for c in range(2)]
    for (c, key), x in zip(unknowns, sol):
        if x:
            phi[c] = phi[c] + _mono(rings[c], key).scale(x)
    curv = apply_derivation(fields[0], phi[0])
    labels = sorted({kk for col in cols for kk in col} | set(rhs), key=repr)
    hom_rows = [[col.get(kk, Fraction(0)) for col in cols] for kk in labels]
    unique = _rank(hom_rows) == len(cols)
    const = curv.constant_term() if curv.is_constant() else None
    return OracleReport(f"v-connection on O({k}) over P^1|2", "exhaustive linear solve",
                        (phi[0], phi[1], const, unique))


# ---------------------------------------------------------------- gluing data supplied by the caller

def triple_report(name: str, triples: list) -> OracleReport:
    """``phi_ij(phi_jk(g)) = phi_ik(g)`` for triples of homomorphisms on common triple overlaps."""
    ok = all(hij(hjk(hjk.source.gen(g))) == hik(hik.source.gen(g))
             for hij, hjk, hik in triples for g in hik.source.gens)
    return OracleReport(f"cocycle condition on {name}", "exhaustive expansion", ok)


def splitting_report(homs: dict, psi: dict, D: int = 2) -> OracleReport:
    """Is ``psi_ij = s_i - phi_ij(s_j)`` solvable with odd ``s_i`` of even degree ``<= D``?"""
    charts = {}
    for (i, j), h in homs.items():
        charts.setdefault(j, Ring(h.source.even, h.source.odd))
    unknowns, cols = [], []
    for c, ring in sorted(charts.items()):
        for key in _keys(ring, D, parity=1):
            col = {}
            for (i, j), h in homs.items():
                if c == i:
                    for kk, x in _tagged((i, j), SuperPoly(h.target, {key: Fraction(1)})).items():
                        col[kk] = col.get(kk, 0) + x
                if c == j:
                    for kk, x in _tagged((i, j), h(SuperPoly(h.source, {key: Fraction(1)}))).items():
                        col[kk] = col.get(kk, 0) - x
            cols.append(col)
            unknowns.append((c, key))
    rhs = {}
    for k, f in psi.items():
        rhs.update(_tagged(k, f))
    sol = _solve(cols, rhs)
    return OracleReport(f"global splitting of the torsor (degree <= {D})", "exhaustive linear solve", sol is not None)


# ---------------------------------------------------------------- the class c_1(O(1)) on P^2

def _d(f: SuperPoly, ring: Ring, dnames: dict) -> SuperPoly:
    """Exterior derivative of a Laurent function, ``du`` written as the odd generator ``dnames[u]``."""
    out = ring.zero()
    for (exps, _), c in f.terms.items():
        for k, e in enumerate(exps):
            if e:
                low = list(exps)
                low[k] -= 1
                out = out + SuperPoly(ring, {(tuple(low), ()): c * e}) * ring.gen(dnames[ring.even[k]])
    return out


def c1_coboundary_report(B: int = 2) -> OracleReport:
    """Is the Cech cocycle ``dlog(x_j/x_i)`` a coboundary of 1-forms on ``P^2``?

    Forms on chart ``i`` are polynomial combinations of ``du``; the search runs over
    exponents ``<= B``.  A negative answer says the class of ``c_1(O(1))`` in
    ``H^1(Omega^1)`` is nonzero at this bound.
    """
    from .superalgebra import RingHom

    def form_ring(i, inverted=()):
        ev = tuple(f"u{j}" for j in range(3) if j != i)
        return Ring(ev, tuple("d" + g for g in ev), frozenset(inverted))

    def hom(i, j):
        tgt = form_ring(i, (f"u{j}",))
        src = form_ring(j, (f"u{i}",))
        ev = tuple(f"u{j2}" for j2 in range(3) if j2 != i)
        x = lambda k: tgt.one() if k == i else tgt.gen(f"u{k}")
        inv = invert_even(x(j))
        images = {f"u{k}": x(k) * inv for k in range(3) if k != j}
        dn = {g: "d" + g for g in ev}
        images.update({"d" + g: _d(images[g], tgt, dn) for g in src.even})
        return RingHom(src, tgt, images, check=False)

    pairs = [(0, 1), (0, 2), (1, 2)]
    cols, rhs = [], {}
    for c in range(3):
        ring = form_ring(c)
        for key in _keys(ring, B, parity=1):
            if len(key[1]) != 1:
                continue
            col = {}
            for (i, j) in pairs:
                h = hom(i, j)
                if c == i:
                    for kk, x in _tagged((i, j), SuperPoly(h.target, {key: Fraction(1)})).items():
                        col[kk] = col.get(kk, 0) + x
                if c == j:
                    for kk, x in _tagged((i, j), h(SuperPoly(h.source, {key: Fraction(1)}))).items():
                        col[kk] = col.get(kk, 0) - x
            cols.append(col)
    for (i, j) in pairs:
        tgt = form_ring(i, (f"u{j}",))
        u = tgt.gen(f"u{j}")
        rhs.update(_tagged((i, j), invert_even(u) * tgt.gen(f"du{j}")))
    sol = _solve(cols, rhs)
    return OracleReport(f"dlog cocycle of c1(O(1)) is a coboundary (exponents <= {B})",
                        "exhaustive linear solve", sol is not None)


# ---------------------------------------------------------------- graded pieces of G(1|1,2|2)

def gr_degrees_report(k: int) -> OracleReport:
    """Line-bundle bidegrees of ``L^k(A + B)`` on ``P^1 x P^1`` with ``A = O(-1) [x] Omega^1(1)``,
    ``B = Omega^1(1) [x] O(-1)``; on ``P^1`` both are ``O(-1) [x] O(-1)`` and have rank one."""
    atoms = [(-1, -1), (-1, -1)]
    out = []
    for S in combinations(range(2), k):
        out.append((sum(atoms[s][0] for s in S), sum(atoms[s][1] for s in S)))
    return OracleReport(f"graded piece {k} of G(1|1,2|2)", "exhaustive expansion", sorted(out))


def gr_h1_report(twist=(0, 0)) -> OracleReport:
    """``H^1`` of every graded piece, twisted by ``O(a) [x] O(b)``, via Kunneth of :func:`cech_p1`."""
    total = {0: 0, 1: 0}
    for k in range(3):
        for a, b in gr_degrees_report(k).value:
            h_a, h_b = cech_p1(a + twist[0]), cech_p1(b + twist[1])
            total[k % 2] += h_a[0] * h_b[1] + h_a[1] * h_b[0]
    return OracleReport(f"H^1 of the graded pieces of G(1|1,2|2), twist {tuple(twist)}",
                        "exhaustive linear solve", total)


def kunneth_p1_report(m1: int, m2: int, q: int) -> OracleReport:
    h1, h2 = cech_p1(m1), cech_p1(m2)
    val = sum(h1[a] * h2[q - a] for a in range(2) if 0 <= q - a < 2)
    return OracleReport(f"h^{q}(P^1 x P^1, O({m1}) [x] O({m2}))", "exhaustive linear solve", val)
