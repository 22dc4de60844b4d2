"""Hypothesis strategies for random superpolynomials."""
from fractions import Fraction

from hypothesis import strategies as st

from superquot.superalgebra import Ring, SuperPoly

RING = Ring(("x", "y"), ("t1", "t2", "t3"), invertible=("x",))

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def monomial_keys(ring: Ring, max_deg: int = 3, min_exp: int = 0):
    n = len(ring.even)
    exps = st.tuples(*[st.integers(min_exp if g in ring.invertible else 0, max_deg) for g in ring.even]) if n else st.just(())
    odd = st.sets(st.integers(0, len(ring.odd) - 1)).map(lambda s: tuple(sorted(s))) if ring.odd else st.just(())
    return st.tuples(exps, odd)


def polys(ring: Ring = RING, max_terms: int = 4, max_deg: int = 3, parity=None, min_exp: int = 0):
    def build(items):
        f = SuperPoly.from_terms(ring, {k: Fraction(c) for k, c in items if c})
        return f.part(parity) if parity is not None else f
    return st.lists(st.tuples(monomial_keys(ring, max_deg, min_exp), coeffs), max_size=max_terms).map(build)
