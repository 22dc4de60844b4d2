"""Cohomology dimensions: the Bott formula with Kunneth, and a windowed Cech engine.

The two engines overlap on line bundles over projective spaces, where each
checks the other.  Cech complexes are sliced by the torus weights carried by
the atlas; a weight window is a box ``|w_k| <= R`` and an entry is stable when
growing the box by one step leaves it unchanged.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

from . import linalg
from .atlas import Atlas, GlobalField, monomials_of_weight, weights_separate, _vec_sub
from .superalgebra import SuperPoly, invert_even


# ---------------------------------------------------------------- sheaf symbols

@dataclass(frozen=True)
class Omega:
    """``Omega^j(m)`` on ``P^n``; ``j = 0`` is the line bundle ``O(m)``."""
    n: int
    j: int
    m: int

    def __post_init__(self):
        if not 0 <= self.j <= self.n:
            raise ValueError(f"Omega^{self.j} on P^{self.n} is not defined")

    def __str__(self):
        if self.j == 0:
            return f"O({self.m})" if self.m else "O"
        s = f"Omega^{self.j}"
        return f"{s}({self.m})" if self.m else s


@dataclass(frozen=True)
class Box:
    factors: tuple

    def __str__(self):
        return "[x]".join(map(str, self.factors))


@dataclass(frozen=True)
class DirectSum:
    terms: tuple

    def __str__(self):
        return " + ".join(map(str, self.terms)) if self.terms else "0"


@dataclass(frozen=True)
class Pi:
    inner: object

    def __str__(self):
        return f"Pi({self.inner})"


@dataclass(frozen=True)
class Wedge:
    k: int
    inner: object

    def __str__(self):
        return f"L^{self.k}({self.inner})"


def _tensor_atoms(a: Omega, b: Omega):
    """``a (x) b`` when one side is a line bundle; None if the product vanishes."""
    if a.n != b.n:
        raise ValueError("atoms on different projective spaces")
    if a.j and b.j:
        raise ValueError("only products with a line bundle are supported")
    return Omega(a.n, a.j + b.j, a.m + b.m)


def _wedge_box(i: int, box: Box):
    """``L^i`` of a box product with at most one factor of rank > 1; None if zero."""
    big = [k for k, f in enumerate(box.factors) if f.j]
    if len(big) > 1:
        raise ValueError("wedge powers need all but one factor to be line bundles")
    out = []
    for k, f in enumerate(box.factors):
        if f.j:
            if f.j != 1:
                raise ValueError("wedge powers are only expanded for Omega^1")
            if i > f.n:
                return None
            out.append(Omega(f.n, i, i * f.m))
        else:
            if i > 1 and not big:
                return None
            out.append(Omega(f.n, 0, i * f.m))
    return Box(tuple(out))


def _tensor_boxes(a: Box, b: Box):
    return Box(tuple(_tensor_atoms(x, y) for x, y in zip(a.factors, b.factors)))


def expand(sym) -> list:
    """Flatten to a list of ``(Box, parity)``; wedge powers of sums of boxes are expanded."""
    if isinstance(sym, Omega):
        return [(Box((sym,)), 0)]
    if isinstance(sym, Box):
        return [(sym, 0)]
    if isinstance(sym, Pi):
        return [(b, 1 - p) for b, p in expand(sym.inner)]
    if isinstance(sym, DirectSum):
        return [x for t in sym.terms for x in expand(t)]
    if isinstance(sym, Wedge):
        parts = expand(sym.inner)
        if any(p for _, p in parts):
            raise ValueError("wedge of odd summands is not supported")
        out = []
        for split in _splits(sym.k, len(parts)):
            piece = None
            for (box, _), i in zip(parts, split):
                w = _wedge_box(i, box)
                if w is None:
                    piece = None
                    break
                piece = w if piece is None else _tensor_boxes(piece, w)
            if piece is not None:
                out.append((piece, 0))
        return out
    raise TypeError(f"not a sheaf symbol: {sym!r}")


def _splits(k: int, parts: int):
    if parts == 0:
        if k == 0:
            yield ()
        return
    for i in range(k + 1):
        for rest in _splits(k - i, parts - 1):
            yield (i,) + rest


# ---------------------------------------------------------------- dimension tables

@dataclass
class DimTable:
    entries: dict = field(default_factory=dict)  # (q, parity) -> dim
    stable: dict = field(default_factory=dict)  # (q, parity) -> bool

    def get(self, q: int, parity: int = 0) -> int:
        return self.entries.get((q, parity), 0)

    def is_stable(self, q: int, parity: int = 0) -> bool:
        return self.stable.get((q, parity), True)

    @property
    def fully_stable(self) -> bool:
        return all(self.stable.get(k, True) for k in self.entries)

    def euler(self, parity: int = 0) -> int:
        return sum((-1) ** q * d for (q, p), d in self.entries.items() if p == parity)

    def __add__(self, other: "DimTable") -> "DimTable":
        out = DimTable(dict(self.entries), dict(self.stable))
        for k, d in other.entries.items():
            out.entries[k] = out.entries.get(k, 0) + d
            out.stable[k] = out.stable.get(k, True) and other.stable.get(k, True)
        return out

    def shifted(self) -> "DimTable":
        return DimTable({(q, 1 - p): d for (q, p), d in self.entries.items()},
                        {(q, 1 - p): s for (q, p), s in self.stable.items()})

    def to_doc(self) -> dict:
        return {"entries": [[q, p, d, self.stable.get((q, p), True)] for (q, p), d in sorted(self.entries.items())]}

    def render(self) -> str:
        lines = ["q  parity  dim  stable"]
        for (q, p), d in sorted(self.entries.items()):
            lines.append(f"{q:<3}{'+-'[p]:<8}{d:<5}{'yes' if self.stable.get((q, p), True) else 'no'}")
        return "\n".join(lines)


def point_table() -> DimTable:
    return DimTable({(0, 0): 1}, {(0, 0): True})


def bott_dim(n: int, j: int, m: int, q: int) -> int:
    """``dim H^q(P^n, Omega^j(m))``."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    if q < 0 or q > n:
        return 0
    if q == 0 and m > j:
        return comb(m + n - j, m) * comb(m - 1, j)
    if m == 0 and q == j:
        return 1
    if q == n and m < j - n:
        return comb(-m + j, -m) * comb(-m - 1, n - j)
    return 0


def bott_table(a: Omega) -> DimTable:
    t = DimTable()
    for q in range(a.n + 1):
        d = bott_dim(a.n, a.j, a.m, q)
        if d:
            t.entries[q, 0] = d
            t.stable[q, 0] = True
    return t


def kunneth(t1: DimTable, t2: DimTable) -> DimTable:
    if not (t1.fully_stable and t2.fully_stable):
        raise ValueError("Kunneth needs fully stable tables")
    out = DimTable()
    for (q1, p1), d1 in t1.entries.items():
        for (q2, p2), d2 in t2.entries.items():
            key = (q1 + q2, (p1 + p2) % 2)
            out.entries[key] = out.entries.get(key, 0) + d1 * d2
            out.stable[key] = True
    return out


def symbol_table(sym) -> DimTable:
    total = DimTable()
    for box, parity in expand(sym):
        t = point_table()
        for a in box.factors:
            t = kunneth(t, bott_table(a))
        total = total + (t.shifted() if parity else t)
    return total


# ---------------------------------------------------------------- supergrassmannian pieces

def gr_symbol(n: int, k: int):
    """``L^k(O(-1) [x] Omega^1(1) + Omega^1(1) [x] O(-1))`` on ``P^{n-1} x P^{n-1}``."""
    r = n - 1
    gen = DirectSum((Box((Omega(r, 0, -1), Omega(r, 1, 1))), Box((Omega(r, 1, 1), Omega(r, 0, -1)))))
    return Wedge(k, gen)


def gr_pieces(n: int, k: int) -> list[Box]:
    """The summands ``Omega^j(j-i) [x] Omega^i(i-j)``, ``i + j = k``, of the ``k``-th graded piece
    of the structure sheaf of G(1|1, n|n); summands with ``i`` or ``j`` above ``n - 1`` vanish."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    return [box for box, _ in expand(gr_symbol(n, k))]


def twist_box(box: Box, degrees: Sequence[int]) -> Box:
    return Box(tuple(Omega(a.n, a.j, a.m + d) for a, d in zip(box.factors, degrees)))


@dataclass
class H1Report:
    n: int
    twist: tuple
    rows: list  # (k, parity, piece, h0, h1)
    h1_total: dict  # parity -> dim

    @property
    def vanishes(self) -> bool:
        return not any(self.h1_total.values())

    def render(self) -> str:
        lines = [f"G(1|1,{self.n}|{self.n}), twist O{self.twist}"]
        for k, p, piece, h0, h1 in self.rows:
            lines.append(f"  k={k} {'+-'[p]} {piece}: h0={h0} h1={h1}")
        lines.append(f"  H1 of gr: even={self.h1_total.get(0, 0)} odd={self.h1_total.get(1, 0)}")
        return "\n".join(lines)


def h1_vanishing_report(n: int, twist: Sequence[int] = (0, 0)) -> H1Report:
    """H^1 of every graded piece ``N^k/N^{k+1}`` of G(1|1, n|n), optionally twisted by
    ``O(a) [x] O(b)`` on the reduced space.  Vanishing of all pieces gives
    ``H^1(X, O) = H^1(X, N) = 0``; the converse is never inferred."""
    twist = tuple(twist)
    rows = []
    totals = {0: 0, 1: 0}
    for k in range(0, 2 * (n - 1) + 1):
        for box in gr_pieces(n, k):
            b = twist_box(box, twist)
            t = point_table()
            for a in b.factors:
                t = kunneth(t, bott_table(a))
            p = k % 2
            rows.append((k, p, str(b), t.get(0, 0), t.get(1, 0)))
            totals[p] += t.get(1, 0)
    return H1Report(n, twist, rows, totals)


# ---------------------------------------------------------------- Cech engine

@dataclass(frozen=True)
class CechWindow:
    radius: int
    parity: int | None = None  # None: both parities


class _Complex:
    """Windowed alternating Cech complex of ``O``, ``ker v`` or a cocycle twist."""

    def __init__(self, X: Atlas, L=None, v: GlobalField | None = None):
        if not weights_separate(X):
            raise ValueError("the Cech engine needs torus weights with independent even weights on every chart")
        self.X = X
        self.L = L
        self.v = v
        self.dim = len(next(iter(X.charts[0].weights.values())))
        fw = None
        if L is not None:
            fw = L.frame_weights
            if fw is None:
                raise ValueError("the twisting cocycle has no frame weights")
        self.fw = fw or [(0,) * self.dim for _ in X.charts]
        self._basis: dict = {}
        self._simplices: dict = {}

    def simplices(self, p: int) -> list[tuple]:
        s = self._simplices.get(p)
        if s is None:
            s = [I for I in combinations(range(len(self.X)), p + 1)
                 if all(self.X.has_overlap(a, b) for a, b in combinations(I, 2))]
            self._simplices[p] = s
        return s

    def basis(self, p: int, w: tuple, parity: int) -> list:
        key = (p, w, parity)
        b = self._basis.get(key)
        if b is None:
            b = []
            for I in self.simplices(p):
                i0 = I[0]
                ring = self.X.ring_at(i0, I)
                target = _vec_sub(w, self.fw[i0])
                for m in monomials_of_weight(ring, self.X.charts[i0].weights, target, parity):
                    b.append((I, m))
            self._basis[key] = b
        return b

    def restrict(self, J: tuple, I: tuple, f: SuperPoly) -> SuperPoly:
        i0 = I[0]
        ring = self.X.ring_at(i0, I)
        if J[0] == i0:
            return f.coerce(ring)
        h = self.X.hom(i0, J[0], I)
        out = h(f.coerce(h.source))
        if self.L is not None:
            out = out * self.L.g[i0, J[0]].coerce(ring)
        return out

    def d_column(self, p: int, I: tuple, m) -> dict:
        """Coboundary of the basis element ``m`` on simplex ``I`` (a ``p``-cochain)."""
        f = SuperPoly(self.X.ring_at(I[0], I), {m: Fraction(1)})
        col: dict = {}
        for K in self.simplices(p + 1):
            if not set(I) <= set(K):
                continue
            k = next(t for t in range(len(K)) if K[t] not in I)
            img = self.restrict(I, K, f)
            sign = -1 if k % 2 else 1
            for key, c in img.terms.items():
                col[(K, key)] = col.get((K, key), 0) + sign * c
        return {k: c for k, c in col.items() if c}

    def v_column(self, I: tuple, m) -> dict:
        ring = self.X.ring_at(I[0], I)
        img = self.v.at(I[0], I)(SuperPoly(ring, {m: Fraction(1)}))
        return {(I, k): c for k, c in img.terms.items()}

    def space(self, p: int, w: tuple, parity: int) -> list[dict]:
        """Basis vectors of the degree-``p`` cochains (of ``ker v`` when a field is given)."""
        b = self.basis(p, w, parity)
        if self.v is None:
            return [{x: Fraction(1)} for x in b]
        cols = [self.v_column(I, m) for I, m in b]
        rows = linalg.columns_to_rows(cols)
        return [{b[j]: c for j, c in vec.items()} for vec in linalg.nullspace(rows, list(range(len(b))))]

    def d_of(self, p: int, vec: dict) -> dict:
        out: dict = {}
        for (I, m), c in vec.items():
            for key, x in self.d_column(p, I, m).items():
                out[key] = out.get(key, 0) + c * x
        return {k: x for k, x in out.items() if x}

    def h_dims(self, q: int, w: tuple, parity: int) -> int:
        here = self.space(q, w, parity)
        if not here:
            return 0
        rank_out = linalg.rank_of_columns([self.d_of(q, x) for x in here])
        rank_in = 0
        if q > 0:
            before = self.space(q - 1, w, parity)
            rank_in = linalg.rank_of_columns([self.d_of(q - 1, x) for x in before])
        return len(here) - rank_out - rank_in


def _box(dim: int, R: int):
    return product(range(-R, R + 1), repeat=dim)


def cech_cohomology(X: Atlas, sheaf: str = "O", window: CechWindow | int = 3, L=None, v=None,
                    degrees: Sequence[int] = (0, 1), by_weight: bool = False):
    """Dimensions of ``H^q`` by parity over a weight window, with stability flags.

    ``sheaf`` is ``"O"``, ``"ker"`` (``ker v`` upstairs, the structure sheaf of
    the quotient) or ``"twist"`` (sections of the line bundle ``L``).
    """
    if isinstance(window, int):
        window = CechWindow(window)
    if sheaf == "ker" and v is None:
        raise ValueError("ker(v) needs a field")
    if sheaf == "twist" and L is None:
        raise ValueError("twist needs a cocycle")
    cx = _Complex(X, L if sheaf == "twist" else None, v if sheaf == "ker" else None)
    parities = (0, 1) if window.parity is None else (window.parity,)
    R = window.radius
    per_weight: dict = {}
    for w in _box(cx.dim, R + 1):
        for q in degrees:
            for p in parities:
                d = cx.h_dims(q, tuple(w), p)
                if d:
                    per_weight[(q, p, tuple(w))] = d
    table = DimTable()
    for q in degrees:
        for p in parities:
            inner = sum(d for (a, b, w), d in per_weight.items() if (a, b) == (q, p) and max(map(abs, w)) <= R)
            outer = sum(d for (a, b, w), d in per_weight.items() if (a, b) == (q, p))
            table.entries[q, p] = inner
            table.stable[q, p] = inner == outer
    if by_weight:
        return table, {k: d for k, d in per_weight.items() if max(map(abs, k[2])) <= R}
    return table
