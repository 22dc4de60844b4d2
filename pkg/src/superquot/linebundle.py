"""Even line bundles as Cech cocycles, v-connections, curvature and descent.

Frames transform as ``e_j = g_ij e_i`` where ``g_ij`` lives on the overlap ring
seen from chart ``i``.  A v-connection is ``nabla(e_i) = phi_i e_i`` and the
rule

    phi_ij(phi_j) = phi_i + v(g_ij) g_ij^{-1}

follows from ``nabla(f s) = v(f) s + (-1)^{|f|} f nabla(s)``.  The curvature of a
line bundle connection is the even function ``c_i = v(phi_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .atlas import (Atlas, GlobalField, GluingError, QuotientAtlas, monomials_of_weight, poly_weight, weights_separate,
                    _vec_add, _vec_sub)
from .homological import _compositions, odd_monomials
from .superalgebra import Ring, SuperMatrix, SuperPoly, berezinian, invert_even, is_invertible, super_inverse


class LineCocycle:
    """Transition functions ``g[i, j]`` of an even line bundle, certified on construction."""

    def __init__(self, atlas: Atlas, g: dict, frame_weights=None, name: str = "L", check: bool = True):
        self.atlas = atlas
        self.g = {k: f.coerce(atlas.overlap_ring(*k)) for k, f in g.items()}
        self.name = name
        if frame_weights is None and all(c.weights is not None for c in atlas.charts):
            frame_weights = _propagate_weights(atlas, self.g)
        self.frame_weights = frame_weights
        if check:
            bad = self.failures()
            if bad:
                raise GluingError("; ".join(bad[:3]))

    def failures(self) -> list[str]:
        X = self.atlas
        bad = []
        for (i, j) in X.pairs():
            if (i, j) not in self.g:
                bad.append(f"missing g[{i},{j}]")
                continue
            if not self.g[i, j].is_even() or not is_invertible(self.g[i, j]):
                bad.append(f"g[{i},{j}] is not an even unit")
            h = X.hom(i, j)
            if h(self.g[j, i].coerce(h.source)) * self.g[i, j] != h.target.one():
                bad.append(f"g[{i},{j}] and g[{j},{i}] are not inverse")
        for i, j, k in X.triples():
            h = X.hom(i, j, [k])
            lhs = h(self.g[j, k].coerce(h.source)) * self.g[i, j].coerce(h.target)
            if lhs != self.g[i, k].coerce(h.target):
                bad.append(f"cocycle fails on ({i},{j},{k})")
        if self.frame_weights is not None:
            for (i, j), f in self.g.items():
                w = poly_weight(f, X.charts[i].weights)
                if w != _vec_sub(self.frame_weights[j], self.frame_weights[i]):
                    bad.append(f"g[{i},{j}] has the wrong weight")
        return bad

    def __mul__(self, other: "LineCocycle") -> "LineCocycle":
        if other.atlas is not self.atlas:
            raise ValueError("cocycles on different atlases")
        fw = None
        if self.frame_weights is not None and other.frame_weights is not None:
            fw = [_vec_add(a, b) for a, b in zip(self.frame_weights, other.frame_weights)]
        return LineCocycle(self.atlas, {k: f * other.g[k] for k, f in self.g.items()}, fw,
                           f"{self.name}*{other.name}")

    def __pow__(self, k: int) -> "LineCocycle":
        g = {key: f ** k for key, f in self.g.items()}
        fw = None if self.frame_weights is None else [tuple(k * x for x in w) for w in self.frame_weights]
        return LineCocycle(self.atlas, g, fw, f"{self.name}^{k}")

    def reduced(self) -> dict:
        return {k: f.reduced() for k, f in self.g.items()}

    def to_doc(self) -> dict:
        doc = {"kind": "cocycle", "name": self.name, "atlas": self.atlas.name,
               "g": [[i, j, f.to_doc()] for (i, j), f in sorted(self.g.items())]}
        if self.frame_weights is not None:
            doc["frame_weights"] = [list(w) for w in self.frame_weights]
        return doc

    @classmethod
    def from_doc(cls, atlas: Atlas, doc) -> "LineCocycle":
        g = {(i, j): SuperPoly.from_doc(atlas.overlap_ring(i, j), t) for i, j, t in doc["g"]}
        fw = [tuple(w) for w in doc["frame_weights"]] if "frame_weights" in doc else None
        return cls(atlas, g, fw, doc.get("name", "L"))


def _propagate_weights(X: Atlas, g: dict):
    """Frame weights with ``w(e_0) = 0`` and ``wt(g_ij) = w(e_j) - w(e_i)``."""
    if not len(X):
        return []
    dim = len(next(iter(X.charts[0].weights.values()))) if X.charts[0].weights else 0
    out = {0: (0,) * dim}
    todo = [0]
    while todo:
        i = todo.pop()
        for (a, j), f in g.items():
            if a == i and j not in out:
                w = poly_weight(f, X.charts[i].weights)
                if w is None:
                    return None
                out[j] = _vec_add(out[i], w)
                todo.append(j)
    if len(out) != len(X):
        return None
    return [out[i] for i in range(len(X))]


def trivial_cocycle(X: Atlas) -> LineCocycle:
    return LineCocycle(X, {k: X.overlap_ring(*k).one() for k in X.pairs()}, name="O")


def ber_cocycle(X: Atlas, k: int = 1) -> LineCocycle:
    """``Ber(S)^k`` for the tautological subbundle of a frame atlas.

    ``F_j = F_i T^{-1}`` with ``T`` the rows of ``F_i`` selected by chart ``j``,
    so ``g_ij = Ber(T)^{-1}``.
    """
    if any(c.frame is None for c in X.charts):
        raise ValueError("Ber(S) needs a frame atlas")
    g = {}
    for (i, j) in X.pairs():
        tgt = X.overlap_ring(i, j)
        T = X.charts[i].frame.map(lambda x: x.coerce(tgt)).rows(list(X.charts[j].rows))
        g[i, j] = invert_even(berezinian(T)) ** k if k >= 0 else berezinian(T) ** (-k)
    return LineCocycle(X, g, name=f"Ber^{k}")


def standard_cocycles(X: Atlas, k: int) -> LineCocycle:
    """``O(k)`` on projective superspaces, ``Ber(S)^k`` on supergrassmannians."""
    kind = X.meta.get("kind")
    if kind == "proj":
        return LineCocycle(X, ber_cocycle(X, -k).g, name=f"O({k})")
    if kind == "grass":
        return ber_cocycle(X, k)
    if kind == "product":
        raise ValueError("use external_product for product atlases")
    raise ValueError(f"no standard cocycles on atlas kind {kind!r}")


def external_product(P: Atlas, L1: LineCocycle, L2: LineCocycle, prefixes=("a_", "b_")) -> LineCocycle:
    """``L1 [x] L2`` on a product atlas built by :func:`atlas.product_atlas`."""
    from .atlas import embed_factor
    index = P.meta["index"]
    g = {}
    for s, t in P.pairs():
        (i, k), (j, l) = index[s], index[t]
        tgt = P.overlap_ring(s, t)
        a = embed_factor(L1.g[i, j], tgt, prefixes[0]) if i != j else tgt.one()
        b = embed_factor(L2.g[k, l], tgt, prefixes[1]) if k != l else tgt.one()
        g[s, t] = a * b
    return LineCocycle(P, g, name=f"{L1.name}x{L2.name}")


# ---------------------------------------------------------------- connections

class VConnection:
    def __init__(self, L: LineCocycle, v: GlobalField, phi: Sequence[SuperPoly], check: bool = True):
        self.L = L
        self.v = v
        self.phi = [p.coerce(L.atlas.ring(i)) for i, p in enumerate(phi)]
        if check:
            bad = self.failures()
            if bad:
                raise GluingError("; ".join(bad[:3]))

    def failures(self) -> list[str]:
        X = self.L.atlas
        bad = []
        for (i, j) in X.pairs():
            h = X.hom(i, j)
            g = self.L.g[i, j]
            lhs = h(self.phi[j].coerce(h.source))
            rhs = self.phi[i].coerce(h.target) + self.v.at(i, [j])(g) * invert_even(g)
            if lhs != rhs:
                bad.append(f"transformation rule fails on ({i},{j})")
        return bad

    def shifted(self, psi: Sequence[SuperPoly]) -> "VConnection":
        """``nabla + psi`` for a global odd function ``psi`` (one entry per chart)."""
        return VConnection(self.L, self.v, [a + b for a, b in zip(self.phi, psi)])

    def to_doc(self) -> dict:
        return {"kind": "connection", "cocycle": self.L.name, "phi": [p.to_doc() for p in self.phi]}


def tensor(n1: VConnection, n2: VConnection) -> VConnection:
    if n1.L.atlas is not n2.L.atlas:
        raise ValueError("connections on different atlases")
    return VConnection(n1.L * n2.L, n1.v, [a + b for a, b in zip(n1.phi, n2.phi)])


@dataclass
class NoneUpTo:
    bound: object
    reason: str = ""

    def __bool__(self):
        return False


def _odd_unknowns(X: Atlas, D: int, weight=None):
    """Odd monomials per chart: the weight space when weights exist, else degree <= D."""
    out = []
    for i, c in enumerate(X.charts):
        if weight is not None and c.weights is not None:
            keys = monomials_of_weight(c.ring, c.weights, weight, parity=1)
        else:
            keys = odd_monomials(c.ring, D)
        out.extend((i, k) for k in keys)
    return out


def _zero_weight(X: Atlas, v: GlobalField | None = None):
    """The zero weight, or None when weights are missing or ``v`` is not of weight zero."""
    w = X.charts[0].weights
    if w is None or not weights_separate(X):
        return None
    if v is not None:
        for c, f in zip(X.charts, v.fields):
            for g in c.ring.gens:
                img = f.images[g]
                if img and poly_weight(img, c.weights) != tuple(c.weights[g]):
                    return None
    return (0,) * len(next(iter(w.values())))


def _cochain_system(X: Atlas, unknowns, rhs_of_pair):
    """Rows of ``phi_ij(s_j) - s_i = rhs_ij`` over monomial unknowns."""
    rows: dict = {}
    rhs: dict = {}
    for (i, j) in X.pairs():
        h = X.hom(i, j)
        for idx, (k, key) in enumerate(unknowns):
            if k == j:
                img = h(SuperPoly(h.source, {key: Fraction(1)}))
            elif k == i:
                img = -SuperPoly(h.target, {key: Fraction(1)})
            else:
                continue
            for m, c in img.terms.items():
                rows.setdefault((i, j, m), {})[idx] = c
        r = rhs_of_pair(i, j)
        if r is not None:
            for m, c in r.terms.items():
                rhs[(i, j, m)] = c
                rows.setdefault((i, j, m), {})
    keys = list(rows)
    return [rows[k] for k in keys], [rhs.get(k, 0) for k in keys]


def _assemble(X: Atlas, unknowns, sol: dict) -> list[SuperPoly]:
    out = [c.ring.zero() for c in X.charts]
    for idx, x in sol.items():
        if x:
            i, key = unknowns[idx]
            out[i] = out[i] + SuperPoly(X.ring(i), {key: Fraction(x)})
    return out


def connection_solve(L: LineCocycle, v: GlobalField, D: int = 3):
    """A v-connection on ``L`` with odd chart functions, or :class:`NoneUpTo`.

    With weights the search runs over the whole weight-zero space, which is
    where the transformation rule lives, so a negative answer is complete for
    homogeneous connections; otherwise it is bounded by even degree ``D``.
    """
    X = L.atlas
    w0 = _zero_weight(X, v)
    unknowns = _odd_unknowns(X, D, w0)
    rows, rhs = _cochain_system(X, unknowns, lambda i, j: v.at(i, [j])(L.g[i, j]) * invert_even(L.g[i, j]))
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return NoneUpTo("weight 0" if w0 is not None else D, "transformation rule has no solution")
    return VConnection(L, v, _assemble(X, unknowns, sol))


def global_functions(X: Atlas, parity: int, D: int = 3, weight=None) -> list[list[SuperPoly]]:
    """Basis of compatible families ``phi_ij(s_j) = s_i`` among the searched monomials."""
    out = []
    unknowns = []
    for i, c in enumerate(X.charts):
        if weight is not None and c.weights is not None:
            keys = monomials_of_weight(c.ring, c.weights, weight, parity=parity)
        elif parity == 1:
            keys = odd_monomials(c.ring, D)
        else:
            keys = _even_monomials(c.ring, D)
        unknowns.extend((i, k) for k in keys)
    rows, _ = _cochain_system(X, unknowns, lambda i, j: None)
    for vec in linalg.nullspace(rows, list(range(len(unknowns)))):
        out.append(_assemble(X, unknowns, vec))
    return out


def _even_monomials(ring: Ring, D: int) -> list:
    from itertools import combinations
    out = []
    for r in range(0, len(ring.odd) + 1, 2):
        if ring.nil is not None and r >= ring.nil:
            break
        for odd in combinations(range(len(ring.odd)), r):
            for deg in range(D + 1):
                for exps in _compositions(deg, [1] * len(ring.even)):
                    out.append((exps, odd))
    return out


@dataclass
class Curvature:
    values: list  # per chart
    constant: Fraction | None

    def __eq__(self, other):
        return isinstance(other, Curvature) and self.values == other.values


def curvature(nabla: VConnection) -> Curvature:
    """``c_i = v(phi_i)``, certified to glue and to be v-closed."""
    X = nabla.L.atlas
    vals = [nabla.v.fields[i](p) for i, p in enumerate(nabla.phi)]
    for (i, j) in X.pairs():
        h = X.hom(i, j)
        if h(vals[j].coerce(h.source)) != vals[i].coerce(h.target):
            raise GluingError(f"curvature values disagree on ({i},{j})")
    for i, c in enumerate(vals):
        if nabla.v.fields[i](c):
            raise GluingError(f"curvature is not v-closed on chart {i}")
    consts = {c.constant_term() if c.is_constant() else None for c in vals}
    const = consts.pop() if len(consts) == 1 else None
    return Curvature(vals, const)


# ---------------------------------------------------------------- descent

@dataclass
class Obstructed:
    curvature: Fraction

    def __bool__(self):
        return False


def flat_connection(L: LineCocycle, v: GlobalField, D: int = 3):
    """A connection of curvature zero, :class:`Obstructed`, or :class:`NoneUpTo`.

    All connections differ by global odd functions ``s`` and
    ``c(nabla + s) = c(nabla) + v(s)``, so flatness is one linear solve.
    """
    base = connection_solve(L, v, D)
    if not base:
        return base
    c = curvature(base)
    if all(not x for x in c.values):
        return base
    X = L.atlas
    w0 = _zero_weight(X, v)
    gf = global_functions(X, 1, D, w0)
    if gf:
        # solve v(sum a_k s_k) = -c chart-wise
        rows: dict = {}
        for idx, fam in enumerate(gf):
            for i, s in enumerate(fam):
                for m, x in nabla_v(v, i, s).terms.items():
                    rows.setdefault((i, m), {})[idx] = x
        rhs = {}
        for i, val in enumerate(c.values):
            for m, x in val.terms.items():
                rhs[(i, m)] = -x
                rows.setdefault((i, m), {})
        keys = list(rows)
        sol = linalg.solve([rows[k] for k in keys], [rhs.get(k, 0) for k in keys])
        if sol is not None:
            shift = [X.ring(i).zero() for i in range(len(X))]
            for idx, a in sol.items():
                shift = [x + s.scale(a) for x, s in zip(shift, gf[idx])]
            return base.shifted(shift)
        return NoneUpTo("weight 0" if w0 is not None else D, "no global odd shift flattens the connection")
    if c.constant is not None and c.constant != 0:
        return Obstructed(c.constant)
    return NoneUpTo("weight 0" if w0 is not None else D, "curvature is not a constant")


def nabla_v(v: GlobalField, i: int, s: SuperPoly) -> SuperPoly:
    return v.fields[i](s)


def flat_descend(L: LineCocycle, v: GlobalField, Q: QuotientAtlas, D: int = 3):
    """The cocycle on ``Q`` of ``L`` re-trivialized by v-flat frames ``h_i = 1 - theta_i phi_i``."""
    nabla = flat_connection(L, v, D)
    if not isinstance(nabla, VConnection):
        return nabla
    X = L.atlas
    h = [Q.quotients[i].field.ring.one() - Q.quotients[i].theta * nabla.phi[i] for i in range(len(X))]
    g = {}
    for (i, j) in X.pairs():
        hom = X.hom(i, j)
        tgt = hom.target
        new = hom(h[j].coerce(hom.source)) * L.g[i, j] * invert_even(h[i].coerce(tgt))
        g[i, j] = Q.local[i, j].express(new)
    return LineCocycle(Q, g, name=f"{L.name}/v")


# ---------------------------------------------------------------- GQ(1)

@dataclass(frozen=True)
class GQ1Element:
    """``a0 + a1`` with ``a0`` an even unit and ``a1`` odd."""
    a0: SuperPoly
    a1: SuperPoly

    def __post_init__(self):
        if self.a0.ring != self.a1.ring:
            raise ValueError("components live in different rings")
        if not self.a0.is_even() or not is_invertible(self.a0):
            raise ValueError("a0 must be an even unit")
        if self.a1 and not self.a1.is_odd():
            raise ValueError("a1 must be odd")

    @property
    def ring(self) -> Ring:
        return self.a0.ring


def gq1(a0: SuperPoly, a1: SuperPoly | None = None) -> GQ1Element:
    return GQ1Element(a0, a1 if a1 is not None else a0.ring.zero())


def gq1_mul(x: GQ1Element, y: GQ1Element) -> GQ1Element:
    """Product of ``x0 + x1`` and ``y0 + y1`` split into even and odd parts."""
    if x.ring != y.ring:
        raise ValueError("ring mismatch")
    return GQ1Element(x.a0 * y.a0 + x.a1 * y.a1, x.a0 * y.a1 + x.a1 * y.a0)


def gq1_inverse(x: GQ1Element) -> GQ1Element:
    inv0 = invert_even(x.a0)
    # (a0 + a1)^{-1} = a0^{-1} - a0^{-2} a1, since a1^2 = 0
    return GQ1Element(inv0, -(inv0 * inv0 * x.a1))


def gq1_project(x: GQ1Element) -> SuperPoly:
    return invert_even(x.a0) * x.a1


def gq1_cocycle(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    return a.ring.one() + a * b


def gq1_matrix(x: GQ1Element) -> SuperMatrix:
    """The 1|1 matrix ``[[a0, a1], [a1, a0]]``; this assignment is multiplicative."""
    return SuperMatrix([[x.a0, x.a1], [x.a1, x.a0]], [0, 1], [0, 1])
